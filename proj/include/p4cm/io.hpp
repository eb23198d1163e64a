#pragma once

// CSV and JSON forms of trajectories, reports and tables. Floats are written with 17
// significant digits; nothing time-dependent goes into the output.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "p4cm/asymptotics.hpp"
#include "p4cm/fredholm.hpp"
#include "p4cm/integrals.hpp"
#include "p4cm/painleve.hpp"
#include "p4cm/verify.hpp"

namespace p4cm {

using json = nlohmann::ordered_json;

/// One output row of a trajectory.
struct TrajectoryRow {
    double x, q, dq, h, sigma;
};

/// Rows at the step ends, or on a uniform grid of spacing `step` from x_start downward.
/// Points within the pole radius of a pole are left out.
std::vector<TrajectoryRow> trajectory_rows(const Trajectory& traj, std::optional<double> step = {});

/// Header `x,q,dq,H,sigma` and one line per row.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows);

/// Parameters, range and pole records.
json poles_json(const Trajectory& traj);

/// poles_json plus the rows as parallel arrays.
json trajectory_json(const Trajectory& traj, const std::vector<TrajectoryRow>& rows);

json to_json(const ConnectionData& data, double alpha, double kappa);
json to_json(const IntegralReport& rep);
json to_json(const SuiteReport& rep);

/// Columns x,det,logdet,sigma.
void write_det_csv(std::ostream& os, const std::vector<DetResult>& rows);

/// 17 significant digits, shortest exponent form.
std::string format_double(double v);

}  // namespace p4cm
