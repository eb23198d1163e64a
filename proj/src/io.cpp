#include "p4cm/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "p4cm/errors.hpp"

namespace p4cm {

namespace {

// JSON has no inf/nan; they become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

TrajectoryRow make_row(double x, double q, double dq, double alpha) {
    // q = 0 only on the trivial solution, where H and sigma vanish too
    const double h = q == 0.0 ? 0.0 : hamiltonian(q, dq, x, alpha);
    return {x, q, dq, h, 0.5 * (q - h)};
}

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<TrajectoryRow> trajectory_rows(const Trajectory& traj, std::optional<double> step) {
    const double alpha = traj.params().alpha;
    std::vector<TrajectoryRow> rows;
    if (!step) {
        rows.reserve(traj.samples().size());
        for (const TrajectorySample& s : traj.samples()) rows.push_back(make_row(s.x, s.q, s.dq, alpha));
        return rows;
    }
    if (!(*step > 0.0)) throw DomainError("trajectory_rows: step must be positive");
    const auto n = static_cast<long>(std::floor((traj.x_start() - traj.x_end()) / *step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double x = traj.x_start() - static_cast<double>(i) * *step;
        bool near = false;
        for (const PoleRecord& p : traj.poles()) near = near || std::abs(x - p.location) < traj.pole_radius();
        if (near) continue;
        const auto [q, dq] = traj.eval(x);
        rows.push_back(make_row(x, q, dq, alpha));
    }
    return rows;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows) {
    os << "x,q,dq,H,sigma\n";
    for (const TrajectoryRow& r : rows) {
        os << format_double(r.x) << ',' << format_double(r.q) << ',' << format_double(r.dq) << ','
           << format_double(r.h) << ',' << format_double(r.sigma) << '\n';
    }
}

json poles_json(const Trajectory& traj) {
    json j;
    j["alpha"] = traj.params().alpha;
    j["kappa"] = traj.params().kappa;
    j["x_start"] = traj.x_start();
    j["x_end"] = traj.x_end();
    j["pole_radius"] = traj.pole_radius();
    json poles = json::array();
    for (const PoleRecord& p : traj.poles()) {
        poles.push_back({{"location", p.location}, {"residue", p.residue}, {"fitted", p.fitted}});
    }
    j["poles"] = std::move(poles);
    return j;
}

json trajectory_json(const Trajectory& traj, const std::vector<TrajectoryRow>& rows) {
    json j = poles_json(traj);
    json x = json::array(), q = json::array(), dq = json::array(), h = json::array(), s = json::array();
    for (const TrajectoryRow& r : rows) {
        x.push_back(r.x);
        q.push_back(number(r.q));
        dq.push_back(number(r.dq));
        h.push_back(number(r.h));
        s.push_back(number(r.sigma));
    }
    j["samples"] = {{"x", x}, {"q", q}, {"dq", dq}, {"H", h}, {"sigma", s}};
    return j;
}

json to_json(const ConnectionData& d, double alpha, double kappa) {
    json j;
    j["alpha"] = alpha;
    j["kappa"] = kappa;
    j["regime"] = std::string(regime_name(d.regime));
    j["kappa_star"] = d.kappa_star;
    if (d.regime == Regime::Trivial) return j;
    if (d.regime != Regime::HalfIntegerPositive) j["rho"] = {{"re", d.rho.real()}, {"im", d.rho.imag()}, {"abs", std::abs(d.rho)}};
    switch (d.regime) {
        case Regime::Oscillatory:
            j["b1"] = d.b1;
            j["psi1"] = d.psi1;
            break;
        case Regime::SingularOscillatory:
            j["b2"] = d.b2;
            j["psi2"] = d.psi2;
            break;
        case Regime::HalfIntegerPositive:
            j["c_n"] = number(d.c_n);
            break;
        default:
            break;
    }
    return j;
}

json to_json(const IntegralReport& r) {
    json j;
    j["lhs_exp"] = number(r.lhs_exp);
    j["rhs"] = number(r.rhs);
    j["rel_error"] = number(r.rel_error);
    j["n_plus"] = r.n_plus;
    j["n_minus"] = r.n_minus;
    j["c"] = r.c;
    j["d"] = r.d;
    j["log_lhs"] = number(r.log_lhs);
    j["tail"] = {{"value", number(r.tail.value)},
                 {"quadrature", number(r.tail.quadrature)},
                 {"remainder", number(r.tail.remainder)},
                 {"cauchy", number(r.tail.cauchy)},
                 {"converged", r.tail.converged}};
    return j;
}

json to_json(const SuiteReport& r) {
    json j;
    j["suite"] = r.suite;
    j["passed"] = r.passed();
    json checks = json::array();
    for (const Check& c : r.checks) {
        json cj{{"name", c.name}, {"passed", c.passed}, {"measured", number(c.measured)}, {"tolerance", c.tolerance}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

void write_det_csv(std::ostream& os, const std::vector<DetResult>& rows) {
    os << "x,det,logdet,sigma\n";
    for (const DetResult& r : rows) {
        os << format_double(r.x) << ',' << format_double(r.det) << ',' << format_double(r.logdet) << ','
           << format_double(r.sigma) << '\n';
    }
}

}  // namespace p4cm
