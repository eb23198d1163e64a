#pragma once

// The fourth Painleve equation q'' = q'^2/(2q) + (3/2) q^3 + 4 x q^2 + 2 (x^2 - 2 alpha) q,
// its Hamiltonian, and pole-aware integration of the solutions q(x; alpha, kappa) that decay
// like kappa D^2_{alpha-1/2}(sqrt(2) x) as x -> +infinity.
//
// Integration runs in two regular charts:
//   Root:    q = s v^2 (s = +-1). Zeros of q are double, and v solves the regular equation
//            v'' = (x^2 - 2 alpha) v + 2 s x v^3 + (3/4) v^5.
//   Inverse: w = 1/q, regular through the simple poles of q. Used next to poles.
// The Direct chart (q itself) is used for seeds and conversions only.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace p4cm {

struct Params {
    double alpha = 0.0;
    double kappa = 0.0;

    /// alpha + 1/2 is a positive integer.
    bool half_integer_pos() const;
    /// 1/2 - alpha is a positive integer.
    bool half_integer_neg() const;
};

enum class Chart { Direct, Root, Inverse };

struct State {
    double x = 0.0;
    Chart chart = Chart::Direct;
    double u = 0.0;   // q, v or w
    double du = 0.0;  // derivative of u
    int sign = 1;     // sign of q; used by the Root chart

    double q() const;
    double dq() const;
};

/// Convert a state to another chart at the same x. Throws DomainError when the target chart is singular there.
State to_chart(const State& s, Chart target);

struct PoleRecord {
    double location = 0.0;
    int residue = 0;        // exactly +1 or -1
    double fitted = 0.0;    // contour residue before rounding
};

struct TrajectorySample {
    double x = 0.0;
    double q = 0.0;
    double dq = 0.0;
};

/// One accepted integration step in a fixed chart, with quintic Hermite data at both ends.
struct Segment {
    double x0 = 0.0, x1 = 0.0;
    Chart chart = Chart::Root;
    int sign = 1;
    double u0 = 0.0, du0 = 0.0, ddu0 = 0.0;
    double u1 = 0.0, du1 = 0.0, ddu1 = 0.0;
};

/// Immutable pole-aware numerical solution, ordered from x_start down to x_end.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(Params params, std::vector<Segment> segments, std::vector<PoleRecord> poles,
               double pole_radius);

    const Params& params() const { return params_; }
    double x_start() const { return x_start_; }
    double x_end() const { return x_end_; }
    std::span<const Segment> segments() const { return segments_; }
    std::span<const PoleRecord> poles() const { return poles_; }
    /// Step-end samples, strictly decreasing in x, none within the pole radius of a pole.
    std::span<const TrajectorySample> samples() const { return samples_; }
    double pole_radius() const { return pole_radius_; }

    bool covers(double x) const;
    /// Dense evaluation (q, q'). Throws DomainError outside [x_end, x_start] and PoleError at a pole.
    std::pair<double, double> eval(double x) const;
    double q(double x) const { return eval(x).first; }
    /// Chart value at x together with the segment it comes from.
    const Segment& segment_at(double x) const;
    /// w = 1/q at x from the local chart, finite through poles.
    double inverse_value(double x) const;

    /// Zero-trajectory factory for kappa = 0.
    static Trajectory trivial(Params params, double x_from, double x_to);

private:
    Params params_{};
    std::vector<Segment> segments_;
    std::vector<PoleRecord> poles_;
    std::vector<TrajectorySample> samples_;
    double x_start_ = 0.0;
    double x_end_ = 0.0;
    double pole_radius_ = 1e-2;
};

/// Hermite data of a segment evaluated at x: (u, u').
std::pair<double, double> hermite_eval(const Segment& seg, double x);

// --- Right-hand sides -------------------------------------------------------

/// q'' from the PIV equation. Throws PoleError at q = 0.
double piv_rhs(double x, double q, double dq, double alpha);

/// v'' in the Root chart q = sign * v^2.
double root_chart_rhs(double x, double v, int sign, double alpha);

/// w'' in the Inverse chart w = 1/q:
///   w'' = (3/2)(w'^2 - 1)/w - 4x - 2(x^2 - 2 alpha) w.
/// Near w = 0 the first term is replaced by its regular expansion 4x + 4(x^2 - 2 alpha) w + 4 w w'.
/// Throws NumericalFailure when w = 0 but |w'^2 - 1| is not small (not a simple +-1 pole).
double inverse_chart_rhs(double x, double w, double dw, double alpha);

/// |w| below which inverse_chart_rhs switches to the regular expansion.
inline constexpr double kInverseRegularRadius = 1e-6;
/// Tolerance on |w'^2 - 1| at w = 0.
inline constexpr double kInverseRegularityTol = 1e-3;

// --- Hamiltonian and sigma --------------------------------------------------

/// H = q^3/4 + x q^2 + (x^2 - 2 alpha) q - q'^2/(4q). Throws PoleError at q = 0.
double hamiltonian(double q, double dq, double x, double alpha);

/// sigma_{alpha+1/2} = (q - H)/2.
double sigma_from_q(double q, double dq, double x, double alpha);

/// Closed-form alpha = 1/2 solution 2 kappa e^{-x^2} / (2 - kappa sqrt(pi) erfc(x)).
/// kappa within 1e-12 (relative) of 1/sqrt(pi) is snapped to it, as in the integrator.
/// Throws PoleError where the denominator vanishes.
double exact_half(double x, double kappa);
/// Derivative of exact_half with respect to x.
double exact_half_deriv(double x, double kappa);

// --- Seeding and integration ------------------------------------------------

/// Direct-chart seed q = kappa D^2_{alpha-1/2}(sqrt2 x0), q' = 2 sqrt2 kappa D D'.
/// Throws RangeError when the seed underflows (|q| < 1e-300 with kappa != 0).
State seed_at_plus_infinity(const Params& params, double x0);

/// Root-chart seed v = sqrt|kappa| D_{alpha-1/2}(sqrt2 x0); does not underflow where q would.
State root_seed(const Params& params, double x0);

/// Smallest x0 >= 6 where the neglected nonlinear terms are below 1e-16 relative, capped at 12.
double choose_seed_point(const Params& params);

struct IntegrateOptions {
    double tol = 1e-9;
    double chart_switch = 50.0;   // pole passage starts once |q| exceeds max(this, 4|x|)
    double pole_radius = 1e-2;    // samples closer than this to a pole are dropped
    std::optional<double> seed_x0;  // default: max(x_from, choose_seed_point)
    std::size_t max_steps = 5'000'000;
    bool separatrix_continuation = true;  // route kappa = kappa* to solve_separatrix
};

/// Integrate downward from x_from to x_to (x_from > x_to). tol in [1e-12, 1e-4].
/// Poles are passed on a half circle in the upper half plane; the real axis beside each pole is
/// filled in the Inverse chart. kappa within 1e-12 of kappa* goes through solve_separatrix.
Trajectory integrate(const Params& params, double x_from, double x_to, double tol);
Trajectory integrate(const Params& params, double x_from, double x_to, const IntegrateOptions& opts);
/// Plain downward shooting, without the separatrix dispatch.
Trajectory shoot(const Params& params, double x_from, double x_to, const IntegrateOptions& opts);

// --- Separatrix continuation ------------------------------------------------

/// Formal large-negative-x series of the kappa = kappa* solution:
/// q = -2x - 2a/x + (12a^2+1)/(4x^3) - a(36a^2+11)/(4x^5) + ...
double separatrix_series(double x, double alpha);
double separatrix_series_deriv(double x, double alpha);

struct SeparatrixOptions {
    double x_match = -1.5;    // shooting is trusted down to here
    double grid_step = 2e-3;   // finite-difference grid for the boundary-value part
    double far_margin = 3.0;   // far boundary sits this far below x_to
    int max_newton = 50;
};

struct SeparatrixReport {
    double x_match = 0.0;
    double x_far = 0.0;
    double slope_shot = 0.0;          // q'(x_match) from the shooting trajectory
    double slope_bvp = 0.0;           // q'(x_match) from the boundary-value solution
    int newton_iterations = 0;
    double newton_residual = 0.0;
};

/// The kappa = kappa* solution is exponentially unstable under downward shooting. Shoot down to
/// x_match, then solve the two-point problem on [x_far, x_match] with q(x_match) from the shot and
/// q(x_far) from separatrix_series; the two pieces are joined into one trajectory.
Trajectory solve_separatrix(const Params& params, double x_from, double x_to,
                            const IntegrateOptions& opts, const SeparatrixOptions& sep = {},
                            SeparatrixReport* report = nullptr);

}  // namespace p4cm
