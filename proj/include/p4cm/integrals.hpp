#pragma once

// Regularised total integrals of q along the real line, evaluated from trajectories:
//   int_{-inf}^{c} (q + regularisation) + P.V. int_c^d q + int_d^{+inf} q,
// with the poles inside (c, d) handled as principal values.

#include "p4cm/asymptotics.hpp"
#include "p4cm/painleve.hpp"

namespace p4cm {

struct TailResult {
    double value = 0.0;       // integral over (-inf, c)
    double quadrature = 0.0;  // part over (X, c)
    double remainder = 0.0;   // analytic estimate over (-inf, X)
    double cauchy = 0.0;      // spread of the completed value over the check points
    bool converged = false;   // cauchy below kTailCauchyTol
};

inline constexpr double kTailCauchyTol = 1e-3;

/// Regularised integrand of the negative tail: q + 2t/3 - 2 alpha/t (oscillatory) or
/// q + 2t + 2 alpha/t (separatrix).
double regularized_integrand(double t, double q, double alpha, Regime regime);

/// Integral of the regularised integrand over (-inf, c). The trajectory must reach X = x_end < c - 10.
/// The remainder below X comes from integration by parts on the oscillation (oscillatory) or from
/// the formal series (separatrix); convergence is checked by completing at X, X + 5, X + 10.
TailResult regularized_tail_neg(const Trajectory& traj, double c, Regime regime);

/// P.V. integral of q over (c, d). Poles take a symmetric window of half-width delta (shrunk to
/// fit between neighbours and the ends, never below delta_min).
double principal_value_mid(const Trajectory& traj, double c, double d, double delta = 0.1,
                           double delta_min = 1e-3);

/// Integral of q over (d, +inf): quadrature up to x_start, then the decaying seed law.
double tail_pos(const Trajectory& traj, double d);

struct IntegralReport {
    double lhs_exp = 0.0;
    double rhs = 0.0;
    double rel_error = 0.0;
    int n_plus = 0;
    int n_minus = 0;
    double c = 0.0;
    double d = 0.0;
    double log_lhs = 0.0;  // the regularised integral itself
    TailResult tail{};
};

struct TotalIntegralOptions {
    double x_far = -35.0;  // integration reaches this far
    double tol = 1e-10;
};

/// Left side from a fresh trajectory, compared with total_integral_rhs.
/// Throws DomainError outside the oscillatory and separatrix regimes or when a pole is outside (c, d).
IntegralReport verify_total_integral(const Params& params, double c, double d, const TotalIntegralOptions& opts = {});

/// Same, on an existing trajectory.
IntegralReport total_integral_from(const Trajectory& traj, double c, double d);

}  // namespace p4cm
