#pragma once

// Named verification suites. Each check compares a measured error with a tolerance; the CLI's
// `verify` command and the acceptance driver both run these.

#include <string>
#include <string_view>
#include <vector>

namespace p4cm {

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

/// measured < tolerance, with NaN counted as failure.
Check make_check(std::string name, double measured, double tolerance, std::string detail = {});

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool passed() const;
};

struct SuiteOptions {
    double alpha = 0.25;
    double kappa = 0.1;
    double nu = 1.3;
    double gamma = 0.1;
    double tol = 1e-10;
};

/// exact-half, asymptotics, hamiltonian, sigma-det, hermite, integrals, specfun.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite.
SuiteReport run_suite(std::string_view name, const SuiteOptions& opts = {});

// --- Building blocks ---------------------------------------------------------

/// Weber residual, three-term recurrence, Hermite reduction, |Gamma(it)|^2, erfc monotonicity
/// and the tabulated point values.
std::vector<Check> specfun_checks();

/// Max |q - exact_half| on [-5, 8] for alpha = 1/2, away from poles (distance > 0.1).
Check exact_half_check(double kappa, double tol);

/// alpha = 1/2, kappa = 2/sqrt(pi): pole location against the root of 2 = kappa sqrt(pi) erfc(x),
/// residue against the Laurent coefficient of the closed form, and the pre-rounding fit.
std::vector<Check> pole_oracle_checks(double tol);

/// Which of q and H to compare with the leading asymptotics.
enum class AsymptoteTarget { Q, H };

/// Comparison on [lo, hi] (< 0) with the bound matching the regime:
///   oscillatory |x| |q - q_asym| < 5, separatrix |x| |q/(-2x) - 1| < 0.3,
///   singular: poles within 0.05 of a predicted singularity, |x| |q - q_asym| < 10 at distance
///   > 0.3 from them, and the same at distance > 1/|x|.
/// For H the bounds are |x| |H - h_asym| < 5 (oscillatory, separatrix) and < 10 (singular).
std::vector<Check> asymptote_checks(double alpha, double kappa, double lo, double hi,
                                    AsymptoteTarget target, double tol);

/// Relative deviation of H from its x -> +infinity law at x, and the decay order of that
/// deviation between x and 1.5x (expected 2).
std::vector<Check> h_plus_infinity_checks(double alpha, double kappa, double x, double tol);

/// Gaussian-ensemble gap probabilities det(I - gamma* K_{n,0}) for n = 1, 2, kernel reduction,
/// and monotonicity in x.
std::vector<Check> hermite_checks();

/// sigma-form residual on [-1, 3], bridge to the ODE sigma on [0, 3], boundary law at x = 5,
/// quadrature convergence.
std::vector<Check> sigma_det_checks(double nu, double gamma, double tol);

/// Total integrals for (alpha, kappa) and c-shift invariance of lhs/rhs.
std::vector<Check> total_integral_checks(double alpha, double kappa, double tol);

/// Principal value and positive-tail oracles from the closed form at alpha = 1/2.
std::vector<Check> integral_oracle_checks(double tol);

}  // namespace p4cm
