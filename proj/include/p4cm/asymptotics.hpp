#pragma once

// Closed-form data for the Clarkson-McLeod solutions: the critical amplitude kappa*, the
// monodromy parameter rho, regime classification, connection formulas and the leading
// asymptotics of q and of the Hamiltonian at both ends of the real line.

#include <complex>
#include <string_view>
#include <vector>

namespace p4cm {

enum class Regime { Trivial, Oscillatory, Separatrix, SingularOscillatory, HalfIntegerPositive };

std::string_view regime_name(Regime r);

struct ConnectionData {
    std::complex<double> rho{1.0, 0.0};
    double kappa_star = 0.0;
    Regime regime = Regime::Trivial;
    double b1 = 0.0, psi1 = 0.0;  // Oscillatory
    double b2 = 0.0, psi2 = 0.0;  // SingularOscillatory
    double c_n = 0.0;             // HalfIntegerPositive amplitude at -infinity
};

/// kappa* = 1/(sqrt(pi) Gamma(alpha + 1/2)); zero when 1/2 - alpha is a positive integer.
double kappa_star(double alpha);

/// rho = 1 - 2 pi^{3/2} kappa e^{-i pi alpha} / Gamma(1/2 - alpha).
/// Throws DomainError when alpha + 1/2 is a positive integer.
std::complex<double> rho_from_kappa(double alpha, double kappa);

/// Relative tolerance under which kappa is taken to equal kappa*.
inline constexpr double kSeparatrixTol = 1e-12;

Regime classify(double alpha, double kappa);

/// (b1, psi1). Throws DomainError unless |rho| < 1. b1 = 0 gives (0, 0).
std::pair<double, double> connection_osc(double alpha, double kappa);

/// (b2, psi2). Throws DomainError unless |rho| > 1.
std::pair<double, double> connection_sing(double alpha, double kappa);

/// All of the above in one record.
ConnectionData connection_data(double alpha, double kappa);

/// Phase x^2/sqrt3 - (b/sqrt3) ln(2 sqrt3 x^2) + psi of the oscillatory (b = b1^2) or
/// singular (b = b2) regime. Throws DomainError in the other regimes.
double asymptotic_phase(double x, const ConnectionData& data);

/// Leading asymptotic value of q. For x > 0 the decaying law kappa 2^{alpha-1/2} x^{2alpha-1} e^{-x^2};
/// for x < 0 the regime's branch. Throws PoleError when |2 cos phi + 1| < 1e-6 in the singular regime.
double q_asym(double x, const ConnectionData& data, double alpha, double kappa);

/// Leading asymptotic value of the Hamiltonian, branch chosen as in q_asym.
double h_asym(double x, const ConnectionData& data, double alpha, double kappa);

/// Zeros of 2 cos phi(x) + 1 in [x_lo, x_hi] (x_hi < 0), increasing.
/// Throws DomainError outside the singular regime or where phi is not monotone.
std::vector<double> predicted_singularities(const ConnectionData& data, double x_lo, double x_hi);

/// Right-hand side of the total-integral identity for the oscillatory and separatrix regimes:
///   oscillatory: s sqrt(pi) e^{c^2/3} |c|^{-2a} 3^{2a} 2^{1/2-a} (1-rho) e^{i pi a} / (Gamma(1/2-a) (1-|rho|^2)^{2/3})
///   separatrix:  s sqrt(pi) e^{c^2} |c|^{2a} 2^{1/2+a} / Gamma(1/2+a)
/// with s = (-1)^{n_plus - n_minus}. The c-dependence is the one forced by differentiating the
/// left side in c.
/// Throws DomainError in other regimes or for c >= 0, NumericalFailure if the oscillatory
/// prefactor is not real.
double total_integral_rhs(double alpha, double kappa, double c, int n_plus, int n_minus);

}  // namespace p4cm
