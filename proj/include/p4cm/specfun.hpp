#pragma once

// Real-order parabolic cylinder functions, complex log-gamma and erfc.
//
// D_nu(s) is evaluated from three pieces:
//   * the large-argument expansion D_nu(s) ~ s^nu e^{-s^2/4} sum_k (-1)^k (-nu)_{2k} / (k! (2 s^2)^k)
//     for s beyond a switch point;
//   * Taylor stepping of Weber's equation inward from the switch point for 0 <= s below it
//     (the recessive solution grows inward, so this direction is stable);
//   * for s < 0, D_nu(s) = cos(pi nu) D_nu(|s|) + h(|s|), where h is the pure dominant part,
//     stepped outward from its exact values at the origin.

#include <complex>

namespace p4cm {

/// D_nu and D_{nu-1} at the same argument.
struct PcfValue {
    double d_nu = 0.0;
    double d_nu_m1 = 0.0;
    double order = 0.0;
    double argument = 0.0;
};

/// Largest |s| accepted by the parabolic cylinder routines; beyond it e^{s^2/4} leaves binary64.
inline constexpr double kPcfMaxArgument = 53.0;

/// D_nu(s). Throws RangeError for |s| > kPcfMaxArgument.
double pcf_d(double nu, double s);

/// D'_nu(s) = -(s/2) D_nu(s) + nu D_{nu-1}(s).
double pcf_d_deriv(double nu, double s);

/// D_nu(s) and D_{nu-1}(s) in one call.
PcfValue pcf_value(double nu, double s);

/// Value and s-derivative of D_nu at s, from the same evaluation path.
struct PcfJet {
    double value = 0.0;
    double deriv = 0.0;
};
PcfJet pcf_jet(double nu, double s);

/// Large-argument expansion only; valid for s well past max(10, |nu|). Exposed for validation.
double pcf_d_asymptotic(double nu, double s);

/// Exact values at the origin: D_nu(0) = 2^{nu/2} sqrt(pi) / Gamma((1-nu)/2),
/// D'_nu(0) = -2^{(nu+1)/2} sqrt(pi) / Gamma(-nu/2).
PcfJet pcf_at_origin(double nu);

/// Principal branch of ln Gamma(z), imaginary part continued from the positive real axis.
/// Throws PoleError at z = 0, -1, -2, ...
std::complex<double> log_gamma_complex(std::complex<double> z);

/// arg Gamma(z) on the same branch as log_gamma_complex.
inline double arg_gamma(std::complex<double> z) { return log_gamma_complex(z).imag(); }

/// Complementary error function.
double erfc(double x);

/// 1/Gamma(x), exactly zero at the poles of Gamma.
double rgamma(double x);

/// sin(pi x) and cos(pi x) with exact zeros at the integers / half-integers.
double sin_pi(double x);
double cos_pi(double x);

/// True when x is an integer (to the last bit).
bool is_integer(double x);

}  // namespace p4cm
