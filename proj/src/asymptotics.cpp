#include "p4cm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "p4cm/errors.hpp"
#include "p4cm/painleve.hpp"
#include "p4cm/specfun.hpp"

namespace p4cm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;
const double kSqrtPi = std::sqrt(kPi);

bool half_pos(double alpha) { return Params{alpha, 0.0}.half_integer_pos(); }
bool half_neg(double alpha) { return Params{alpha, 0.0}.half_integer_neg(); }

double sing_denominator(double phi) { return 2.0 * std::cos(phi) + 1.0; }

double decaying_law(double x, double amp, double alpha) {
    return amp * std::pow(2.0, alpha - 0.5) * std::pow(x, 2.0 * alpha - 1.0) * std::exp(-x * x);
}

bool is_critical(double alpha, double kappa) {
    const double ks = kappa_star(alpha);
    return std::abs(kappa - ks) <= kSeparatrixTol * std::max(1.0, std::abs(ks));
}

}  // namespace

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::Trivial: return "trivial";
        case Regime::Oscillatory: return "oscillatory";
        case Regime::Separatrix: return "separatrix";
        case Regime::SingularOscillatory: return "singular-oscillatory";
        case Regime::HalfIntegerPositive: return "half-integer-positive";
    }
    return "unknown";
}

double kappa_star(double alpha) {
    if (half_neg(alpha)) return 0.0;
    return rgamma(alpha + 0.5) / kSqrtPi;
}

std::complex<double> rho_from_kappa(double alpha, double kappa) {
    if (half_pos(alpha)) {
        throw DomainError("rho_from_kappa: Gamma(1/2 - alpha) has a pole at alpha = " + std::to_string(alpha));
    }
    const double amp = 2.0 * kPi * kSqrtPi * kappa * rgamma(0.5 - alpha);
    return {1.0 - amp * cos_pi(alpha), amp * sin_pi(alpha)};
}

Regime classify(double alpha, double kappa) {
    if (kappa == 0.0) return Regime::Trivial;
    if (is_critical(alpha, kappa)) return Regime::Separatrix;
    if (half_pos(alpha)) return Regime::HalfIntegerPositive;
    if (half_neg(alpha)) return Regime::SingularOscillatory;
    const double ks = kappa_star(alpha);
    return kappa * (kappa - ks) < 0.0 ? Regime::Oscillatory : Regime::SingularOscillatory;
}

std::pair<double, double> connection_osc(double alpha, double kappa) {
    const std::complex<double> rho = rho_from_kappa(alpha, kappa);
    const double r2 = std::norm(rho);
    if (!(r2 < 1.0)) throw DomainError("connection_osc: |rho| >= 1, not the oscillatory regime");
    const double b1sq = -(kSqrt3 / (2.0 * kPi)) * std::log1p(-r2);
    if (b1sq == 0.0) return {0.0, 0.0};
    const double b1 = std::sqrt(b1sq);
    const double psi1 = -kPi / 4.0 - 2.0 * kPi * alpha / 3.0 - arg_gamma({0.0, -b1sq / kSqrt3}) - std::arg(rho);
    return {b1, psi1};
}

std::pair<double, double> connection_sing(double alpha, double kappa) {
    const std::complex<double> rho = rho_from_kappa(alpha, kappa);
    const double r2 = std::norm(rho);
    if (!(r2 > 1.0)) throw DomainError("connection_sing: |rho| <= 1, not the singular regime");
    const double b2 = -(kSqrt3 / (2.0 * kPi)) * std::log(r2 - 1.0);
    const double psi2 = -2.0 * kPi * alpha / 3.0 - arg_gamma({0.5, -b2 / kSqrt3}) - std::arg(rho);
    return {b2, psi2};
}

ConnectionData connection_data(double alpha, double kappa) {
    ConnectionData d;
    d.kappa_star = kappa_star(alpha);
    d.regime = classify(alpha, kappa);
    if (!half_pos(alpha)) d.rho = rho_from_kappa(alpha, kappa);
    switch (d.regime) {
        case Regime::Oscillatory: std::tie(d.b1, d.psi1) = connection_osc(alpha, kappa); break;
        case Regime::SingularOscillatory: std::tie(d.b2, d.psi2) = connection_sing(alpha, kappa); break;
        case Regime::HalfIntegerPositive: {
            const double n = alpha + 0.5;
            const double den = 1.0 - kSqrtPi * std::tgamma(n + 1.0) * kappa;
            d.c_n = is_critical(alpha, kappa) ? std::numeric_limits<double>::infinity() : kappa / den;
            break;
        }
        default: break;
    }
    return d;
}

double asymptotic_phase(double x, const ConnectionData& data) {
    const double lg = std::log(2.0 * kSqrt3 * x * x);
    switch (data.regime) {
        case Regime::Oscillatory: return x * x / kSqrt3 - data.b1 * data.b1 / kSqrt3 * lg + data.psi1;
        case Regime::SingularOscillatory: return x * x / kSqrt3 - data.b2 / kSqrt3 * lg + data.psi2;
        default: throw DomainError("asymptotic_phase: regime has no oscillation");
    }
}

double q_asym(double x, const ConnectionData& data, double alpha, double kappa) {
    if (data.regime == Regime::Trivial) return 0.0;
    if (x > 0.0) return decaying_law(x, kappa, alpha);
    switch (data.regime) {
        case Regime::Oscillatory:
            return -2.0 * x / 3.0 + 2.0 * std::sqrt(6.0) * data.b1 / 3.0 * std::sin(asymptotic_phase(x, data));
        case Regime::Separatrix: return -2.0 * x;
        case Regime::SingularOscillatory: {
            const double den = sing_denominator(asymptotic_phase(x, data));
            if (std::abs(den) < 1e-6) throw PoleError("q_asym: at a predicted singularity");
            return -2.0 * x / 3.0 + 2.0 * x / den;
        }
        case Regime::HalfIntegerPositive:
            if (std::isinf(data.c_n)) return -2.0 * x;
            return decaying_law(x, data.c_n, alpha);
        default: return 0.0;
    }
}

double h_asym(double x, const ConnectionData& data, double alpha, double kappa) {
    if (data.regime == Regime::Trivial) return 0.0;
    if (x > 0.0) return -decaying_law(x, kappa, alpha);
    const double cubic = -8.0 * x * x * x / 27.0;
    switch (data.regime) {
        case Regime::Oscillatory:
            return cubic + 4.0 / 3.0 * (alpha + data.b1 * data.b1) * x -
                   2.0 * std::numbers::sqrt2 * data.b1 / 3.0 * std::cos(asymptotic_phase(x, data));
        case Regime::Separatrix: return 4.0 * alpha * x;
        case Regime::SingularOscillatory: {
            const double phi = asymptotic_phase(x, data);
            const double den = sing_denominator(phi);
            if (std::abs(den) < 1e-6) throw PoleError("h_asym: at a predicted singularity");
            return cubic + 4.0 / 3.0 * (alpha + data.b2) * x + 4.0 / kSqrt3 * x * std::sin(phi) / den;
        }
        case Regime::HalfIntegerPositive:
            if (std::isinf(data.c_n)) return 4.0 * alpha * x;
            return -decaying_law(x, data.c_n, alpha);
        default: return 0.0;
    }
}

std::vector<double> predicted_singularities(const ConnectionData& data, double x_lo, double x_hi) {
    if (data.regime != Regime::SingularOscillatory) {
        throw DomainError("predicted_singularities: regime is not singular-oscillatory");
    }
    if (!(x_lo < x_hi && x_hi < 0.0)) throw DomainError("predicted_singularities: need x_lo < x_hi < 0");
    // phi'(x) = (2/sqrt3)(x - b2/x) is negative for x < 0 as long as x^2 > b2
    if (data.b2 > 0.0 && x_hi * x_hi <= data.b2) {
        throw DomainError("predicted_singularities: phase not monotone on the interval");
    }
    const double phi_hi = asymptotic_phase(x_hi, data);  // smaller phase
    const double phi_lo = asymptotic_phase(x_lo, data);
    std::vector<double> out;
    const double two_pi = 2.0 * kPi;
    for (double base : {2.0 * kPi / 3.0, 4.0 * kPi / 3.0}) {
        for (double k = std::ceil((phi_hi - base) / two_pi); base + k * two_pi <= phi_lo; k += 1.0) {
            const double target = base + k * two_pi;
            double a = x_lo, b = x_hi;  // phi(a) >= target >= phi(b)
            for (int i = 0; i < 200 && b - a > 1e-15 * std::abs(a); ++i) {
                const double m = 0.5 * (a + b);
                if (asymptotic_phase(m, data) >= target) a = m; else b = m;
            }
            out.push_back(0.5 * (a + b));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double total_integral_rhs(double alpha, double kappa, double c, int n_plus, int n_minus) {
    if (!(c < 0.0)) throw DomainError("total_integral_rhs: c must be negative");
    const double sgn = ((n_plus - n_minus) % 2 == 0) ? 1.0 : -1.0;
    const Regime regime = classify(alpha, kappa);
    const double ac = std::abs(c);
    if (regime == Regime::Separatrix) {
        return sgn * kSqrtPi * std::exp(c * c) * std::pow(ac, 2.0 * alpha) * std::pow(2.0, 0.5 + alpha) *
               rgamma(0.5 + alpha);
    }
    if (regime != Regime::Oscillatory) {
        throw DomainError("total_integral_rhs: needs the oscillatory or separatrix regime, got " +
                          std::string(regime_name(regime)));
    }
    const std::complex<double> rho = rho_from_kappa(alpha, kappa);
    const std::complex<double> pref = (1.0 - rho) * std::complex<double>(cos_pi(alpha), sin_pi(alpha));
    if (std::abs(pref.imag()) > 1e-10 * std::max(1.0, std::abs(pref))) {
        throw NumericalFailure("total_integral_rhs: (1 - rho) e^{i pi alpha} is not real", c);
    }
    return sgn * kSqrtPi * std::exp(c * c / 3.0) * std::pow(ac, -2.0 * alpha) * std::pow(3.0, 2.0 * alpha) *
           pref.real() * rgamma(0.5 - alpha) * std::pow(2.0, 0.5 - alpha) / std::pow(1.0 - std::norm(rho), 2.0 / 3.0);
}

}  // namespace p4cm
