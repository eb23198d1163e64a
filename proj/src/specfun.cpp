#include "p4cm/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "p4cm/errors.hpp"

namespace p4cm {

namespace {

constexpr double kPi = std::numbers::pi;

// Start of the large-argument regime for order nu.
double asymptotic_switch(double nu) { return 10.0 + std::abs(nu); }

void check_argument(double nu, double s) {
    if (!std::isfinite(nu) || !std::isfinite(s)) {
        throw RangeError("parabolic cylinder function: non-finite input");
    }
    if (std::abs(s) > kPcfMaxArgument) {
        throw RangeError("parabolic cylinder function: |s| = " + std::to_string(std::abs(s)) +
                         " exceeds the representable range");
    }
}

// Sum of the large-argument series without the s^nu e^{-s^2/4} prefactor.
double asymptotic_series(double nu, double s) {
    const double z = 2.0 * s * s;
    double term = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 0; k < 400; ++k) {
        // t_{k+1} / t_k = -(-nu + 2k)(-nu + 2k + 1) / ((k+1) z)
        const double ratio = -((-nu + 2.0 * k) * (-nu + 2.0 * k + 1.0)) / ((k + 1.0) * z);
        const double next = term * ratio;
        if (std::abs(next) > std::abs(prev) && k > 0) break;  // past the smallest term
        term = next;
        sum += term;
        prev = term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// One Taylor step of y'' = (s^2/4 - a) y from s0 to s0 + h.
void weber_taylor_step(double a, double s0, double h, double& y, double& dy) {
    const double p0 = s0 * s0 / 4.0 - a;
    const double p1 = s0 / 2.0;
    constexpr double p2 = 0.25;
    double cm2 = 0.0, cm1 = 0.0;
    double c0 = y, c1 = dy;
    double hk = 1.0;  // h^k for current c0 index k
    double val = c0 + c1 * h;
    double der = c1;
    double scale = std::max(std::abs(y), std::abs(dy) * std::abs(h)) + 1e-300;
    int small_run = 0;
    // c_k held in c0 (k) and c1 (k+1); advance to c_{k+2}.
    for (int k = 0; k < 300; ++k) {
        const double c2 = (p0 * c0 + p1 * cm1 + p2 * cm2) / ((k + 2.0) * (k + 1.0));
        // shift: c_{k-2} <- c_{k-1}, c_{k-1} <- c_k, c_k <- c_{k+1}, c_{k+1} <- c_{k+2}
        cm2 = cm1;
        cm1 = c0;
        c0 = c1;
        c1 = c2;
        hk *= h;  // now h^{k+1}
        const double t = c2 * hk * h;  // c_{k+2} h^{k+2}
        val += t;
        der += (k + 2.0) * c2 * hk;
        scale = std::max(scale, std::abs(val));
        if (std::abs(t) < 1e-19 * scale) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    y = val;
    dy = der;
}

// Integrate Weber's equation for order nu from s_from to s_to carrying (y, y').
void weber_propagate(double nu, double s_from, double s_to, double& y, double& dy) {
    const double a = nu + 0.5;
    double s = s_from;
    const double dir = s_to >= s_from ? 1.0 : -1.0;
    while ((s_to - s) * dir > 0.0) {
        const double hmax = std::min(0.5, 4.0 / (std::abs(s) + 1.0));
        const double h = dir * std::min(hmax, std::abs(s_to - s));
        weber_taylor_step(a, s, h, y, dy);
        s += h;
        if (std::abs(s_to - s) < 1e-15 * (1.0 + std::abs(s_to))) s = s_to;
    }
}

// D_nu and D'_nu for s >= 0.
PcfJet jet_nonnegative(double nu, double s) {
    const double s_switch = asymptotic_switch(nu);
    if (s >= s_switch) {
        const double d = pcf_d_asymptotic(nu, s);
        const double dm1 = pcf_d_asymptotic(nu - 1.0, s);
        return {d, -0.5 * s * d + nu * dm1};
    }
    double y = pcf_d_asymptotic(nu, s_switch);
    double dy = -0.5 * s_switch * y + nu * pcf_d_asymptotic(nu - 1.0, s_switch);
    weber_propagate(nu, s_switch, s, y, dy);
    return {y, dy};
}

}  // namespace

bool is_integer(double x) { return std::isfinite(x) && std::nearbyint(x) == x; }

double sin_pi(double x) {
    if (is_integer(x)) return 0.0;
    const double r = std::remainder(x, 2.0);  // in [-1, 1]
    if (std::abs(r) == 0.5) return r > 0 ? 1.0 : -1.0;
    return std::sin(kPi * r);
}

double cos_pi(double x) {
    if (is_integer(x - 0.5)) return 0.0;
    const double r = std::remainder(x, 2.0);
    if (r == 0.0) return 1.0;
    if (std::abs(r) == 1.0) return -1.0;
    return std::cos(kPi * r);
}

double rgamma(double x) {
    if (x <= 0.0 && is_integer(x)) return 0.0;
    if (x > 171.0) return 0.0;
    return 1.0 / std::tgamma(x);
}

double erfc(double x) { return std::erfc(x); }

double pcf_d_asymptotic(double nu, double s) {
    if (s <= 0.0) throw DomainError("pcf_d_asymptotic requires s > 0");
    const double log_prefactor = nu * std::log(s) - 0.25 * s * s;
    return std::exp(log_prefactor) * asymptotic_series(nu, s);
}

PcfJet pcf_at_origin(double nu) {
    const double sqrt_pi = std::sqrt(kPi);
    return {std::pow(2.0, nu / 2.0) * sqrt_pi * rgamma((1.0 - nu) / 2.0),
            -std::pow(2.0, (nu + 1.0) / 2.0) * sqrt_pi * rgamma(-nu / 2.0)};
}

PcfJet pcf_jet(double nu, double s) {
    check_argument(nu, s);
    if (s >= 0.0) return jet_nonnegative(nu, s);

    const double r = -s;
    const PcfJet rec = jet_nonnegative(nu, r);
    const double c = cos_pi(nu);
    // h = D_nu(-x) - cos(pi nu) D_nu(x); h(0) = D(0)(1 - cos), h'(0) = -D'(0)(1 + cos).
    const PcfJet origin = pcf_at_origin(nu);
    const double half_sin = sin_pi(nu / 2.0);
    const double half_cos = cos_pi(nu / 2.0);
    double h = origin.value * 2.0 * half_sin * half_sin;
    double dh = -origin.deriv * 2.0 * half_cos * half_cos;
    if (h != 0.0 || dh != 0.0) weber_propagate(nu, 0.0, r, h, dh);
    // d/ds of D_nu(s) at s = -r is minus the r-derivative.
    return {c * rec.value + h, -(c * rec.deriv + dh)};
}

double pcf_d(double nu, double s) { return pcf_jet(nu, s).value; }

PcfValue pcf_value(double nu, double s) {
    return {pcf_d(nu, s), pcf_d(nu - 1.0, s), nu, s};
}

double pcf_d_deriv(double nu, double s) {
    const PcfValue v = pcf_value(nu, s);
    return -0.5 * s * v.d_nu + nu * v.d_nu_m1;
}

std::complex<double> log_gamma_complex(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && is_integer(z.real())) {
        throw PoleError("log_gamma_complex: pole at z = " + std::to_string(z.real()));
    }
    // Shift until Re z is large enough for the Stirling series.
    constexpr double kShiftTarget = 15.0;
    std::complex<double> shifted = z;
    std::complex<double> log_shift = 0.0;
    while (shifted.real() < kShiftTarget) {
        log_shift += std::log(shifted);
        shifted += 1.0;
    }
    // B_{2j} / (2j (2j-1)) for j = 1..8
    static constexpr std::array<double, 8> kStirling = {
        1.0 / 12.0,         -1.0 / 360.0,      1.0 / 1260.0,       -1.0 / 1680.0,
        1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0,        -3617.0 / 122400.0};
    const std::complex<double> inv = 1.0 / shifted;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series = 0.0;
    std::complex<double> power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    const std::complex<double> stirling = (shifted - 0.5) * std::log(shifted) - shifted +
                                          0.5 * std::log(2.0 * kPi) + series;
    return stirling - log_shift;
}

}  // namespace p4cm
