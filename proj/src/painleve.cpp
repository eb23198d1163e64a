#include "p4cm/painleve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "p4cm/errors.hpp"
#include "p4cm/specfun.hpp"

namespace p4cm {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kSqrtPi = std::sqrt(std::numbers::pi);

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

}  // namespace

bool Params::half_integer_pos() const {
    const double n = alpha + 0.5;
    return n >= 1.0 && is_integer(n);
}

bool Params::half_integer_neg() const {
    const double n = 0.5 - alpha;
    return n >= 1.0 && is_integer(n);
}

double State::q() const {
    switch (chart) {
        case Chart::Direct: return u;
        case Chart::Root: return sign * u * u;
        case Chart::Inverse:
            if (u == 0.0) throw PoleError("State::q at a pole");
            return 1.0 / u;
    }
    return 0.0;
}

double State::dq() const {
    switch (chart) {
        case Chart::Direct: return du;
        case Chart::Root: return 2.0 * sign * u * du;
        case Chart::Inverse:
            if (u == 0.0) throw PoleError("State::dq at a pole");
            return -du / (u * u);
    }
    return 0.0;
}

State to_chart(const State& s, Chart target) {
    if (s.chart == target) return s;
    const double q = s.q();
    const double dq = s.dq();
    State out{s.x, target, 0.0, 0.0, sign_of(q)};
    switch (target) {
        case Chart::Direct:
            out.u = q;
            out.du = dq;
            break;
        case Chart::Root: {
            if (q == 0.0) throw DomainError("Root chart conversion needs q != 0");
            out.u = std::sqrt(std::abs(q));
            out.du = dq / (2.0 * out.sign * out.u);
            break;
        }
        case Chart::Inverse:
            if (q == 0.0) throw DomainError("Inverse chart conversion needs q != 0");
            out.u = 1.0 / q;
            out.du = -dq / (q * q);
            break;
    }
    return out;
}

double piv_rhs(double x, double q, double dq, double alpha) {
    if (q == 0.0) throw PoleError("piv_rhs: q = 0");
    return dq * dq / (2.0 * q) + 1.5 * q * q * q + 4.0 * x * q * q + 2.0 * (x * x - 2.0 * alpha) * q;
}

double root_chart_rhs(double x, double v, int sign, double alpha) {
    const double v2 = v * v;
    return v * ((x * x - 2.0 * alpha) + 2.0 * sign * x * v2 + 0.75 * v2 * v2);
}

double inverse_chart_rhs(double x, double w, double dw, double alpha) {
    const double lin = 4.0 * x + 2.0 * (x * x - 2.0 * alpha) * w;
    if (std::abs(w) < kInverseRegularRadius) {
        if (std::abs(dw * dw - 1.0) > kInverseRegularityTol) {
            throw NumericalFailure("inverse chart: w = 0 with w'^2 - 1 = " + std::to_string(dw * dw - 1.0) +
                                       " (not a simple pole of residue +-1)",
                                   x);
        }
        // (w'^2 - 1)/w = 4x + 4(x^2 - 2 alpha) w + 4 w w' + O(w^2)
        const double regular = 4.0 * x + 4.0 * (x * x - 2.0 * alpha) * w + 4.0 * w * dw;
        return 1.5 * regular - lin;
    }
    return 1.5 * (dw * dw - 1.0) / w - lin;
}

double hamiltonian(double q, double dq, double x, double alpha) {
    if (q == 0.0) throw PoleError("hamiltonian: q = 0");
    return q * q * q / 4.0 + x * q * q + (x * x - 2.0 * alpha) * q - dq * dq / (4.0 * q);
}

double sigma_from_q(double q, double dq, double x, double alpha) {
    return 0.5 * (q - hamiltonian(q, dq, x, alpha));
}

double exact_half(double x, double kappa) {
    if (kappa == 0.0) return 0.0;
    // for x < 0 use erfc(x) = 2 - erfc(-x); kappa within 1e-12 of 1/sqrt(pi) is the separatrix itself
    double k = kappa * kSqrtPi;
    if (std::abs(k - 1.0) <= 1e-12) k = 1.0;
    const double den = x < 0.0 ? 2.0 * (1.0 - k) + k * erfc(-x) : 2.0 - k * erfc(x);
    if (den == 0.0 || std::abs(den) < 1e-300) throw PoleError("exact_half: denominator vanishes");
    return 2.0 * kappa * std::exp(-x * x) / den;
}

double exact_half_deriv(double x, double kappa) {
    // q = N/D with N = 2 kappa e^{-x^2}, D' = N, so q' = -2x q - q^2.
    const double q = exact_half(x, kappa);
    return -2.0 * x * q - q * q;
}

State seed_at_plus_infinity(const Params& params, double x0) {
    if (params.kappa == 0.0) return {x0, Chart::Direct, 0.0, 0.0, 1};
    const double nu = params.alpha - 0.5;
    const double s = kSqrt2 * x0;
    const PcfJet d = pcf_jet(nu, s);
    const double q = params.kappa * d.value * d.value;
    if (std::abs(q) < 1e-300) {
        throw RangeError("seed underflows at x0 = " + std::to_string(x0) + "; choose a smaller x0");
    }
    const double dq = 2.0 * kSqrt2 * params.kappa * d.value * d.deriv;
    return {x0, Chart::Direct, q, dq, sign_of(params.kappa)};
}

State root_seed(const Params& params, double x0) {
    const double nu = params.alpha - 0.5;
    const double s = kSqrt2 * x0;
    const PcfJet d = pcf_jet(nu, s);
    const double amp = std::sqrt(std::abs(params.kappa));
    return {x0, Chart::Root, amp * d.value, amp * kSqrt2 * d.deriv, sign_of(params.kappa)};
}

double choose_seed_point(const Params& params) {
    if (params.kappa == 0.0) return 6.0;
    const double nu = params.alpha - 0.5;
    double x0 = 6.0;
    for (; x0 < 12.0; x0 += 0.5) {
        const double d = pcf_d(nu, kSqrt2 * x0);
        // ratio of the cubic term 2 x v^3 to the linear term x^2 v in the Root chart
        const double nonlinear = 2.0 * std::abs(params.kappa) * d * d / x0;
        if (nonlinear < 1e-16 && std::abs(d) > 1e-150) break;
    }
    return std::min(x0, 12.0);
}

double separatrix_series(double x, double alpha) {
    const double a = alpha;
    const double a2 = a * a;
    const double c0 = -2.0 * a;
    const double c1 = (12.0 * a2 + 1.0) / 4.0;
    const double c2 = -a * (36.0 * a2 + 11.0) / 4.0;
    const double c3 = (2160.0 * a2 * a2 + 1560.0 * a2 + 67.0) / 64.0;
    const double c4 = -a * (9072.0 * a2 * a2 + 12472.0 * a2 + 1963.0) / 64.0;
    const double y = 1.0 / x;
    const double y2 = y * y;
    return -2.0 * x + y * (c0 + y2 * (c1 + y2 * (c2 + y2 * (c3 + y2 * c4))));
}

double separatrix_series_deriv(double x, double alpha) {
    const double a = alpha;
    const double a2 = a * a;
    const double c0 = -2.0 * a;
    const double c1 = (12.0 * a2 + 1.0) / 4.0;
    const double c2 = -a * (36.0 * a2 + 11.0) / 4.0;
    const double c3 = (2160.0 * a2 * a2 + 1560.0 * a2 + 67.0) / 64.0;
    const double c4 = -a * (9072.0 * a2 * a2 + 12472.0 * a2 + 1963.0) / 64.0;
    const double y = 1.0 / x;
    const double y2 = y * y;
    return -2.0 - y2 * (c0 + y2 * (3.0 * c1 + y2 * (5.0 * c2 + y2 * (7.0 * c3 + y2 * 9.0 * c4))));
}

}  // namespace p4cm
