#include "p4cm/fredholm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "p4cm/errors.hpp"
#include "p4cm/specfun.hpp"

namespace p4cm {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct NodeValues {
    double a = 0.0;
    double d_nu = 0.0;
    double d_nu_m1 = 0.0;
};

NodeValues node_values(double nu, double x, double lam) {
    const double a = kSqrt2 * (lam + x);
    const PcfValue v = pcf_value(nu, a);
    return {a, v.d_nu, v.d_nu_m1};
}

double kernel_from(double nu, double lam, double mu, const NodeValues& p, const NodeValues& r) {
    if (std::abs(lam - mu) <= kKernelDiagEps) {
        return kSqrt2 * (p.d_nu * p.d_nu + nu * p.d_nu_m1 * p.d_nu_m1 - p.a * p.d_nu * p.d_nu_m1);
    }
    return (p.d_nu * r.d_nu_m1 - p.d_nu_m1 * r.d_nu) / (lam - mu);
}

}  // namespace

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    if (m < 1) throw DomainError("gauss_legendre: m must be positive");
    nodes.assign(m, 0.0);
    weights.assign(m, 0.0);
    const double pi = std::numbers::pi;
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) p0 = 1.0;
            dp = m * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (m == 1) ? 1.0 : m * (t * p1 - p0) / (t * t - 1.0);
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        nodes[i] = -t;
        nodes[m - 1 - i] = t;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) nodes[m / 2] = 0.0;
}

Quadrature make_quadrature(int m, double truncation) {
    if (!(truncation > 0.0)) throw DomainError("make_quadrature: truncation must be positive");
    Quadrature q;
    gauss_legendre(m, q.nodes, q.weights);
    for (int i = 0; i < m; ++i) {
        q.nodes[i] = 0.5 * truncation * (q.nodes[i] + 1.0);
        q.weights[i] *= 0.5 * truncation;
    }
    q.truncation = truncation;
    q.size = m;
    return q;
}

Quadrature default_quadrature(double x, int m) { return make_quadrature(m, std::max(8.0, 8.0 - x)); }

double kernel_eval(const KernelSpec& spec, double x, double lam, double mu) {
    if (lam < 0.0 || mu < 0.0) throw DomainError("kernel_eval: lam and mu must be nonnegative");
    const NodeValues p = node_values(spec.nu, x, lam);
    const NodeValues r = node_values(spec.nu, x, mu);
    return kernel_from(spec.nu, lam, mu, p, r);
}

DetResult fredholm_det(const KernelSpec& spec, double x, const Quadrature& quad) {
    DetResult out;
    out.x = x;
    if (spec.gamma == 0.0) return out;
    const int m = quad.size;
    std::vector<NodeValues> vals(m);
    std::vector<double> sw(m);
    for (int i = 0; i < m; ++i) {
        vals[i] = node_values(spec.nu, x, quad.nodes[i]);
        sw[i] = std::sqrt(quad.weights[i]);
    }
    Eigen::MatrixXd a(m, m);  // -gamma W^{1/2} K W^{1/2}
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const double k = kernel_from(spec.nu, quad.nodes[i], quad.nodes[j], vals[i], vals[j]);
            const double v = -spec.gamma * sw[i] * sw[j] * k;
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    // Close to the identity the LU diagonal 1 + O(a) drops the digits of a, so use
    // log det(I + a) = sum_k (-1)^{k+1} tr(a^k) / k instead.
    const double norm = a.norm();
    if (norm < 0.25) {
        Eigen::MatrixXd p = a;
        double logdet = p.trace();
        double bound = norm;
        for (int k = 2; k < 200; ++k) {
            p = p * a;
            bound *= norm;
            const double term = p.trace() / k;
            logdet += (k % 2 == 0) ? -term : term;
            if (bound / k <= 1e-17 * std::abs(logdet)) break;
        }
        out.logdet = logdet;
        out.det = std::exp(logdet);
        return out;
    }
    a += Eigen::MatrixXd::Identity(m, m);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::MatrixXd& u = lu.matrixLU();
    double logdet = 0.0;
    double sign = lu.permutationP().determinant();
    for (int i = 0; i < m; ++i) {
        const double d = u(i, i);
        if (d < 0.0) sign = -sign;
        logdet += std::log(std::abs(d));
    }
    if (!(sign > 0.0) || !std::isfinite(logdet)) {
        throw NumericalFailure("fredholm_det: determinant is not positive at x = " + std::to_string(x) +
                                   "; gamma exceeds the inverse operator norm, or m is too small",
                               x);
    }
    out.logdet = logdet;
    out.det = std::exp(logdet);
    return out;
}

DetResult sigma_from_det(const KernelSpec& spec, double x, const Quadrature& quad, double h) {
    if (!(h >= 1e-5 && h <= 1e-2)) throw DomainError("sigma_from_det: h must lie in [1e-5, 1e-2]");
    DetResult out = fredholm_det(spec, x, quad);
    if (spec.gamma == 0.0) return out;
    auto f = [&](double xx) { return fredholm_det(spec, xx, quad).logdet; };
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    out.sigma = (4.0 * d2 - d1) / 3.0;
    return out;
}

double monic_hermite(int k, double t) {
    if (k < 0) throw DomainError("monic_hermite: negative degree");
    double p0 = 1.0;
    if (k == 0) return p0;
    double p1 = t;
    for (int j = 1; j < k; ++j) {
        const double p2 = t * p1 - 0.5 * j * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double hermite_kernel(int n, double x, double lam, double mu) {
    if (n < 1) throw DomainError("hermite_kernel: n must be at least 1");
    const double s = lam + x, t = mu + x;
    const double g2 = std::pow(2.0, n - 1) / (std::sqrt(std::numbers::pi) * std::tgamma(n));
    const double env = std::exp(-(s * s + t * t) / 2.0);
    if (std::abs(lam - mu) <= kKernelDiagEps) {
        // pi_k' = k pi_{k-1}
        const double pn = monic_hermite(n, s), pn1 = monic_hermite(n - 1, s);
        const double dpn = n * pn1;
        const double dpn1 = n >= 2 ? (n - 1) * monic_hermite(n - 2, s) : 0.0;
        return env * g2 * (dpn * pn1 - dpn1 * pn);
    }
    const double num = monic_hermite(n, s) * monic_hermite(n - 1, t) - monic_hermite(n - 1, s) * monic_hermite(n, t);
    return env * g2 * num / (lam - mu);
}

double gamma_star(double nu) { return rgamma(nu) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace p4cm
