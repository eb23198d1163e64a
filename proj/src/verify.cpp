#include "p4cm/verify.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "p4cm/asymptotics.hpp"
#include "p4cm/errors.hpp"
#include "p4cm/fredholm.hpp"
#include "p4cm/integrals.hpp"
#include "p4cm/painleve.hpp"
#include "p4cm/specfun.hpp"

namespace p4cm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

double dist_to(const std::vector<double>& pts, double x) {
    double best = std::numeric_limits<double>::infinity();
    for (double p : pts) best = std::min(best, std::abs(p - x));
    return best;
}

std::vector<double> pole_locations(const Trajectory& traj) {
    std::vector<double> out;
    for (const PoleRecord& p : traj.poles()) out.push_back(p.location);
    return out;
}

// The alpha = 1/2 closed form has a pole where 2 = kappa sqrt(pi) erfc(x).
double half_pole_root(double kappa) {
    auto f = [&](double x) { return 2.0 - kappa * kSqrtPi * erfc(x); };
    boost::math::tools::eps_tolerance<double> tol(52);
    auto [a, b] = boost::math::tools::bisect(f, -6.0, 6.0, tol);
    return 0.5 * (a + b);
}

// sigma'' and sigma' at x from five sigma values at spacing h.
struct SigmaJet {
    double s, ds, dds;
};

SigmaJet sigma_jet(const KernelSpec& spec, double x, double h) {
    const Quadrature quad = default_quadrature(x);
    double v[5];
    for (int k = 0; k < 5; ++k) v[k] = sigma_from_det(spec, x + (k - 2) * h, quad, 1e-3).sigma;
    return {v[2], (-v[4] + 8.0 * v[3] - 8.0 * v[1] + v[0]) / (12.0 * h),
            (-v[4] + 16.0 * v[3] - 30.0 * v[2] + 16.0 * v[1] - v[0]) / (12.0 * h * h)};
}

}  // namespace

Check make_check(std::string name, double measured, double tolerance, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tolerance;
    c.passed = std::isfinite(measured) && measured < tolerance;
    c.detail = std::move(detail);
    return c;
}

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

// --- specfun -------------------------------------------------------------------

std::vector<Check> specfun_checks() {
    std::vector<Check> out;

    double weber = 0.0, recur = 0.0;
    for (int i = 0; i <= 24; ++i) {
        const double nu = -3.0 + 0.25 * i;
        for (int j = 0; j <= 64; ++j) {
            const double s = -8.0 + 0.25 * j;
            const double h = 2e-3;
            const double d0 = pcf_d(nu, s);
            const double scale = std::max(std::abs(d0), std::exp(-s * s / 4.0));
            auto second = [&](double e) { return (pcf_d(nu, s + e) - 2.0 * d0 + pcf_d(nu, s - e)) / (e * e); };
            const double dd = (4.0 * second(0.5 * h) - second(h)) / 3.0;
            weber = std::max(weber, std::abs(dd - (s * s / 4.0 - nu - 0.5) * d0) / scale);

            const double up = pcf_d(nu + 1.0, s), dn = pcf_d(nu - 1.0, s);
            const double rscale = std::max({std::abs(up), std::abs(s * d0), std::abs(nu * dn),
                                            std::exp(-s * s / 4.0)});
            recur = std::max(recur, std::abs(up - s * d0 + nu * dn) / rscale);
        }
    }
    out.push_back(make_check("weber residual", weber, 1e-6));
    out.push_back(make_check("three-term recurrence", recur, 1e-10));

    double herm = 0.0;
    for (int n = 0; n <= 5; ++n) {
        for (int j = 0; j <= 80; ++j) {
            const double x = -4.0 + 0.1 * j;
            const double want = std::exp(-x * x / 2.0) * std::pow(2.0, n / 2.0) * monic_hermite(n, x);
            const double scale = std::exp(-x * x / 2.0) * std::pow(2.0, n / 2.0) * std::pow(1.0 + std::abs(x), n);
            herm = std::max(herm, std::abs(pcf_d(n, std::numbers::sqrt2 * x) - want) / scale);
        }
    }
    out.push_back(make_check("hermite reduction", herm, 1e-10));

    double gam = 0.0;
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double lhs = 2.0 * log_gamma_complex({0.0, t}).real();
        const double rhs = std::log(kPi / (t * std::sinh(kPi * t)));
        gam = std::max(gam, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    out.push_back(make_check("|Gamma(it)|^2 = pi/(t sinh pi t)", gam, 1e-12));

    double rise = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 3000; ++j) {
        const double x = -5.0 + 0.01 * j;
        rise = std::max(rise, erfc(x + 0.01) - erfc(x));
    }
    out.push_back(make_check("erfc strictly decreasing", rise < 0.0 ? 0.0 : 1.0, 0.5,
                             fmt("largest step %.3e", rise)));

    out.push_back(make_check("D_1(2) = 2/e", std::abs(pcf_d(1.0, 2.0) - 2.0 / std::numbers::e), 1e-13));
    out.push_back(make_check("D_0(0) = 1", std::abs(pcf_d(0.0, 0.0) - 1.0), 1e-13));
    {
        const double s = 30.0, nu = 0.25;
        const double lead = std::pow(s, nu) * std::exp(-s * s / 4.0);
        out.push_back(make_check("D_0.25(30) against leading law", std::abs(pcf_d(nu, s) / lead - 1.0), 1e-3));
    }
    {
        const double h = 1e-5;
        const double fd = (pcf_d(0.3, 1.7 + h) - pcf_d(0.3, 1.7 - h)) / (2.0 * h);
        out.push_back(make_check("D' against central difference", std::abs(pcf_d_deriv(0.3, 1.7) - fd), 1e-8));
    }
    out.push_back(make_check("D'_1(0) = 1", std::abs(pcf_d_deriv(1.0, 0.0) - 1.0), 1e-13));
    out.push_back(make_check("ln Gamma(1/2)", std::abs(log_gamma_complex(0.5).real() - std::log(kSqrtPi)), 1e-14));
    out.push_back(make_check("Im ln Gamma(i)", std::abs(log_gamma_complex({0.0, 1.0}).imag() + 1.8724366472624298), 1e-12));
    out.push_back(make_check("erfc(1)", std::abs(erfc(1.0) - 0.15729920705028513), 1e-15));
    out.push_back(make_check("erfc reflection", std::abs(erfc(1.3) + erfc(-1.3) - 2.0), 1e-15));
    return out;
}

// --- ODE against the closed form -------------------------------------------------

Check exact_half_check(double kappa, double tol) {
    const Trajectory traj = integrate({0.5, kappa}, 8.0, -5.0, tol);
    const std::vector<double> poles = pole_locations(traj);
    double err = 0.0;
    for (int i = 0; i <= 13000; ++i) {
        const double x = 8.0 - 1e-3 * i;
        if (dist_to(poles, x) <= 0.1) continue;
        err = std::max(err, std::abs(traj.q(x) - exact_half(x, kappa)));
    }
    return make_check("alpha=1/2 kappa=" + fmt("%.7g", kappa) + " max |q - exact|", err, 1e-7,
                      fmt("%zu poles", poles.size()));
}

std::vector<Check> pole_oracle_checks(double tol) {
    const double kappa = 2.0 / kSqrtPi;
    const Trajectory traj = integrate({0.5, kappa}, 8.0, -5.0, tol);
    const double root = half_pole_root(kappa);
    // Laurent coefficient of the closed form, from (x - x0) q(x) as x -> x0.
    const double h = 1e-7;
    const double laurent = 0.5 * h * (exact_half(root + h, kappa) - exact_half(root - h, kappa));
    const int oracle_residue = static_cast<int>(std::lround(laurent));

    std::vector<Check> out;
    const auto poles = traj.poles();
    out.push_back(make_check("one pole", std::abs(static_cast<double>(poles.size()) - 1.0), 0.5,
                             fmt("%zu found", poles.size())));
    if (poles.empty()) return out;
    const PoleRecord& p = poles.front();
    out.push_back(make_check("pole location", std::abs(p.location - root), 1e-6,
                             fmt("found %.12g, root %.12g", p.location, root)));
    out.push_back(make_check("residue", p.residue == oracle_residue ? 0.0 : 1.0, 0.5,
                             fmt("found %+d, closed form %+d", p.residue, oracle_residue)));
    out.push_back(make_check("residue fit off integer", std::abs(p.fitted - p.residue), 0.05,
                             fmt("fit %.12f", p.fitted)));
    return out;
}

// --- Asymptotics ------------------------------------------------------------------

std::vector<Check> asymptote_checks(double alpha, double kappa, double lo, double hi,
                                    AsymptoteTarget target, double tol) {
    const ConnectionData data = connection_data(alpha, kappa);
    const Trajectory traj = integrate({alpha, kappa}, 8.0, lo - 0.5, tol);
    const std::vector<double> poles = pole_locations(traj);
    const bool use_h = target == AsymptoteTarget::H;
    const std::string tag = std::string(use_h ? "H" : "q") + " alpha=" + fmt("%g", alpha) +
                            " kappa=" + fmt("%.7g", kappa) + " ";

    // error(x) scaled by |x|, the regime's O(1/x) normalisation
    auto scaled_error = [&](double x) {
        const auto [q, dq] = traj.eval(x);
        if (use_h) {
            const double h = hamiltonian(q, dq, x, alpha);
            return std::abs(x) * std::abs(h - h_asym(x, data, alpha, kappa));
        }
        if (data.regime == Regime::Separatrix) return std::abs(x) * std::abs(q / (-2.0 * x) - 1.0);
        return std::abs(x) * std::abs(q - q_asym(x, data, alpha, kappa));
    };
    const int n = static_cast<int>(std::round((hi - lo) / 1e-3));
    std::vector<Check> out;

    if (data.regime == Regime::Oscillatory || data.regime == Regime::Separatrix) {
        double worst = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double x = hi - 1e-3 * i;
            if (dist_to(poles, x) <= 0.1) continue;
            worst = std::max(worst, scaled_error(x));
        }
        const double bound = use_h || data.regime == Regime::Oscillatory ? 5.0 : 0.3;
        out.push_back(make_check(tag + "max |x| error", worst, bound,
                                 fmt("regime %s, %zu poles", std::string(regime_name(data.regime)).c_str(),
                                     poles.size())));
        return out;
    }
    if (data.regime != Regime::SingularOscillatory)
        throw DomainError("asymptote_checks: regime " + std::string(regime_name(data.regime)) + " has no x -> -infinity law");

    const std::vector<double> pred = predicted_singularities(data, lo, hi);
    if (!use_h) {
        double worst = 0.0;
        int count = 0;
        for (double p : poles) {
            if (p < lo || p > hi) continue;
            ++count;
            worst = std::max(worst, dist_to(pred, p));
        }
        out.push_back(make_check(tag + "poles near predicted singularities", worst, 0.05,
                                 fmt("%d poles, %zu predicted", count, pred.size())));
    }
    double literal = 0.0, scaled = 0.0;
    int n_literal = 0, n_scaled = 0;
    for (int i = 0; i <= n; ++i) {
        const double x = hi - 1e-3 * i;
        const double d = std::min(dist_to(pred, x), dist_to(poles, x));
        if (d <= 1.0 / std::abs(x)) continue;
        const double e = scaled_error(x);
        ++n_scaled;
        scaled = std::max(scaled, e);
        if (d > 0.3) {
            ++n_literal;
            literal = std::max(literal, e);
        }
    }
    out.push_back(make_check(tag + "max |x| error, distance > 0.3", literal, 10.0,
                             n_literal == 0 ? std::string("no grid point is that far from a singularity")
                                            : fmt("%d points", n_literal)));
    out.push_back(make_check(tag + "max |x| error, distance > 1/|x|", scaled, 10.0,
                             fmt("%d points", n_scaled)));
    return out;
}

std::vector<Check> h_plus_infinity_checks(double alpha, double kappa, double x, double tol) {
    const ConnectionData data = connection_data(alpha, kappa);
    const double x2 = 1.5 * x;
    const Trajectory traj = integrate({alpha, kappa}, x2 + 2.0, x - 1.0, tol);
    auto deviation = [&](double x) {
        const auto [q, dq] = traj.eval(x);
        return hamiltonian(q, dq, x, alpha) / h_asym(x, data, alpha, kappa) - 1.0;
    };
    const std::string tag = "H alpha=" + fmt("%g", alpha) + " kappa=" + fmt("%.7g", kappa) + " ";
    const double d1 = deviation(x), d2 = deviation(x2);
    std::vector<Check> out;
    out.push_back(make_check(tag + "relative to decay law at x=" + fmt("%g", x), std::abs(d1), 1e-2,
                             fmt("x^2 times deviation %.4f", x * x * d1)));
    const double order = std::log(std::abs(d1 / d2)) / std::log(1.5);
    out.push_back(make_check(tag + "decay-law deviation order in 1/x, minus 2", std::abs(order - 2.0), 0.25,
                             fmt("order %.3f between x=%g and %g", order, x, x2)));
    return out;
}

// --- Fredholm --------------------------------------------------------------------

std::vector<Check> hermite_checks() {
    std::vector<Check> out;
    const Quadrature q0 = default_quadrature(0.0);
    out.push_back(make_check("n=1 det = 1/2", std::abs(fredholm_det({1.0, gamma_star(1.0)}, 0.0, q0).det - 0.5), 1e-8));
    out.push_back(make_check("n=2 det = 1/4 - 1/(2 pi)",
                             std::abs(fredholm_det({2.0, gamma_star(2.0)}, 0.0, q0).det - (0.25 - 0.5 / kPi)), 1e-7));
    out.push_back(make_check("gamma=0 det = 1", std::abs(fredholm_det({1.3, 0.0}, 0.0, q0).det - 1.0), 1e-15));
    {
        const double x = 0.5;
        const double s = sigma_from_det({1.0, gamma_star(1.0)}, x, default_quadrature(x)).sigma;
        const double want = std::exp(-x * x) / (kSqrtPi * (1.0 - erfc(x) / 2.0));
        out.push_back(make_check("n=1 sigma closed form at x=0.5", std::abs(s - want), 1e-7));
    }
    std::mt19937 rng(20240229);
    std::uniform_real_distribution<double> pt(0.0, 4.0), shift(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k < 20; ++k) {
            const double x = shift(rng), lam = pt(rng), mu = pt(rng);
            const double a = gamma_star(n) * kernel_eval({double(n), 0.0}, x, lam, mu);
            worst = std::max(worst, std::abs(a - hermite_kernel(n, x, lam, mu)));
        }
    }
    out.push_back(make_check("gamma* K_n = Hermite kernel, n=1..3", worst, 1e-10));
    double drop = 0.0, prev = 0.0;
    for (int i = 0; i <= 16; ++i) {
        const double x = -2.0 + 0.25 * i;
        const double d = fredholm_det({2.0, gamma_star(2.0)}, x, default_quadrature(x)).det;
        if (i > 0) drop = std::max(drop, prev - d);
        prev = d;
    }
    out.push_back(make_check("n=2 det nondecreasing in x", std::max(drop, 0.0), 1e-12));
    return out;
}

std::vector<Check> sigma_det_checks(double nu, double gamma, double tol) {
    const KernelSpec spec{nu, gamma};
    const std::string tag = "nu=" + fmt("%g", nu) + " gamma=" + fmt("%g", gamma) + " ";
    std::vector<Check> out;

    double residual = 0.0;
    for (int i = 0; i <= 16; ++i) {
        const double x = -1.0 + 0.25 * i;
        const SigmaJet j = sigma_jet(spec, x, 0.02);
        const double r = j.dds * j.dds + 4.0 * j.ds * j.ds * (j.ds + 2.0 * nu) -
                         4.0 * (x * j.ds - j.s) * (x * j.ds - j.s);
        residual = std::max(residual, std::abs(r));
    }
    out.push_back(make_check(tag + "sigma-form residual on [-1, 3]", residual, 1e-4));

    const double alpha = nu - 0.5, kappa = std::numbers::sqrt2 * gamma;
    const Trajectory traj = integrate({alpha, kappa}, 8.0, -1.5, tol);
    double bridge = 0.0, recover = 0.0;
    for (int i = 0; i <= 12; ++i) {
        const double x = 0.25 * i;
        const double s = sigma_from_det(spec, x, default_quadrature(x)).sigma;
        const auto [q, dq] = traj.eval(x);
        bridge = std::max(bridge, std::abs(s - sigma_from_q(q, dq, x, alpha)));
        if (x >= 0.5) {
            const SigmaJet j = sigma_jet(spec, x, 0.02);
            const double qr = -(j.dds + 2.0 * x * j.ds - 2.0 * j.s) / (2.0 * j.ds + 4.0 * alpha + 2.0);
            recover = std::max(recover, std::abs(qr - q));
        }
    }
    out.push_back(make_check(tag + "sigma against ODE on [0, 3]", bridge, 1e-5));
    out.push_back(make_check(tag + "q recovered from sigma on [0.5, 3]", recover, 1e-3));

    const double x5 = 5.0;
    const double d = pcf_d(nu - 1.0, std::numbers::sqrt2 * x5);
    const double law = std::numbers::sqrt2 * gamma * d * d;
    const double s5 = sigma_from_det(spec, x5, default_quadrature(x5)).sigma;
    out.push_back(make_check(tag + "boundary law at x=5 (relative)", std::abs(s5 / law - 1.0), 1e-2));

    const double l80 = fredholm_det(spec, -1.0, default_quadrature(-1.0, 80)).logdet;
    const double l160 = fredholm_det(spec, -1.0, default_quadrature(-1.0, 160)).logdet;
    out.push_back(make_check(tag + "logdet change on doubling m", std::abs(l80 - l160), 1e-10));
    return out;
}

// --- Integrals -------------------------------------------------------------------

std::vector<Check> total_integral_checks(double alpha, double kappa, double tol) {
    TotalIntegralOptions opts;
    opts.tol = tol;
    const std::string tag = "alpha=" + fmt("%g", alpha) + " kappa=" + fmt("%.7g", kappa) + " ";
    const IntegralReport a = verify_total_integral({alpha, kappa}, -1.0, 1.0, opts);
    const IntegralReport b = verify_total_integral({alpha, kappa}, -2.0, 2.0, opts);
    std::vector<Check> out;
    out.push_back(make_check(tag + "total integral rel error", a.rel_error, 1e-2,
                             fmt("lhs %.10g, rhs %.10g", a.lhs_exp, a.rhs)));
    out.push_back(make_check(tag + "negative tail converged", a.tail.cauchy, kTailCauchyTol));
    out.push_back(make_check(tag + "lhs/rhs shift c by -1, d by +1", std::abs(a.lhs_exp / a.rhs - b.lhs_exp / b.rhs), 1e-4));
    return out;
}

std::vector<Check> integral_oracle_checks(double tol) {
    std::vector<Check> out;
    const double kappa = 2.0 / kSqrtPi;
    const Trajectory traj = integrate({0.5, kappa}, 8.0, -3.0, tol);
    auto antider = [&](double t) { return std::log(std::abs(2.0 - kappa * kSqrtPi * erfc(t))); };
    const double pv = principal_value_mid(traj, -1.0, 1.0);
    out.push_back(make_check("P.V. against closed form", std::abs(pv - (antider(1.0) - antider(-1.0))), 1e-6));
    out.push_back(make_check("P.V. window 0.1 vs 0.05", std::abs(pv - principal_value_mid(traj, -1.0, 1.0, 0.05)), 1e-8));

    const Trajectory smooth = integrate({0.5, 0.3}, 8.0, -3.0, tol);
    const double want = std::log(2.0 / (2.0 - 0.3 * kSqrtPi * erfc(1.0)));
    out.push_back(make_check("positive tail against closed form", std::abs(tail_pos(smooth, 1.0) - want), 1e-8));
    const Trajectory longer = integrate({0.5, 0.3}, 10.0, -3.0, tol);
    out.push_back(make_check("positive tail, later start", std::abs(tail_pos(longer, 1.0) - tail_pos(smooth, 1.0)), 1e-10));
    return out;
}

// --- Suites ----------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"exact-half", "asymptotics", "hamiltonian", "sigma-det",
                                                "hermite", "integrals", "specfun"};
    return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = std::string(name);
    auto add = [&](std::vector<Check> v) { rep.checks.insert(rep.checks.end(), v.begin(), v.end()); };
    const double tol = opts.tol;

    if (name == "exact-half") {
        // Errors before a pole are amplified after it; the closed-form oracles run at the tightest tol.
        for (double k : {0.1, 0.3, 1.0 / kSqrtPi, 2.0 / kSqrtPi}) rep.checks.push_back(exact_half_check(k, 1e-12));
        add(pole_oracle_checks(1e-12));
        const Trajectory zero = integrate({0.5, 0.0}, 8.0, -5.0, tol);
        double worst = 0.0;
        for (const auto& s : zero.samples()) worst = std::max(worst, std::abs(s.q));
        rep.checks.push_back(make_check("kappa=0 trajectory is zero", worst, 1e-300));
    } else if (name == "asymptotics") {
        add(asymptote_checks(0.0, 0.25 / kPi, -30.0, -15.0, AsymptoteTarget::Q, tol));
        add(asymptote_checks(0.25, 0.5 * kappa_star(0.25), -30.0, -15.0, AsymptoteTarget::Q, tol));
        add(asymptote_checks(0.0, kappa_star(0.0), -25.0, -10.0, AsymptoteTarget::Q, tol));
        add(asymptote_checks(0.25, kappa_star(0.25), -25.0, -10.0, AsymptoteTarget::Q, tol));
        add(asymptote_checks(0.0, 2.0 / kPi, -14.0, -8.0, AsymptoteTarget::Q, tol));
        add(asymptote_checks(-0.5, 0.2, -14.0, -8.0, AsymptoteTarget::Q, tol));
    } else if (name == "hamiltonian") {
        add(asymptote_checks(0.0, 0.25 / kPi, -30.0, -15.0, AsymptoteTarget::H, tol));
        add(asymptote_checks(0.25, 0.5 * kappa_star(0.25), -30.0, -15.0, AsymptoteTarget::H, tol));
        add(asymptote_checks(0.0, kappa_star(0.0), -25.0, -10.0, AsymptoteTarget::H, tol));
        add(asymptote_checks(0.25, kappa_star(0.25), -25.0, -10.0, AsymptoteTarget::H, tol));
        add(asymptote_checks(0.0, 2.0 / kPi, -14.0, -8.0, AsymptoteTarget::H, tol));
        add(asymptote_checks(-0.5, 0.2, -14.0, -8.0, AsymptoteTarget::H, tol));
        add(h_plus_infinity_checks(opts.alpha, opts.kappa, 10.0, tol));

        const Trajectory traj = integrate({opts.alpha, opts.kappa}, 8.0, -1.5, tol);
        const double h = 1e-3;
        auto H = [&](double x) {
            const auto [q, dq] = traj.eval(x);
            return hamiltonian(q, dq, x, opts.alpha);
        };
        const auto [q1, dq1] = traj.eval(1.0);
        const double dh = (H(1.0 + h) - H(1.0 - h)) / (2.0 * h);
        rep.checks.push_back(make_check("dH/dx = q^2 + 2xq at x=1", std::abs(dh - (q1 * q1 + 2.0 * q1)), 1e-6));
        double residual = 0.0;
        const double nu = opts.alpha + 0.5;
        auto sig = [&](double x) {
            const auto [q, dq] = traj.eval(x);
            return sigma_from_q(q, dq, x, opts.alpha);
        };
        for (int i = 0; i <= 16; ++i) {
            const double x = -1.0 + 0.25 * i, e = 0.01;
            const double s = sig(x), sp = sig(x + e), sm = sig(x - e), sp2 = sig(x + 2 * e), sm2 = sig(x - 2 * e);
            const double ds = (-sp2 + 8 * sp - 8 * sm + sm2) / (12 * e);
            const double dds = (-sp2 + 16 * sp - 30 * s + 16 * sm - sm2) / (12 * e * e);
            const double r = dds * dds + 4 * ds * ds * (ds + 2 * nu) - 4 * (x * ds - s) * (x * ds - s);
            residual = std::max(residual, std::abs(r));
        }
        rep.checks.push_back(make_check("sigma-form residual along the trajectory on [-1, 3]", residual, 1e-5));
        const Trajectory half = integrate({0.5, 0.3}, 8.0, 5.0, tol);
        const auto [q6, dq6] = half.eval(6.0);
        rep.checks.push_back(make_check("alpha=1/2 kappa=0.3 |H(6)|", std::abs(hamiltonian(q6, dq6, 6.0, 0.5)), 1e-12));
    } else if (name == "sigma-det") {
        add(sigma_det_checks(opts.nu, opts.gamma, tol));
    } else if (name == "hermite") {
        add(hermite_checks());
    } else if (name == "integrals") {
        add(total_integral_checks(0.25, 0.1, tol));
        add(total_integral_checks(0.25, kappa_star(0.25), tol));
        add(integral_oracle_checks(1e-12));
    } else if (name == "specfun") {
        add(specfun_checks());
    } else {
        throw DomainError("unknown suite '" + std::string(name) + "'");
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace p4cm
