// Boundary-value continuation of the kappa = kappa* solution below the shooting range.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "p4cm/errors.hpp"
#include "p4cm/painleve.hpp"

namespace p4cm {

namespace {

// Thomas algorithm; sub/diag/super are overwritten.
void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& super,
                       std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * super[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - super[i] * rhs[i + 1]) / diag[i];
}

// First derivative on a uniform grid, fourth order (one-sided near the ends).
std::vector<double> differentiate(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= 2 && i + 2 < n) {
            d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
        } else if (i < 2) {
            d[i] = (-25.0 * f[i] + 48.0 * f[i + 1] - 36.0 * f[i + 2] + 16.0 * f[i + 3] - 3.0 * f[i + 4]) /
                   (12.0 * h);
        } else {
            d[i] = (25.0 * f[i] - 48.0 * f[i - 1] + 36.0 * f[i - 2] - 16.0 * f[i - 3] + 3.0 * f[i - 4]) /
                   (12.0 * h);
        }
    }
    return d;
}

}  // namespace

Trajectory solve_separatrix(const Params& params, double x_from, double x_to, const IntegrateOptions& opts,
                            const SeparatrixOptions& sep, SeparatrixReport* report) {
    if (!(x_to < sep.x_match)) return shoot(params, x_from, x_to, opts);
    // the shot feeds the unstable direction, so it runs at the tightest tolerance
    IntegrateOptions shot_opts = opts;
    shot_opts.tol = 1e-12;
    const Trajectory shot = shoot(params, x_from, sep.x_match, shot_opts);
    if (!shot.poles().empty()) {
        throw DomainError("solve_separatrix: shooting trajectory has poles above x_match; not a separatrix");
    }
    const auto [q_match, dq_match] = shot.eval(sep.x_match);
    if (!(q_match > 0.0)) {
        throw DomainError("solve_separatrix: q(x_match) <= 0; the solution is not near -2x there");
    }

    // Grid x_k = x_match - k h, with x_to a node and the far boundary below it.
    const int n_keep = std::max(8, static_cast<int>(std::ceil((sep.x_match - x_to) / sep.grid_step)));
    const double h = (sep.x_match - x_to) / n_keep;
    const int n_total = n_keep + static_cast<int>(std::ceil(sep.far_margin / h));
    const double x_far = sep.x_match - n_total * h;

    std::vector<double> xs(n_total + 1), q(n_total + 1);
    for (int k = 0; k <= n_total; ++k) xs[k] = sep.x_match - k * h;
    const double mismatch = q_match - separatrix_series(sep.x_match, params.alpha);
    for (int k = 0; k <= n_total; ++k) {
        const double decay = std::exp(-(xs[k] * xs[k] - sep.x_match * sep.x_match));
        q[k] = separatrix_series(xs[k], params.alpha) + mismatch * decay;
    }
    q[0] = q_match;
    q[n_total] = separatrix_series(x_far, params.alpha);

    // Newton on q_{k+1} - 2 q_k + q_{k-1} = h^2 F(x_k, q_k, (q_{k-1} - q_{k+1}) / (2h)); grid runs downward.
    const int m = n_total - 1;
    std::vector<double> sub(m), diag(m), super(m), rhs(m);
    int iter = 0;
    double last_update = 0.0;
    for (; iter < sep.max_newton; ++iter) {
        double scale = 0.0;
        for (int i = 0; i < m; ++i) {
            const int k = i + 1;
            const double qk = q[k];
            if (!(qk > 0.0)) throw NumericalFailure("solve_separatrix: Newton iterate left q > 0", xs[k]);
            const double dq = (q[k - 1] - q[k + 1]) / (2.0 * h);  // d/dx with x decreasing in k
            const double x = xs[k];
            const double f = piv_rhs(x, qk, dq, params.alpha);
            const double f_q = -dq * dq / (2.0 * qk * qk) + 4.5 * qk * qk + 8.0 * x * qk +
                               2.0 * (x * x - 2.0 * params.alpha);
            const double f_p = dq / qk;
            rhs[i] = -((q[k + 1] - 2.0 * q[k] + q[k - 1]) - h * h * f);
            // d dq / d q_{k-1} = 1/(2h), d dq / d q_{k+1} = -1/(2h)
            sub[i] = 1.0 - h * h * f_p / (2.0 * h);
            super[i] = 1.0 + h * h * f_p / (2.0 * h);
            diag[i] = -2.0 - h * h * f_q;
            scale = std::max(scale, std::abs(qk));
        }
        solve_tridiagonal(sub, diag, super, rhs);
        last_update = 0.0;
        for (int i = 0; i < m; ++i) {
            q[i + 1] += rhs[i];
            last_update = std::max(last_update, std::abs(rhs[i]));
        }
        if (last_update < 1e-13 * scale) break;
    }
    if (iter == sep.max_newton) {
        throw NumericalFailure("solve_separatrix: Newton did not converge (last update " +
                                   std::to_string(last_update) + ")",
                               sep.x_match);
    }

    // The grid runs downward, so the derivative along k is -dq/dx.
    std::vector<double> dq = differentiate(q, -h);

    std::vector<Segment> segments(shot.segments().begin(), shot.segments().end());
    for (int k = 0; k < n_keep; ++k) {
        Segment s;
        s.x0 = xs[k];
        s.x1 = (k + 1 == n_keep) ? x_to : xs[k + 1];
        s.chart = Chart::Direct;
        s.sign = 1;
        s.u0 = q[k];
        s.du0 = dq[k];
        s.ddu0 = piv_rhs(xs[k], q[k], dq[k], params.alpha);
        s.u1 = q[k + 1];
        s.du1 = dq[k + 1];
        s.ddu1 = piv_rhs(xs[k + 1], q[k + 1], dq[k + 1], params.alpha);
        segments.push_back(s);
    }
    if (report != nullptr) {
        report->x_match = sep.x_match;
        report->x_far = x_far;
        report->slope_shot = dq_match;
        report->slope_bvp = dq[0];
        report->newton_iterations = iter + 1;
        report->newton_residual = last_update;
    }
    return Trajectory(params, std::move(segments), {}, opts.pole_radius);
}

}  // namespace p4cm
