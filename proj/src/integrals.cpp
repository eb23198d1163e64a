#include "p4cm/integrals.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "p4cm/errors.hpp"
#include "p4cm/specfun.hpp"

namespace p4cm {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

template <class F>
double gk(F f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-13);
}

// Integral of g(t, q(t)) over [a, b], one fixed Gauss rule per trajectory segment; the dense
// output is only C^2 at segment ends, which stalls adaptive rules.
template <class G>
double along_segments(const Trajectory& traj, double a, double b, G g) {
    if (b <= a) return 0.0;
    double sum = 0.0;
    for (const Segment& seg : traj.segments()) {
        const double lo = std::max(a, std::min(seg.x0, seg.x1));
        const double hi = std::min(b, std::max(seg.x0, seg.x1));
        if (hi <= lo) continue;
        auto f = [&](double t) {
            const auto [u, du] = hermite_eval(seg, t);
            const State st{t, seg.chart, u, du, seg.sign};
            return g(t, st.q());
        };
        sum += boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi);
    }
    return sum;
}

double separatrix_tail(double x, double alpha) {
    // q + 2t + 2a/t = c1 t^-3 + c2 t^-5 + ..., integrated over (-inf, x)
    const double a2 = alpha * alpha;
    const double c1 = (12.0 * a2 + 1.0) / 4.0;
    const double c2 = -alpha * (36.0 * a2 + 11.0) / 4.0;
    const double c3 = (2160.0 * a2 * a2 + 1560.0 * a2 + 67.0) / 64.0;
    const double c4 = -alpha * (9072.0 * a2 * a2 + 12472.0 * a2 + 1963.0) / 64.0;
    const double y = 1.0 / (x * x);
    return -(c1 * y / 2.0 + c2 * y * y / 4.0 + c3 * y * y * y / 6.0 + c4 * y * y * y * y / 8.0);
}

// Zero of w = 1/q next to a recorded pole, as the dense output sees it. Folding about this point
// (rather than the recorded location) keeps q(x0 + s) + q(x0 - s) bounded down to s -> 0.
double dense_pole(const Trajectory& traj, double x0) {
    const double r = 1e-4;
    double a = x0 - r, b = x0 + r;
    double fa = traj.inverse_value(a);
    const double fb = traj.inverse_value(b);
    if ((fa < 0.0) == (fb < 0.0)) return x0;
    for (int i = 0; i < 100 && b - a > 2e-16 * (1.0 + std::abs(x0)); ++i) {
        const double m = 0.5 * (a + b);
        const double fm = traj.inverse_value(m);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double regularized_integrand(double t, double q, double alpha, Regime regime) {
    switch (regime) {
        case Regime::Oscillatory: return q + 2.0 * t / 3.0 - 2.0 * alpha / t;
        case Regime::Separatrix: return q + 2.0 * t + 2.0 * alpha / t;
        default: throw DomainError("regularized_integrand: regime has no total-integral formula");
    }
}

TailResult regularized_tail_neg(const Trajectory& traj, double c, Regime regime) {
    const double alpha = traj.params().alpha;
    const double x_far = traj.x_end();
    if (!(c < 0.0)) throw DomainError("regularized_tail_neg: c must be negative");
    if (!(x_far <= c - 10.0)) {
        throw DomainError("regularized_tail_neg: trajectory must reach c - 10 (x_end = " + std::to_string(x_far) + ")");
    }
    for (const PoleRecord& p : traj.poles()) {
        if (p.location <= c) throw DomainError("regularized_tail_neg: pole below c at " + std::to_string(p.location));
    }
    auto f = [&](double t, double q) { return regularized_integrand(t, q, alpha, regime); };
    auto remainder = [&](double x) {
        if (regime == Regime::Separatrix) return separatrix_tail(x, alpha);
        // f ~ A sin phi with phi' = 2x/sqrt3: int_{-inf}^x f = -A cos phi(x)/phi'(x) + ... = -f'(x)/phi'(x)^2
        const auto [q, dq] = traj.eval(x);
        (void)q;
        const double df = dq + 2.0 / 3.0 + 2.0 * alpha / (x * x);
        const double dphi = 2.0 * x / kSqrt3;
        return -df / (dphi * dphi);
    };

    TailResult out;
    const double checks[3] = {x_far, x_far + 5.0, x_far + 10.0};
    double completed[3];
    // integrate piecewise from the far end upward, recording partial sums at the check points
    double acc = 0.0;
    double lo = x_far;
    for (int i = 0; i < 3; ++i) {
        const double hi = checks[i];
        acc += along_segments(traj, lo, hi, f);
        lo = hi;
        completed[i] = remainder(checks[i]) - acc;  // remainder(X) - int_{x_far}^{X} = value up to X
    }
    // completed[i] + int_{check_i}^{c} f is the full integral; compare the three completions
    const double upper = along_segments(traj, lo, c, f);
    const double from_far = acc + upper;  // int_{x_far}^{c}
    double lo_v = 1e300, hi_v = -1e300;
    for (int i = 0; i < 3; ++i) {
        const double total = completed[i] + from_far;
        lo_v = std::min(lo_v, total);
        hi_v = std::max(hi_v, total);
    }
    out.quadrature = from_far;
    out.remainder = remainder(x_far);
    out.value = out.quadrature + out.remainder;
    out.cauchy = hi_v - lo_v;
    out.converged = out.cauchy < kTailCauchyTol;
    return out;
}

double principal_value_mid(const Trajectory& traj, double c, double d, double delta, double delta_min) {
    if (!(c < d)) throw DomainError("principal_value_mid: need c < d");
    std::vector<PoleRecord> poles;
    for (const PoleRecord& p : traj.poles()) {
        if (p.location > c && p.location < d) poles.push_back(p);
        else if (std::abs(p.location - c) < delta_min || std::abs(p.location - d) < delta_min) {
            throw DomainError("principal_value_mid: pole at an endpoint");
        }
    }
    std::sort(poles.begin(), poles.end(), [](const auto& a, const auto& b) { return a.location < b.location; });
    auto q = [&](double t) { return traj.q(t); };
    auto plain = [](double, double v) { return v; };

    double sum = 0.0;
    double left = c;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        const double x0 = dense_pole(traj, poles[i].location);
        double gap = std::min(x0 - c, d - x0);
        if (i > 0) gap = std::min(gap, 0.5 * (x0 - poles[i - 1].location));
        if (i + 1 < poles.size()) gap = std::min(gap, 0.5 * (poles[i + 1].location - x0));
        const double dl = std::min(delta, 0.9 * gap);
        if (dl < delta_min) {
            throw NumericalFailure("principal_value_mid: poles too close for a P.V. window near x = " +
                                       std::to_string(x0),
                                   x0);
        }
        sum += along_segments(traj, left, x0 - dl, plain);
        // the 1/(t - x0) parts cancel in q(x0 + s) + q(x0 - s)
        sum += gk([&](double s) { return q(x0 + s) + q(x0 - s); }, 0.0, dl);
        left = x0 + dl;
    }
    sum += along_segments(traj, left, d, plain);
    return sum;
}

double tail_pos(const Trajectory& traj, double d) {
    const double x_start = traj.x_start();
    for (const PoleRecord& p : traj.poles()) {
        if (p.location >= d) throw DomainError("tail_pos: pole above d at " + std::to_string(p.location));
    }
    const Params& prm = traj.params();
    if (prm.kappa == 0.0) return 0.0;
    const double body = along_segments(traj, d, x_start, [](double, double v) { return v; });
    const double nu = prm.alpha - 0.5;
    auto seed = [&](double t) {
        const double dv = pcf_d(nu, std::numbers::sqrt2 * t);
        return prm.kappa * dv * dv;
    };
    // the seed law has dropped below e^{-x^2} ~ 1e-300 well before x_start + 30
    double beyond = 0.0;
    for (double a = x_start; a < std::min(x_start + 30.0, kPcfMaxArgument / std::numbers::sqrt2 - 1.0); a += 1.0) {
        const double piece = gk(seed, a, a + 1.0);
        beyond += piece;
        if (std::abs(piece) < 1e-300 || std::abs(piece) < 1e-18 * std::abs(beyond)) break;
    }
    return body + beyond;
}

IntegralReport total_integral_from(const Trajectory& traj, double c, double d) {
    const Params& prm = traj.params();
    const Regime regime = classify(prm.alpha, prm.kappa);
    if (regime != Regime::Oscillatory && regime != Regime::Separatrix) {
        throw DomainError("total integral: regime " + std::string(regime_name(regime)) + " has no formula");
    }
    if (!(c < 0.0 && d > 0.0)) throw DomainError("total integral: need c < 0 < d");
    IntegralReport r;
    r.c = c;
    r.d = d;
    for (const PoleRecord& p : traj.poles()) {
        if (!(p.location > c && p.location < d)) {
            throw DomainError("total integral: pole at " + std::to_string(p.location) + " outside (c, d)");
        }
        (p.residue > 0 ? r.n_plus : r.n_minus) += 1;
    }
    r.tail = regularized_tail_neg(traj, c, regime);
    const double pv = principal_value_mid(traj, c, d);
    const double pos = tail_pos(traj, d);
    r.log_lhs = r.tail.value + pv + pos;
    const double sign = ((r.n_plus - r.n_minus) % 2 == 0) ? 1.0 : -1.0;
    r.lhs_exp = sign * std::exp(r.log_lhs);
    r.rhs = total_integral_rhs(prm.alpha, prm.kappa, c, r.n_plus, r.n_minus);
    r.rel_error = std::abs(r.lhs_exp - r.rhs) / std::abs(r.rhs);
    return r;
}

IntegralReport verify_total_integral(const Params& params, double c, double d, const TotalIntegralOptions& opts) {
    const Regime regime = classify(params.alpha, params.kappa);
    if (regime != Regime::Oscillatory && regime != Regime::Separatrix) {
        throw DomainError("verify_total_integral: regime " + std::string(regime_name(regime)) + " has no formula");
    }
    IntegrateOptions io;
    io.tol = opts.tol;
    const Trajectory traj = integrate(params, std::max(8.0, d + 1.0), opts.x_far, io);
    return total_integral_from(traj, c, d);
}

}  // namespace p4cm
