// Dormand-Prince 5(4) with PI step control in the Root chart. Poles are passed along a
// half circle in the complex plane, and the real axis next to each pole is filled in the
// Inverse chart by marching toward it from both sides.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <complex>
#include <numbers>
#include <vector>
#include <string>

#include "p4cm/errors.hpp"
#include "p4cm/painleve.hpp"
#include "p4cm/specfun.hpp"

namespace p4cm {

namespace {

using Vec2 = std::array<double, 2>;

struct Tableau {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
};

class ChartSystem {
public:
    ChartSystem(Chart chart, int sign, double alpha) : chart_(chart), sign_(sign), alpha_(alpha) {}

    Vec2 operator()(double x, const Vec2& y) const {
        double acc = 0.0;
        switch (chart_) {
            case Chart::Root: acc = root_chart_rhs(x, y[0], sign_, alpha_); break;
            case Chart::Inverse: acc = inverse_chart_rhs(x, y[0], y[1], alpha_); break;
            case Chart::Direct: acc = piv_rhs(x, y[0], y[1], alpha_); break;
        }
        return {y[1], acc};
    }

private:
    Chart chart_;
    int sign_;
    double alpha_;
};

template <class V>
V axpy(const V& y, double h, std::initializer_list<std::pair<double, const V*>> terms) {
    V out = y;
    for (const auto& [c, k] : terms) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*k)[i];
    }
    return out;
}

// One Dormand-Prince stage sweep: 5th-order solution, FSAL derivative and embedded error.
template <class V, class F>
void dp_core(const F& f, double x, const V& y, const V& k1, double h, V& y_new, V& k7, V& err) {
    using T = Tableau;
    const V k2 = f(x + T::c2 * h, axpy(y, h, {{T::a21, &k1}}));
    const V k3 = f(x + T::c3 * h, axpy(y, h, {{T::a31, &k1}, {T::a32, &k2}}));
    const V k4 = f(x + T::c4 * h, axpy(y, h, {{T::a41, &k1}, {T::a42, &k2}, {T::a43, &k3}}));
    const V k5 = f(x + T::c5 * h, axpy(y, h, {{T::a51, &k1}, {T::a52, &k2}, {T::a53, &k3}, {T::a54, &k4}}));
    const V k6 =
        f(x + h, axpy(y, h, {{T::a61, &k1}, {T::a62, &k2}, {T::a63, &k3}, {T::a64, &k4}, {T::a65, &k5}}));
    y_new = axpy(y, h, {{T::b1, &k1}, {T::b3, &k3}, {T::b4, &k4}, {T::b5, &k5}, {T::b6, &k6}});
    k7 = f(x + h, y_new);
    for (std::size_t i = 0; i < y.size(); ++i) {
        err[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] +
                      T::e7 * k7[i]);
    }
}

struct StepResult {
    Vec2 y{};
    Vec2 k7{};
    double err = 0.0;
    bool finite = true;
};

StepResult dp_step(const ChartSystem& f, double x, const Vec2& y, const Vec2& k1, double h, double tol) {
    StepResult r;
    try {
        Vec2 e{};
        dp_core(f, x, y, k1, h, r.y, r.k7, e);
        const double omega = 1.0 + std::abs(x);
        const double scale = std::max(std::abs(y[0]) + std::abs(y[1]) / omega,
                                      std::abs(r.y[0]) + std::abs(r.y[1]) / omega);
        r.err = std::max(std::abs(e[0]), std::abs(e[1]) / omega) / (tol * scale);
        r.finite = std::isfinite(r.err) && std::isfinite(r.y[0]) && std::isfinite(r.y[1]);
    } catch (const NumericalFailure&) {
        r.finite = false;
    } catch (const PoleError&) {
        r.finite = false;
    }
    return r;
}

// Adaptive marching in one real chart. Each accepted step becomes a segment.
class Marcher {
public:
    Marcher(const State& st, double alpha, double tol, double h0)
        : chart_(st.chart), sign_(st.sign), sys_(st.chart, st.sign, alpha), x_(st.x), y_{st.u, st.du},
          k1_(sys_(x_, y_)), h_(h0), tol_(tol) {}

    double x() const { return x_; }
    const Vec2& y() const { return y_; }
    State state() const { return {x_, chart_, y_[0], y_[1], sign_}; }

    // One accepted step toward target (either direction); never passes it.
    Segment step(double target, std::size_t& budget) {
        const double dir = target < x_ ? -1.0 : 1.0;
        if (h_ * dir <= 0.0) h_ = -h_;
        while (true) {
            if (budget == 0) throw NumericalFailure("integrate: step budget exhausted", x_);
            --budget;
            if ((x_ + h_ - target) * dir > 0.0) h_ = target - x_;
            const double hmin = 1e-13 * (1.0 + std::abs(x_));
            if (std::abs(h_) < hmin) {
                throw NumericalFailure("integrate: step-size collapse at x = " + std::to_string(x_), x_);
            }
            StepResult r = dp_step(sys_, x_, y_, k1_, h_, tol_);
            if (!r.finite || r.err > 1.0) {
                h_ *= r.finite ? std::max(0.2, 0.9 * std::pow(r.err, -0.2)) : 0.25;
                continue;
            }
            const bool last = std::abs(x_ + h_ - target) <= 1e-15 * (1.0 + std::abs(target));
            const double x_new = last ? target : x_ + h_;
            Segment seg{x_, x_new, chart_, sign_, y_[0], y_[1], k1_[1], r.y[0], r.y[1], r.k7[1]};

            // PI controller
            const double err = std::max(r.err, 1e-10);
            const double fac = std::clamp(0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev_, 0.4 / 5.0), 0.2, 5.0);
            err_prev_ = err;
            x_ = x_new;
            y_ = r.y;
            k1_ = r.k7;
            h_ *= fac;
            return seg;
        }
    }

    void march(double target, std::size_t& budget, std::vector<Segment>& out) {
        while (x_ != target) out.push_back(step(target, budget));
    }

private:
    Chart chart_;
    int sign_;
    ChartSystem sys_;
    double x_;
    Vec2 y_;
    Vec2 k1_;
    double h_;
    double err_prev_ = 1.0;
    double tol_;
};

struct Vault {
    double x_exit = 0.0;    // real point on the far side of the pole
    State exit{};           // Root-chart state there
    double location = 0.0;  // pole location from contour moments
    double residue = 0.0;   // contour residue, close to +-1
};

// Carry a Root-chart state around the pole near x_a along the upper half circle of radius
// radius centred at centre. The moments of q on the circle give the residue and location.
Vault vault_pole(const State& st, double centre, double radius, double alpha, double tol) {
    using C = std::complex<double>;
    using CVec = std::array<C, 4>;
    const double s = st.sign;
    auto f = [&](double theta, const CVec& y) -> CVec {
        const C e = std::polar(1.0, theta);
        const C z = centre + radius * e;
        const C dz = C(0.0, radius) * e;
        const C v = y[0], dv = y[1];
        const C v2 = v * v;
        const C ddv = v * ((z * z - 2.0 * alpha) + 2.0 * s * z * v2 + 0.75 * v2 * v2);
        const C q = s * v2;
        return {dv * dz, ddv * dz, q * dz, z * q * dz};
    };

    CVec y{C(st.u), C(st.du), C(0.0), C(0.0)};
    double theta = 0.0;
    const double pi = std::numbers::pi;
    CVec k1 = f(theta, y);
    double h = pi / 32.0;
    double err_prev = 1.0;
    for (int n = 0; theta < pi; ++n) {
        if (n > 100000) throw NumericalFailure("pole vault did not finish", st.x);
        if (theta + h > pi) h = pi - theta;
        CVec y_new{}, k7{}, e{};
        dp_core(f, theta, y, k1, h, y_new, k7, e);
        const double scale = std::max(std::abs(y[0]) + radius * std::abs(y[1]),
                                      std::abs(y_new[0]) + radius * std::abs(y_new[1]));
        const double err = std::max(std::abs(e[0]), radius * std::abs(e[1])) / (tol * scale);
        if (!std::isfinite(err) || err > 1.0) {
            h *= std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
            if (h < 1e-12) throw NumericalFailure("pole vault step collapse", st.x);
            continue;
        }
        theta = (std::abs(pi - theta - h) < 1e-15) ? pi : theta + h;
        y = y_new;
        k1 = k7;
        const double e_ = std::max(err, 1e-10);
        h *= std::clamp(0.9 * std::pow(e_, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0), 0.2, 5.0);
        err_prev = e_;
    }

    Vault out;
    out.x_exit = centre - radius;
    const C q = s * y[0] * y[0];
    const C dq = 2.0 * s * y[0] * y[1];
    if (std::abs(q.imag()) > 1e-6 * std::abs(q) || std::abs(dq.imag()) > 1e-6 * std::abs(dq)) {
        throw NumericalFailure("pole vault returned a complex value; nearby singularities?", st.x);
    }
    const State direct{out.x_exit, Chart::Direct, q.real(), dq.real(), q.real() < 0.0 ? -1 : 1};
    out.exit = to_chart(direct, Chart::Root);
    out.residue = y[2].imag() / pi;
    out.location = y[3].imag() / y[2].imag();
    return out;
}

Segment reversed(const Segment& s) {
    return {s.x1, s.x0, s.chart, s.sign, s.u1, s.du1, s.ddu1, s.u0, s.du0, s.ddu0};
}

// Cut the segment list so that it ends exactly at x_to.
void truncate(std::vector<Segment>& segs, double x_to, double alpha) {
    while (!segs.empty() && segs.back().x0 <= x_to) segs.pop_back();
    if (segs.empty() || segs.back().x1 >= x_to) return;
    Segment& s = segs.back();
    const auto [u, du] = hermite_eval(s, x_to);
    const ChartSystem sys(s.chart, s.sign, alpha);
    s.x1 = x_to;
    s.u1 = u;
    s.du1 = du;
    s.ddu1 = sys(x_to, {u, du})[1];
}

}  // namespace

Trajectory integrate(const Params& params, double x_from, double x_to, double tol) {
    IntegrateOptions opts;
    opts.tol = tol;
    return integrate(params, x_from, x_to, opts);
}

bool near_kappa_star(const Params& params) {
    if (params.half_integer_neg()) return false;
    const double ks = rgamma(params.alpha + 0.5) / std::sqrt(std::numbers::pi);
    return std::abs(params.kappa - ks) <= 1e-12 * std::max(1.0, std::abs(ks));
}

Trajectory integrate(const Params& params, double x_from, double x_to, const IntegrateOptions& opts) {
    if (opts.separatrix_continuation && params.kappa != 0.0 && near_kappa_star(params)) {
        return solve_separatrix(params, x_from, x_to, opts);
    }
    return shoot(params, x_from, x_to, opts);
}

Trajectory shoot(const Params& params, double x_from, double x_to, const IntegrateOptions& opts) {
    if (!(x_from > x_to)) throw DomainError("integrate: x_from must exceed x_to");
    if (!(opts.tol >= 1e-12 && opts.tol <= 1e-4)) throw DomainError("integrate: tol must lie in [1e-12, 1e-4]");
    if (!std::isfinite(params.alpha) || !std::isfinite(params.kappa)) {
        throw DomainError("integrate: non-finite parameters");
    }
    if (params.kappa == 0.0) return Trajectory::trivial(params, x_from, x_to);

    const double x_seed = opts.seed_x0.value_or(std::max(x_from, choose_seed_point(params)));
    if (x_seed <= x_to) throw DomainError("integrate: seed point below x_to");
    State st = root_seed(params, x_seed);
    if (st.u == 0.0) throw RangeError("integrate: seed underflows");

    std::vector<Segment> segments;
    std::vector<PoleRecord> poles;
    std::size_t budget = opts.max_steps;
    const double h0 = -std::min(0.05, 0.1 / (1.0 + std::abs(st.x)));
    Marcher m(st, params.alpha, opts.tol, h0);

    while (m.x() > x_to) {
        segments.push_back(m.step(x_to, budget));
        const State cur = m.state();
        const double q = cur.q();
        const double dq = cur.dq();
        const double trigger = std::max(opts.chart_switch, 4.0 * std::abs(cur.x));
        if (std::abs(q) < trigger || m.x() <= x_to) continue;
        // q ~ eps/(x - x_p) near a simple pole
        const double radius = -q / dq;
        if (!(radius > 0.0) || radius * std::abs(q) < 0.5 || radius * std::abs(q) > 2.0) continue;

        const double centre = cur.x - radius;
        const Vault v = vault_pole(cur, centre, radius, params.alpha, opts.tol);
        const double rounded = std::round(v.residue);
        if (std::abs(v.residue - rounded) > 0.05 || std::abs(rounded) != 1.0) {
            throw NumericalFailure("integrate: pole near x = " + std::to_string(centre) +
                                       " has non-unit residue " + std::to_string(v.residue),
                                   cur.x);
        }
        const double x_star = v.location;
        const double r_stop = std::min(1e-3, 0.25 * radius);
        if (!(x_star - r_stop > v.x_exit && x_star + r_stop < cur.x)) {
            throw NumericalFailure("integrate: pole location " + std::to_string(x_star) +
                                       " outside its vault circle",
                                   cur.x);
        }

        // Fill the real axis with inverse-chart segments, marching toward the pole from both sides.
        Marcher above(to_chart(cur, Chart::Inverse), params.alpha, opts.tol, -0.1 * radius);
        above.march(x_star + r_stop, budget, segments);
        std::vector<Segment> below_segs;
        Marcher below(to_chart(v.exit, Chart::Inverse), params.alpha, opts.tol, 0.1 * radius);
        below.march(x_star - r_stop, budget, below_segs);

        const Vec2 wa = above.y(), wb = below.y();
        Segment bridge{x_star + r_stop, x_star - r_stop, Chart::Inverse, 1, wa[0], wa[1],
                       inverse_chart_rhs(x_star + r_stop, wa[0], wa[1], params.alpha), wb[0], wb[1],
                       inverse_chart_rhs(x_star - r_stop, wb[0], wb[1], params.alpha)};
        segments.push_back(bridge);
        for (auto it = below_segs.rbegin(); it != below_segs.rend(); ++it) segments.push_back(reversed(*it));
        poles.push_back({x_star, static_cast<int>(rounded), v.residue});

        m = Marcher(v.exit, params.alpha, opts.tol, -0.1 * radius);
    }
    truncate(segments, x_to, params.alpha);
    std::erase_if(poles, [&](const PoleRecord& p) { return p.location < x_to; });
    return Trajectory(params, std::move(segments), std::move(poles), opts.pole_radius);
}

}  // namespace p4cm
