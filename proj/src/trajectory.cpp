#include <algorithm>
#include <cmath>
#include <string>

#include "p4cm/errors.hpp"
#include "p4cm/painleve.hpp"

namespace p4cm {

std::pair<double, double> hermite_eval(const Segment& seg, double x) {
    const double h = seg.x1 - seg.x0;
    if (h == 0.0) return {seg.u0, seg.du0};
    const double t = (x - seg.x0) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;

    const double h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    const double h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    const double h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    const double g0 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    const double g1 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    const double g2 = 0.5 * (t3 - 2.0 * t4 + t5);

    const double dh0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    const double dh1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    const double dh2 = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
    const double dg0 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
    const double dg1 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    const double dg2 = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);

    const double hh = h * h;
    const double u = seg.u0 * h0 + h * seg.du0 * h1 + hh * seg.ddu0 * h2 + seg.u1 * g0 + h * seg.du1 * g1 +
                     hh * seg.ddu1 * g2;
    const double du = (seg.u0 * dh0 + h * seg.du0 * dh1 + hh * seg.ddu0 * dh2 + seg.u1 * dg0 +
                       h * seg.du1 * dg1 + hh * seg.ddu1 * dg2) /
                      h;
    return {u, du};
}

namespace {

std::pair<double, double> to_q(const Segment& seg, double u, double du) {
    State s{0.0, seg.chart, u, du, seg.sign};
    return {s.q(), s.dq()};
}

}  // namespace

Trajectory::Trajectory(Params params, std::vector<Segment> segments, std::vector<PoleRecord> poles,
                       double pole_radius)
    : params_(params), segments_(std::move(segments)), poles_(std::move(poles)), pole_radius_(pole_radius) {
    if (segments_.empty()) throw DomainError("Trajectory needs at least one segment");
    x_start_ = segments_.front().x0;
    x_end_ = segments_.back().x1;

    auto near_pole = [&](double x) {
        return std::any_of(poles_.begin(), poles_.end(),
                           [&](const PoleRecord& p) { return std::abs(x - p.location) < pole_radius_; });
    };
    auto push = [&](const Segment& seg, double x, double u, double du) {
        if (near_pole(x)) return;
        if (seg.chart == Chart::Inverse && u == 0.0) return;
        const auto [q, dq] = to_q(seg, u, du);
        if (!samples_.empty() && !(x < samples_.back().x)) return;
        samples_.push_back({x, q, dq});
    };
    push(segments_.front(), segments_.front().x0, segments_.front().u0, segments_.front().du0);
    for (const Segment& seg : segments_) push(seg, seg.x1, seg.u1, seg.du1);
}

Trajectory Trajectory::trivial(Params params, double x_from, double x_to) {
    std::vector<Segment> segs;
    const int n = std::max(1, static_cast<int>(std::ceil((x_from - x_to) / 0.05)));
    const double h = (x_to - x_from) / n;
    for (int i = 0; i < n; ++i) {
        Segment s;
        s.x0 = x_from + i * h;
        s.x1 = (i + 1 == n) ? x_to : x_from + (i + 1) * h;
        s.chart = Chart::Direct;
        segs.push_back(s);
    }
    return Trajectory(params, std::move(segs), {}, 1e-2);
}

bool Trajectory::covers(double x) const { return x <= x_start_ && x >= x_end_; }

const Segment& Trajectory::segment_at(double x) const {
    if (!covers(x)) {
        throw DomainError("trajectory does not cover x = " + std::to_string(x) + " (range [" +
                          std::to_string(x_end_) + ", " + std::to_string(x_start_) + "])");
    }
    // segments are ordered with decreasing x0
    auto it = std::partition_point(segments_.begin(), segments_.end(),
                                   [x](const Segment& s) { return s.x1 > x; });
    if (it == segments_.end()) --it;
    return *it;
}

std::pair<double, double> Trajectory::eval(double x) const {
    const Segment& seg = segment_at(x);
    const auto [u, du] = hermite_eval(seg, x);
    if (seg.chart == Chart::Inverse && u == 0.0) throw PoleError("trajectory evaluated at a pole");
    return to_q(seg, u, du);
}

double Trajectory::inverse_value(double x) const {
    const Segment& seg = segment_at(x);
    const auto [u, du] = hermite_eval(seg, x);
    switch (seg.chart) {
        case Chart::Inverse: return u;
        case Chart::Root: return seg.sign / (u * u);
        case Chart::Direct: return 1.0 / u;
    }
    return 0.0;
}

}  // namespace p4cm
