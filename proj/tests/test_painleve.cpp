#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "p4cm/errors.hpp"
#include "p4cm/painleve.hpp"
#include "p4cm/specfun.hpp"

using namespace p4cm;

namespace {
const double sqrt_pi = std::sqrt(std::numbers::pi);

double max_error_vs_exact(double kappa, double tol) {
    const Trajectory t = integrate({0.5, kappa}, 8.0, -5.0, tol);
    double worst = 0.0;
    for (double x = 8.0; x >= -5.0; x -= 0.01) worst = std::max(worst, std::abs(t.q(x) - exact_half(x, kappa)));
    return worst;
}
}  // namespace

TEST_CASE("right-hand sides") {
    CHECK(piv_rhs(0.0, 1.0, 0.0, 0.0) == doctest::Approx(1.5));
    const double a = piv_rhs(1.0, 0.7, 0.2, 0.3), b = piv_rhs(-1.0, -0.7, 0.2, 0.3);
    CHECK(a == doctest::Approx(-b).epsilon(1e-14));
    CHECK(std::isfinite(inverse_chart_rhs(2.0, 0.0, 1.0, 0.0)));
    CHECK_THROWS(inverse_chart_rhs(2.0, 0.0, 0.3, 0.0));
}

TEST_CASE("root chart agrees with the direct equation") {
    // q = s v^2: q'' from v'' must equal piv_rhs
    const double x = 0.4, v = 0.8, dv = -0.3, alpha = 0.2;
    for (int s : {1, -1}) {
        const double q = s * v * v, dq = 2.0 * s * v * dv;
        const double ddv = root_chart_rhs(x, v, s, alpha);
        const double ddq = 2.0 * s * (dv * dv + v * ddv);
        CHECK(ddq == doctest::Approx(piv_rhs(x, q, dq, alpha)).epsilon(1e-13));
    }
}

TEST_CASE("chart conversions round trip") {
    const State d{0.3, Chart::Direct, -0.6, 0.9, -1};
    for (Chart c : {Chart::Root, Chart::Inverse}) {
        const State back = to_chart(to_chart(d, c), Chart::Direct);
        CHECK(back.u == doctest::Approx(d.u).epsilon(1e-14));
        CHECK(back.du == doctest::Approx(d.du).epsilon(1e-14));
    }
    CHECK_THROWS_AS(to_chart(State{0.0, Chart::Direct, 0.0, 1.0, 1}, Chart::Inverse), DomainError);
}

TEST_CASE("Hamiltonian and sigma") {
    CHECK(hamiltonian(1.0, 0.0, 0.0, 0.0) == doctest::Approx(0.25));
    CHECK(sigma_from_q(1.0, 0.0, 0.0, 0.0) == doctest::Approx(0.375));
}

TEST_CASE("closed form at alpha = 1/2") {
    CHECK(exact_half(0.0, 0.3) == doctest::Approx(0.6 / (2.0 - 0.3 * sqrt_pi)).epsilon(1e-14));
    CHECK(exact_half(0.0, 0.3) == doctest::Approx(0.4086459).epsilon(1e-7));
    CHECK(exact_half(-15.0, 1.0 / sqrt_pi) / 30.0 == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(exact_half(1.7, 0.0) == 0.0);
    const double h = 1e-5;
    const double fd = (exact_half(0.6 + h, 0.3) - exact_half(0.6 - h, 0.3)) / (2.0 * h);
    CHECK(exact_half_deriv(0.6, 0.3) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("seed at +infinity") {
    const State s = seed_at_plus_infinity({0.5, 0.3}, 5.0);
    CHECK(s.q() == doctest::Approx(0.3 * std::exp(-25.0)).epsilon(1e-12));
    const State z = seed_at_plus_infinity({0.5, 0.0}, 5.0);
    CHECK(z.q() == 0.0);
    CHECK(z.dq() == 0.0);
}

TEST_CASE("integration reproduces the closed form") {
    CHECK(max_error_vs_exact(0.1, 1e-12) < 1e-7);
    CHECK(max_error_vs_exact(0.3, 1e-12) < 1e-7);
    CHECK(max_error_vs_exact(0.3, 1e-10) < 1e-7);
}

TEST_CASE("pole passage at alpha = 1/2") {
    const double kappa = 2.0 / sqrt_pi;
    const Trajectory t = integrate({0.5, kappa}, 8.0, -5.0, 1e-12);
    REQUIRE(t.poles().size() == 1);
    auto f = [&](double x) { return 2.0 - kappa * sqrt_pi * p4cm::erfc(x); };
    const auto [lo, hi] = boost::math::tools::bisect(f, -6.0, 6.0, boost::math::tools::eps_tolerance<double>(52));
    const double root = 0.5 * (lo + hi);
    CHECK(std::abs(t.poles()[0].location - root) < 1e-8);
    CHECK(t.poles()[0].residue == 1);
    CHECK(std::abs(t.poles()[0].fitted - 1.0) < 1e-6);
    // w = 1/q stays finite and vanishes at the pole
    CHECK(std::abs(t.inverse_value(t.poles()[0].location)) < 1e-8);
    for (const TrajectorySample& s : t.samples()) CHECK(std::abs(s.x - root) >= t.pole_radius());
}

TEST_CASE("trivial solution") {
    const Trajectory t = integrate({0.5, 0.0}, 8.0, -5.0, 1e-9);
    for (const TrajectorySample& s : t.samples()) CHECK(s.q == 0.0);
}

TEST_CASE("trajectory queries") {
    const Trajectory t = integrate({0.25, 0.1}, 8.0, -2.0, 1e-9);
    CHECK(t.covers(0.0));
    CHECK_FALSE(t.covers(9.0));
    CHECK_THROWS_AS(t.eval(-3.0), DomainError);
    const auto samples = t.samples();
    for (std::size_t i = 1; i < samples.size(); ++i) CHECK(samples[i].x < samples[i - 1].x);
}

TEST_CASE("integration rejects bad input") {
    CHECK_THROWS_AS(integrate({0.0, 0.1}, -1.0, 1.0, 1e-9), DomainError);
    CHECK_THROWS_AS(integrate({0.0, 0.1}, 8.0, -1.0, 1.0), DomainError);
}

TEST_CASE("separatrix follows -2x") {
    const Trajectory t = integrate({0.0, 1.0 / std::numbers::pi}, 8.0, -12.0, 1e-10);
    for (double x : {-6.0, -9.0, -12.0}) CHECK(std::abs(x) * std::abs(t.q(x) / (-2.0 * x) - 1.0) < 0.3);
    CHECK(separatrix_series(-10.0, 0.0) == doctest::Approx(20.0 - 1.0 / 4000.0).epsilon(1e-6));
}
