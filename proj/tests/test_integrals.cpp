#include <doctest.h>

#include <cmath>
#include <numbers>

#include "p4cm/errors.hpp"
#include "p4cm/integrals.hpp"
#include "p4cm/specfun.hpp"

using namespace p4cm;

namespace {
const double sqrt_pi = std::sqrt(std::numbers::pi);

// int_d^inf of the closed form q = 2 kappa e^{-x^2} / (2 - kappa sqrt(pi) erfc x) = d/dx log(2 - kappa sqrt(pi) erfc x)
double exact_tail(double d, double kappa) { return std::log(2.0 / (2.0 - kappa * sqrt_pi * p4cm::erfc(d))); }
}  // namespace

TEST_CASE("regularised integrands") {
    CHECK(regularized_integrand(-3.0, 2.0, 0.25, Regime::Oscillatory) == doctest::Approx(2.0 - 2.0 + 1.0 / 6.0));
    CHECK(regularized_integrand(-2.0, 4.0, 0.5, Regime::Separatrix) == doctest::Approx(4.0 - 4.0 - 0.5));
    CHECK_THROWS_AS(regularized_integrand(-2.0, 1.0, 0.0, Regime::SingularOscillatory), DomainError);
}

TEST_CASE("positive tail against the closed form") {
    const Trajectory t = integrate({0.5, 0.3}, 8.0, -3.0, 1e-12);
    CHECK(tail_pos(t, 1.0) == doctest::Approx(exact_tail(1.0, 0.3)).epsilon(1e-9));
    CHECK(tail_pos(integrate({0.5, 0.0}, 8.0, -3.0, 1e-9), 1.0) == 0.0);
}

TEST_CASE("principal value across the pole") {
    const double kappa = 2.0 / sqrt_pi;
    const Trajectory t = integrate({0.5, kappa}, 8.0, -3.0, 1e-12);
    REQUIRE(t.poles().size() == 1);
    // log|2 - kappa sqrt(pi) erfc x| is an antiderivative on both sides of the pole
    auto F = [&](double x) { return std::log(std::abs(2.0 - kappa * sqrt_pi * p4cm::erfc(x))); };
    const double exact = F(1.0) - F(-1.0);
    CHECK(principal_value_mid(t, -1.0, 1.0) == doctest::Approx(exact).epsilon(1e-7));
    CHECK(principal_value_mid(t, -1.0, 1.0, 0.2) == doctest::Approx(principal_value_mid(t, -1.0, 1.0, 0.1)).epsilon(1e-6));
}

TEST_CASE("separatrix negative tail decays like 1/t") {
    const Trajectory t = integrate({0.5, 1.0 / sqrt_pi}, 8.0, -20.0, 1e-10);
    for (double x = -20.0; x <= -10.0; x += 0.5) {
        CHECK(std::abs(regularized_integrand(x, t.q(x), 0.5, Regime::Separatrix) * x) < 1.0);
    }
}

TEST_CASE("total integral identities") {
    TotalIntegralOptions o;
    o.tol = 1e-10;
    const IntegralReport osc = verify_total_integral({0.25, 0.1}, -1.0, 1.0, o);
    CHECK(osc.rel_error < 1e-2);
    CHECK(osc.tail.converged);
    const IntegralReport shifted = verify_total_integral({0.25, 0.1}, -2.0, 1.0, o);
    CHECK(shifted.lhs_exp / shifted.rhs == doctest::Approx(osc.lhs_exp / osc.rhs).epsilon(1e-4));
    CHECK_THROWS_AS(verify_total_integral({0.0, 1.0}, -1.0, 1.0, o), DomainError);
}
