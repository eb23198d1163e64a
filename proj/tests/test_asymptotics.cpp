#include <doctest.h>

#include <cmath>
#include <numbers>

#include "p4cm/asymptotics.hpp"
#include "p4cm/errors.hpp"

using namespace p4cm;
using std::numbers::pi;

TEST_CASE("critical amplitude") {
    CHECK(kappa_star(0.5) == doctest::Approx(1.0 / std::sqrt(pi)).epsilon(1e-14));
    CHECK(kappa_star(0.0) == doctest::Approx(1.0 / pi).epsilon(1e-14));
    CHECK(kappa_star(-0.5) == 0.0);
}

TEST_CASE("rho") {
    CHECK(std::abs(rho_from_kappa(0.3, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(rho_from_kappa(0.0, 1.0 / (2.0 * pi))) < 1e-14);
    const auto r = rho_from_kappa(0.0, 1.0 / pi);
    CHECK(r.real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(r.imag()) < 1e-14);
    CHECK_THROWS_AS(rho_from_kappa(0.5, 0.1), DomainError);
}

TEST_CASE("classification") {
    CHECK(classify(0.0, 0.1) == Regime::Oscillatory);
    CHECK(classify(0.0, 1.0 / pi) == Regime::Separatrix);
    CHECK(classify(-0.5, 0.2) == Regime::SingularOscillatory);
    CHECK(classify(0.0, 2.0 / pi) == Regime::SingularOscillatory);
    CHECK(classify(0.3, 0.0) == Regime::Trivial);
    CHECK(classify(0.5, 0.3) == Regime::HalfIntegerPositive);
    CHECK(regime_name(Regime::Separatrix) == "separatrix");
}

TEST_CASE("oscillatory connection") {
    const auto [b0, p0] = connection_osc(0.0, 1.0 / (2.0 * pi));
    CHECK(std::abs(b0) < 1e-15);
    const auto [b1, psi1] = connection_osc(0.0, 1.0 / (4.0 * pi));
    CHECK(b1 * b1 == doctest::Approx(std::sqrt(3.0) / (2.0 * pi) * std::log(4.0 / 3.0)).epsilon(1e-13));
    CHECK(b1 == doctest::Approx(0.2816092).epsilon(1e-7));
    CHECK(b1 * b1 == doctest::Approx(0.0793037).epsilon(1e-6));
    CHECK(psi1 == doctest::Approx(-2.3825845).epsilon(1e-7));
    CHECK_THROWS_AS(connection_osc(0.0, 2.0 / pi), DomainError);
}

TEST_CASE("singular connection") {
    const auto [b2, psi2] = connection_sing(0.0, 2.0 / pi);
    CHECK(b2 == doctest::Approx(-std::sqrt(3.0) / (2.0 * pi) * std::log(8.0)).epsilon(1e-13));
    CHECK(b2 == doctest::Approx(-0.5732281).epsilon(1e-7));
    CHECK(connection_sing(-0.5, 0.2).first == doctest::Approx(-0.4415064).epsilon(1e-7));
    CHECK(std::isfinite(psi2));
    CHECK_THROWS_AS(connection_sing(0.0, 0.1), DomainError);
}

TEST_CASE("leading asymptotics of q and H") {
    const ConnectionData sep = connection_data(0.0, 1.0 / pi);
    CHECK(q_asym(-20.0, sep, 0.0, 1.0 / pi) == doctest::Approx(40.0));
    const ConnectionData sep3 = connection_data(0.3, kappa_star(0.3));
    CHECK(h_asym(-10.0, sep3, 0.3, kappa_star(0.3)) == doctest::Approx(-12.0));

    const double k0 = 1.0 / (2.0 * pi);  // b1 = 0
    const ConnectionData zero = connection_data(0.0, k0);
    CHECK(q_asym(-20.0, zero, 0.0, k0) == doctest::Approx(40.0 / 3.0));
    CHECK(h_asym(-10.0, zero, 0.0, k0) == doctest::Approx(8000.0 / 27.0));

    const ConnectionData osc = connection_data(0.25, 0.1);
    for (double x : {3.0, 6.0}) CHECK(h_asym(x, osc, 0.25, 0.1) == doctest::Approx(-q_asym(x, osc, 0.25, 0.1)));
    const ConnectionData triv = connection_data(0.25, 0.0);
    CHECK(q_asym(-5.0, triv, 0.25, 0.0) == 0.0);
}

TEST_CASE("predicted singularities") {
    const ConnectionData d = connection_data(0.0, 2.0 / pi);
    const auto xs = predicted_singularities(d, -14.0, -8.0);
    REQUIRE(xs.size() > 10);
    for (double x : xs) {
        CHECK(std::abs(2.0 * std::cos(asymptotic_phase(x, d)) + 1.0) < 1e-9);
        CHECK_THROWS_AS(q_asym(x, d, 0.0, 2.0 / pi), PoleError);
    }
    CHECK_THROWS_AS(predicted_singularities(connection_data(0.0, 0.1), -14.0, -8.0), DomainError);
}

TEST_CASE("total integral right-hand sides") {
    // oscillatory, rho = 1/2: e^{1/3} / (sqrt2 (3/4)^{2/3})
    CHECK(total_integral_rhs(0.0, 1.0 / (4.0 * pi), -1.0, 0, 0) ==
          doctest::Approx(std::exp(1.0 / 3.0) / (std::sqrt(2.0) * std::pow(0.75, 2.0 / 3.0))).epsilon(1e-13));
    CHECK(total_integral_rhs(0.0, 1.0 / (4.0 * pi), -1.0, 0, 0) == doctest::Approx(1.1954800).epsilon(1e-7));
    // separatrix at alpha = 1/2: 2 sqrt(pi) e
    CHECK(total_integral_rhs(0.5, 1.0 / std::sqrt(pi), -1.0, 0, 0) ==
          doctest::Approx(2.0 * std::sqrt(pi) * std::exp(1.0)).epsilon(1e-13));
    CHECK(total_integral_rhs(0.5, 1.0 / std::sqrt(pi), -1.0, 1, 0) < 0.0);
    CHECK_THROWS_AS(total_integral_rhs(0.0, 2.0 / pi, -1.0, 0, 0), DomainError);
    CHECK_THROWS_AS(total_integral_rhs(0.0, 0.1, 1.0, 0, 0), DomainError);
}
