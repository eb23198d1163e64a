#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "p4cm/errors.hpp"
#include "p4cm/specfun.hpp"

using namespace p4cm;
using std::numbers::pi;

TEST_CASE("D_nu point values") {
    CHECK(pcf_d(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pcf_d(1.0, 2.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-13));
    CHECK(std::abs(pcf_d_deriv(0.0, 0.0)) < 1e-14);
    CHECK(pcf_d_deriv(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("D_nu matches its large-argument law") {
    const double s = 30.0, nu = 0.25;
    const double lead = std::pow(s, nu) * std::exp(-s * s / 4.0);
    const double two_term = lead * (1.0 - nu * (nu - 1.0) / (2.0 * s * s));
    CHECK(std::abs(pcf_d(nu, s) / two_term - 1.0) < 1e-3);
}

TEST_CASE("D_nu for integer order reduces to Hermite functions") {
    // D_2(s) = (s^2 - 1) e^{-s^2/4}, D_3(s) = (s^3 - 3s) e^{-s^2/4}
    for (double s : {-3.0, -0.7, 0.4, 2.5, 6.0}) {
        const double g = std::exp(-s * s / 4.0);
        CHECK(pcf_d(2.0, s) == doctest::Approx((s * s - 1.0) * g).epsilon(1e-11));
        CHECK(pcf_d(3.0, s) == doctest::Approx((s * s * s - 3.0 * s) * g).epsilon(1e-11));
    }
}

TEST_CASE("D_nu three-term recurrence") {
    // D_{nu+1} - s D_nu + nu D_{nu-1} = 0
    for (double nu : {-0.5, 0.3, 1.7}) {
        for (double s : {-2.0, 0.5, 3.0, 9.0}) {
            const double a = pcf_d(nu + 1.0, s), b = pcf_d(nu, s), c = pcf_d(nu - 1.0, s);
            const double scale = std::abs(a) + std::abs(s * b) + std::abs(nu * c);
            CHECK(std::abs(a - s * b + nu * c) < 1e-11 * scale);
        }
    }
}

TEST_CASE("jet agrees with separate value and derivative") {
    const PcfJet j = pcf_jet(0.7, 1.3);
    CHECK(j.value == doctest::Approx(pcf_d(0.7, 1.3)).epsilon(1e-14));
    CHECK(j.deriv == doctest::Approx(pcf_d_deriv(0.7, 1.3)).epsilon(1e-14));
}

TEST_CASE("complex log-gamma") {
    CHECK(log_gamma_complex({0.5, 0.0}).real() == doctest::Approx(0.5 * std::log(pi)).epsilon(1e-14));
    CHECK(std::abs(log_gamma_complex({1.0, 0.0})) < 1e-14);
    CHECK(log_gamma_complex({0.0, 1.0}).imag() == doctest::Approx(-1.8724366).epsilon(1e-7));
    for (double t : {0.05, 0.5, 2.0, 7.0}) {
        const double mod2 = std::exp(2.0 * log_gamma_complex({0.0, t}).real());
        CHECK(mod2 == doctest::Approx(pi / (t * std::sinh(pi * t))).epsilon(1e-12));
    }
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const std::complex<double> z{0.3, 1.1};
    const auto lhs = std::exp(log_gamma_complex(z) + log_gamma_complex(1.0 - z));
    const auto rhs = pi / std::sin(pi * z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
    CHECK_THROWS_AS(log_gamma_complex({-2.0, 0.0}), PoleError);
}

TEST_CASE("erfc") {
    CHECK(p4cm::erfc(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p4cm::erfc(1.3) + p4cm::erfc(-1.3) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("reciprocal gamma and trigonometric helpers") {
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(-3.0) == 0.0);
    CHECK(rgamma(0.5) == doctest::Approx(1.0 / std::sqrt(pi)).epsilon(1e-14));
    CHECK(sin_pi(1.0) == 0.0);
    CHECK(cos_pi(0.5) == 0.0);
    CHECK(is_integer(3.0));
    CHECK_FALSE(is_integer(2.5));
}
