#include <doctest.h>

#include <cmath>
#include <numbers>

#include "p4cm/fredholm.hpp"
#include "p4cm/painleve.hpp"
#include "p4cm/specfun.hpp"

using namespace p4cm;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre rule") {
    std::vector<double> x, w;
    gauss_legendre(12, x, w);
    double s0 = 0.0, s22 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s22 += w[i] * std::pow(x[i], 22);
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s22 == doctest::Approx(2.0 / 23.0).epsilon(1e-14));
}

TEST_CASE("kernel diagonal is the limit of the off-diagonal") {
    const KernelSpec k{1.3, 0.1};
    const double lam = 0.5, diag = kernel_eval(k, 0.0, lam, lam);
    auto sym = [&](double e) { return 0.5 * (kernel_eval(k, 0.0, lam, lam + e) + kernel_eval(k, 0.0, lam, lam - e)); };
    const double off = (4.0 * sym(5e-4) - sym(1e-3)) / 3.0;
    CHECK(off == doctest::Approx(diag).epsilon(1e-8));
}

TEST_CASE("determinant oracles") {
    const DetResult z = fredholm_det({1.3, 0.0}, 0.5, default_quadrature(0.5));
    CHECK(z.det == 1.0);
    CHECK(z.logdet == 0.0);
    CHECK(fredholm_det({1.0, gamma_star(1.0)}, 0.0, default_quadrature(0.0)).det ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fredholm_det({2.0, gamma_star(2.0)}, 0.0, default_quadrature(0.0)).det ==
          doctest::Approx(0.25 - 0.5 / pi).epsilon(1e-9));
    CHECK(gamma_star(2.0) == doctest::Approx(1.0 / std::sqrt(2.0 * pi)).epsilon(1e-14));
}

TEST_CASE("sigma from the determinant") {
    CHECK(sigma_from_det({1.3, 0.0}, 1.0, default_quadrature(1.0)).sigma == 0.0);
    // bridge to the ODE: sigma(x) from q(x; nu - 1/2, sqrt2 gamma)
    const KernelSpec k{1.3, 0.1};
    const Trajectory t = integrate({k.nu - 0.5, std::sqrt(2.0) * k.gamma}, 8.0, -0.5, 1e-11);
    for (double x : {0.0, 1.5, 3.0}) {
        const auto [q, dq] = t.eval(x);
        const double s_det = sigma_from_det(k, x, default_quadrature(x)).sigma;
        CHECK(std::abs(s_det - sigma_from_q(q, dq, x, t.params().alpha)) < 1e-5);
    }
}

TEST_CASE("Hermite kernel") {
    CHECK(monic_hermite(0, 0.3) == 1.0);
    CHECK(monic_hermite(3, 0.7) == doctest::Approx(0.343 - 1.5 * 0.7).epsilon(1e-14));
    // reproducing property: K_n(l, l) integrates to n
    for (int n : {1, 2, 3}) {
        std::vector<double> x, w;
        gauss_legendre(80, x, w);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double lam = 20.0 + 12.0 * x[i];
            s += 12.0 * w[i] * hermite_kernel(n, -20.0, lam, lam);
        }
        CHECK(s == doctest::Approx(n).epsilon(1e-10));
    }
}
