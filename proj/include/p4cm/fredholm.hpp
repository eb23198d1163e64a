#pragma once

// Nystrom discretisation of det(I - gamma K_{nu,x}) on (0, infinity) for the parabolic
// cylinder kernel
//   K(lam, mu) = [D_nu(a) D_{nu-1}(b) - D_{nu-1}(a) D_nu(b)] / (lam - mu),
//   a = sqrt2 (lam + x), b = sqrt2 (mu + x),
// and the classical Hermite kernel it reduces to for integer nu.

#include <vector>

namespace p4cm {

struct KernelSpec {
    double nu = 1.0;
    double gamma = 0.0;
};

/// Gauss-Legendre rule mapped to (0, L).
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    double truncation = 0.0;
    int size = 0;
};

struct DetResult {
    double x = 0.0;
    double logdet = 0.0;
    double det = 1.0;
    double sigma = 0.0;  // d/dx logdet; filled by sigma_from_det only
};

/// Gauss-Legendre nodes and weights on (-1, 1), m >= 1.
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

/// m-point rule on (0, L).
Quadrature make_quadrature(int m, double truncation);

/// Default rule for a given x: m = 80, L = max(8, 8 - x).
Quadrature default_quadrature(double x, int m = 80);

/// Below this |lam - mu| the diagonal formula is used.
inline constexpr double kKernelDiagEps = 1e-6;

/// Kernel value; on the diagonal sqrt2 [D_nu^2 + nu D_{nu-1}^2 - a D_nu D_{nu-1}].
/// Throws DomainError for negative lam or mu.
double kernel_eval(const KernelSpec& spec, double x, double lam, double mu);

/// log det(I - gamma K) by LU with partial pivoting.
/// Throws NumericalFailure when the determinant is not positive.
DetResult fredholm_det(const KernelSpec& spec, double x, const Quadrature& quad);

/// logdet and sigma = d/dx logdet by central differences at h and h/2 with Richardson
/// extrapolation. h in [1e-5, 1e-2].
DetResult sigma_from_det(const KernelSpec& spec, double x, const Quadrature& quad, double h = 1e-3);

/// Monic Hermite polynomial pi_k(t) with pi_{k+1} = t pi_k - (k/2) pi_{k-1}.
double monic_hermite(int k, double t);

/// Hermite kernel of the n x n Gaussian unitary ensemble shifted by x. n >= 1.
double hermite_kernel(int n, double x, double lam, double mu);

/// gamma* = 1/(sqrt(2 pi) Gamma(nu)); for integer nu, gamma* K_{nu,x} is the Hermite kernel.
double gamma_star(double nu);

}  // namespace p4cm
