#pragma once

#include <complex>
#include <vector>

namespace skewmix {

/// Chebyshev-Gauss-Lobatto nodes mapped to [0,1], increasing, endpoints included.
std::vector<double> cgl_nodes01(int n);

/// Barycentric weights matching cgl_nodes01 (common scale irrelevant).
std::vector<double> cgl_barycentric_weights(int n);

/// Clenshaw-Curtis weights on cgl_nodes01 for integrals over [0,1].
/// Exact on polynomials of degree <= n-1.
std::vector<double> clenshaw_curtis_weights01(int n);

/// All Lagrange cardinal polynomials evaluated at t (barycentric form).
std::vector<double> lagrange_row(const std::vector<double>& nodes,
                                 const std::vector<double>& bary, double t);

double barycentric_interpolate(const std::vector<double>& nodes,
                               const std::vector<double>& bary,
                               const std::vector<double>& values, double t);

std::complex<double> barycentric_interpolate(
    const std::vector<double>& nodes, const std::vector<double>& bary,
    const std::vector<std::complex<double>>& values, double t);

/// Gauss-Legendre rule on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace skewmix
