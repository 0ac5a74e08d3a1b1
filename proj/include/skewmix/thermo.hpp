#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "skewmix/dynamics.hpp"

namespace skewmix {

struct Potential {
  std::function<double(double)> eval;
  std::string label;
};

Potential potential_zero();
/// -log|T'|, the smooth-measure potential of the map.
Potential potential_srb(const ExpandingMap& map);
Potential potential_scaled(const Potential& phi, double factor);
Potential potential_shifted(const Potential& phi, double delta);
/// -log 2 + amplitude * sin(2 pi x).
Potential potential_log2_sin(double amplitude);

/// Leading spectral data of the transfer operator on the collocation grid:
/// pressure, invariant density at the nodes, and equilibrium-measure weights.
struct RpfData {
  double pressure = 0.0;
  std::vector<double> nodes;
  std::vector<double> bary;     // barycentric weights of the node set
  std::vector<double> density;  // h at nodes, positive
  std::vector<double> weights;  // mu-quadrature weights, sum 1, positive

  int size() const { return static_cast<int>(nodes.size()); }
  double density_at(double x) const;
};

/// Collocation matrix of f -> sum_j exp(phi(gamma_j x)) f(gamma_j x) in the
/// Lagrange basis at n Chebyshev-Gauss-Lobatto nodes on [0,1].
Eigen::MatrixXd discretize_transfer_operator(const ExpandingMap& map, const Potential& phi,
                                             int n);

/// Leading eigen-data of the collocation matrix. Throws NumericalError when the
/// leading eigenvalue is not simple, real and positive (n too small, bad data).
RpfData rpf_solve(const ExpandingMap& map, const Potential& phi, int n);

/// phi - P(phi); re-solving yields pressure zero.
Potential normalize_potential(const Potential& phi, const RpfData& rpf);

double equilibrium_integral(const RpfData& rpf, const std::function<double(double)>& f);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Pushforward of the equilibrium quadrature through all inverse-branch words of
/// the given depth. Integrates functions that are analytic on each rank-depth
/// cell (e.g. observables composed with depth forward iterates) at spectral
/// accuracy; depth 0 returns the plain node rule.
Quadrature refined_equilibrium_quadrature(const ExpandingMap& map,
                                          const Potential& phi_normalized,
                                          const RpfData& rpf, int depth);

}  // namespace skewmix
