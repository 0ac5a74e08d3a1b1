#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace skewmix {

/// Element of a compact group.
/// Torus(d): coords = d angles in [0, 2*pi). SU2/SO3: coords = unit quaternion (w,x,y,z).
struct GroupPoint {
  Eigen::VectorXd coords;
};

/// One irreducible representation: label, dimension, Laplace eigenvalue and evaluators.
struct IrrepInfo {
  std::vector<int> id;  // torus: the frequency vector q; SU2/SO3: {m}
  int dim = 1;
  double kappa = 0.0;
  std::function<std::complex<double>(const GroupPoint&)> character;
  std::function<Eigen::MatrixXcd(const GroupPoint&)> matrix;  // unitary pi(g)
  std::string label;

  bool trivial() const { return kappa == 0.0; }
};

enum class GroupKind { Torus, SU2, SO3 };

/// Compact group factor of the skew product. Torus(d) for d = 1,2 and SU(2) ship;
/// SO(3) is the SU(2) model restricted to the representations that descend.
class GroupModel {
 public:
  static GroupModel torus(int d);
  static GroupModel su2();
  static GroupModel so3();

  GroupKind kind() const { return kind_; }
  int dim() const;   // real dimension of the group manifold
  int rank() const;  // dimension of a maximal torus
  const std::string& name() const { return name_; }

  GroupPoint identity() const;
  GroupPoint multiply(const GroupPoint& a, const GroupPoint& b) const;
  GroupPoint inverse(const GroupPoint& a) const;
  bool is_valid(const GroupPoint& a, double tol = 1e-12) const;
  /// Riemannian distance to the identity in the metric whose Laplace spectrum
  /// matches the kappa values below (torus: flat; SU2: unit round 3-sphere).
  double distance_to_identity(const GroupPoint& a) const;

  /// All irreps with kappa <= kappa_max, each once, sorted by (kappa, id).
  std::vector<IrrepInfo> irreps_below(double kappa_max) const;
  IrrepInfo trivial_irrep() const;
  IrrepInfo irrep_by_id(const std::vector<int>& id) const;

  /// Character-sum truncation rule: smallest K with exp(-t K) K^(d/2+1) <= tol.
  double kappa_cutoff(double t, double tol) const;

  /// Positive weights summing to one; integrates all matrix coefficients of
  /// total polynomial/trigonometric degree below a resolution-dependent cutoff
  /// exactly (torus: |q| < resolution per component; SU2: degree <= 2*resolution-1).
  std::vector<std::pair<GroupPoint, double>> haar_quadrature(int resolution) const;

 private:
  GroupModel(GroupKind k, int torus_dim, std::string name);
  GroupKind kind_;
  int torus_dim_;
  std::string name_;
};

std::vector<IrrepInfo> irrep_enumerate(const GroupModel& g, double kappa_max);

/// Heat kernel h_t(g) = sum over irreps of exp(-t kappa) dim(pi) chi_pi(g),
/// truncated by the kappa_cutoff rule. Throws if t <= 0.
double heat_kernel(const GroupModel& g, double t, const GroupPoint& x, double tol = 1e-12);

/// Gaussian-image side of the circle heat kernel:
/// sqrt(pi/t) * sum over p of exp(-(theta - 2 pi p)^2 / (4 t)).
double theta_inversion_rhs(double t, double theta, double tol = 1e-15);

/// F(t;a,b) = sum over irreps of exp(-t kappa) chi(a) conj(chi(b)).
/// Equals the Haar average of h_t(a g b^{-1} g^{-1}); real for the shipped groups.
double conjugation_average(const GroupModel& g, double t, const GroupPoint& a,
                           const GroupPoint& b, double tol = 1e-12);

/// N(R) = sum of dim(pi)^2 over kappa <= R.
long weyl_counting(const GroupModel& g, double R);

/// Exponent gamma(G) entering the decay threshold exp(gamma * P(2 phi)).
/// Default (1 + d/2)/rank; improved variant ships for SU2/SO3 (beta = 1/2).
double gamma_constant(const GroupModel& g, bool improved = false);

/// Least-squares slope of log sum_pi exp(-t kappa) kappa / dim^2 against -log t.
double beta_exponent_fit(const GroupModel& g, const std::vector<double>& t_grid);

// SU(2) helpers (quaternions as (w,x,y,z)).
GroupPoint su2_point(double w, double x, double y, double z);
/// exp of the Lie algebra element angle * axis (unit quaternion on the great
/// circle through the identity in direction axis).
GroupPoint su2_exp(double angle, const Eigen::Vector3d& axis);
Eigen::Matrix2cd su2_matrix2(const GroupPoint& g);
/// Unitary matrix of the m-th irrep (dimension m+1) at g.
Eigen::MatrixXcd su2_irrep_matrix(int m, const GroupPoint& g);
/// Character of the m-th irrep, evaluated through the Chebyshev recurrence
/// U_m(cos theta); finite at every g.
double su2_character(int m, const GroupPoint& g);

GroupPoint torus_point(const std::vector<double>& angles);

}  // namespace skewmix
