#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "skewmix/dynamics.hpp"
#include "skewmix/groups.hpp"
#include "skewmix/thermo.hpp"

namespace skewmix {

/// Analytic skew function x -> tau(x) into the group factor.
struct SkewFunction {
  std::function<GroupPoint(double)> eval;
  GroupModel group;
  std::string label;
};

SkewFunction tau_identity(const GroupModel& group);
SkewFunction tau_torus_linear(double coeff, int d = 1);  // angles 2 pi c x, 2 pi c x^2, ...
SkewFunction tau_torus_constant(const std::vector<double>& angles);
/// exp(2 pi c x e1): a one-parameter (effectively abelian) SU(2) skew.
SkewFunction tau_su2_one_direction(double coeff);
/// exp(2 pi c1 x e1) exp(2 pi c2 x^2 e2): genuinely non-commutative.
SkewFunction tau_su2_two_direction(double c1, double c2);

/// Collocation matrix of the twisted transfer operator acting on row-vector
/// valued functions, v -> sum_j w_j(x) v(gamma_j x) pi(tau(gamma_j x))^{-1}
/// with w_j(x) = h(x)^{-1} exp(phi(gamma_j x)) h(gamma_j x).
/// The full operator on matrix-valued functions has the same spectrum with
/// every eigenvalue repeated dim(pi) times (rows evolve independently).
struct TwistedOperator {
  IrrepInfo irrep;
  Eigen::MatrixXcd matrix;  // size (N dim) x (N dim)
  int collocation_size = 0;
  bool normalized = true;
  std::vector<double> nodes;
  std::vector<double> bary;
  /// Rebuilds the collocation matrix at another node count; the eigensolver
  /// uses it to resolve each eigenvalue at the node count where its value has
  /// converged but the dense solve has not yet lost it to conditioning.
  std::function<Eigen::MatrixXcd(int)> rebuild;
};

struct SpectrumResult {
  IrrepInfo irrep;
  int collocation_size = 0;
  int multiplicity = 1;  // dim(pi): repetition count in the matrix-valued operator
  std::vector<std::complex<double>> eigenvalues;  // sorted by decreasing modulus
  std::vector<double> refinement_error;  // per-index plateau estimate (0 = none)
  int trusted_count = 0;  // leading eigenvalues below the collocation-trust cutoff
  Eigen::MatrixXcd vectors;  // columns follow eigenvalue order
};

/// Power sums and determinant coefficients of the twisted operator, built from
/// exact periodic-orbit traces.
struct ZetaSeries {
  IrrepInfo irrep;
  std::vector<std::complex<double>> traces;  // traces[i] = Tr(M^{i+1}), dim factor included
  int n_max = 0;
  double radius_hint = 0.0;
  std::vector<std::complex<double>> det_coeffs;  // Z(z) = sum_j det_coeffs[j] z^j
};

TwistedOperator build_twisted_matrix(const ExpandingMap& map, const Potential& phi_normalized,
                                     const RpfData& rpf, const SkewFunction& tau,
                                     const IrrepInfo& irrep, int n);

SpectrumResult eigenvalues(const TwistedOperator& op);

/// Exact orbit-sum trace of M^n:
///   dim(pi) * sum over T^n x = x of chi_pi(c_n(x)) exp(phi^(n)(x)) / (1 - 1/(T^n)'(x)),
/// where c_n(x) = tau(x)^{-1} tau(Tx)^{-1} ... tau(T^{n-1}x)^{-1} is the cocycle
/// the operator accumulates (the inverse of the skew-product cocycle).
/// With `density`, the weights carry the h-conjugation factors explicitly;
/// they telescope on closed orbits, which the tests assert.
std::complex<double> trace_periodic(const ExpandingMap& map, const Potential& phi_normalized,
                                    const SkewFunction& tau, const IrrepInfo& irrep, int n,
                                    const RpfData* density = nullptr,
                                    long cap = kDefaultWordCap);

/// dim(pi) * trace(matrix^n): the matrix-valued multiplicity restored.
std::complex<double> trace_matrix(const TwistedOperator& op, int n);

/// W(n, pi): the same orbit sum, kept as the named quantity of the heat averages.
std::complex<double> W_value(const ExpandingMap& map, const Potential& phi_normalized,
                             const SkewFunction& tau, const IrrepInfo& irrep, int n,
                             long cap = kDefaultWordCap);

ZetaSeries make_zeta_series(const ExpandingMap& map, const Potential& phi_normalized,
                            const SkewFunction& tau, const IrrepInfo& irrep, int n_max,
                            long cap = kDefaultWordCap);

/// Same series for several irreps of one skew function; the orbit enumeration
/// is shared across irreps.
std::vector<ZetaSeries> make_zeta_series_batch(const ExpandingMap& map,
                                               const Potential& phi_normalized,
                                               const SkewFunction& tau,
                                               const std::vector<IrrepInfo>& irreps, int n_max,
                                               long cap = kDefaultWordCap);

struct ZetaValue {
  std::complex<double> value;
  double tail_estimate = 0.0;
};

/// exp(-sum z^n/n Tr(M^n)) truncated at n_max, with a geometric tail estimate.
/// Throws outside the trust region |z| < radius_hint.
ZetaValue zeta_eval(const ZetaSeries& zs, std::complex<double> z);

/// Z'(z)/Z(z) evaluated through the determinant polynomial.
std::complex<double> zeta_log_derivative(const ZetaSeries& zs, std::complex<double> z);

/// Roots of the truncated determinant polynomial (reciprocal eigenvalues).
std::vector<std::complex<double>> zeta_roots(const ZetaSeries& zs);

/// -(1/2 pi i) contour integral of Z'/Z z^{-n} over |z| = r: recovers W(n, pi).
/// Throws if the contour passes too close to a zero of Z.
std::complex<double> contour_extract_W(const ZetaSeries& zs, int n, double r,
                                       int points = 256);

struct LogDerivReport {
  double r = 0.0;
  double rho1 = 0.0;
  double max_logderiv = 0.0;
  double sqrt_kappa = 0.0;
  bool zero_free = false;
};

/// Verifies the zero-free disc of radius rho1 and reports max |Z'/Z| on |z| = r.
LogDerivReport logderiv_bound_check(const ZetaSeries& zs, double r, double rho1);

/// Least-squares exponent of max|Z'/Z| against sqrt(kappa) in log-log scale.
double logderiv_growth_exponent(const std::vector<std::pair<double, double>>& kappa_and_max);

struct DecayFit {
  double constant = 0.0;
  double rho = 0.0;
};

/// Fit |lambda_n| ~ C rho^n over the trusted part of a spectrum; rho < 1 enforced.
DecayFit decay_fit(const SpectrumResult& spec);

}  // namespace skewmix
