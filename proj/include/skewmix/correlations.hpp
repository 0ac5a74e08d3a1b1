#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "skewmix/twisted.hpp"

namespace skewmix {

/// Observable on the product space built from representation coefficients:
/// F(x,g) = sum over terms of Re or Im of Tr(pi(g) A(x)).
struct ObservableTerm {
  IrrepInfo irrep;
  std::function<Eigen::MatrixXcd(double)> coeff;  // A(x), dim x dim
  bool imaginary_part = false;
};

struct Observable {
  std::vector<ObservableTerm> terms;
  std::string description;

  double eval(double x, const GroupPoint& g) const;
};

/// n-fold skew application: (x,g) -> (T^n x, tau(T^{n-1}x)...tau(x) g).
std::pair<double, GroupPoint> skew_apply(const ExpandingMap& map, const SkewFunction& tau,
                                         int n, double x, GroupPoint g);

/// C(F,G)(n) by quadrature: the x rule is the depth-refined equilibrium
/// quadrature (depth = n unless overridden), the group rule has the given
/// resolution, and forward orbits are computed by direct iteration.
double correlation_direct(const Observable& F, const Observable& G, int n,
                          const ExpandingMap& map, const Potential& phi_normalized,
                          const RpfData& rpf, const SkewFunction& tau, int group_resolution,
                          int depth = -1);

/// Group-quadrature resolution that integrates every product of characters of
/// the listed irreps exactly.
int correlation_group_resolution(const GroupModel& group,
                                 const std::vector<IrrepInfo>& irreps);

/// Eigen-observable of a twisted operator: F = Re Tr(pi(g) A(x)) with
/// M_pi(A) = lambda A, normalized so that the squared mean is one.
struct EigenObservable {
  Observable F;  // real part
  Observable G;  // imaginary-part companion
  std::complex<double> lambda;
  IrrepInfo irrep;
  double F2 = 0.0;  // integral of F^2
  double FG = 0.0;  // integral of F G
};

/// Builds the eigen-observable from the eigen_index-th trusted eigenvalue
/// (largest modulus first). If the squared mean of the real part vanishes the
/// coefficient is rotated by i.
EigenObservable eigen_observable(const ExpandingMap& map, const Potential& phi_normalized,
                                 const RpfData& rpf, const SkewFunction& tau,
                                 const IrrepInfo& irrep, int n, int eigen_index = 0);

/// C(F,F)(n) for F = sum of a_alpha F_alpha from the eigenvalue formula:
/// sum a^2 (rho^n cos(n theta) F2 - rho^n sin(n theta) FG).
double correlation_predicted(
    const std::vector<std::pair<double, const EigenObservable*>>& combo, int n);

struct CorrelationSeries {
  std::vector<double> values;  // C(1)..C(n_max)
  std::string method;          // "direct-quadrature" | "eigen-formula"
  std::string observable;
};

/// Quadrature value of the pairing of two observables (no dynamics applied).
double observable_pairing(const Observable& A, const Observable& B, const RpfData& rpf,
                          const GroupModel& group, int resolution);

/// Smallest integer q in {D, ..., D Q^N} with dist(q alpha_j, Z) < 1/Q for all j.
long dirichlet_subsequence(const std::vector<double>& angles, long Q, long D,
                           long cap = 100000000L);

/// Times n <= n_max selected by repeated application of the box principle to
/// the eigenvalue angles; along them cos(n theta) >= 3/4 and the sine terms
/// stay dominated.
std::vector<int> dirichlet_time_subsequence(const std::vector<double>& thetas,
                                            double max_fg_ratio, int n_max);

/// max |C(n)|^{1/n} over the subsequence (all usable n when empty).
double decay_rate_estimate(const CorrelationSeries& series,
                           const std::vector<int>& subsequence = {});

void write_correlation_csv(std::ostream& os, const CorrelationSeries& series);
/// Plot-ready columns n, log10|C(n)|.
void write_correlation_plotdata(std::ostream& os, const CorrelationSeries& series);

}  // namespace skewmix
