#pragma once

#include <iosfwd>
#include <vector>

#include "skewmix/twisted.hpp"

namespace skewmix {

/// One cell of the heat-averaged sum S(t,n) = sum over irreps of
/// exp(-kappa t) |W(n,pi)|^2 / dim(pi)^2, with its diagonal part and the
/// t^{-rank/2} lower bound evaluated with a fitted constant.
struct AverageReport {
  double t = 0.0;
  int n = 0;
  double S_value = 0.0;
  double diagonal_value = 0.0;
  double lower_bound_value = 0.0;
  int rank = 0;
  double pressure2 = 0.0;  // n-th orbit approximant of P(2 phi)
};

/// Sum over periodic orbits of exp(2 phi^(n)).
double orbit_sum_exp2phi(const ExpandingMap& map, const Potential& phi_normalized, int n,
                         long cap = kDefaultWordCap);

AverageReport S_sum(const ExpandingMap& map, const Potential& phi_normalized,
                    const SkewFunction& tau, const GroupModel& group, double t, int n,
                    double tol, double bound_constant, long cap = kDefaultWordCap);

/// Smallest ratio S(t,n) t^{rank/2} / sum exp(2 phi^(n)) over a grid, shaved by
/// two percent; the non-effective constant of the diagonal lower bound.
double fit_lower_bound_A(const ExpandingMap& map, const Potential& phi_normalized,
                         const SkewFunction& tau, const GroupModel& group,
                         const std::vector<double>& t_grid, const std::vector<int>& n_grid,
                         double tol, long cap = kDefaultWordCap);

struct MarginReport {
  bool ok = false;
  double worst_margin = 0.0;
};

/// Worst S_value - lower_bound_value over the reports; ok when nonnegative.
MarginReport diagonal_lower_bound_check(const std::vector<AverageReport>& reports);

/// Numerical replay of the contradiction argument for a hypothetical spectral
/// radius rho: with t = exp(-alpha n), alpha = 2|P(2phi)|/rank + 3 eps, compare
/// the n-th roots of the diagonal lower bound and of the two-term upper bound
/// (1+eps)^{2n} + t^{-beta} (rho+eps)^{2n}. Contradiction certifies eigenvalues
/// above rho; the threshold approaches exp(gamma(G) P(2 phi)).
struct ContradictionRow {
  int n = 0;
  double lhs_rate = 0.0;
  double rhs_rate = 0.0;
};

struct ContradictionReport {
  double rho = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double pressure2 = 0.0;
  double threshold = 0.0;  // exp(gamma * P(2 phi))
  bool contradiction = false;
  std::vector<ContradictionRow> rows;
};

ContradictionReport contradiction_scheme(const ExpandingMap& map,
                                         const Potential& phi_normalized,
                                         const SkewFunction& tau, const GroupModel& group,
                                         double rho_hypothesis, double epsilon, int n_max,
                                         long cap = kDefaultWordCap);

/// CSV columns: t, n, S, diagonal, bound, margin.
void write_average_csv(std::ostream& os, const std::vector<AverageReport>& reports);

}  // namespace skewmix
