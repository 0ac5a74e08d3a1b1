#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skewmix/groups.hpp"

namespace skewmix {

/// One full branch of an expanding Markov map: T_i maps [lo,hi] onto [0,1],
/// gamma_i is its analytic inverse.
struct BranchSpec {
  int index = 0;  // 1-based
  double lo = 0.0;
  double hi = 1.0;
  std::function<double(double)> forward;
  std::function<double(double)> derivative;
  std::function<double(double)> inverse;
  double expansion_min = 0.0;  // min |T_i'| on [lo,hi], > 1
};

/// Piecewise-analytic full-branch expanding map of [0,1].
class ExpandingMap {
 public:
  ExpandingMap(std::string name, std::vector<BranchSpec> branches);

  int branch_count() const { return static_cast<int>(branches_.size()); }
  const BranchSpec& branch(int i) const { return branches_[static_cast<size_t>(i - 1)]; }
  const std::string& name() const { return name_; }

  /// Branch containing x; boundary ties go to the lower index.
  int locate_branch(double x) const;
  double apply(double x) const;
  double min_expansion() const;

  /// Checks the branch invariants on a sample grid; throws NumericalError.
  void validate(int samples = 64, double tol = 1e-9) const;

 private:
  std::string name_;
  std::vector<BranchSpec> branches_;
};

using SymbolWord = std::vector<int>;  // letters in 1..k

struct PeriodicPoint {
  SymbolWord word;
  double x = 0.0;
  double multiplier = 0.0;  // (T^n)'(x)
  int period = 0;
};

inline constexpr long kDefaultWordCap = 1L << 21;

/// Fixed point of gamma_{a_1} o ... o gamma_{a_n}: contraction iteration from
/// the interval midpoint, then one Newton step on T^n(x) - x.
PeriodicPoint periodic_point_of_word(const ExpandingMap& map, const SymbolWord& word);

/// All k^n periodic points, one per word, in lexicographic word order.
/// Coinciding endpoint coordinates are kept separate: the word is the identity.
std::vector<PeriodicPoint> enumerate_periodic_points(const ExpandingMap& map, int n,
                                                     long cap = kDefaultWordCap);

/// Orbit x, Tx, ..., T^{n-1}x following the word's branch sequence.
std::vector<double> orbit_points(const ExpandingMap& map, const PeriodicPoint& p);

double birkhoff_sum(const ExpandingMap& map, const std::function<double(double)>& f,
                    const PeriodicPoint& p);

/// Ordered product tau(x) tau(Tx) ... tau(T^{n-1}x).
GroupPoint group_cocycle(const ExpandingMap& map,
                         const std::function<GroupPoint(double)>& tau,
                         const PeriodicPoint& p, const GroupModel& group);

/// exp(phi_birkhoff) / (1 - 1/multiplier); requires |multiplier| > 1.
double orbit_weight(const PeriodicPoint& p, double phi_birkhoff);

/// (1/n) log sum over words of exp(phi^(n)), a pressure approximant.
double pressure_from_orbits(const ExpandingMap& map,
                            const std::function<double(double)>& phi, int n,
                            long cap = kDefaultWordCap);

// Shipped maps.
ExpandingMap doubling_map();
ExpandingMap linear_map(int k);
/// T(x) = 2x + eps sin(2 pi x) mod 1, eps < 1/(2 pi); inverses by Newton
/// seeded from the linear branch inverse.
ExpandingMap perturbed_doubling(double eps);

}  // namespace skewmix
