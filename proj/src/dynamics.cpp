#include "skewmix/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "skewmix/errors.hpp"

namespace skewmix {

ExpandingMap::ExpandingMap(std::string name, std::vector<BranchSpec> branches)
    : name_(std::move(name)), branches_(std::move(branches)) {
  if (branches_.size() < 2) throw ConfigError("ExpandingMap: need k >= 2 branches");
  for (size_t i = 0; i < branches_.size(); ++i) {
    branches_[i].index = static_cast<int>(i + 1);
  }
  if (branches_.front().lo != 0.0 || branches_.back().hi != 1.0)
    throw ConfigError("ExpandingMap: branches must cover [0,1]");
  for (size_t i = 0; i + 1 < branches_.size(); ++i) {
    if (branches_[i].hi != branches_[i + 1].lo)
      throw ConfigError("ExpandingMap: branch intervals must abut");
  }
}

int ExpandingMap::locate_branch(double x) const {
  for (size_t i = 0; i < branches_.size(); ++i) {
    if (x <= branches_[i].hi) return static_cast<int>(i + 1);
  }
  return branch_count();
}

double ExpandingMap::apply(double x) const { return branch(locate_branch(x)).forward(x); }

double ExpandingMap::min_expansion() const {
  double m = branches_.front().expansion_min;
  for (const auto& b : branches_) m = std::min(m, b.expansion_min);
  return m;
}

void ExpandingMap::validate(int samples, double tol) const {
  for (const auto& b : branches_) {
    if (!(b.expansion_min > 1.0))
      throw NumericalError("branch " + std::to_string(b.index) + ": expansion_min <= 1");
    for (int i = 0; i <= samples; ++i) {
      const double y = static_cast<double>(i) / samples;
      const double x = b.inverse(y);
      if (x < b.lo - tol || x > b.hi + tol)
        throw NumericalError("branch inverse leaves its interval");
      if (std::abs(b.forward(x) - y) > tol)
        throw NumericalError("forward(inverse(y)) != y on branch " + std::to_string(b.index));
      const double xl = b.lo + (b.hi - b.lo) * i / samples;
      if (std::abs(b.derivative(xl)) < b.expansion_min - tol)
        throw NumericalError("derivative below declared expansion_min");
    }
  }
}

PeriodicPoint periodic_point_of_word(const ExpandingMap& map, const SymbolWord& word) {
  if (word.empty()) throw ConfigError("periodic_point_of_word: empty word");
  const int n = static_cast<int>(word.size());
  for (int a : word) {
    if (a < 1 || a > map.branch_count())
      throw ConfigError("periodic_point_of_word: letter out of range");
  }

  auto contract = [&](double x) {
    for (int j = n - 1; j >= 0; --j) x = map.branch(word[static_cast<size_t>(j)]).inverse(x);
    return x;
  };

  double x = 0.5;
  bool converged = false;
  for (int it = 0; it < 400; ++it) {
    const double next = contract(x);
    const double step = std::abs(next - x);
    x = next;
    if (step < 1e-15) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NumericalError("periodic_point_of_word: contraction did not converge (map invalid?)");

  auto forward_orbit = [&](double x0, double& multiplier, double& fx) {
    multiplier = 1.0;
    double y = x0;
    for (int j = 0; j < n; ++j) {
      const BranchSpec& b = map.branch(word[static_cast<size_t>(j)]);
      multiplier *= b.derivative(y);
      y = b.forward(y);
    }
    fx = y;
  };

  // One Newton step on T^n(x) - x restores the digits lost to the contraction tail.
  double mult = 0.0, fx = 0.0;
  forward_orbit(x, mult, fx);
  if (std::abs(mult - 1.0) > 1e-8) {
    x -= (fx - x) / (mult - 1.0);
    x = std::clamp(x, map.branch(word[0]).lo, map.branch(word[0]).hi);
    forward_orbit(x, mult, fx);
  }

  if (std::abs(contract(x) - x) > 1e-13)
    throw NumericalError("periodic_point_of_word: residual above 1e-13");

  PeriodicPoint p;
  p.word = word;
  p.x = x;
  p.multiplier = mult;
  p.period = n;
  return p;
}

std::vector<PeriodicPoint> enumerate_periodic_points(const ExpandingMap& map, int n, long cap) {
  if (n < 1) throw ConfigError("enumerate_periodic_points: n must be >= 1");
  const int k = map.branch_count();
  double total = 1.0;
  for (int i = 0; i < n; ++i) total *= k;
  if (total > static_cast<double>(cap))
    throw CapExceeded("enumerate_periodic_points: k^n exceeds cap");

  std::vector<PeriodicPoint> out;
  out.reserve(static_cast<size_t>(total));
  SymbolWord word(static_cast<size_t>(n), 1);
  while (true) {
    out.push_back(periodic_point_of_word(map, word));
    int pos = n - 1;
    while (pos >= 0 && word[static_cast<size_t>(pos)] == k) {
      word[static_cast<size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++word[static_cast<size_t>(pos)];
  }
  return out;
}

std::vector<double> orbit_points(const ExpandingMap& map, const PeriodicPoint& p) {
  std::vector<double> pts(static_cast<size_t>(p.period));
  double x = p.x;
  for (int j = 0; j < p.period; ++j) {
    pts[static_cast<size_t>(j)] = x;
    x = map.branch(p.word[static_cast<size_t>(j)]).forward(x);
  }
  return pts;
}

double birkhoff_sum(const ExpandingMap& map, const std::function<double(double)>& f,
                    const PeriodicPoint& p) {
  double s = 0.0;
  for (double x : orbit_points(map, p)) s += f(x);
  return s;
}

GroupPoint group_cocycle(const ExpandingMap& map,
                         const std::function<GroupPoint(double)>& tau,
                         const PeriodicPoint& p, const GroupModel& group) {
  GroupPoint g = group.identity();
  for (double x : orbit_points(map, p)) g = group.multiply(g, tau(x));
  return g;
}

double orbit_weight(const PeriodicPoint& p, double phi_birkhoff) {
  if (std::abs(p.multiplier) <= 1.0)
    throw NumericalError("orbit_weight: |multiplier| must exceed 1");
  return std::exp(phi_birkhoff) / (1.0 - 1.0 / p.multiplier);
}

double pressure_from_orbits(const ExpandingMap& map,
                            const std::function<double(double)>& phi, int n, long cap) {
  const auto points = enumerate_periodic_points(map, n, cap);
  std::vector<double> sums;
  sums.reserve(points.size());
  for (const auto& p : points) sums.push_back(birkhoff_sum(map, phi, p));
  const double m = *std::max_element(sums.begin(), sums.end());
  double acc = 0.0;
  for (double s : sums) acc += std::exp(s - m);
  return (m + std::log(acc)) / n;
}

ExpandingMap doubling_map() { return linear_map(2); }

ExpandingMap linear_map(int k) {
  if (k < 2) throw ConfigError("linear_map: need k >= 2");
  std::vector<BranchSpec> branches;
  for (int j = 0; j < k; ++j) {
    BranchSpec b;
    b.lo = static_cast<double>(j) / k;
    b.hi = static_cast<double>(j + 1) / k;
    b.forward = [k, j](double x) { return k * x - j; };
    b.derivative = [k](double) { return static_cast<double>(k); };
    b.inverse = [k, j](double y) { return (y + j) / k; };
    b.expansion_min = k;
    branches.push_back(std::move(b));
  }
  return ExpandingMap("linear" + std::to_string(k), std::move(branches));
}

ExpandingMap perturbed_doubling(double eps) {
  if (!(eps >= 0.0) || eps >= 1.0 / (2.0 * M_PI))
    throw ConfigError("perturbed_doubling: need 0 <= eps < 1/(2 pi)");
  std::vector<BranchSpec> branches;
  for (int j = 0; j < 2; ++j) {
    BranchSpec b;
    b.lo = 0.5 * j;
    b.hi = 0.5 * (j + 1);
    b.forward = [eps, j](double x) { return 2.0 * x + eps * std::sin(2.0 * M_PI * x) - j; };
    b.derivative = [eps](double x) { return 2.0 + 2.0 * M_PI * eps * std::cos(2.0 * M_PI * x); };
    b.inverse = [eps, j, lo = b.lo, hi = b.hi](double y) {
      double x = (y + j) / 2.0;
      for (int it = 0; it < 60; ++it) {
        const double f = 2.0 * x + eps * std::sin(2.0 * M_PI * x) - j - y;
        const double df = 2.0 + 2.0 * M_PI * eps * std::cos(2.0 * M_PI * x);
        const double step = f / df;
        x = std::clamp(x - step, lo, hi);
        if (std::abs(step) < 1e-16) break;
      }
      return x;
    };
    b.expansion_min = 2.0 - 2.0 * M_PI * eps;
    branches.push_back(std::move(b));
  }
  return ExpandingMap("perturbed-doubling", std::move(branches));
}

}  // namespace skewmix
