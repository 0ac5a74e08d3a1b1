#include "skewmix/heataverage.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

#include "skewmix/errors.hpp"

namespace skewmix {

namespace {

struct OrbitData {
  std::vector<double> weights;      // G_n(x)
  std::vector<double> exp2phi;      // exp(2 phi^(n)(x))
  std::vector<GroupPoint> cocycle;  // operator cocycle, as in trace_periodic
};

OrbitData collect_orbits(const ExpandingMap& map, const Potential& phi,
                         const SkewFunction& tau, int n, long cap) {
  OrbitData data;
  const auto points = enumerate_periodic_points(map, n, cap);
  const GroupModel& group = tau.group;
  data.weights.reserve(points.size());
  data.exp2phi.reserve(points.size());
  data.cocycle.reserve(points.size());
  for (const auto& p : points) {
    double phi_sum = 0.0;
    GroupPoint c = group.identity();
    double x = p.x;
    for (int j = 0; j < p.period; ++j) {
      phi_sum += phi.eval(x);
      c = group.multiply(c, group.inverse(tau.eval(x)));
      x = map.branch(p.word[static_cast<size_t>(j)]).forward(x);
    }
    data.weights.push_back(std::exp(phi_sum) / (1.0 - 1.0 / p.multiplier));
    data.exp2phi.push_back(std::exp(2.0 * phi_sum));
    data.cocycle.push_back(c);
  }
  return data;
}

}  // namespace

double orbit_sum_exp2phi(const ExpandingMap& map, const Potential& phi_normalized, int n,
                         long cap) {
  double s = 0.0;
  for (const auto& p : enumerate_periodic_points(map, n, cap)) {
    double phi_sum = 0.0;
    double x = p.x;
    for (int j = 0; j < p.period; ++j) {
      phi_sum += phi_normalized.eval(x);
      x = map.branch(p.word[static_cast<size_t>(j)]).forward(x);
    }
    s += std::exp(2.0 * phi_sum);
  }
  return s;
}

AverageReport S_sum(const ExpandingMap& map, const Potential& phi_normalized,
                    const SkewFunction& tau, const GroupModel& group, double t, int n,
                    double tol, double bound_constant, long cap) {
  if (t <= 0) throw ConfigError("S_sum: t must be > 0");
  const OrbitData data = collect_orbits(map, phi_normalized, tau, n, cap);
  const double cutoff = group.kappa_cutoff(t, tol);
  const auto irreps = group.irreps_below(cutoff);

  AverageReport rep;
  rep.t = t;
  rep.n = n;
  rep.rank = group.rank();

  // S(t,n): irrep sum of exp(-kappa t) |W|^2 / dim^2 at matching truncation.
  for (const auto& irrep : irreps) {
    std::complex<double> w = 0.0;
    for (size_t i = 0; i < data.weights.size(); ++i) {
      w += data.weights[i] * irrep.character(data.cocycle[i]);
    }
    rep.S_value += std::exp(-t * irrep.kappa) * std::norm(w);
  }

  // Diagonal part: sum over orbits of G_n(x)^2 F(t; c(x), c(x)).
  for (size_t i = 0; i < data.weights.size(); ++i) {
    double f_diag = 0.0;
    for (const auto& irrep : irreps) {
      f_diag += std::exp(-t * irrep.kappa) * std::norm(irrep.character(data.cocycle[i]));
    }
    rep.diagonal_value += data.weights[i] * data.weights[i] * f_diag;
  }

  double e2 = 0.0;
  for (double v : data.exp2phi) e2 += v;
  rep.lower_bound_value = bound_constant * std::pow(t, -0.5 * rep.rank) * e2;
  rep.pressure2 = std::log(e2) / n;
  return rep;
}

double fit_lower_bound_A(const ExpandingMap& map, const Potential& phi_normalized,
                         const SkewFunction& tau, const GroupModel& group,
                         const std::vector<double>& t_grid, const std::vector<int>& n_grid,
                         double tol, long cap) {
  double ratio_min = std::numeric_limits<double>::max();
  for (int n : n_grid) {
    const double e2 = orbit_sum_exp2phi(map, phi_normalized, n, cap);
    for (double t : t_grid) {
      const AverageReport rep = S_sum(map, phi_normalized, tau, group, t, n, tol, 0.0, cap);
      const double ratio = rep.S_value * std::pow(t, 0.5 * group.rank()) / e2;
      ratio_min = std::min(ratio_min, ratio);
    }
  }
  if (!(ratio_min > 0.0)) throw NumericalError("fit_lower_bound_A: nonpositive ratio");
  return 0.98 * ratio_min;
}

MarginReport diagonal_lower_bound_check(const std::vector<AverageReport>& reports) {
  MarginReport m;
  m.worst_margin = std::numeric_limits<double>::max();
  for (const auto& r : reports) {
    m.worst_margin = std::min(m.worst_margin, r.S_value - r.lower_bound_value);
  }
  m.ok = reports.empty() ? false : m.worst_margin >= 0.0;
  return m;
}

ContradictionReport contradiction_scheme(const ExpandingMap& map,
                                         const Potential& phi_normalized,
                                         const SkewFunction& tau, const GroupModel& group,
                                         double rho_hypothesis, double epsilon, int n_max,
                                         long cap) {
  if (!(rho_hypothesis > 0.0 && rho_hypothesis < 1.0))
    throw ConfigError("contradiction_scheme: rho must be in (0,1)");
  (void)tau;
  ContradictionReport rep;
  rep.rho = rho_hypothesis;
  rep.epsilon = epsilon;

  const double r = group.rank();
  rep.pressure2 = std::log(orbit_sum_exp2phi(map, phi_normalized, n_max, cap)) / n_max;
  rep.alpha = 2.0 * std::abs(rep.pressure2) / r + 3.0 * epsilon;
  bool improved = group.kind() == GroupKind::SU2 || group.kind() == GroupKind::SO3;
  rep.beta = improved ? 0.5 : (1.0 + group.dim() / 2.0);
  rep.gamma = gamma_constant(group, improved);
  rep.threshold = std::exp(rep.gamma * rep.pressure2);

  bool tail_contra = true;
  for (int n = 1; n <= n_max; ++n) {
    const double e2 = orbit_sum_exp2phi(map, phi_normalized, n, cap);
    ContradictionRow row;
    row.n = n;
    // n-th roots of both sides of the rate inequality at t = exp(-alpha n).
    row.lhs_rate = std::exp(rep.alpha * r / 2.0) * std::pow(e2, 1.0 / n);
    const double log_a = 2.0 * n * std::log1p(epsilon);
    const double log_b = rep.alpha * rep.beta * n + 2.0 * n * std::log(rho_hypothesis + epsilon);
    const double mx = std::max(log_a, log_b);
    row.rhs_rate = std::exp((mx + std::log1p(std::exp(std::min(log_a, log_b) - mx))) / n);
    rep.rows.push_back(row);
    if (n > n_max - 3 && !(row.lhs_rate > row.rhs_rate)) tail_contra = false;
  }
  rep.contradiction = tail_contra;
  return rep;
}

void write_average_csv(std::ostream& os, const std::vector<AverageReport>& reports) {
  os << "t,n,S,diagonal,bound,margin\n";
  os.precision(17);
  for (const auto& r : reports) {
    os << r.t << ',' << r.n << ',' << r.S_value << ',' << r.diagonal_value << ','
       << r.lower_bound_value << ',' << (r.S_value - r.lower_bound_value) << '\n';
  }
}

}  // namespace skewmix
