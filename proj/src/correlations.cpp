#include "skewmix/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>

#include "skewmix/chebyshev.hpp"
#include "skewmix/errors.hpp"

namespace skewmix {

double Observable::eval(double x, const GroupPoint& g) const {
  double value = 0.0;
  for (const auto& term : terms) {
    const Eigen::MatrixXcd rep = term.irrep.matrix(g);
    const Eigen::MatrixXcd a = term.coeff(x);
    const std::complex<double> tr = (rep * a).trace();
    value += term.imaginary_part ? tr.imag() : tr.real();
  }
  return value;
}

std::pair<double, GroupPoint> skew_apply(const ExpandingMap& map, const SkewFunction& tau,
                                         int n, double x, GroupPoint g) {
  for (int j = 0; j < n; ++j) {
    g = tau.group.multiply(tau.eval(x), g);
    x = map.apply(x);
  }
  return {x, g};
}

int correlation_group_resolution(const GroupModel& group,
                                 const std::vector<IrrepInfo>& irreps) {
  if (group.kind() == GroupKind::Torus) {
    int qmax = 0;
    for (const auto& ir : irreps) {
      for (int q : ir.id) qmax = std::max(qmax, std::abs(q));
    }
    return 2 * qmax + 2;
  }
  int mmax = 0;
  for (const auto& ir : irreps) mmax = std::max(mmax, ir.id[0]);
  return mmax + 2;
}

double correlation_direct(const Observable& F, const Observable& G, int n,
                          const ExpandingMap& map, const Potential& phi_normalized,
                          const RpfData& rpf, const SkewFunction& tau, int group_resolution,
                          int depth) {
  if (n < 0) throw ConfigError("correlation_direct: n must be >= 0");
  if (depth < 0) depth = n;
  const Quadrature xq = refined_equilibrium_quadrature(map, phi_normalized, rpf, depth);
  const auto gq = tau.group.haar_quadrature(group_resolution);

  double pair_sum = 0.0, mean_f = 0.0, mean_g = 0.0;
  for (size_t i = 0; i < xq.nodes.size(); ++i) {
    const double x = xq.nodes[i];
    // Forward orbit by direct iteration; ties at branch boundaries go low.
    double xn = x;
    GroupPoint coc = tau.group.identity();
    for (int j = 0; j < n; ++j) {
      coc = tau.group.multiply(tau.eval(xn), coc);
      xn = map.apply(xn);
    }
    for (const auto& [g, wg] : gq) {
      const double w = xq.weights[i] * wg;
      const double fv = F.eval(xn, tau.group.multiply(coc, g));
      const double gv = G.eval(x, g);
      pair_sum += w * fv * gv;
      mean_f += w * F.eval(x, g);
      mean_g += w * gv;
    }
  }
  return pair_sum - mean_f * mean_g;
}

double observable_pairing(const Observable& A, const Observable& B, const RpfData& rpf,
                          const GroupModel& group, int resolution) {
  const auto gq = group.haar_quadrature(resolution);
  double s = 0.0;
  for (int i = 0; i < rpf.size(); ++i) {
    const double x = rpf.nodes[static_cast<size_t>(i)];
    const double wx = rpf.weights[static_cast<size_t>(i)];
    for (const auto& [g, wg] : gq) {
      s += wx * wg * A.eval(x, g) * B.eval(x, g);
    }
  }
  return s;
}

EigenObservable eigen_observable(const ExpandingMap& map, const Potential& phi_normalized,
                                 const RpfData& rpf, const SkewFunction& tau,
                                 const IrrepInfo& irrep, int n, int eigen_index) {
  const TwistedOperator op = build_twisted_matrix(map, phi_normalized, rpf, tau, irrep, n);
  const SpectrumResult spec = eigenvalues(op);
  if (eigen_index < 0 || eigen_index >= spec.trusted_count)
    throw NumericalError("eigen_observable: no trusted eigenvalue at requested index");

  const std::complex<double> lambda = spec.eigenvalues[static_cast<size_t>(eigen_index)];
  Eigen::VectorXcd vec = spec.vectors.col(eigen_index);

  const double resid = (op.matrix * vec - lambda * vec).norm() / vec.norm();
  if (resid > 1e-9)
    throw NumericalError("eigen_observable: eigen residual above 1e-9");

  const int dim = irrep.dim;
  auto component_values = std::make_shared<std::vector<std::vector<std::complex<double>>>>();
  component_values->resize(static_cast<size_t>(dim));
  for (int b = 0; b < dim; ++b) {
    (*component_values)[static_cast<size_t>(b)].resize(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
      (*component_values)[static_cast<size_t>(b)][static_cast<size_t>(l)] = vec[l * dim + b];
    }
  }

  auto make_coeff = [component_values, dim, nodes = op.nodes, bary = op.bary](
                        std::complex<double> scale) {
    return [component_values, dim, nodes, bary, scale](double x) {
      // Row-eigenfunction v(x) interpolated back; A carries it in its first row.
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
      for (int b = 0; b < dim; ++b) {
        a(0, b) = scale * barycentric_interpolate(
                              nodes, bary, (*component_values)[static_cast<size_t>(b)], x);
      }
      return a;
    };
  };

  EigenObservable eo;
  eo.lambda = lambda;
  eo.irrep = irrep;

  const int resolution = correlation_group_resolution(tau.group, {irrep});
  std::complex<double> scale = 1.0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Observable f, g;
    f.terms = {{irrep, make_coeff(scale), false}};
    g.terms = {{irrep, make_coeff(scale), true}};
    f.description = irrep.label + "[" + std::to_string(eigen_index) + "]:Re";
    g.description = irrep.label + "[" + std::to_string(eigen_index) + "]:Im";
    const double f2 = observable_pairing(f, f, rpf, tau.group, resolution);
    if (f2 < 1e-12 && attempt == 0) {
      scale = std::complex<double>(0.0, 1.0);  // rotate A by i when Re part degenerates
      continue;
    }
    if (!(f2 > 0.0)) throw NumericalError("eigen_observable: degenerate observable");
    scale /= std::sqrt(f2);
    f.terms[0].coeff = make_coeff(scale);
    g.terms[0].coeff = make_coeff(scale);
    eo.F = f;
    eo.G = g;
    eo.F2 = observable_pairing(f, f, rpf, tau.group, resolution);
    eo.FG = observable_pairing(f, g, rpf, tau.group, resolution);
    break;
  }
  return eo;
}

double correlation_predicted(
    const std::vector<std::pair<double, const EigenObservable*>>& combo, int n) {
  double c = 0.0;
  for (const auto& [a, eo] : combo) {
    const double rho = std::abs(eo->lambda);
    const double theta = std::arg(eo->lambda);
    const double rn = std::pow(rho, n);
    c += a * a * (rn * std::cos(n * theta) * eo->F2 - rn * std::sin(n * theta) * eo->FG);
  }
  return c;
}

long dirichlet_subsequence(const std::vector<double>& angles, long Q, long D, long cap) {
  if (Q < 2 || D < 1) throw ConfigError("dirichlet_subsequence: need Q >= 2, D >= 1");
  double bound = static_cast<double>(D);
  for (size_t i = 0; i < angles.size(); ++i) {
    bound *= static_cast<double>(Q);
    if (bound > 1e18) break;
  }
  const long guaranteed = bound > 1e18 ? std::numeric_limits<long>::max()
                                       : static_cast<long>(bound);
  const long hi = std::min(guaranteed, cap);
  const double inv_q = 1.0 / static_cast<double>(Q);
  for (long q = D; q <= hi; ++q) {
    bool ok = true;
    for (double a : angles) {
      const double dist = std::abs(std::remainder(q * a, 1.0));
      if (!(dist < inv_q)) {
        ok = false;
        break;
      }
    }
    if (ok) return q;
  }
  if (hi < guaranteed)
    throw CapExceeded("dirichlet_subsequence: cap exceeded before the guaranteed range");
  throw NumericalError("dirichlet_subsequence: no admissible q in the guaranteed range");
}

std::vector<int> dirichlet_time_subsequence(const std::vector<double>& thetas,
                                            double max_fg_ratio, int n_max) {
  // Q large enough that cos(n theta) >= 3/4 and the sine term is dominated.
  long q_box = std::max<long>(9, static_cast<long>(std::ceil(8.0 * M_PI * max_fg_ratio)));
  std::vector<double> angles;
  for (double t : thetas) angles.push_back(t / (2.0 * M_PI));
  std::vector<int> times;
  long d = 1;
  while (true) {
    long q = 0;
    try {
      q = dirichlet_subsequence(angles, q_box, d);
    } catch (const CapExceeded&) {
      break;
    }
    if (q > n_max) break;
    times.push_back(static_cast<int>(q));
    d = q + 1;
  }
  return times;
}

double decay_rate_estimate(const CorrelationSeries& series, const std::vector<int>& subsequence) {
  std::vector<int> ns = subsequence;
  if (ns.empty()) {
    for (int n = 1; n <= static_cast<int>(series.values.size()); ++n) ns.push_back(n);
  }
  int usable = 0;
  double best = 0.0;
  for (int n : ns) {
    if (n < 1 || n > static_cast<int>(series.values.size())) continue;
    const double c = std::abs(series.values[static_cast<size_t>(n - 1)]);
    if (c <= 1e-300) continue;
    ++usable;
    best = std::max(best, std::pow(c, 1.0 / n));
  }
  if (usable == 0) throw NumericalError("decay_rate_estimate: all values below floor");
  if (usable < 4) throw ConfigError("decay_rate_estimate: need at least 4 usable values");
  return best;
}

void write_correlation_csv(std::ostream& os, const CorrelationSeries& series) {
  os << "n,C,method\n";
  os.precision(17);
  for (size_t i = 0; i < series.values.size(); ++i) {
    os << (i + 1) << ',' << series.values[i] << ',' << series.method << '\n';
  }
}

void write_correlation_plotdata(std::ostream& os, const CorrelationSeries& series) {
  os << "n,log10_abs_C\n";
  os.precision(17);
  for (size_t i = 0; i < series.values.size(); ++i) {
    const double c = std::abs(series.values[i]);
    os << (i + 1) << ',' << (c > 0 ? std::log10(c) : -std::numeric_limits<double>::infinity())
       << '\n';
  }
}

}  // namespace skewmix
