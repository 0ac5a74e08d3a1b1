#include "skewmix/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewmix/chebyshev.hpp"
#include "skewmix/errors.hpp"

namespace skewmix {

namespace {

// Per-orbit data reused across irreps: weight G_n and the operator cocycle
// c_n(x) = tau(x)^{-1} tau(Tx)^{-1} ... tau(T^{n-1}x)^{-1}.
struct OrbitTable {
  std::vector<double> weights;          // exp(phi^(n)) / (1 - 1/mult)
  std::vector<GroupPoint> cocycle;      // c_n(x) per word
};

OrbitTable build_orbit_table(const ExpandingMap& map, const Potential& phi,
                             const SkewFunction& tau, int n, const RpfData* density,
                             long cap) {
  OrbitTable table;
  const auto points = enumerate_periodic_points(map, n, cap);
  table.weights.reserve(points.size());
  table.cocycle.reserve(points.size());
  const GroupModel& group = tau.group;
  for (const auto& p : points) {
    const auto orbit = orbit_points(map, p);
    double phi_sum = 0.0;
    GroupPoint c = group.identity();
    for (double x : orbit) {
      phi_sum += phi.eval(x);
      c = group.multiply(c, group.inverse(tau.eval(x)));
    }
    double w = std::exp(phi_sum) / (1.0 - 1.0 / p.multiplier);
    if (density != nullptr) {
      // h-conjugated weights; the ratio telescopes to one on the closed orbit.
      double hfac = 1.0;
      for (int j = 0; j < p.period; ++j) {
        const double hx = density->density_at(orbit[static_cast<size_t>(j)]);
        const double hnext =
            density->density_at(orbit[static_cast<size_t>((j + 1) % p.period)]);
        hfac *= hx / hnext;
      }
      w *= hfac;
    }
    table.weights.push_back(w);
    table.cocycle.push_back(c);
  }
  return table;
}

std::complex<double> trace_from_table(const OrbitTable& table, const IrrepInfo& irrep) {
  std::complex<double> sum = 0.0;
  for (size_t i = 0; i < table.weights.size(); ++i) {
    sum += table.weights[i] * irrep.character(table.cocycle[i]);
  }
  return static_cast<double>(irrep.dim) * sum;
}

std::vector<std::complex<double>> newton_det_coeffs(
    const std::vector<std::complex<double>>& traces) {
  const int n = static_cast<int>(traces.size());
  std::vector<std::complex<double>> z(static_cast<size_t>(n) + 1);
  z[0] = 1.0;
  for (int j = 1; j <= n; ++j) {
    std::complex<double> acc = 0.0;
    for (int m = 1; m <= j; ++m) acc += traces[static_cast<size_t>(m - 1)] * z[static_cast<size_t>(j - m)];
    z[static_cast<size_t>(j)] = -acc / static_cast<double>(j);
  }
  return z;
}

std::complex<double> poly_eval(const std::vector<std::complex<double>>& coeffs,
                               std::complex<double> z) {
  std::complex<double> v = 0.0;
  for (size_t j = coeffs.size(); j-- > 0;) v = v * z + coeffs[j];
  return v;
}

std::complex<double> poly_derivative_eval(const std::vector<std::complex<double>>& coeffs,
                                          std::complex<double> z) {
  std::complex<double> v = 0.0;
  for (size_t j = coeffs.size(); j-- > 1;) v = v * z + static_cast<double>(j) * coeffs[j];
  return v;
}

}  // namespace

SkewFunction tau_identity(const GroupModel& group) {
  GroupPoint e = group.identity();
  return {[e](double) { return e; }, group, "identity"};
}

SkewFunction tau_torus_linear(double coeff, int d) {
  GroupModel g = GroupModel::torus(d);
  return {[coeff, d](double x) {
            std::vector<double> a(static_cast<size_t>(d));
            double p = x;
            for (int i = 0; i < d; ++i) {
              a[static_cast<size_t>(i)] = 2.0 * M_PI * coeff * p;
              p *= x;
            }
            return torus_point(a);
          },
          g, "linear-angle"};
}

SkewFunction tau_torus_constant(const std::vector<double>& angles) {
  GroupModel g = GroupModel::torus(static_cast<int>(angles.size()));
  GroupPoint p = torus_point(angles);
  return {[p](double) { return p; }, g, "constant-angle"};
}

SkewFunction tau_su2_one_direction(double coeff) {
  return {[coeff](double x) {
            return su2_exp(2.0 * M_PI * coeff * x, Eigen::Vector3d(1, 0, 0));
          },
          GroupModel::su2(), "su2-one-direction"};
}

SkewFunction tau_su2_two_direction(double c1, double c2) {
  GroupModel g = GroupModel::su2();
  return {[c1, c2, g](double x) {
            const GroupPoint a = su2_exp(2.0 * M_PI * c1 * x, Eigen::Vector3d(1, 0, 0));
            const GroupPoint b = su2_exp(2.0 * M_PI * c2 * x * x, Eigen::Vector3d(0, 1, 0));
            return g.multiply(a, b);
          },
          g, "su2-two-direction"};
}

namespace {

Eigen::MatrixXcd assemble_twisted(const ExpandingMap& map, const Potential& phi_normalized,
                                  const RpfData& rpf, const SkewFunction& tau,
                                  const IrrepInfo& irrep, int n) {
  const auto nodes = cgl_nodes01(n);
  const auto bary = cgl_barycentric_weights(n);
  const int dim = irrep.dim;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * dim, n * dim);
  for (int i = 0; i < n; ++i) {
    const double x = nodes[static_cast<size_t>(i)];
    const double hx = rpf.density_at(x);
    for (int j = 1; j <= map.branch_count(); ++j) {
      const double y = map.branch(j).inverse(x);
      const double w = std::exp(phi_normalized.eval(y)) * rpf.density_at(y) / hx;
      const Eigen::MatrixXcd u = irrep.matrix(tau.eval(y)).adjoint();  // pi(tau(y))^{-1}
      const auto row = lagrange_row(nodes, bary, y);
      for (int l = 0; l < n; ++l) {
        const double wl = w * row[static_cast<size_t>(l)];
        if (wl == 0.0) continue;
        for (int a = 0; a < dim; ++a) {
          for (int b = 0; b < dim; ++b) {
            m(i * dim + a, l * dim + b) += wl * u(b, a);
          }
        }
      }
    }
  }
  return m;
}

}  // namespace

TwistedOperator build_twisted_matrix(const ExpandingMap& map, const Potential& phi_normalized,
                                     const RpfData& rpf, const SkewFunction& tau,
                                     const IrrepInfo& irrep, int n) {
  if (n < 4) throw ConfigError("build_twisted_matrix: need n >= 4");
  TwistedOperator op;
  op.irrep = irrep;
  op.collocation_size = n;
  op.normalized = true;
  op.nodes = cgl_nodes01(n);
  op.bary = cgl_barycentric_weights(n);
  op.matrix = assemble_twisted(map, phi_normalized, rpf, tau, irrep, n);
  op.rebuild = [map, phi_normalized, rpf, tau, irrep](int size) {
    return assemble_twisted(map, phi_normalized, rpf, tau, irrep, size);
  };
  return op;
}

namespace {

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalues: solver failed");
  std::vector<std::complex<double>> v(static_cast<size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) v[static_cast<size_t>(i)] = es.eigenvalues()[i];
  std::sort(v.begin(), v.end(), [](std::complex<double> a, std::complex<double> b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return v;
}

}  // namespace

SpectrumResult eigenvalues(const TwistedOperator& op) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.matrix);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalues: solver failed");

  const int size = static_cast<int>(op.matrix.rows());
  std::vector<int> order(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) order[static_cast<size_t>(i)] = i;
  const auto& vals = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(vals[a]), mb = std::abs(vals[b]);
    if (ma != mb) return ma > mb;
    if (vals[a].real() != vals[b].real()) return vals[a].real() > vals[b].real();
    return vals[a].imag() > vals[b].imag();
  });

  SpectrumResult spec;
  spec.irrep = op.irrep;
  spec.collocation_size = op.collocation_size;
  spec.multiplicity = op.irrep.dim;
  spec.eigenvalues.resize(static_cast<size_t>(size));
  spec.refinement_error.assign(static_cast<size_t>(size), 0.0);
  spec.vectors.resize(size, size);
  for (int i = 0; i < size; ++i) {
    spec.eigenvalues[static_cast<size_t>(i)] = vals[order[static_cast<size_t>(i)]];
    spec.vectors.col(i) = es.eigenvectors().col(order[static_cast<size_t>(i)]);
  }

  // The dense solve loses sub-leading eigenvalues to conditioning (the value
  // basis is strongly nonnormal). Re-solve on a ladder of node counts and take
  // each eigenvalue from the rung where consecutive values agree best.
  std::vector<bool> refined(static_cast<size_t>(size), false);
  if (op.rebuild) {
    const int dim = op.irrep.dim;
    std::vector<int> sizes{std::min(8, op.collocation_size)};
    while (sizes.back() < op.collocation_size) {
      sizes.push_back(std::min(op.collocation_size,
                               std::max(sizes.back() + 2, sizes.back() * 6 / 5)));
    }
    std::vector<std::vector<std::complex<double>>> rungs(sizes.size());
    for (size_t s = 0; s < sizes.size(); ++s) {
      rungs[s] = (sizes[s] == op.collocation_size) ? spec.eigenvalues
                                                   : sorted_eigenvalues(op.rebuild(sizes[s]));
    }
    const int refine_count = std::min(size, op.collocation_size * dim / 2);
    for (int j = 0; j < refine_count; ++j) {
      const int need = std::max(8, 2 * (j / dim));
      double best = std::numeric_limits<double>::max();
      std::complex<double> value = spec.eigenvalues[static_cast<size_t>(j)];
      for (size_t s = 0; s + 1 < sizes.size(); ++s) {
        if (sizes[s] < need || sizes[s] * dim <= j || sizes[s + 1] * dim <= j) continue;
        const double d =
            std::abs(rungs[s][static_cast<size_t>(j)] - rungs[s + 1][static_cast<size_t>(j)]);
        if (d < best) {
          best = d;
          value = rungs[s][static_cast<size_t>(j)];
        }
      }
      if (best < std::numeric_limits<double>::max()) {
        spec.eigenvalues[static_cast<size_t>(j)] = value;
        spec.refinement_error[static_cast<size_t>(j)] = best;
        refined[static_cast<size_t>(j)] = true;
      }
    }
  }

  // Trust cutoff: above sqrt(machine eps) relative to the leading modulus,
  // within the first half of the modes, and (when the ladder ran) with a
  // converged plateau.
  const double lead = std::abs(spec.eigenvalues[0]);
  const double floor_mod = std::sqrt(std::numeric_limits<double>::epsilon()) * lead;
  const int max_index = size / 2;
  int trusted = 0;
  while (trusted < max_index) {
    const size_t j = static_cast<size_t>(trusted);
    const double mod = std::abs(spec.eigenvalues[j]);
    if (mod < floor_mod) break;
    if (refined[j] && spec.refinement_error[j] > 1e-6 * std::max(mod, floor_mod)) break;
    ++trusted;
  }
  spec.trusted_count = trusted;
  return spec;
}

std::complex<double> trace_periodic(const ExpandingMap& map, const Potential& phi_normalized,
                                    const SkewFunction& tau, const IrrepInfo& irrep, int n,
                                    const RpfData* density, long cap) {
  const OrbitTable table = build_orbit_table(map, phi_normalized, tau, n, density, cap);
  return trace_from_table(table, irrep);
}

std::complex<double> trace_matrix(const TwistedOperator& op, int n) {
  if (n < 1) throw ConfigError("trace_matrix: n must be >= 1");
  Eigen::MatrixXcd p = op.matrix;
  for (int i = 1; i < n; ++i) p = p * op.matrix;
  return static_cast<double>(op.irrep.dim) * p.trace();
}

std::complex<double> W_value(const ExpandingMap& map, const Potential& phi_normalized,
                             const SkewFunction& tau, const IrrepInfo& irrep, int n,
                             long cap) {
  return trace_periodic(map, phi_normalized, tau, irrep, n, nullptr, cap);
}

std::vector<ZetaSeries> make_zeta_series_batch(const ExpandingMap& map,
                                               const Potential& phi_normalized,
                                               const SkewFunction& tau,
                                               const std::vector<IrrepInfo>& irreps, int n_max,
                                               long cap) {
  if (n_max < 1) throw ConfigError("make_zeta_series: n_max must be >= 1");
  std::vector<ZetaSeries> out(irreps.size());
  for (size_t k = 0; k < irreps.size(); ++k) {
    out[k].irrep = irreps[k];
    out[k].n_max = n_max;
    out[k].traces.resize(static_cast<size_t>(n_max));
  }
  for (int n = 1; n <= n_max; ++n) {
    const OrbitTable table = build_orbit_table(map, phi_normalized, tau, n, nullptr, cap);
    for (size_t k = 0; k < irreps.size(); ++k) {
      out[k].traces[static_cast<size_t>(n - 1)] = trace_from_table(table, irreps[k]);
    }
  }
  for (auto& zs : out) {
    // |Tr M^n|^{1/n} approaches the leading modulus from above for these
    // positive-weight sums; use the last term as the radius estimate.
    const double lead_est =
        std::pow(std::abs(zs.traces.back()) + 1e-300, 1.0 / zs.n_max);
    zs.radius_hint = 0.75 / lead_est;
    zs.det_coeffs = newton_det_coeffs(zs.traces);
  }
  return out;
}

ZetaSeries make_zeta_series(const ExpandingMap& map, const Potential& phi_normalized,
                            const SkewFunction& tau, const IrrepInfo& irrep, int n_max,
                            long cap) {
  return make_zeta_series_batch(map, phi_normalized, tau, {irrep}, n_max, cap).front();
}

ZetaValue zeta_eval(const ZetaSeries& zs, std::complex<double> z) {
  if (std::abs(z) >= zs.radius_hint)
    throw ConfigError("zeta_eval: |z| outside the series trust region");
  std::complex<double> logz = 0.0;
  for (int n = 1; n <= zs.n_max; ++n) {
    logz -= std::pow(z, n) / static_cast<double>(n) * zs.traces[static_cast<size_t>(n - 1)];
  }
  ZetaValue v;
  v.value = std::exp(logz);
  const double lead_est = std::pow(std::abs(zs.traces.back()) + 1e-300, 1.0 / zs.n_max);
  const double ratio = std::abs(z) * lead_est;
  if (ratio < 1.0) {
    const double tail = std::pow(ratio, zs.n_max + 1) /
                        ((zs.n_max + 1) * (1.0 - ratio));
    v.tail_estimate = std::abs(v.value) * std::expm1(tail);
  } else {
    v.tail_estimate = std::numeric_limits<double>::infinity();
  }
  return v;
}

std::complex<double> zeta_log_derivative(const ZetaSeries& zs, std::complex<double> z) {
  const std::complex<double> num = poly_derivative_eval(zs.det_coeffs, z);
  const std::complex<double> den = poly_eval(zs.det_coeffs, z);
  if (std::abs(den) < 1e-300) throw NumericalError("zeta_log_derivative: Z vanishes");
  return num / den;
}

std::vector<std::complex<double>> zeta_roots(const ZetaSeries& zs) {
  int deg = static_cast<int>(zs.det_coeffs.size()) - 1;
  while (deg > 0 && std::abs(zs.det_coeffs[static_cast<size_t>(deg)]) < 1e-300) --deg;
  if (deg < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) {
    companion(i, deg - 1) =
        -zs.det_coeffs[static_cast<size_t>(i)] / zs.det_coeffs[static_cast<size_t>(deg)];
  }
  // Parlett-Reinsch balancing; companion matrices of strongly graded
  // polynomials need it badly.
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < deg; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        c += std::abs(companion(j, i));
        r += std::abs(companion(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s) {
        done = false;
        companion.row(i) /= f;
        companion.col(i) *= f;
      }
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<std::complex<double>> roots(static_cast<size_t>(deg));
  for (int i = 0; i < deg; ++i) roots[static_cast<size_t>(i)] = es.eigenvalues()[i];
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) { return std::abs(a) < std::abs(b); });
  return roots;
}

std::complex<double> contour_extract_W(const ZetaSeries& zs, int n, double r, int points) {
  if (n < 1 || r <= 0) throw ConfigError("contour_extract_W: bad arguments");
  // Trapezoid rule on the circle; spectrally accurate for the periodic integrand.
  std::complex<double> acc = 0.0;
  double min_abs_z = std::numeric_limits<double>::max();
  for (int k = 0; k < points; ++k) {
    const double phi = 2.0 * M_PI * k / points;
    const std::complex<double> z = r * std::complex<double>(std::cos(phi), std::sin(phi));
    const std::complex<double> den = poly_eval(zs.det_coeffs, z);
    min_abs_z = std::min(min_abs_z, std::abs(den));
    acc += poly_derivative_eval(zs.det_coeffs, z) / den * std::pow(z, 1 - n);
  }
  if (min_abs_z < 1e-8) throw NumericalError("contour_extract_W: contour meets a zero of Z");
  return -acc / static_cast<double>(points);
}

LogDerivReport logderiv_bound_check(const ZetaSeries& zs, double r, double rho1) {
  if (!(r < rho1)) throw ConfigError("logderiv_bound_check: need r < rho1");
  LogDerivReport rep;
  rep.r = r;
  rep.rho1 = rho1;
  rep.sqrt_kappa = std::sqrt(zs.irrep.kappa);
  for (const auto& root : zeta_roots(zs)) {
    if (std::abs(root) < rho1) {
      rep.zero_free = false;
      throw NumericalError("logderiv_bound_check: zero of Z inside rho1");
    }
  }
  rep.zero_free = true;
  double mx = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double phi = 2.0 * M_PI * k / 256;
    const std::complex<double> z = r * std::complex<double>(std::cos(phi), std::sin(phi));
    mx = std::max(mx, std::abs(zeta_log_derivative(zs, z)));
  }
  rep.max_logderiv = mx;
  return rep;
}

double logderiv_growth_exponent(const std::vector<std::pair<double, double>>& kappa_and_max) {
  if (kappa_and_max.size() < 3)
    throw ConfigError("logderiv_growth_exponent: need at least 3 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(kappa_and_max.size());
  for (const auto& [kappa, mx] : kappa_and_max) {
    const double x = 0.5 * std::log(kappa);  // log sqrt(kappa)
    const double y = std::log(mx);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DecayFit decay_fit(const SpectrumResult& spec) {
  if (spec.trusted_count < 6) throw ConfigError("decay_fit: need at least 6 trusted eigenvalues");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < spec.trusted_count; ++i) {
    const double x = i;
    const double y = std::log(std::abs(spec.eigenvalues[static_cast<size_t>(i)]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = spec.trusted_count;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  DecayFit fit;
  fit.constant = std::exp(intercept);
  fit.rho = std::exp(slope);
  if (!(fit.rho < 1.0)) throw NumericalError("decay_fit: fitted rho not below 1");
  return fit;
}

}  // namespace skewmix
