#include "skewmix/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "skewmix/chebyshev.hpp"
#include "skewmix/errors.hpp"

namespace skewmix {

namespace {

struct LeadingPair {
  double value = 0.0;
  Eigen::VectorXd vec;
};

// Leading eigenvalue of a real matrix, required real, positive and separated;
// the eigenvector is rotated to the real axis and sign-fixed positive.
LeadingPair leading_real_eigenpair(const Eigen::MatrixXd& m, const char* what) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError(std::string(what) + ": eigensolver failed");
  const auto& vals = es.eigenvalues();
  int lead = 0;
  for (int i = 1; i < vals.size(); ++i) {
    if (std::abs(vals[i]) > std::abs(vals[lead])) lead = i;
  }
  double second = 0.0;
  for (int i = 0; i < vals.size(); ++i) {
    if (i != lead) second = std::max(second, std::abs(vals[i]));
  }
  const double lam = std::abs(vals[lead]);
  if (lam == 0.0) throw NumericalError(std::string(what) + ": zero leading eigenvalue");
  if (std::abs(vals[lead].imag()) > 1e-10 * lam || vals[lead].real() <= 0.0)
    throw NumericalError(std::string(what) + ": leading eigenvalue not real positive");
  if (lam - second < 1e-8 * lam)
    throw NumericalError(std::string(what) + ": leading eigenvalue not separated");

  Eigen::VectorXcd v = es.eigenvectors().col(lead);
  int big = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  }
  v *= std::conj(v[big]) / std::abs(v[big]);
  Eigen::VectorXd vr = v.real();
  if (v.imag().cwiseAbs().maxCoeff() > 1e-8 * vr.cwiseAbs().maxCoeff())
    throw NumericalError(std::string(what) + ": leading eigenvector not real");
  if (vr.sum() < 0) vr = -vr;

  const double resid = (m * vr - vals[lead].real() * vr).norm() / vr.norm();
  if (resid > 1e-11 * std::max(1.0, lam))
    throw NumericalError(std::string(what) + ": eigen residual above tolerance");

  return {vals[lead].real(), vr};
}

}  // namespace

Potential potential_zero() {
  return {[](double) { return 0.0; }, "zero"};
}

Potential potential_srb(const ExpandingMap& map) {
  std::vector<std::function<double(double)>> ders;
  std::vector<double> his;
  for (int i = 1; i <= map.branch_count(); ++i) {
    ders.push_back(map.branch(i).derivative);
    his.push_back(map.branch(i).hi);
  }
  auto eval = [ders, his](double x) {
    size_t i = 0;
    while (i + 1 < his.size() && x > his[i]) ++i;
    return -std::log(std::abs(ders[i](x)));
  };
  return {eval, "srb"};
}

Potential potential_scaled(const Potential& phi, double factor) {
  auto f = phi.eval;
  return {[f, factor](double x) { return factor * f(x); },
          phi.label + "*" + std::to_string(factor)};
}

Potential potential_shifted(const Potential& phi, double delta) {
  auto f = phi.eval;
  return {[f, delta](double x) { return f(x) + delta; }, phi.label + "+shift"};
}

Potential potential_log2_sin(double amplitude) {
  return {[amplitude](double x) { return -std::log(2.0) + amplitude * std::sin(2.0 * M_PI * x); },
          "log2-sin"};
}

double RpfData::density_at(double x) const {
  return barycentric_interpolate(nodes, bary, density, x);
}

Eigen::MatrixXd discretize_transfer_operator(const ExpandingMap& map, const Potential& phi,
                                             int n) {
  if (n < 4) throw ConfigError("discretize_transfer_operator: need n >= 4");
  const auto nodes = cgl_nodes01(n);
  const auto bary = cgl_barycentric_weights(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= map.branch_count(); ++j) {
      const double y = map.branch(j).inverse(nodes[static_cast<size_t>(i)]);
      const double w = std::exp(phi.eval(y));
      const auto row = lagrange_row(nodes, bary, y);
      for (int l = 0; l < n; ++l) m(i, l) += w * row[static_cast<size_t>(l)];
    }
  }
  return m;
}

RpfData rpf_solve(const ExpandingMap& map, const Potential& phi, int n) {
  const Eigen::MatrixXd m = discretize_transfer_operator(map, phi, n);
  const LeadingPair right = leading_real_eigenpair(m, "rpf_solve");
  const LeadingPair left = leading_real_eigenpair(m.transpose(), "rpf_solve(left)");

  RpfData rpf;
  rpf.pressure = std::log(right.value);
  rpf.nodes = cgl_nodes01(n);
  rpf.bary = cgl_barycentric_weights(n);

  rpf.density.resize(static_cast<size_t>(n));
  rpf.weights.resize(static_cast<size_t>(n));
  double wsum = 0.0;
  for (int i = 0; i < n; ++i) {
    rpf.density[static_cast<size_t>(i)] = right.vec[i];
    rpf.weights[static_cast<size_t>(i)] = left.vec[i] * right.vec[i];
    wsum += rpf.weights[static_cast<size_t>(i)];
  }
  for (auto& w : rpf.weights) w /= wsum;
  const double dmax = *std::max_element(rpf.density.begin(), rpf.density.end());
  for (auto& d : rpf.density) d /= dmax;

  for (double d : rpf.density) {
    if (!(d > 0.0)) throw NumericalError("rpf_solve: density not positive");
  }
  for (double w : rpf.weights) {
    if (!(w > 0.0)) throw NumericalError("rpf_solve: measure weights not positive");
  }
  return rpf;
}

Potential normalize_potential(const Potential& phi, const RpfData& rpf) {
  auto f = phi.eval;
  const double p = rpf.pressure;
  return {[f, p](double x) { return f(x) - p; }, phi.label + "-normalized"};
}

double equilibrium_integral(const RpfData& rpf, const std::function<double(double)>& f) {
  double s = 0.0;
  for (int i = 0; i < rpf.size(); ++i) {
    s += rpf.weights[static_cast<size_t>(i)] * f(rpf.nodes[static_cast<size_t>(i)]);
  }
  return s;
}

Quadrature refined_equilibrium_quadrature(const ExpandingMap& map,
                                          const Potential& phi_normalized,
                                          const RpfData& rpf, int depth) {
  if (depth < 0) throw ConfigError("refined_equilibrium_quadrature: depth must be >= 0");
  Quadrature q;
  const int n = rpf.size();
  if (depth == 0) {
    q.nodes = rpf.nodes;
    q.weights = rpf.weights;
    return q;
  }
  const int k = map.branch_count();
  double total = 1.0;
  for (int i = 0; i < depth; ++i) total *= k;
  if (total * n > 1e8) throw CapExceeded("refined_equilibrium_quadrature: rule too large");
  q.nodes.reserve(static_cast<size_t>(total) * n);
  q.weights.reserve(static_cast<size_t>(total) * n);

  SymbolWord word(static_cast<size_t>(depth), 1);
  double wsum = 0.0;
  while (true) {
    for (int i = 0; i < n; ++i) {
      // gamma_word(x_i) plus the Birkhoff sum of the normalized potential
      // along the contraction path (the forward orbit of the image point).
      double y = rpf.nodes[static_cast<size_t>(i)];
      double phi_sum = 0.0;
      for (int j = depth - 1; j >= 0; --j) {
        y = map.branch(word[static_cast<size_t>(j)]).inverse(y);
        phi_sum += phi_normalized.eval(y);
      }
      const double w = rpf.weights[static_cast<size_t>(i)] *
                       std::exp(phi_sum) * rpf.density_at(y) /
                       rpf.density[static_cast<size_t>(i)];
      q.nodes.push_back(y);
      q.weights.push_back(w);
      wsum += w;
    }
    int pos = depth - 1;
    while (pos >= 0 && word[static_cast<size_t>(pos)] == k) {
      word[static_cast<size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++word[static_cast<size_t>(pos)];
  }
  for (auto& w : q.weights) w /= wsum;
  return q;
}

}  // namespace skewmix
