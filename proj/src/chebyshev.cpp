#include "skewmix/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace skewmix {

std::vector<double> cgl_nodes01(int n) {
  if (n < 2) throw std::invalid_argument("cgl_nodes01: need n >= 2");
  std::vector<double> x(n);
  const double m = n - 1;
  for (int i = 0; i < n; ++i) {
    const double s = std::sin(0.5 * M_PI * i / m);
    x[i] = s * s;  // (1 - cos(i pi / m)) / 2, monotone and cancellation-free
  }
  x.front() = 0.0;
  x.back() = 1.0;
  return x;
}

std::vector<double> cgl_barycentric_weights(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = (i % 2 == 0) ? 1.0 : -1.0;
  }
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

std::vector<double> clenshaw_curtis_weights01(int n) {
  const int m = n - 1;
  std::vector<double> c(n);
  for (int i = 0; i <= m; ++i) {
    double s = 1.0;
    for (int j = 1; j <= m / 2; ++j) {
      const double b = (2 * j == m) ? 1.0 : 2.0;
      s -= b * std::cos(2.0 * j * i * M_PI / m) / (4.0 * j * j - 1.0);
    }
    const double g = (i == 0 || i == m) ? 0.5 : 1.0;
    c[i] = g * s / m;  // already includes the [0,1] half-length factor
  }
  return c;
}

std::vector<double> lagrange_row(const std::vector<double>& nodes,
                                 const std::vector<double>& bary, double t) {
  const int n = static_cast<int>(nodes.size());
  std::vector<double> row(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (t == nodes[i]) {
      row[i] = 1.0;
      return row;
    }
  }
  double denom = 0.0;
  for (int i = 0; i < n; ++i) {
    row[i] = bary[i] / (t - nodes[i]);
    denom += row[i];
  }
  for (int i = 0; i < n; ++i) row[i] /= denom;
  return row;
}

double barycentric_interpolate(const std::vector<double>& nodes,
                               const std::vector<double>& bary,
                               const std::vector<double>& values, double t) {
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i) {
    if (t == nodes[i]) return values[i];
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = bary[i] / (t - nodes[i]);
    num += s * values[i];
    den += s;
  }
  return num / den;
}

std::complex<double> barycentric_interpolate(
    const std::vector<double>& nodes, const std::vector<double>& bary,
    const std::vector<std::complex<double>>& values, double t) {
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i) {
    if (t == nodes[i]) return values[i];
  }
  std::complex<double> num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = bary[i] / (t - nodes[i]);
    num += s * values[i];
    den += s;
  }
  return num / den;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      dp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    nodes[i] = -t;
    nodes[n - 1 - i] = t;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace skewmix
