#include "skewmix/groups.hpp"

#include <algorithm>
#include <cmath>

#include "skewmix/chebyshev.hpp"
#include "skewmix/errors.hpp"

namespace skewmix {

namespace {

double wrap_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  double r = std::fmod(a, two_pi);
  if (r < 0) r += two_pi;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string id_label(const std::string& head, const std::vector<int>& id) {
  std::string s = head + "(";
  for (size_t i = 0; i < id.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(id[i]);
  }
  return s + ")";
}

IrrepInfo make_torus_irrep(const std::vector<int>& q) {
  IrrepInfo info;
  info.id = q;
  info.dim = 1;
  double k = 0.0;
  for (int qi : q) k += static_cast<double>(qi) * qi;
  info.kappa = k;
  info.label = id_label("q", q);
  std::vector<int> qc = q;
  info.character = [qc](const GroupPoint& g) {
    double phase = 0.0;
    for (size_t i = 0; i < qc.size(); ++i) phase += qc[i] * g.coords[static_cast<int>(i)];
    return std::complex<double>(std::cos(phase), std::sin(phase));
  };
  auto chi = info.character;
  info.matrix = [chi](const GroupPoint& g) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = chi(g);
    return m;
  };
  return info;
}

IrrepInfo make_su2_irrep(int m) {
  IrrepInfo info;
  info.id = {m};
  info.dim = m + 1;
  info.kappa = static_cast<double>(m) * (m + 2);
  info.label = "m" + std::to_string(m);
  info.character = [m](const GroupPoint& g) {
    return std::complex<double>(su2_character(m, g), 0.0);
  };
  info.matrix = [m](const GroupPoint& g) { return su2_irrep_matrix(m, g); };
  return info;
}

}  // namespace

GroupModel::GroupModel(GroupKind k, int torus_dim, std::string name)
    : kind_(k), torus_dim_(torus_dim), name_(std::move(name)) {}

GroupModel GroupModel::torus(int d) {
  if (d < 1 || d > 2) throw ConfigError("torus dimension must be 1 or 2");
  return GroupModel(GroupKind::Torus, d, "torus" + std::to_string(d));
}

GroupModel GroupModel::su2() { return GroupModel(GroupKind::SU2, 0, "su2"); }

GroupModel GroupModel::so3() { return GroupModel(GroupKind::SO3, 0, "so3"); }

int GroupModel::dim() const { return kind_ == GroupKind::Torus ? torus_dim_ : 3; }

int GroupModel::rank() const { return kind_ == GroupKind::Torus ? torus_dim_ : 1; }

GroupPoint GroupModel::identity() const {
  GroupPoint p;
  if (kind_ == GroupKind::Torus) {
    p.coords = Eigen::VectorXd::Zero(torus_dim_);
  } else {
    p.coords = Eigen::VectorXd::Zero(4);
    p.coords[0] = 1.0;
  }
  return p;
}

GroupPoint GroupModel::multiply(const GroupPoint& a, const GroupPoint& b) const {
  GroupPoint p;
  if (kind_ == GroupKind::Torus) {
    p.coords.resize(torus_dim_);
    for (int i = 0; i < torus_dim_; ++i) p.coords[i] = wrap_angle(a.coords[i] + b.coords[i]);
  } else {
    const double aw = a.coords[0], ax = a.coords[1], ay = a.coords[2], az = a.coords[3];
    const double bw = b.coords[0], bx = b.coords[1], by = b.coords[2], bz = b.coords[3];
    p.coords.resize(4);
    p.coords[0] = aw * bw - ax * bx - ay * by - az * bz;
    p.coords[1] = aw * bx + ax * bw + ay * bz - az * by;
    p.coords[2] = aw * by - ax * bz + ay * bw + az * bx;
    p.coords[3] = aw * bz + ax * by - ay * bx + az * bw;
  }
  return p;
}

GroupPoint GroupModel::inverse(const GroupPoint& a) const {
  GroupPoint p;
  if (kind_ == GroupKind::Torus) {
    p.coords.resize(torus_dim_);
    for (int i = 0; i < torus_dim_; ++i) p.coords[i] = wrap_angle(-a.coords[i]);
  } else {
    p.coords.resize(4);
    p.coords[0] = a.coords[0];
    p.coords[1] = -a.coords[1];
    p.coords[2] = -a.coords[2];
    p.coords[3] = -a.coords[3];
  }
  return p;
}

bool GroupModel::is_valid(const GroupPoint& a, double tol) const {
  if (kind_ == GroupKind::Torus) {
    if (a.coords.size() != torus_dim_) return false;
    for (int i = 0; i < torus_dim_; ++i) {
      if (!(a.coords[i] >= 0.0 && a.coords[i] < 2.0 * M_PI)) return false;
    }
    return true;
  }
  if (a.coords.size() != 4) return false;
  return std::abs(a.coords.norm() - 1.0) <= tol;
}

double GroupModel::distance_to_identity(const GroupPoint& a) const {
  if (kind_ == GroupKind::Torus) {
    double s = 0.0;
    for (int i = 0; i < torus_dim_; ++i) {
      double d = std::abs(std::remainder(a.coords[i], 2.0 * M_PI));
      s += d * d;
    }
    return std::sqrt(s);
  }
  // Geodesic distance on the unit 3-sphere; consistent with kappa_m = m(m+2).
  const double w = std::clamp(a.coords[0], -1.0, 1.0);
  return std::acos(w);
}

std::vector<IrrepInfo> GroupModel::irreps_below(double kappa_max) const {
  if (kappa_max < 0) throw ConfigError("irreps_below: kappa_max must be >= 0");
  std::vector<IrrepInfo> out;
  if (kind_ == GroupKind::Torus) {
    const int qmax = static_cast<int>(std::floor(std::sqrt(kappa_max) + 1e-12));
    if (torus_dim_ == 1) {
      for (int q = -qmax; q <= qmax; ++q) {
        if (static_cast<double>(q) * q <= kappa_max) out.push_back(make_torus_irrep({q}));
      }
    } else {
      for (int q1 = -qmax; q1 <= qmax; ++q1) {
        for (int q2 = -qmax; q2 <= qmax; ++q2) {
          const double k = static_cast<double>(q1) * q1 + static_cast<double>(q2) * q2;
          if (k <= kappa_max) out.push_back(make_torus_irrep({q1, q2}));
        }
      }
    }
  } else {
    const int step = (kind_ == GroupKind::SO3) ? 2 : 1;  // only even m descend to SO(3)
    for (int m = 0; static_cast<double>(m) * (m + 2) <= kappa_max; m += step) {
      out.push_back(make_su2_irrep(m));
    }
  }
  std::sort(out.begin(), out.end(), [](const IrrepInfo& a, const IrrepInfo& b) {
    if (a.kappa != b.kappa) return a.kappa < b.kappa;
    return a.id < b.id;
  });
  return out;
}

IrrepInfo GroupModel::trivial_irrep() const {
  if (kind_ == GroupKind::Torus) {
    return make_torus_irrep(std::vector<int>(torus_dim_, 0));
  }
  return make_su2_irrep(0);
}

IrrepInfo GroupModel::irrep_by_id(const std::vector<int>& id) const {
  if (kind_ == GroupKind::Torus) {
    if (static_cast<int>(id.size()) != torus_dim_)
      throw ConfigError("torus irrep id must have one entry per dimension");
    return make_torus_irrep(id);
  }
  if (id.size() != 1 || id[0] < 0) throw ConfigError("su2 irrep id must be {m} with m >= 0");
  if (kind_ == GroupKind::SO3 && id[0] % 2 != 0)
    throw ConfigError("so3 irreps carry even m only");
  return make_su2_irrep(id[0]);
}

double GroupModel::kappa_cutoff(double t, double tol) const {
  if (t <= 0) throw ConfigError("kappa_cutoff: t must be > 0");
  const double p = dim() / 2.0 + 1.0;
  double k = std::max(4.0, std::log(1.0 / tol) / t);
  for (int it = 0; it < 40; ++it) {
    k = std::max(4.0, (p * std::log(k) + std::log(1.0 / tol)) / t);
  }
  return k;
}

std::vector<std::pair<GroupPoint, double>> GroupModel::haar_quadrature(int resolution) const {
  if (resolution < 1) throw ConfigError("haar_quadrature: resolution must be >= 1");
  std::vector<std::pair<GroupPoint, double>> rule;
  if (kind_ == GroupKind::Torus) {
    const int R = resolution;
    if (torus_dim_ == 1) {
      rule.reserve(R);
      for (int i = 0; i < R; ++i) {
        rule.push_back({torus_point({2.0 * M_PI * i / R}), 1.0 / R});
      }
    } else {
      rule.reserve(static_cast<size_t>(R) * R);
      for (int i = 0; i < R; ++i) {
        for (int j = 0; j < R; ++j) {
          rule.push_back({torus_point({2.0 * M_PI * i / R, 2.0 * M_PI * j / R}),
                          1.0 / (static_cast<double>(R) * R)});
        }
      }
    }
    return rule;
  }

  // S^3 product rule: Gauss-Chebyshev (2nd kind) in the class angle integrates
  // the Weyl density sin^2 exactly; Gauss-Legendre x uniform grid covers S^2.
  const int R = std::max(resolution, 2);
  const int n_phi = 2 * R;
  std::vector<double> gl_x, gl_w;
  gauss_legendre(R, gl_x, gl_w);
  rule.reserve(static_cast<size_t>(R) * R * n_phi);
  for (int j = 1; j <= R; ++j) {
    const double theta = j * M_PI / (R + 1);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double w_theta = 2.0 / (R + 1) * st * st;
    for (int i = 0; i < R; ++i) {
      const double cpsi = gl_x[i];
      const double spsi = std::sqrt(std::max(0.0, 1.0 - cpsi * cpsi));
      const double w_psi = gl_w[i] / 2.0;
      for (int l = 0; l < n_phi; ++l) {
        const double phi = 2.0 * M_PI * l / n_phi;
        GroupPoint g = su2_point(ct, st * spsi * std::cos(phi), st * spsi * std::sin(phi),
                                 st * cpsi);
        rule.push_back({g, w_theta * w_psi / n_phi});
      }
    }
  }
  return rule;
}

std::vector<IrrepInfo> irrep_enumerate(const GroupModel& g, double kappa_max) {
  return g.irreps_below(kappa_max);
}

double heat_kernel(const GroupModel& g, double t, const GroupPoint& x, double tol) {
  if (t <= 0) throw ConfigError("heat_kernel: t must be > 0");
  const double cutoff = g.kappa_cutoff(t, tol);
  std::complex<double> sum = 0.0;
  for (const auto& irrep : g.irreps_below(cutoff)) {
    sum += std::exp(-t * irrep.kappa) * static_cast<double>(irrep.dim) * irrep.character(x);
  }
  if (std::abs(sum.imag()) > std::max(tol, 1e-12 * (1.0 + std::abs(sum.real()))))
    throw NumericalError("heat_kernel: non-real character sum");
  return sum.real();
}

double theta_inversion_rhs(double t, double theta, double tol) {
  if (t <= 0) throw ConfigError("theta_inversion_rhs: t must be > 0");
  const double scale = std::sqrt(M_PI / t);
  const long p0 = std::lround(theta / (2.0 * M_PI));
  auto term = [&](long p) {
    const double d = theta - 2.0 * M_PI * p;
    return std::exp(-d * d / (4.0 * t));
  };
  double sum = term(p0);
  for (long k = 1; k < 1000; ++k) {
    const double a = term(p0 - k), b = term(p0 + k);
    sum += a + b;
    if (scale * (a + b) < tol * 1e-2) break;
  }
  return scale * sum;
}

double conjugation_average(const GroupModel& g, double t, const GroupPoint& a,
                           const GroupPoint& b, double tol) {
  if (t <= 0) throw ConfigError("conjugation_average: t must be > 0");
  const double cutoff = g.kappa_cutoff(t, tol);
  std::complex<double> sum = 0.0;
  for (const auto& irrep : g.irreps_below(cutoff)) {
    sum += std::exp(-t * irrep.kappa) * irrep.character(a) * std::conj(irrep.character(b));
  }
  if (std::abs(sum.imag()) > std::max(tol, 1e-12 * (1.0 + std::abs(sum.real()))))
    throw NumericalError("conjugation_average: non-real sum");
  return sum.real();
}

long weyl_counting(const GroupModel& g, double R) {
  if (R < 0) throw ConfigError("weyl_counting: R must be >= 0");
  long n = 0;
  for (const auto& irrep : g.irreps_below(R)) {
    n += static_cast<long>(irrep.dim) * irrep.dim;
  }
  return n;
}

double gamma_constant(const GroupModel& g, bool improved) {
  if (!improved) {
    return (1.0 + g.dim() / 2.0) / g.rank();
  }
  if (g.kind() == GroupKind::SU2 || g.kind() == GroupKind::SO3) {
    return 0.5;  // beta = 1/2 from dim(pi_m) = m+1
  }
  throw ConfigError("gamma_constant: no improved exponent for " + g.name());
}

double beta_exponent_fit(const GroupModel& g, const std::vector<double>& t_grid) {
  if (t_grid.size() < 3) throw ConfigError("beta_exponent_fit: need at least 3 grid points");
  for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0) || t_grid[i + 1] >= t_grid[i])
      throw ConfigError("beta_exponent_fit: t_grid must be positive and decreasing");
  }
  std::vector<double> xs, ys;
  for (double t : t_grid) {
    const double cutoff = g.kappa_cutoff(t, 1e-13);
    double s = 0.0;
    for (const auto& irrep : g.irreps_below(cutoff)) {
      s += std::exp(-t * irrep.kappa) * irrep.kappa /
           (static_cast<double>(irrep.dim) * irrep.dim);
    }
    xs.push_back(-std::log(t));
    ys.push_back(std::log(s));
  }
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw ConfigError("beta_exponent_fit: degenerate grid");
  return (n * sxy - sx * sy) / denom;
}

GroupPoint su2_point(double w, double x, double y, double z) {
  GroupPoint p;
  p.coords.resize(4);
  p.coords << w, x, y, z;
  const double n = p.coords.norm();
  if (std::abs(n - 1.0) > 1e-9) throw ConfigError("su2_point: quaternion not normalized");
  p.coords /= n;
  return p;
}

GroupPoint su2_exp(double angle, const Eigen::Vector3d& axis) {
  const double n = axis.norm();
  if (n == 0.0) {
    GroupPoint p;
    p.coords.resize(4);
    p.coords << 1, 0, 0, 0;
    return p;
  }
  const Eigen::Vector3d u = axis / n;
  GroupPoint p;
  p.coords.resize(4);
  p.coords[0] = std::cos(angle);
  p.coords[1] = std::sin(angle) * u[0];
  p.coords[2] = std::sin(angle) * u[1];
  p.coords[3] = std::sin(angle) * u[2];
  return p;
}

Eigen::Matrix2cd su2_matrix2(const GroupPoint& g) {
  // w I - i (x s1 + y s2 + z s3): quaternion multiplication maps to matrix
  // multiplication in this orientation.
  const std::complex<double> I(0.0, 1.0);
  const double w = g.coords[0], x = g.coords[1], y = g.coords[2], z = g.coords[3];
  Eigen::Matrix2cd m;
  m(0, 0) = w - I * z;
  m(0, 1) = -y - I * x;
  m(1, 0) = y - I * x;
  m(1, 1) = w + I * z;
  return m;
}

Eigen::MatrixXcd su2_irrep_matrix(int m, const GroupPoint& g) {
  // Action on homogeneous polynomials of degree m in (u,v):
  // (pi(g) p)(u,v) = p((u,v) g) in the orthonormal monomial basis.
  const Eigen::Matrix2cd G = su2_matrix2(g);
  const std::complex<double> a = G(0, 0), b = G(0, 1), c = G(1, 0), d = G(1, 1);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m + 1, m + 1);
  std::vector<std::complex<double>> pa(m + 1), pb(m + 1), pc(m + 1), pd(m + 1);
  pa[0] = pb[0] = pc[0] = pd[0] = 1.0;
  for (int i = 1; i <= m; ++i) {
    pa[i] = pa[i - 1] * a;
    pb[i] = pb[i - 1] * b;
    pc[i] = pc[i - 1] * c;
    pd[i] = pd[i - 1] * d;
  }
  for (int k = 0; k <= m; ++k) {
    for (int r = 0; r <= m; ++r) {
      std::complex<double> s = 0.0;
      const int jlo = std::max(0, r - (m - k));
      const int jhi = std::min(k, r);
      for (int j = jlo; j <= jhi; ++j) {
        s += binomial(m - k, r - j) * binomial(k, j) * pa[m - k - r + j] * pc[r - j] *
             pb[k - j] * pd[j];
      }
      out(r, k) = s * std::sqrt(binomial(m, k) / binomial(m, r));
    }
  }
  return out;
}

double su2_character(int m, const GroupPoint& g) {
  // chi_m = U_m(cos theta), Chebyshev of the second kind; regular everywhere.
  const double w = std::clamp(g.coords[0], -1.0, 1.0);
  if (m == 0) return 1.0;
  double um1 = 1.0, um = 2.0 * w;
  for (int k = 2; k <= m; ++k) {
    const double next = 2.0 * w * um - um1;
    um1 = um;
    um = next;
  }
  return um;
}

GroupPoint torus_point(const std::vector<double>& angles) {
  GroupPoint p;
  p.coords.resize(static_cast<int>(angles.size()));
  for (size_t i = 0; i < angles.size(); ++i) p.coords[static_cast<int>(i)] = wrap_angle(angles[i]);
  return p;
}

}  // namespace skewmix
