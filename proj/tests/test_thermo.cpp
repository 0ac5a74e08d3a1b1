#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "skewmix/chebyshev.hpp"
#include "skewmix/errors.hpp"
#include "skewmix/thermo.hpp"

using namespace skewmix;

TEST_SUITE_BEGIN("thermo");

namespace {

// For a linear full-branch map the normalized operator preserves polynomials;
// its matrix on the monomial basis is triangular with diagonal k^{-m}.
// This oracle is independent of the collocation path.
Eigen::VectorXd monomial_oracle_eigenvalues(int k, int degree) {
  Eigen::VectorXd eig(degree + 1);
  for (int m = 0; m <= degree; ++m) eig[m] = std::pow(static_cast<double>(k), -m);
  return eig;
}

}  // namespace

TEST_CASE("chebyshev utilities") {
  const int n = 17;
  const auto nodes = cgl_nodes01(n);
  CHECK(nodes.front() == 0.0);
  CHECK(nodes.back() == 1.0);
  const auto cc = clenshaw_curtis_weights01(n);
  double sum = 0.0;
  for (double w : cc) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  // exact on polynomials of degree < n
  for (int d : {1, 5, 12, 16}) {
    double quad = 0.0;
    for (int i = 0; i < n; ++i) quad += cc[static_cast<size_t>(i)] * std::pow(nodes[static_cast<size_t>(i)], d);
    CHECK(quad == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
  }
  const auto bary = cgl_barycentric_weights(n);
  auto f = [](double x) { return std::sin(3 * x) + x * x; };
  std::vector<double> vals(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) vals[i] = f(nodes[i]);
  CHECK(barycentric_interpolate(nodes, bary, vals, 0.377) ==
        doctest::Approx(f(0.377)).epsilon(1e-12));
  CHECK(barycentric_interpolate(nodes, bary, vals, nodes[3]) == vals[3]);

  std::vector<double> gx, gw;
  gauss_legendre(12, gx, gw);
  double gsum = 0.0, gx4 = 0.0;
  for (int i = 0; i < 12; ++i) {
    gsum += gw[static_cast<size_t>(i)];
    gx4 += gw[static_cast<size_t>(i)] * std::pow(gx[static_cast<size_t>(i)], 4);
  }
  CHECK(gsum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gx4 == doctest::Approx(2.0 / 5.0).epsilon(1e-13));
}

TEST_CASE("leading eigenvalues of the doubling operator") {
  const auto map = doubling_map();
  const auto m_srb = discretize_transfer_operator(map, potential_srb(map), 16);
  const auto m_zero = discretize_transfer_operator(map, potential_zero(), 16);
  Eigen::EigenSolver<Eigen::MatrixXd> es1(m_srb), es2(m_zero);
  double lead1 = 0.0, lead2 = 0.0;
  for (int i = 0; i < 16; ++i) {
    lead1 = std::max(lead1, std::abs(es1.eigenvalues()[i]));
    lead2 = std::max(lead2, std::abs(es2.eigenvalues()[i]));
  }
  CHECK(lead1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lead2 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("collocation spectrum matches the polynomial oracle") {
  const auto map = doubling_map();
  const auto m = discretize_transfer_operator(map, potential_srb(map), 32);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  std::vector<double> mods;
  for (int i = 0; i < 32; ++i) mods.push_back(std::abs(es.eigenvalues()[i]));
  std::sort(mods.rbegin(), mods.rend());
  const auto oracle = monomial_oracle_eigenvalues(2, 8);
  for (int i = 0; i <= 8; ++i) {
    CHECK(std::abs(mods[static_cast<size_t>(i)] - oracle[i]) < 1e-9);
  }
}

TEST_CASE("rpf data for the doubling SRB potential") {
  const auto map = doubling_map();
  const auto rpf = rpf_solve(map, potential_srb(map), 32);
  CHECK(std::abs(rpf.pressure) < 1e-12);
  for (double h : rpf.density) CHECK(h == doctest::Approx(1.0).epsilon(1e-11));
  // equilibrium weights reduce to the Lebesgue (Clenshaw-Curtis) rule
  const auto cc = clenshaw_curtis_weights01(32);
  for (int i = 0; i < 32; ++i) {
    CHECK(rpf.weights[static_cast<size_t>(i)] ==
          doctest::Approx(cc[static_cast<size_t>(i)]).epsilon(1e-10));
  }
  CHECK(rpf_solve(map, potential_zero(), 32).pressure == doctest::Approx(std::log(2.0)));
  CHECK(rpf_solve(map, potential_scaled(potential_srb(map), 2.0), 32).pressure ==
        doctest::Approx(-std::log(2.0)));
}

TEST_CASE("weights sum to one and stay positive") {
  const auto map = perturbed_doubling(0.05);
  const auto rpf = rpf_solve(map, potential_srb(map), 64);
  double sum = 0.0;
  for (double w : rpf.weights) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  for (double h : rpf.density) CHECK(h > 0.0);
}

TEST_CASE("normalize_potential drives the pressure to zero") {
  const auto map = doubling_map();

  const auto rpf0 = rpf_solve(map, potential_zero(), 32);
  const auto phi0 = normalize_potential(potential_zero(), rpf0);
  CHECK(phi0.eval(0.3) == doctest::Approx(-std::log(2.0)));

  const auto srb = potential_srb(map);
  const auto rpf1 = rpf_solve(map, srb, 32);
  const auto phi1 = normalize_potential(srb, rpf1);
  CHECK(phi1.eval(0.3) == doctest::Approx(srb.eval(0.3)));  // already zero pressure

  const auto bumpy = potential_log2_sin(0.1);
  const auto rpf2 = rpf_solve(map, bumpy, 48);
  const auto phi2 = normalize_potential(bumpy, rpf2);
  const auto rpf2b = rpf_solve(map, phi2, 48);
  CHECK(std::abs(rpf2b.pressure) < 1e-10);
}

TEST_CASE("equilibrium integrals against Lebesgue") {
  const auto map = doubling_map();
  const auto rpf = rpf_solve(map, potential_srb(map), 32);
  CHECK(equilibrium_integral(rpf, [](double) { return 1.0; }) == doctest::Approx(1.0));
  CHECK(equilibrium_integral(rpf, [](double x) { return x; }) ==
        doctest::Approx(0.5).epsilon(1e-11));
  CHECK(equilibrium_integral(rpf, [](double x) { return x * x; }) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("two pressure routes agree") {
  const auto maps = {doubling_map(), linear_map(3)};
  for (const auto& map : maps) {
    const auto srb = potential_srb(map);
    const auto rpf = rpf_solve(map, srb, 32);
    const double orbit = pressure_from_orbits(map, srb.eval, 12);
    CHECK(std::abs(rpf.pressure - orbit) < 1e-8);
  }
  const auto map = perturbed_doubling(0.05);
  const auto srb = potential_srb(map);
  const auto rpf = rpf_solve(map, srb, 64);
  const double orbit = pressure_from_orbits(map, srb.eval, 12);
  CHECK(std::abs(rpf.pressure - orbit) < 1e-4);
}

TEST_CASE("duality of the normalized operator against the weights") {
  const auto map = doubling_map();
  const auto phi = potential_log2_sin(0.1);
  const int n = 48;
  const auto rpf = rpf_solve(map, phi, n);
  const auto phi_n = normalize_potential(phi, rpf);

  // normalized matrix: conjugate by the density and rescale by the eigenvalue
  Eigen::MatrixXd m = discretize_transfer_operator(map, phi_n, n);
  Eigen::VectorXd h(n), w(n);
  for (int i = 0; i < n; ++i) {
    h[i] = rpf.density[static_cast<size_t>(i)];
    w[i] = rpf.weights[static_cast<size_t>(i)];
  }
  const Eigen::MatrixXd mt = h.cwiseInverse().asDiagonal() * m * h.asDiagonal();

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const auto nodes = cgl_nodes01(n);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd coef(9);
    for (int i = 0; i < 9; ++i) coef[i] = unif(rng);
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0, p = 1.0;
      for (int d = 0; d < 9; ++d) {
        acc += coef[d] * p;
        p *= nodes[static_cast<size_t>(i)];
      }
      f[i] = acc;
    }
    CHECK(std::abs(w.dot(mt * f) - w.dot(f)) < 1e-9 * (1.0 + std::abs(w.dot(f))));
  }

  // spectral radius of the normalized operator is one
  Eigen::EigenSolver<Eigen::MatrixXd> es(mt);
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(es.eigenvalues()[i]));
  CHECK(radius == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("refined quadrature integrates rank-n observables") {
  const auto map = doubling_map();
  const auto rpf = rpf_solve(map, potential_srb(map), 24);
  const auto phi_n = normalize_potential(potential_srb(map), rpf);

  // f(x) = g(T^3 x) with g analytic and g(0) = g(1), the continuity the
  // composed integrands of this toolkit always have; exact value is the
  // Lebesgue integral of g.
  auto g = [](double x) { return std::sin(2 * M_PI * x) * x + 0.25 * x * (1 - x); };
  auto f = [&](double x) {
    double y = x;
    for (int j = 0; j < 3; ++j) y = map.apply(y);
    return g(y);
  };
  const double exact = -1.0 / (2 * M_PI) + 0.25 / 6.0;  // integral of g over [0,1]
  const auto quad = refined_equilibrium_quadrature(map, phi_n, rpf, 3);
  double acc = 0.0;
  for (size_t i = 0; i < quad.nodes.size(); ++i) acc += quad.weights[i] * f(quad.nodes[i]);
  CHECK(acc == doctest::Approx(exact).epsilon(1e-11));

  double wsum = 0.0;
  for (double w : quad.weights) {
    CHECK(w > 0.0);
    wsum += w;
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("rejects bad inputs") {
  const auto map = doubling_map();
  CHECK_THROWS_AS(discretize_transfer_operator(map, potential_zero(), 3), ConfigError);
}

TEST_SUITE_END();
