#include <doctest.h>

#include <cmath>
#include <random>

#include "skewmix/errors.hpp"
#include "skewmix/groups.hpp"

using namespace skewmix;

TEST_SUITE_BEGIN("groups");

namespace {

GroupPoint random_su2(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector4d v;
  for (int i = 0; i < 4; ++i) v[i] = gauss(rng);
  v.normalize();
  return su2_point(v[0], v[1], v[2], v[3]);
}

}  // namespace

TEST_CASE("irrep enumeration") {
  const auto t1 = GroupModel::torus(1);
  CHECK(t1.irreps_below(4.0).size() == 5);
  CHECK(t1.irreps_below(0.0).size() == 1);
  CHECK(t1.irreps_below(0.0).front().trivial());

  const auto su2 = GroupModel::su2();
  const auto irr = su2.irreps_below(10.0);
  REQUIRE(irr.size() == 3);
  CHECK(irr[0].kappa == 0.0);
  CHECK(irr[1].kappa == 3.0);
  CHECK(irr[1].dim == 2);
  CHECK(irr[2].kappa == 8.0);

  // even m only for SO(3)
  for (const auto& ir : GroupModel::so3().irreps_below(50.0)) CHECK(ir.id[0] % 2 == 0);

  const auto t2 = GroupModel::torus(2);
  CHECK(t2.irreps_below(4.0).size() == 13);
}

TEST_CASE("character values") {
  const auto su2 = GroupModel::su2();
  const GroupPoint gq = su2_exp(M_PI / 2, Eigen::Vector3d(0, 0, 1));
  CHECK(su2_character(1, gq) == doctest::Approx(0.0).epsilon(1e-14));
  for (int m : {0, 1, 2, 5}) {
    CHECK(su2_character(m, su2.identity()) == doctest::Approx(m + 1.0));
  }
  const auto t1 = GroupModel::torus(1);
  const auto q3 = t1.irrep_by_id({3});
  CHECK(q3.character(torus_point({M_PI})).real() == doctest::Approx(-1.0));
  CHECK(q3.character(torus_point({M_PI})).imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("su2 representation matrices are unitary homomorphisms") {
  std::mt19937 rng(777);
  for (int m : {1, 2, 3}) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto a = random_su2(rng);
      const auto b = random_su2(rng);
      const Eigen::MatrixXcd pa = su2_irrep_matrix(m, a);
      const Eigen::MatrixXcd pb = su2_irrep_matrix(m, b);
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m + 1, m + 1);
      CHECK((pa.adjoint() * pa - id).norm() < 1e-12);
      const auto su2 = GroupModel::su2();
      const Eigen::MatrixXcd pab = su2_irrep_matrix(m, su2.multiply(a, b));
      CHECK((pab - pa * pb).norm() < 1e-12);
      CHECK(pa.trace().real() == doctest::Approx(su2_character(m, a)).epsilon(1e-12));
      CHECK(std::abs(pa.trace().imag()) < 1e-12);
    }
  }
}

TEST_CASE("bound |chi| <= dim and identity value") {
  std::mt19937 rng(9);
  const auto su2 = GroupModel::su2();
  for (const auto& ir : su2.irreps_below(30.0)) {
    for (int trial = 0; trial < 8; ++trial) {
      CHECK(std::abs(ir.character(random_su2(rng))) <= ir.dim + 1e-12);
    }
    CHECK(ir.character(su2.identity()).real() == doctest::Approx(ir.dim));
  }
}

TEST_CASE("heat kernel values on the circle") {
  const auto t1 = GroupModel::torus(1);
  CHECK(heat_kernel(t1, 1.0, torus_point({0.0}), 1e-14) ==
        doctest::Approx(1.7726372048).epsilon(1e-9));
  CHECK(heat_kernel(t1, 50.0, torus_point({0.0})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(heat_kernel(t1, 0.01, torus_point({0.0}), 1e-14) ==
        doctest::Approx(std::sqrt(M_PI / 0.01)).epsilon(1e-9));
  CHECK_THROWS_AS(heat_kernel(t1, -1.0, torus_point({0.0})), ConfigError);
}

TEST_CASE("torus(2) heat kernel factorizes") {
  const auto t2 = GroupModel::torus(2);
  const double h2 = heat_kernel(t2, 1.0, torus_point({0.0, 0.0}), 1e-14);
  const double h1 = heat_kernel(GroupModel::torus(1), 1.0, torus_point({0.0}), 1e-14);
  CHECK(h2 == doctest::Approx(h1 * h1).epsilon(1e-10));
}

TEST_CASE("theta inversion identity") {
  const auto t1 = GroupModel::torus(1);
  CHECK(theta_inversion_rhs(1.0, 0.0) == doctest::Approx(1.7726372048).epsilon(1e-9));
  CHECK(theta_inversion_rhs(0.25, 2 * M_PI) ==
        doctest::Approx(theta_inversion_rhs(0.25, 0.0)).epsilon(1e-13));
  double worst = 0.0;
  for (double t : {0.05, 0.1, 0.25, 0.5, 1.0}) {
    for (int i = 0; i < 64; ++i) {
      const double theta = 2 * M_PI * i / 64;
      const double lhs = heat_kernel(t1, t, torus_point({theta}), 1e-15);
      const double rhs = theta_inversion_rhs(t, theta);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("conjugation average routes agree") {
  const auto t1 = GroupModel::torus(1);
  CHECK(conjugation_average(t1, 1.0, t1.identity(), t1.identity()) ==
        doctest::Approx(1.7726372048).epsilon(1e-8));
  // abelian case: F(t;a,b) = h_t(a - b)
  const auto a = torus_point({1.1});
  const auto b = torus_point({0.4});
  CHECK(conjugation_average(t1, 0.3, a, b) ==
        doctest::Approx(heat_kernel(t1, 0.3, torus_point({0.7}))).epsilon(1e-10));

  // su2: two-route check against the Haar average of h_t(a g a^{-1} g^{-1})
  const auto su2 = GroupModel::su2();
  const auto ga = su2_exp(M_PI / 3, Eigen::Vector3d(1, 0, 0));
  const double direct = conjugation_average(su2, 0.5, ga, ga, 1e-12);
  double quad = 0.0;
  for (const auto& [g, w] : su2.haar_quadrature(12)) {
    const auto commutator = su2.multiply(su2.multiply(ga, g),
                                         su2.multiply(su2.inverse(ga), su2.inverse(g)));
    quad += w * heat_kernel(su2, 0.5, commutator, 1e-12);
  }
  CHECK(direct == doctest::Approx(quad).epsilon(1e-6));
}

TEST_CASE("haar quadrature integrates characters exactly") {
  const auto su2 = GroupModel::su2();
  const auto rule = su2.haar_quadrature(8);
  double total = 0.0;
  for (const auto& [g, w] : rule) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));

  const auto irreps = su2.irreps_below(20.0);
  for (const auto& pi : irreps) {
    for (const auto& sigma : irreps) {
      std::complex<double> acc = 0.0;
      for (const auto& [g, w] : rule) acc += w * pi.character(g) * std::conj(sigma.character(g));
      const double expected = (pi.id == sigma.id) ? 1.0 : 0.0;
      CHECK(std::abs(acc - expected) < 1e-10);
    }
  }

  const auto t1 = GroupModel::torus(1);
  const auto trule = t1.haar_quadrature(16);
  for (const auto& pi : t1.irreps_below(20.0)) {
    std::complex<double> acc = 0.0;
    for (const auto& [g, w] : trule) acc += w * pi.character(g);
    CHECK(std::abs(acc - (pi.trivial() ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("weyl counting") {
  CHECK(weyl_counting(GroupModel::torus(1), 4.0) == 5);
  CHECK(weyl_counting(GroupModel::su2(), 10.0) == 14);
  CHECK(weyl_counting(GroupModel::torus(1), 0.0) == 1);
  CHECK(weyl_counting(GroupModel::su2(), 0.0) == 1);
}

TEST_CASE("gamma constants") {
  CHECK(gamma_constant(GroupModel::torus(1)) == doctest::Approx(1.5));
  CHECK(gamma_constant(GroupModel::torus(2)) == doctest::Approx(1.0));
  CHECK(gamma_constant(GroupModel::su2()) == doctest::Approx(2.5));
  CHECK(gamma_constant(GroupModel::su2(), true) == doctest::Approx(0.5));
  CHECK(gamma_constant(GroupModel::so3(), true) == doctest::Approx(0.5));
  CHECK_THROWS_AS(gamma_constant(GroupModel::torus(1), true), ConfigError);
}

TEST_CASE("beta exponents") {
  std::vector<double> grid;
  for (int i = 0; i < 12; ++i) grid.push_back(0.1 * std::pow(0.001 / 0.1, i / 11.0));
  CHECK(beta_exponent_fit(GroupModel::torus(1), grid) == doctest::Approx(1.5).epsilon(0.03));
  CHECK(beta_exponent_fit(GroupModel::su2(), grid) == doctest::Approx(0.5).epsilon(0.1));
  CHECK_THROWS_AS(beta_exponent_fit(GroupModel::torus(1), {0.1, 0.1, 0.1}), ConfigError);
  CHECK_THROWS_AS(beta_exponent_fit(GroupModel::torus(1), {0.1, 0.01}), ConfigError);
}

TEST_CASE("heat kernel positivity on a sample grid") {
  const auto su2 = GroupModel::su2();
  const auto t1 = GroupModel::torus(1);
  for (double t : {0.05, 0.25, 1.0, 2.0}) {
    for (double theta : {0.0, 0.5, 1.5, 3.0, 5.0}) {
      CHECK(heat_kernel(t1, t, torus_point({theta}), 1e-13) > -1e-12);
    }
    for (double w : {-0.75, -0.5, 0.0, 0.5, 0.9}) {
      const auto g = su2_exp(std::acos(w), Eigen::Vector3d(0.6, 0.64, 0.48));
      CHECK(heat_kernel(su2, t, g, 1e-13) > -1e-12);
    }
  }
}

TEST_CASE("semigroup property via haar quadrature") {
  // torus: exact through character orthogonality on the grid
  const auto t1 = GroupModel::torus(1);
  const auto trule = t1.haar_quadrature(64);
  const auto gt = torus_point({1.3});
  double conv = 0.0;
  for (const auto& [x, w] : trule) {
    conv += w * heat_kernel(t1, 0.4, t1.multiply(gt, t1.inverse(x)), 1e-13) *
            heat_kernel(t1, 0.3, x, 1e-13);
  }
  CHECK(conv == doctest::Approx(heat_kernel(t1, 0.7, gt, 1e-13)).epsilon(1e-9));

  const auto su2 = GroupModel::su2();
  const auto srule = su2.haar_quadrature(22);
  const auto gs = su2_exp(0.9, Eigen::Vector3d(0.2, 0.5, 0.8));
  conv = 0.0;
  for (const auto& [x, w] : srule) {
    conv += w * heat_kernel(su2, 0.25, su2.multiply(gs, su2.inverse(x)), 1e-12) *
            heat_kernel(su2, 0.25, x, 1e-12);
  }
  CHECK(std::abs(conv - heat_kernel(su2, 0.5, gs, 1e-12)) < 1e-6);
}

TEST_CASE("dimension bound dim <= C sqrt(kappa) for su2") {
  double worst = 0.0;
  for (int m = 1; m <= 200; ++m) {
    const double kappa = static_cast<double>(m) * (m + 2);
    worst = std::max(worst, (m + 1.0) / std::sqrt(kappa));
  }
  CHECK(worst <= 2.0 / std::sqrt(3.0) + 1e-12);  // maximum at m = 1
}

TEST_CASE("gaussian lower bound holds with a positive fitted constant") {
  const auto su2 = GroupModel::su2();
  double c_fit = 1e300;
  for (double t : {0.05, 0.1, 0.25, 0.5}) {
    for (double theta : {0.3, 0.8, 1.5, 2.4}) {
      const auto g = su2_exp(theta, Eigen::Vector3d(0, 0, 1));
      const double dist = su2.distance_to_identity(g);
      const double h = heat_kernel(su2, t, g, 1e-13);
      const double gauss = std::pow(t, -1.5) * std::exp(-dist * dist / (4 * t));
      c_fit = std::min(c_fit, h / gauss);
    }
  }
  CHECK(c_fit > 0.0);
}

TEST_CASE("group operations and distances") {
  const auto su2 = GroupModel::su2();
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_su2(rng);
    const auto b = random_su2(rng);
    CHECK(su2.is_valid(su2.multiply(a, b), 1e-12));
    const auto e = su2.multiply(a, su2.inverse(a));
    CHECK(su2.distance_to_identity(e) < 1e-7);
  }
  CHECK(su2.distance_to_identity(su2_point(-1, 0, 0, 0)) == doctest::Approx(M_PI));

  const auto t1 = GroupModel::torus(1);
  CHECK(t1.distance_to_identity(torus_point({6.0})) == doctest::Approx(2 * M_PI - 6.0));
}

TEST_SUITE_END();
