#include <doctest.h>

#include <cmath>
#include <random>

#include "skewmix/dynamics.hpp"
#include "skewmix/errors.hpp"

using namespace skewmix;

TEST_SUITE_BEGIN("dynamics");

TEST_CASE("shipped maps validate") {
  doubling_map().validate();
  linear_map(3).validate();
  perturbed_doubling(0.05).validate();
}

TEST_CASE("fixed points of the doubling branches") {
  const auto map = doubling_map();
  const auto p1 = periodic_point_of_word(map, {1});
  CHECK(p1.x == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p1.multiplier == doctest::Approx(2.0));
  const auto p2 = periodic_point_of_word(map, {2});
  CHECK(p2.x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p2.multiplier == doctest::Approx(2.0));
}

TEST_CASE("two-letter word gives the 1/3 orbit") {
  const auto map = doubling_map();
  const auto p = periodic_point_of_word(map, {1, 2});
  CHECK(p.x == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(p.multiplier == doctest::Approx(4.0));
  const auto q = periodic_point_of_word(map, {2, 1});
  CHECK(q.x == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("enumeration counts and order") {
  const auto map = doubling_map();
  const auto p1 = enumerate_periodic_points(map, 1);
  REQUIRE(p1.size() == 2);
  CHECK(p1[0].x == doctest::Approx(0.0));
  CHECK(p1[1].x == doctest::Approx(1.0));

  const auto p2 = enumerate_periodic_points(map, 2);
  REQUIRE(p2.size() == 4);
  CHECK(p2[0].x == doctest::Approx(0.0));
  CHECK(p2[1].x == doctest::Approx(1.0 / 3.0));
  CHECK(p2[2].x == doctest::Approx(2.0 / 3.0));
  CHECK(p2[3].x == doctest::Approx(1.0));

  CHECK(enumerate_periodic_points(linear_map(3), 2).size() == 9);
  CHECK_THROWS_AS(enumerate_periodic_points(map, 30), CapExceeded);
}

TEST_CASE("word/point consistency under forward iteration") {
  for (const auto& map : {doubling_map(), perturbed_doubling(0.05)}) {
    for (const auto& p : enumerate_periodic_points(map, 5)) {
      double x = p.x;
      for (int j = 0; j < p.period; ++j) x = map.branch(p.word[static_cast<size_t>(j)]).forward(x);
      CHECK(std::abs(x - p.x) < 1e-10);
      CHECK(std::abs(p.multiplier) >= std::pow(map.min_expansion(), p.period) * (1 - 1e-12));
    }
  }
}

TEST_CASE("birkhoff sums") {
  const auto map = doubling_map();
  const auto p3 = periodic_point_of_word(map, {1, 2, 1});
  CHECK(birkhoff_sum(map, [](double) { return 1.5; }, p3) == doctest::Approx(4.5));
  CHECK(birkhoff_sum(map, [](double) { return -std::log(2.0); }, p3) ==
        doctest::Approx(-3 * std::log(2.0)));
  const auto p = periodic_point_of_word(map, {1, 2});
  CHECK(birkhoff_sum(map, [](double x) { return x; }, p) == doctest::Approx(1.0));
}

TEST_CASE("group cocycle on the torus and su2") {
  const auto map = doubling_map();
  const auto torus = GroupModel::torus(1);
  const auto p = periodic_point_of_word(map, {1, 2});

  auto tau_const = [](double) { return torus_point({0.7}); };
  const auto g1 = group_cocycle(map, tau_const, p, torus);
  CHECK(g1.coords[0] == doctest::Approx(1.4));

  auto tau_lin = [](double x) { return torus_point({2 * M_PI * x}); };
  const auto g2 = group_cocycle(map, tau_lin, p, torus);
  CHECK(std::abs(std::remainder(g2.coords[0], 2 * M_PI)) < 1e-12);

  const auto su2 = GroupModel::su2();
  auto tau_id = [&](double) { return su2.identity(); };
  const auto g3 = group_cocycle(map, tau_id, p, su2);
  CHECK(g3.coords[0] == doctest::Approx(1.0));
}

TEST_CASE("orbit weights") {
  const auto map = doubling_map();
  const auto p1 = periodic_point_of_word(map, {1});
  CHECK(orbit_weight(p1, -std::log(2.0)) == doctest::Approx(1.0));
  const auto p2 = periodic_point_of_word(map, {1, 2});
  CHECK(orbit_weight(p2, -2 * std::log(2.0)) == doctest::Approx(1.0 / 3.0));

  PeriodicPoint fake;
  fake.multiplier = 1e12;
  CHECK(orbit_weight(fake, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  fake.multiplier = 0.5;
  CHECK_THROWS_AS(orbit_weight(fake, 0.0), NumericalError);
}

TEST_CASE("pressure from orbit sums") {
  const auto map = doubling_map();
  auto neg_log2 = [](double) { return -std::log(2.0); };
  auto neg_2log2 = [](double) { return -2 * std::log(2.0); };
  auto zero = [](double) { return 0.0; };
  for (int n : {1, 4, 8}) {
    CHECK(pressure_from_orbits(map, neg_log2, n) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(pressure_from_orbits(map, neg_2log2, n) == doctest::Approx(-std::log(2.0)));
    CHECK(pressure_from_orbits(map, zero, n) == doctest::Approx(std::log(2.0)));
  }
}

TEST_CASE("pressure approximants are Cauchy for the nonlinear map") {
  const auto map = perturbed_doubling(0.05);
  auto phi = [&](double x) { return -std::log(map.branch(map.locate_branch(x)).derivative(x)); };
  const double p6 = pressure_from_orbits(map, phi, 6);
  const double p12 = pressure_from_orbits(map, phi, 12);
  CHECK(std::abs(p6 - p12) < 2e-3);
  // SRB potential of a smooth expanding circle map has zero pressure.
  CHECK(std::abs(p12) < 1e-4);
}

TEST_CASE("cyclic word rotation lands on the same orbit") {
  std::mt19937 rng(20240505);
  const auto map = perturbed_doubling(0.05);
  auto phi = [](double x) { return std::cos(3.0 * x); };
  for (int trial = 0; trial < 10; ++trial) {
    SymbolWord word(6);
    for (auto& a : word) a = 1 + static_cast<int>(rng() % 2);
    const auto p = periodic_point_of_word(map, word);
    SymbolWord rotated(word.begin() + 1, word.end());
    rotated.push_back(word.front());
    const auto q = periodic_point_of_word(map, rotated);
    CHECK(q.multiplier == doctest::Approx(p.multiplier).epsilon(1e-11));
    CHECK(birkhoff_sum(map, phi, q) == doctest::Approx(birkhoff_sum(map, phi, p)).epsilon(1e-11));
    // the rotated point is on the orbit of p
    double x = p.x;
    bool found = false;
    for (int j = 0; j < p.period; ++j) {
      if (std::abs(x - q.x) < 1e-10) found = true;
      x = map.branch(p.word[static_cast<size_t>(j)]).forward(x);
    }
    CHECK(found);
  }
}

TEST_SUITE_END();
