#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hothand/discretize.hpp"

using namespace hothand;

namespace {

double row_sum(std::span<const double> r) { return std::accumulate(r.begin(), r.end(), 0.0); }

}  // namespace

TEST_CASE("grid geometry") {
  const Grid g(150, -2.5, 2.5);
  CHECK(g.size() == 150);
  CHECK(g.step() == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
  CHECK(g.midpoints().front() == doctest::Approx(-2.5 + 1.0 / 60.0).epsilon(1e-14));
  CHECK(g.boundaries().back() == 2.5);

  const Grid two(2, -1.0, 1.0);
  CHECK(two.midpoints()[0] == -0.5);
  CHECK(two.midpoints()[1] == 0.5);

  const Grid five(5, 0.0, 1.0);
  const double expected[] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  for (int i = 0; i < 6; ++i) CHECK(five.boundaries()[i] == doctest::Approx(expected[i]).epsilon(1e-15));

  CHECK_THROWS_AS(Grid(1, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(Grid(10, 1.0, 1.0), std::domain_error);
}

TEST_CASE("normal cdf reference values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-15));
  CHECK(normal_cdf(-2.0) == doctest::Approx(0.022750131948179195).epsilon(1e-15));
  CHECK(normal_cdf(-10.0) == doctest::Approx(7.61985302416047e-24).epsilon(1e-12));
}

TEST_CASE("initial vector") {
  SUBCASE("symmetric grid and zero mean give a symmetric vector") {
    const Grid g(11, -2.0, 2.0);
    const auto d = initial_vector(g, 0.0, 0.8);
    for (std::size_t i = 0; i < 11; ++i) CHECK(d[i] == d[10 - i]);
  }
  SUBCASE("median split") {
    const auto d = initial_vector(Grid(2, -1.0, 1.0), 0.0, 1.0);
    CHECK(d[0] == 0.5);
    CHECK(d[1] == 0.5);
  }
  SUBCASE("fitted initial law on the default grid") {
    const Grid g(150, -2.5, 2.5);
    const auto d = initial_vector(g, -0.034, 0.690);
    CHECK(row_sum(d) == doctest::Approx(1.0).epsilon(1e-12));
    const auto k = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    CHECK(g.boundaries()[k] <= -0.034);
    CHECK(-0.034 <= g.boundaries()[k + 1]);
  }
  CHECK_THROWS_AS(initial_vector(Grid(4, -1.0, 1.0), 0.0, 0.0), std::domain_error);
}

TEST_CASE("edge intervals absorb the tails") {
  const Grid g(4, -1.0, 1.0);
  const auto d = initial_vector(g, 3.0, 0.5);
  CHECK(d[3] == doctest::Approx(1.0 - normal_cdf((0.5 - 3.0) / 0.5)).epsilon(1e-14));
  CHECK(d[0] == doctest::Approx(normal_cdf((-0.5 - 3.0) / 0.5)).epsilon(1e-12));
  CHECK(d[0] > 0.0);
}

TEST_CASE("transition matrix") {
  SUBCASE("phi = 0 makes every row the initial vector") {
    const Grid g(9, -2.0, 2.0);
    const auto G = transition_matrix(g, 0.0, 0.6);
    const auto d = initial_vector(g, 0.0, 0.6);
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = 0; j < 9; ++j) CHECK(G(i, j) == d[j]);
    }
  }
  SUBCASE("three-state kernel against the boundary CDF values") {
    // Boundaries -1.5, -0.5, 0.5, 1.5; midpoints -1, 0, 1; phi 0.5, sigma 0.5.
    const auto G = transition_matrix(Grid(3, -1.5, 1.5), 0.5, 0.5);
    const double phi_m1 = 0.15865525393145707;   // Phi(-1)
    const double phi_m2 = 0.022750131948179195;  // Phi(-2)
    CHECK(G(1, 0) == doctest::Approx(phi_m1).epsilon(1e-14));
    CHECK(G(1, 1) == doctest::Approx(1.0 - 2.0 * phi_m1).epsilon(1e-14));
    CHECK(G(1, 2) == doctest::Approx(phi_m1).epsilon(1e-14));
    CHECK(G(1, 0) == G(1, 2));
    CHECK(G(2, 0) == doctest::Approx(phi_m2).epsilon(1e-13));
    CHECK(G(2, 1) == doctest::Approx(0.5 - phi_m2).epsilon(1e-14));
    CHECK(G(2, 2) == doctest::Approx(0.5).epsilon(1e-15));
    for (std::size_t j = 0; j < 3; ++j) CHECK(G(0, j) == G(2, 2 - j));
  }
  SUBCASE("rows sum to one on the default grid") {
    const auto G = transition_matrix(Grid(150, -2.5, 2.5), 0.726, 0.464);
    for (std::size_t i = 0; i < 150; ++i) CHECK(std::abs(row_sum(G.row(i)) - 1.0) <= 1e-10);
  }
  CHECK_THROWS_AS(transition_matrix(Grid(3, -1.0, 1.0), 0.5, -1.0), std::domain_error);
}

TEST_CASE("row sums over random parameter draws") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phi(-0.999, 0.999), sigma(1e-4, 5.0), bound(0.5, 6.0);
  std::uniform_int_distribution<std::size_t> m(2, 60);
  double worst = 0.0;
  for (int draw = 0; draw < 200; ++draw) {
    const double b = bound(rng);
    const auto G = transition_matrix(Grid(m(rng), -b, b), phi(rng), sigma(rng));
    for (std::size_t i = 0; i < G.size(); ++i) worst = std::max(worst, std::abs(row_sum(G.row(i)) - 1.0));
    for (double v : G.entries()) REQUIRE((v >= 0.0 && v <= 1.0));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("periodic kernel pair") {
  const Grid g(40, -2.5, 2.5);
  SUBCASE("equal coefficients reduce to the AR(1) kernel") {
    const auto pair = par_transition_pair(g, 0.4, 0.4, 0.7, 0.7);
    const auto single = transition_matrix(g, 0.4, 0.7);
    CHECK(pair.within == single);
    CHECK(pair.across == single);
  }
  SUBCASE("weak across-turn persistence resembles a fresh draw") {
    const auto pair = par_transition_pair(g, 0.726, 0.057, 0.464, 0.790);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto fresh = initial_vector(g, 0.057 * g.midpoints()[i], 0.790);
      double tv = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) tv += std::abs(pair.across(i, j) - fresh[j]);
      CHECK(0.5 * tv < 0.05);
    }
  }
  SUBCASE("phi_a = 0 gives identical across-turn rows") {
    const auto pair = par_transition_pair(g, 0.5, 0.0, 0.5, 0.8);
    for (std::size_t i = 1; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) CHECK(pair.across(i, j) == pair.across(0, j));
    }
  }
}

TEST_CASE("turn-boundary transitions") {
  CHECK_FALSE(is_across_turn(1));
  CHECK_FALSE(is_across_turn(2));
  CHECK_FALSE(is_across_turn(3));
  CHECK(is_across_turn(4));
  CHECK(is_across_turn(7));
  CHECK(is_across_turn(10));
  CHECK_FALSE(is_across_turn(9));
}

TEST_CASE("interval mass derivatives match finite differences") {
  const Grid g(12, -2.0, 2.0);
  for (auto [mean, sd] : {std::pair{0.3, 0.7}, std::pair{-1.9, 0.25}, std::pair{2.4, 1.3}}) {
    std::vector<double> dm(12), ds(12);
    interval_mass_derivatives(g, mean, sd, dm, ds);
    const double h = 1e-6;
    const auto mp = interval_masses(g, mean + h, sd), mm = interval_masses(g, mean - h, sd);
    const auto sp = interval_masses(g, mean, sd + h), sm = interval_masses(g, mean, sd - h);
    for (std::size_t j = 0; j < 12; ++j) {
      CHECK(dm[j] == doctest::Approx((mp[j] - mm[j]) / (2 * h)).epsilon(1e-6));
      CHECK(ds[j] == doctest::Approx((sp[j] - sm[j]) / (2 * h)).epsilon(1e-6));
    }
    CHECK(std::abs(std::accumulate(dm.begin(), dm.end(), 0.0)) < 1e-12);
  }
}
