#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hothand/simulate.hpp"
#include "support/oracles.hpp"

using namespace hothand;

namespace {

double logit(double p) { return std::log(p / (1.0 - p)); }

std::array<double, 3> position_rates(const Dataset& d) {
  std::array<double, 3> hits{}, n{};
  for (const auto& leg : d.legs()) {
    for (std::size_t t = 1; t <= leg.length(); ++t) {
      hits[turn_position(t) - 1] += leg.y[t - 1];
      n[turn_position(t) - 1] += 1;
    }
  }
  return {hits[0] / n[0], hits[1] / n[1], hits[2] / n[2]};
}

ParamVector position_model(ModelKind kind) {
  ParamVector p;
  p.kind = kind;
  p.beta0 = {logit(0.355)};
  p.beta1 = logit(0.409) - logit(0.355);
  p.beta2 = logit(0.420) - logit(0.355);
  return p;
}

}  // namespace

TEST_CASE("seeded simulation is reproducible") {
  ParamVector p;
  p.kind = ModelKind::M4;
  p.beta0.assign(3, -0.4);
  p.phi_w = 0.7;
  SimulationPlan plan{42, SyntheticStructure{3, 20, 7, 12}, p};
  const Dataset a = simulate_dataset(plan);
  CHECK(a == simulate_dataset(plan));
  plan.seed = 43;
  CHECK_FALSE(a == simulate_dataset(plan));

  CHECK(a.players() == std::vector<std::string>{"P01", "P02", "P03"});
  CHECK(a.leg_count() == 60);
  for (const auto& leg : a.legs()) {
    CHECK(leg.length() >= 7);
    CHECK(leg.length() <= 12);
  }
  CHECK(a.legs()[0].leg_id == "L0001");
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));
}

TEST_CASE("mirror mode copies the template structure") {
  const Dataset tmpl({{"x", "a", {0, 0, 0, 0}}, {"w", "b", {1}}, {"x", "c", {1, 1, 1, 1, 1, 1, 1}}});
  ParamVector p;
  p.kind = ModelKind::M3;
  p.beta0 = {0.0, 0.0};
  const Dataset s = simulate_dataset({1, tmpl, p});
  REQUIRE(s.leg_count() == 3);
  for (std::size_t l = 0; l < 3; ++l) {
    CHECK(s.legs()[l].player_id == tmpl.legs()[l].player_id);
    CHECK(s.legs()[l].leg_id == tmpl.legs()[l].leg_id);
    CHECK(s.legs()[l].length() == tmpl.legs()[l].length());
  }
  p.beta0 = {0.0};
  CHECK_THROWS_AS(simulate_dataset({1, tmpl, p}), std::domain_error);
}

TEST_CASE("intercept-only simulation converges to one half") {
  ParamVector p;
  p.kind = ModelKind::M1;
  p.beta0 = {0.0};
  const Dataset d = simulate_dataset({7, SyntheticStructure{1, 100000, 10, 10}, p});
  REQUIRE(d.throw_count() == 1000000);
  double hits = 0;
  for (const auto& leg : d.legs()) hits += std::accumulate(leg.y.begin(), leg.y.end(), 0.0);
  CHECK(std::abs(hits / 1e6 - 0.5) <= 0.002);
}

TEST_CASE("position dummies reproduce the target rates") {
  const Dataset d =
      simulate_dataset({9, SyntheticStructure{1, 100000, 9, 11}, position_model(ModelKind::M2)});
  CHECK(d.throw_count() > 900000);
  const auto r = position_rates(d);
  CHECK(std::abs(r[0] - 0.355) <= 0.003);
  CHECK(std::abs(r[1] - 0.409) <= 0.003);
  CHECK(std::abs(r[2] - 0.420) <= 0.003);
}

TEST_CASE("M3 with a vanishing state matches M2 position rates") {
  ParamVector p = position_model(ModelKind::M3);
  p.phi = 0.5;
  p.sigma = 1e-8;
  p.mu_delta = 0.0;
  p.sigma_delta = 1e-8;
  const Dataset d = simulate_dataset({10, SyntheticStructure{1, 20000, 7, 12}, p});
  std::array<double, 3> hits{}, n{};
  for (const auto& leg : d.legs()) {
    for (std::size_t t = 1; t <= leg.length(); ++t) {
      hits[turn_position(t) - 1] += leg.y[t - 1];
      n[turn_position(t) - 1] += 1;
    }
  }
  const double target[] = {0.355, 0.409, 0.420};
  double chi2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double e1 = n[k] * target[k], e0 = n[k] * (1 - target[k]);
    chi2 += (hits[k] - e1) * (hits[k] - e1) / e1 + (n[k] - hits[k] - e0) * (n[k] - hits[k] - e0) / e0;
  }
  CHECK(chi2 < 11.345);  // chi-square(3) upper 1% point
}

TEST_CASE("observed census") {
  const Dataset one({{"a", "1", {1, 1, 1, 0, 0, 0, 1, 0, 1}}});
  const auto c = sequence_census(one);
  CHECK(c.turns == 2);
  CHECK(c.proportions[7] == 0.5);
  CHECK(c.proportions[0] == 0.5);
  CHECK(pattern_label(0) == "000");
  CHECK(pattern_label(1) == "001");
  CHECK(pattern_label(4) == "100");
  CHECK_THROWS_AS(pattern_label(8), std::out_of_range);

  const Dataset mixed({{"a", "1", {1, 0}}, {"a", "2", {0, 1, 1, 1, 1}}, {"b", "1", {1, 0, 0, 1, 1, 0, 0}}});
  const auto m = sequence_census(mixed);
  CHECK(m.turns == 3);
  CHECK(m.proportions[3] == doctest::Approx(1.0 / 3.0));  // 011
  CHECK(m.proportions[4] == doctest::Approx(1.0 / 3.0));  // 100
  CHECK(m.proportions[6] == doctest::Approx(1.0 / 3.0));  // 110
  CHECK_THROWS_AS(sequence_census(Dataset({{"a", "1", {1, 0}}})), std::domain_error);
}

TEST_CASE("model census of a GLM agrees with the product formula") {
  ParamVector p;
  p.kind = ModelKind::M2;
  p.beta0 = {-0.8, -0.2, 0.1};
  p.beta1 = 0.3;
  p.beta2 = 0.35;
  const Dataset tmpl = simulate_dataset({4, SyntheticStructure{3, 80, 4, 12}, p});
  FitResult f;
  f.players = tmpl.players();
  f.params = p;
  f.spec.kind = ModelKind::M2;
  const auto census = model_implied_census(f, tmpl, 100, 123);
  const auto expected = oracle::analytic_census(tmpl, p);
  CHECK(census.replications == 100);
  double total = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    INFO("pattern ", pattern_label(k));
    CHECK(census.std_errors[k] > 0.0);
    CHECK(std::abs(census.proportions[k] - expected[k]) <= 3.0 * census.std_errors[k]);
    total += census.proportions[k];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("one replication is one simulate-then-count pass") {
    const auto single = model_implied_census(f, tmpl, 1, 55);
    const auto direct = sequence_census(simulate_dataset({derive_seed(55, 0), tmpl, p}));
    CHECK(single.proportions == direct.proportions);
  }
}

TEST_CASE("census report layout") {
  const Dataset one({{"a", "1", {1, 1, 1, 0, 0, 0}}});
  const auto obs = sequence_census(one);
  const auto j = census_report(obs, obs, ModelKind::M4);
  CHECK(j["format"] == "hothand-census/1");
  CHECK(j["patterns"].size() == 8);
  CHECK(j["patterns"][7]["pattern"] == "111");
  CHECK(j["max_abs_difference"] == 0.0);
}

TEST_CASE("intercept-only interval coverage" * doctest::timeout(300)) {
  ParamVector truth;
  truth.kind = ModelKind::M1;
  truth.beta0 = {logit(0.4)};
  const auto report =
      recovery_experiment(truth, {ModelKind::M1}, SyntheticStructure{1, 60, 7, 12}, 50, 2718);
  CHECK(report.non_converged.empty());
  CHECK(std::abs(report.coverage[0] - 0.95) <= 0.07);
  const auto j = to_json(report);
  CHECK(j["parameters"][0]["name"] == "beta0[P01]");
  CHECK(recovery_csv(report).rfind("name,truth,mean,bias,rmse,coverage\n", 0) == 0);
}

TEST_CASE("zero across-turn persistence is covered" * doctest::timeout(900)) {
  ParamVector truth;
  truth.kind = ModelKind::M4;
  truth.beta0 = {-0.7, -0.4, -0.1};
  truth.beta1 = 0.27;
  truth.beta2 = 0.33;
  truth.phi_w = 0.7;
  truth.phi_a = 0.0;
  truth.sigma_w = 0.5;
  truth.sigma_a = 0.8;
  truth.mu_delta = 0.0;
  truth.sigma_delta = 0.7;
  const ModelSpec spec{ModelKind::M4, 30, -2.5, 2.5};
  const auto report = recovery_experiment(truth, spec, SyntheticStructure{3, 80, 7, 12}, 20, 31415);
  const std::size_t k = 3 + 3;  // phi_a
  REQUIRE(report.names[k] == "phi_a");
  MESSAGE("phi_a coverage ", report.coverage[k], ", phi_w mean ", report.mean[5]);
  CHECK(report.coverage[k] >= 0.85);
}
