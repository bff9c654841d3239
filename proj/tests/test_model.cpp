#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hothand/model.hpp"

using namespace hothand;

namespace {

ParamVector m2_params(double b0, double b1, double b2) {
  ParamVector p;
  p.kind = ModelKind::M2;
  p.beta0 = {b0};
  p.beta1 = b1;
  p.beta2 = b2;
  return p;
}

}  // namespace

TEST_CASE("linear predictor adds the active terms") {
  const ParamVector p = m2_params(-0.5, 0.2, 0.3);
  CHECK(linear_predictor(p, 0, 1, 0.0) == -0.5);
  CHECK(linear_predictor(p, 0, 3, 0.1) == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(linear_predictor(p, 0, 2, 0.0) - linear_predictor(p, 0, 1, 0.0) ==
        doctest::Approx(0.2).epsilon(1e-15));

  ParamVector m1 = p;
  m1.kind = ModelKind::M1;
  CHECK(linear_predictor(m1, 0, 3, 0.0) == -0.5);
  CHECK_THROWS_AS(linear_predictor(p, 1, 1, 0.0), std::domain_error);
  CHECK_THROWS_AS(linear_predictor(p, 0, 4, 0.0), std::domain_error);
}

TEST_CASE("logistic link values") {
  CHECK(success_probability(0.0) == 0.5);
  CHECK(success_probability(-0.857) == doctest::Approx(0.298).epsilon(0.002));
  CHECK(success_probability(-0.135) == doctest::Approx(0.466).epsilon(0.002));
  for (double eta : {-30.0, -3.0, -0.2, 0.7, 5.0, 25.0}) {
    CHECK(success_probability(eta) + failure_probability(eta) == doctest::Approx(1.0));
    CHECK(success_probability(eta) == doctest::Approx(failure_probability(-eta)).epsilon(1e-15));
  }
}

TEST_CASE("logistic tail stays positive and accurate") {
  const double v = success_probability(-40.0);
  const long double ref = std::exp(-40.0L) / (1.0L + std::exp(-40.0L));
  CHECK(v > 0.0);
  CHECK(v <= 1e-15);
  CHECK(std::abs(v - static_cast<double>(ref)) / static_cast<double>(ref) < 1e-13);
  CHECK(std::isfinite(std::log(success_probability(-800.0))));
  CHECK(success_probability(800.0) < 1.0);
  CHECK(log_success_probability(-40.0) == doctest::Approx(static_cast<double>(std::log(ref))));
  CHECK(log_success_probability(-1000.0) == doctest::Approx(-1000.0));
  CHECK_THROWS_AS(success_probability(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("turn position cycles 1, 2, 3") {
  CHECK(turn_position(1) == 1);
  CHECK(turn_position(4) == 1);
  CHECK(turn_position(3) == 3);
  CHECK(turn_position(5) == 2);
  // "111 110 0"
  const int expected[] = {1, 2, 3, 1, 2, 3, 1};
  for (std::size_t t = 1; t <= 7; ++t) CHECK(turn_position(t) == expected[t - 1]);
  CHECK_THROWS_AS(turn_position(0), std::domain_error);
}

TEST_CASE("dataset indexes players lexicographically") {
  const Dataset d({{"zed", "1", {1, 0}}, {"amy", "1", {0}}, {"zed", "2", {1, 1, 1}}});
  REQUIRE(d.player_count() == 2);
  CHECK(d.players()[0] == "amy");
  CHECK(d.player_of_leg(0) == 1);
  CHECK(d.player_of_leg(1) == 0);
  CHECK(d.throw_count() == 6);
  CHECK(d.player_index("zed") == 1);
  CHECK_THROWS_AS(d.player_index("bob"), std::out_of_range);
  CHECK_THROWS_AS(Dataset(std::vector<Leg>{{"a", "1", {}}}), std::domain_error);
  CHECK_THROWS_AS(Dataset(std::vector<Leg>{{"a", "1", {2}}}), std::domain_error);

  const Dataset same({{"zed", "1", {1, 0}}, {"amy", "1", {0}}, {"zed", "2", {1, 1, 1}}});
  const Dataset other({{"zed", "1", {1, 1}}, {"amy", "1", {0}}, {"zed", "2", {1, 1, 1}}});
  CHECK(d.fingerprint() == same.fingerprint());
  CHECK(d.fingerprint() != other.fingerprint());
}

TEST_CASE("model kind names") {
  CHECK(to_string(ModelKind::M3) == "m3");
  CHECK(parse_model_kind("M4") == ModelKind::M4);
  CHECK_THROWS_AS(parse_model_kind("m5"), std::invalid_argument);
  CHECK(has_latent_state(ModelKind::M3));
  CHECK_FALSE(has_latent_state(ModelKind::M2));
}

TEST_CASE("parameter validation") {
  ParamVector p;
  p.kind = ModelKind::M4;
  p.beta0 = {0.0, 0.1};
  CHECK_NOTHROW(p.validate(2));
  CHECK_THROWS_AS(p.validate(3), std::domain_error);
  p.phi_w = 1.0;
  CHECK_THROWS_AS(p.validate(2), std::domain_error);
  p.phi_w = 0.5;
  p.sigma_a = 0.0;
  CHECK_THROWS_AS(p.validate(2), std::domain_error);
  p.kind = ModelKind::M2;  // M4-only fields are ignored
  CHECK_NOTHROW(p.validate(2));

  ModelSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.m = 1;
  CHECK_THROWS_AS(spec.validate(), std::domain_error);
  spec = ModelSpec{};
  spec.b0 = 3.0;
  CHECK_THROWS_AS(spec.validate(), std::domain_error);
}
