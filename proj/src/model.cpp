#include "hothand/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hothand {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::M1: return "m1";
    case ModelKind::M2: return "m2";
    case ModelKind::M3: return "m3";
    case ModelKind::M4: return "m4";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "m1") return ModelKind::M1;
  if (lower == "m2") return ModelKind::M2;
  if (lower == "m3") return ModelKind::M3;
  if (lower == "m4") return ModelKind::M4;
  throw std::invalid_argument("unknown model kind '" + std::string(text) + "'");
}

int turn_position(std::size_t t) {
  if (t < 1) throw std::domain_error("turn_position: throw index must be >= 1");
  return static_cast<int>((t - 1) % 3) + 1;
}

Dataset::Dataset(std::vector<Leg> legs) : legs_(std::move(legs)) {
  for (const auto& leg : legs_) {
    if (leg.y.empty()) {
      throw std::domain_error("leg " + leg.player_id + "/" + leg.leg_id + " is empty");
    }
    for (auto bit : leg.y) {
      if (bit > 1) throw std::domain_error("leg " + leg.player_id + "/" + leg.leg_id +
                                           " contains a non-binary outcome");
    }
    players_.push_back(leg.player_id);
    throw_count_ += leg.y.size();
  }
  std::sort(players_.begin(), players_.end());
  players_.erase(std::unique(players_.begin(), players_.end()), players_.end());
  leg_player_.reserve(legs_.size());
  for (const auto& leg : legs_) leg_player_.push_back(player_index(leg.player_id));
}

std::size_t Dataset::player_index(std::string_view player_id) const {
  auto it = std::lower_bound(players_.begin(), players_.end(), player_id);
  if (it == players_.end() || *it != player_id) {
    throw std::out_of_range("unknown player '" + std::string(player_id) + "'");
  }
  return static_cast<std::size_t>(it - players_.begin());
}

std::uint64_t Dataset::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (const auto& leg : legs_) {
    for (char c : leg.player_id) mix(static_cast<unsigned char>(c));
    mix(0x1f);
    for (char c : leg.leg_id) mix(static_cast<unsigned char>(c));
    mix(0x1f);
    for (auto bit : leg.y) mix(static_cast<unsigned char>('0' + bit));
    mix(0x1e);
  }
  return h;
}

void ModelSpec::validate() const {
  if (!has_latent_state(kind)) return;
  if (m < 2) throw std::domain_error("grid size m must be >= 2");
  if (!(b0 < bm) || !std::isfinite(b0) || !std::isfinite(bm)) {
    throw std::domain_error("grid bounds must satisfy b0 < bm");
  }
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(std::string("invalid parameters: ") + what);
}

}  // namespace

void ParamVector::validate(std::size_t player_count) const {
  require(beta0.size() == player_count, "intercept count does not match player count");
  for (double b : beta0) require(std::isfinite(b), "non-finite intercept");
  if (has_turn_dummies(kind)) require(std::isfinite(beta1) && std::isfinite(beta2), "beta1/beta2");
  if (kind == ModelKind::M3) {
    require(std::isfinite(phi) && std::abs(phi) < 1.0, "|phi| must be < 1");
    require(std::isfinite(sigma) && sigma > 0.0, "sigma must be > 0");
  }
  if (kind == ModelKind::M4) {
    require(std::isfinite(phi_w) && std::abs(phi_w) < 1.0, "|phi_w| must be < 1");
    require(std::isfinite(phi_a) && std::abs(phi_a) < 1.0, "|phi_a| must be < 1");
    require(std::isfinite(sigma_w) && sigma_w > 0.0, "sigma_w must be > 0");
    require(std::isfinite(sigma_a) && sigma_a > 0.0, "sigma_a must be > 0");
  }
  if (has_latent_state(kind)) {
    require(std::isfinite(mu_delta), "mu_delta");
    require(std::isfinite(sigma_delta) && sigma_delta > 0.0, "sigma_delta must be > 0");
  }
}

namespace {

// Largest double below 1; keeps the logistic strictly inside (0, 1).
constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void require_finite(double eta) {
  if (!std::isfinite(eta)) throw std::domain_error("linear predictor is not finite");
}

}  // namespace

double success_probability(double eta) {
  require_finite(eta);
  return std::clamp(logistic(eta), std::numeric_limits<double>::denorm_min(), kBelowOne);
}

double failure_probability(double eta) { return success_probability(-eta); }

double log_success_probability(double eta) {
  require_finite(eta);
  // log(1 / (1 + e^{-eta})) = -log1p(e^{-eta})
  if (eta >= 0.0) return -std::log1p(std::exp(-eta));
  return eta - std::log1p(std::exp(eta));
}

double linear_predictor(const ParamVector& params, std::size_t player_index, int turn,
                        double s) {
  if (player_index >= params.beta0.size()) {
    throw std::domain_error("linear_predictor: player index out of range");
  }
  if (turn < 1 || turn > 3) throw std::domain_error("linear_predictor: turn must be 1, 2 or 3");
  double eta = params.beta0[player_index];
  if (has_turn_dummies(params.kind)) {
    if (turn == 2) eta += params.beta1;
    if (turn == 3) eta += params.beta2;
  }
  return eta + s;
}

}  // namespace hothand
