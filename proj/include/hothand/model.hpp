#pragma once

// Shared data model: binary legs, datasets, model specifications and
// parameter vectors.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hothand {

/// Benchmark GLMs (M1, M2) and latent-state models with AR(1) (M3) or
/// periodic within/across-turn AR(1) (M4) ability processes.
enum class ModelKind { M1, M2, M3, M4 };

std::string to_string(ModelKind kind);
/// Accepts "m1".."m4" in either case; throws std::invalid_argument otherwise.
ModelKind parse_model_kind(std::string_view text);

constexpr bool has_latent_state(ModelKind kind) {
  return kind == ModelKind::M3 || kind == ModelKind::M4;
}
constexpr bool has_turn_dummies(ModelKind kind) { return kind != ModelKind::M1; }

/// One dart as it appears in a raw throw log.
struct ThrowRecord {
  std::string player_id;
  std::string leg_id;
  int throw_index = 0;  // 1-based within leg
  std::string segment;
  int score_before = 0;
};

/// Binary success sequence of one player in one leg after truncation.
struct Leg {
  std::string player_id;
  std::string leg_id;
  std::vector<std::uint8_t> y;

  std::size_t length() const noexcept { return y.size(); }
  friend bool operator==(const Leg&, const Leg&) = default;
};

/// Position of throw t (1-based) within its three-dart turn: 1, 2 or 3.
int turn_position(std::size_t t);

/// Ordered legs plus the lexicographically sorted player index. Immutable.
class Dataset {
 public:
  Dataset() = default;
  /// Throws std::domain_error on an empty leg.
  explicit Dataset(std::vector<Leg> legs);

  const std::vector<Leg>& legs() const noexcept { return legs_; }
  const std::vector<std::string>& players() const noexcept { return players_; }
  std::size_t player_count() const noexcept { return players_.size(); }
  std::size_t leg_count() const noexcept { return legs_.size(); }
  std::size_t throw_count() const noexcept { return throw_count_; }
  bool empty() const noexcept { return legs_.empty(); }

  /// Index of the leg's player in players().
  std::size_t player_of_leg(std::size_t leg) const { return leg_player_.at(leg); }
  /// Throws std::out_of_range for unknown ids.
  std::size_t player_index(std::string_view player_id) const;

  /// 64-bit FNV-1a digest of the leg content, used to check that fits
  /// being compared were run on the same data.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Dataset& a, const Dataset& b) { return a.legs_ == b.legs_; }

 private:
  std::vector<Leg> legs_;
  std::vector<std::string> players_;
  std::vector<std::size_t> leg_player_;
  std::size_t throw_count_ = 0;
};

/// Model family plus discretization settings (ignored for M1/M2).
struct ModelSpec {
  ModelKind kind = ModelKind::M4;
  std::size_t m = 150;
  double b0 = -2.5;
  double bm = 2.5;

  /// Throws std::domain_error unless m >= 2 and b0 < bm (latent models only).
  void validate() const;
};

/// Natural-scale parameters. Fields outside `kind` are ignored.
struct ParamVector {
  ModelKind kind = ModelKind::M1;
  std::vector<double> beta0;  // per player, logit scale
  double beta1 = 0.0;
  double beta2 = 0.0;
  double phi = 0.0;  // M3
  double sigma = 1.0;
  double phi_w = 0.0;  // M4
  double phi_a = 0.0;
  double sigma_w = 1.0;
  double sigma_a = 1.0;
  double mu_delta = 0.0;  // M3/M4 initial law, sigma_delta is a standard deviation
  double sigma_delta = 1.0;

  /// Throws std::domain_error on a wrong intercept count, non-finite values,
  /// non-positive scales or |phi| >= 1 for the fields `kind` uses.
  void validate(std::size_t player_count) const;
};

/// Logistic function, strictly inside (0, 1) for every finite input.
double success_probability(double eta);
/// 1 - success_probability(eta) computed without cancellation.
double failure_probability(double eta);
/// log success_probability(eta) without underflow for large |eta|.
double log_success_probability(double eta);

/// beta0[p] + beta1 1{D=2} + beta2 1{D=3} + s. The dummies are dropped
/// under M1; benchmark models pass s = 0.
double linear_predictor(const ParamVector& params, std::size_t player_index, int turn,
                        double s);

}  // namespace hothand
