#pragma once

// Synthetic data under M1-M4, within-turn sequence census for goodness of
// fit, and parameter-recovery harnesses.
//
// The simulator draws the continuous latent process exactly (normal
// innovations), not the discretized kernel, so fitting simulated data also
// exercises the discretization error.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hothand/estimate.hpp"
#include "hothand/model.hpp"

namespace hothand {

/// P players named P01, P02, ..., each with `legs_per_player` legs whose
/// lengths are uniform on {min_length, ..., max_length}.
struct SyntheticStructure {
  std::size_t players = 20;
  std::size_t legs_per_player = 150;
  std::size_t min_length = 7;
  std::size_t max_length = 12;
};

struct SimulationPlan {
  std::uint64_t seed = 0;
  /// Either a synthetic layout or a template whose player set, leg order,
  /// leg ids and leg lengths are reproduced exactly ("mirror" mode).
  std::variant<SyntheticStructure, Dataset> structure;
  /// Generating model; intercepts follow the lexicographic player order.
  ParamVector params;
};

/// Per-replication seed: splitmix64(master + (replication + 1) * golden gamma).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication);

/// Synthetic player ids for `count` players, zero padded so they sort in
/// numeric order.
std::vector<std::string> synthetic_player_ids(std::size_t count);

/// Draws one dataset. For each leg in order: its length (synthetic mode),
/// then for t = 1..T the latent state (M3/M4) followed by the outcome.
/// Bit-reproducible for a given plan. Throws std::domain_error on invalid
/// parameters.
Dataset simulate_dataset(const SimulationPlan& plan);

/// Proportions of the eight within-turn patterns 000, 001, ..., 111 over the
/// first two complete turns of every leg (legs shorter than three throws
/// contribute nothing; three to five throws contribute the first turn).
struct SequenceCensus {
  std::array<double, 8> proportions{};
  std::array<double, 8> std_errors{};  // Monte Carlo standard errors (model census)
  std::size_t turns = 0;               // complete turns counted (per replication)
  std::size_t replications = 0;        // 0 for an observed-data census
};

/// Pattern label for index k: bit order is (dart 1, dart 2, dart 3).
std::string pattern_label(std::size_t k);

/// Throws std::domain_error if the dataset has no complete turn.
SequenceCensus sequence_census(const Dataset& dataset);

/// Average census over `replications` mirror-mode simulations of the fitted
/// model on the template's structure, with per-pattern MC standard errors.
SequenceCensus model_implied_census(const FitResult& fit, const Dataset& template_data,
                                    std::size_t replications, std::uint64_t seed);

nlohmann::json to_json(const SequenceCensus& census);
/// Combined observed vs model census report.
nlohmann::json census_report(const SequenceCensus& observed, const SequenceCensus& model,
                             ModelKind kind);

struct RecoveryReport {
  ModelKind kind = ModelKind::M1;
  std::size_t replications = 0;
  std::vector<std::string> names;
  std::vector<double> truth;
  std::vector<double> mean;
  std::vector<double> bias;
  std::vector<double> rmse;
  std::vector<double> coverage;  // share of replications whose 95% CI contains the truth
  std::vector<std::size_t> non_converged;  // replication indices
  std::vector<std::vector<double>> estimates;  // [replication][parameter]
};

/// Repeats simulate -> fit `replications` times on derived seeds.
RecoveryReport recovery_experiment(const ParamVector& truth, const ModelSpec& spec,
                                   const SyntheticStructure& structure, std::size_t replications,
                                   std::uint64_t seed, const FitOptions& options = {});

nlohmann::json to_json(const RecoveryReport& report);
std::string recovery_csv(const RecoveryReport& report);

}  // namespace hothand
