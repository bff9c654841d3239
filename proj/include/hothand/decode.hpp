#pragma once

// Most likely latent trajectories (Viterbi) on the discretized state space
// and the plot-ready trajectory export.

#include <cstddef>
#include <string>
#include <vector>

#include "hothand/likelihood.hpp"
#include "hothand/model.hpp"

namespace hothand {

struct DecodedLeg {
  std::size_t leg_index = 0;       // position in the dataset it was decoded from
  std::vector<std::size_t> states;  // 0-based grid interval per throw
  std::vector<double> s_star;       // grid midpoints
  std::vector<double> pi_star;      // implied success probabilities
  double log_probability = 0.0;     // log Pr(states, y) of the decoded path
};

/// Exact argmax over all m^T discretized paths, computed in log space.
/// Under M4 the transition into t uses the across-turn kernel when
/// (t - 1) mod 3 == 0. Ties go to the lower state index.
/// Throws std::domain_error for M1/M2 (no latent state).
DecodedLeg viterbi(const Leg& leg, const ParamVector& params, const ModelSpec& spec,
                   std::size_t player_index);
DecodedLeg viterbi(const Leg& leg, const DiscretizedModel& model, std::size_t player_index);

/// Decodes every leg of the dataset.
std::vector<DecodedLeg> decode_dataset(const Dataset& dataset, const ParamVector& params,
                                       const ModelSpec& spec);

/// Log joint probability of a given state path (0-based indices) and the
/// observations under the discretized model.
double path_log_probability(const Leg& leg, const DiscretizedModel& model,
                            std::size_t player_index, const std::vector<std::size_t>& states);

struct TrajectoryRow {
  std::string player_id;
  std::string leg_id;
  std::size_t t = 0;
  int turn = 0;
  int y = 0;
  double s_star = 0.0;
  double pi_star = 0.0;
  double baseline = 0.0;  // logistic(beta0_p): first-dart baseline of the player
  bool turn_break = false;  // true on the first dart of turns 2, 3, ... (t = 4, 7, 10, ...)
};

/// Long-format rows, one per decoded throw, in dataset order.
std::vector<TrajectoryRow> trajectory_report(const std::vector<DecodedLeg>& decoded,
                                             const ParamVector& params, const Dataset& dataset);

/// CSV with the fixed header
/// player_id,leg_id,t,turn,y,s_star,pi_star,baseline,turn_break
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);

/// Share of decoded states lying in the two outermost intervals at either
/// end of the grid. Large values mean [b0, bm] is too narrow.
double edge_state_share(const std::vector<DecodedLeg>& decoded, std::size_t m);

}  // namespace hothand
