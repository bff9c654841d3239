#pragma once

// Log-likelihoods for the four model families.
//
// M1/M2 are plain logistic regressions and are evaluated from per
// (player, turn position) success counts. M3/M4 use the forward algorithm on
// the discretized HMM: delta P(y_1) Gamma_2 P(y_2) ... Gamma_T P(y_T) 1, with
// the forward vector renormalized after every step and the log normalizers
// accumulated. Cost is O(T m^2) per leg.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hothand/discretize.hpp"
#include "hothand/model.hpp"

namespace hothand {

struct LikelihoodOptions {
  /// Worker threads for the per-leg sections. Legs are processed in fixed
  /// chunks and reduced in chunk order, so results are bit-identical for
  /// every thread count.
  unsigned threads = 1;
  /// Reuse the 6P distinct observation weight vectors instead of
  /// recomputing them per throw. Results are bit-identical either way.
  bool cache_observation_weights = true;
};

/// Gradient of the log-likelihood on the natural parameter scale. Fields
/// outside the model kind stay zero.
struct ParamGradient {
  std::vector<double> beta0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double phi = 0.0;
  double sigma = 0.0;
  double phi_w = 0.0;
  double phi_a = 0.0;
  double sigma_w = 0.0;
  double sigma_a = 0.0;
  double mu_delta = 0.0;
  double sigma_delta = 0.0;
};

struct LoglikWithGradient {
  double value = 0.0;
  ParamGradient gradient;
};

/// Pr(y_t | s_t = b*_i) for i = 1..m. Throws std::domain_error if t is
/// outside 1..leg.length().
std::vector<double> observation_weights(const Leg& leg, std::size_t t, const ParamVector& params,
                                        const Grid& grid, std::size_t player_index);

/// Discretized HMM for one parameter value: grid, initial vector,
/// transition kernel(s) and the cached observation weights.
class DiscretizedModel {
 public:
  DiscretizedModel(const ParamVector& params, const ModelSpec& spec);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<double>& delta() const noexcept { return delta_; }
  const TransitionPair& transitions() const noexcept { return transitions_; }
  bool periodic() const noexcept { return periodic_; }
  const ParamVector& params() const noexcept { return params_; }

  /// Kernel governing the transition into throw t (t >= 2).
  const TransitionMatrix& transition_into(std::size_t t) const {
    return periodic_ && is_across_turn(t) ? transitions_.across : transitions_.within;
  }

  /// Cached Pr(y | s = b*_i) for (player, turn position, y).
  std::span<const double> weights(std::size_t player, int turn, int y) const;

 private:
  ParamVector params_;
  Grid grid_;
  std::vector<double> delta_;
  TransitionPair transitions_;
  bool periodic_;
  std::vector<double> weight_cache_;  // [player][turn-1][y][m]
};

/// Bernoulli log-likelihood of M1/M2 summed over every throw.
double loglik_glm(const Dataset& dataset, const ParamVector& params);

/// Forward-algorithm log-likelihood of one leg. Under M3 pass the same
/// kernel as `within` and `across`. Throws std::domain_error on dimension
/// mismatch.
double loglik_leg_forward(const Leg& leg, const ParamVector& params, const ModelSpec& spec,
                          std::size_t player_index, std::span<const double> delta,
                          const TransitionPair& transitions);

/// Sum of per-leg log-likelihoods (any model kind).
double loglik_total(const Dataset& dataset, const ParamVector& params, const ModelSpec& spec,
                    const LikelihoodOptions& options = {});

/// Per-leg log-likelihoods in dataset order.
std::vector<double> loglik_per_leg(const Dataset& dataset, const ParamVector& params,
                                   const ModelSpec& spec, const LikelihoodOptions& options = {});

/// Log-likelihood and its exact gradient. For latent models the gradient
/// comes from a scaled forward-backward pass: expected transition counts
/// are contracted against dGamma/dtheta, posterior state probabilities
/// against the observation score, and the first-step smoother against
/// ddelta/dtheta. Costs about three forward passes.
LoglikWithGradient loglik_and_gradient(const Dataset& dataset, const ParamVector& params,
                                       const ModelSpec& spec,
                                       const LikelihoodOptions& options = {});

}  // namespace hothand
