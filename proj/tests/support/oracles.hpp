#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here shares code with the forward algorithm or Viterbi beyond the
// model's own building blocks (delta, Gamma, observation weights).

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hothand/likelihood.hpp"
#include "hothand/model.hpp"

namespace oracle {

using hothand::DiscretizedModel;
using hothand::Leg;

// Odometer over all m^T state paths.
template <class Visit>
void for_each_path(std::size_t m, std::size_t T, Visit visit) {
  std::vector<std::size_t> path(T, 0);
  while (true) {
    visit(path);
    std::size_t k = T;
    while (true) {
      if (k == 0) return;
      --k;
      if (++path[k] < m) break;
      path[k] = 0;
    }
  }
}

// Plain product delta P(y1) Gamma P(y2) ... summed over every path.
inline double path_sum_likelihood(const Leg& leg, const DiscretizedModel& model, std::size_t player) {
  const std::size_t m = model.grid().size();
  const std::size_t T = leg.length();
  long double total = 0.0L;
  for_each_path(m, T, [&](const std::vector<std::size_t>& path) {
    long double prod = model.delta()[path[0]];
    prod *= model.weights(player, 1, leg.y[0])[path[0]];
    for (std::size_t t = 2; t <= T; ++t) {
      prod *= model.transition_into(t)(path[t - 2], path[t - 1]);
      prod *= model.weights(player, hothand::turn_position(t), leg.y[t - 1])[path[t - 1]];
    }
    total += prod;
  });
  return static_cast<double>(std::log(total));
}

// Exhaustive argmax of the joint path log-probability. Log terms are added
// in the same order as the dynamic program so equal paths give equal sums.
inline std::vector<std::size_t> enumerate_best_path(const Leg& leg, const DiscretizedModel& model,
                                                    std::size_t player, double* best_value = nullptr) {
  const std::size_t m = model.grid().size();
  const std::size_t T = leg.length();
  double best = -INFINITY;
  std::vector<std::size_t> arg;
  for_each_path(m, T, [&](const std::vector<std::size_t>& path) {
    double lp = std::log(model.delta()[path[0]]) +
                std::log(model.weights(player, 1, leg.y[0])[path[0]]);
    for (std::size_t t = 2; t <= T; ++t) {
      lp += std::log(model.transition_into(t)(path[t - 2], path[t - 1]));
      lp += std::log(model.weights(player, hothand::turn_position(t), leg.y[t - 1])[path[t - 1]]);
    }
    if (lp > best) {
      best = lp;
      arg = path;
    }
  });
  if (best_value) *best_value = best;
  return arg;
}

// Direct Bernoulli log-mass sum for M1/M2 (no latent state).
inline double bernoulli_loglik(const hothand::Dataset& data, const hothand::ParamVector& params) {
  double ll = 0.0;
  for (std::size_t l = 0; l < data.leg_count(); ++l) {
    const auto& leg = data.legs()[l];
    const std::size_t p = data.player_of_leg(l);
    for (std::size_t t = 1; t <= leg.length(); ++t) {
      double eta = params.beta0[p];
      const int d = static_cast<int>((t - 1) % 3) + 1;
      if (params.kind != hothand::ModelKind::M1) {
        if (d == 2) eta += params.beta1;
        if (d == 3) eta += params.beta2;
      }
      const double pi = 1.0 / (1.0 + std::exp(-eta));
      ll += leg.y[t - 1] ? std::log(pi) : std::log1p(-pi);
    }
  }
  return ll;
}

// Expected census under a model without latent state: each counted turn of
// player p contributes prod_d pi_{p,d}^{x_d} (1 - pi_{p,d})^{1 - x_d}.
inline std::array<double, 8> analytic_census(const hothand::Dataset& structure,
                                             const hothand::ParamVector& params) {
  std::array<double, 8> acc{};
  double turns = 0.0;
  for (std::size_t l = 0; l < structure.leg_count(); ++l) {
    const std::size_t p = structure.player_of_leg(l);
    const std::size_t counted = std::min<std::size_t>(2, structure.legs()[l].length() / 3);
    if (counted == 0) continue;
    std::array<double, 3> pi{};
    for (int d = 1; d <= 3; ++d) {
      double eta = params.beta0[p];
      if (params.kind != hothand::ModelKind::M1) {
        if (d == 2) eta += params.beta1;
        if (d == 3) eta += params.beta2;
      }
      pi[d - 1] = 1.0 / (1.0 + std::exp(-eta));
    }
    for (std::size_t k = 0; k < 8; ++k) {
      double prob = 1.0;
      for (int b = 0; b < 3; ++b) {
        const bool hit = (k >> (2 - b)) & 1U;
        prob *= hit ? pi[b] : 1.0 - pi[b];
      }
      acc[k] += static_cast<double>(counted) * prob;
    }
    turns += static_cast<double>(counted);
  }
  for (double& a : acc) a /= turns;
  return acc;
}

// Random valid parameters for a small latent-state instance.
inline hothand::ParamVector random_latent_params(std::mt19937_64& rng, hothand::ModelKind kind,
                                                 std::size_t players) {
  std::uniform_real_distribution<double> beta(-1.5, 1.0), phi(-0.9, 0.9), scale(0.2, 1.5),
      mu(-0.5, 0.5);
  hothand::ParamVector p;
  p.kind = kind;
  for (std::size_t k = 0; k < players; ++k) p.beta0.push_back(beta(rng));
  p.beta1 = beta(rng) * 0.5;
  p.beta2 = beta(rng) * 0.5;
  p.phi = phi(rng);
  p.sigma = scale(rng);
  p.phi_w = phi(rng);
  p.phi_a = phi(rng);
  p.sigma_w = scale(rng);
  p.sigma_a = scale(rng);
  p.mu_delta = mu(rng);
  p.sigma_delta = scale(rng);
  return p;
}

inline Leg random_leg(std::mt19937_64& rng, std::size_t T, const char* player = "A") {
  std::bernoulli_distribution coin(0.45);
  Leg leg{player, "L", std::vector<std::uint8_t>(T)};
  for (auto& b : leg.y) b = coin(rng) ? 1 : 0;
  return leg;
}

}  // namespace oracle
