#include "hothand/decode.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace hothand {

namespace {

std::vector<double> log_of(std::span<const double> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log(v[i]);
  return out;
}

std::vector<double> log_of(const TransitionMatrix& gamma) { return log_of(gamma.entries()); }

}  // namespace

DecodedLeg viterbi(const Leg& leg, const DiscretizedModel& model, std::size_t player_index) {
  const std::size_t m = model.grid().size();
  const std::size_t T = leg.length();
  if (T == 0) throw std::domain_error("viterbi: empty leg");

  const auto log_delta = log_of(model.delta());
  const auto log_within = log_of(model.transitions().within);
  const auto log_across = model.periodic() ? log_of(model.transitions().across) : log_within;

  std::vector<double> score(m), next(m);
  std::vector<std::size_t> back((T - 1) * m);
  {
    const auto w = model.weights(player_index, 1, leg.y[0]);
    for (std::size_t i = 0; i < m; ++i) score[i] = log_delta[i] + std::log(w[i]);
  }
  for (std::size_t t = 2; t <= T; ++t) {
    const auto& lg = model.periodic() && is_across_turn(t) ? log_across : log_within;
    const auto w = model.weights(player_index, turn_position(t), leg.y[t - 1]);
    std::size_t* bp = back.data() + (t - 2) * m;
    for (std::size_t j = 0; j < m; ++j) {
      double best = -std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double v = score[i] + lg[i * m + j];
        if (v > best) {
          best = v;
          arg = i;
        }
      }
      next[j] = best + std::log(w[j]);
      bp[j] = arg;
    }
    std::swap(score, next);
  }

  DecodedLeg out;
  out.states.resize(T);
  double best = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (score[i] > best) {
      best = score[i];
      arg = i;
    }
  }
  out.log_probability = best;
  out.states[T - 1] = arg;
  for (std::size_t t = T; t >= 2; --t) {
    out.states[t - 2] = back[(t - 2) * m + out.states[t - 1]];
  }
  const auto& mid = model.grid().midpoints();
  const auto& params = model.params();
  out.s_star.resize(T);
  out.pi_star.resize(T);
  for (std::size_t t = 1; t <= T; ++t) {
    out.s_star[t - 1] = mid[out.states[t - 1]];
    out.pi_star[t - 1] = success_probability(
        linear_predictor(params, player_index, turn_position(t), out.s_star[t - 1]));
  }
  return out;
}

DecodedLeg viterbi(const Leg& leg, const ParamVector& params, const ModelSpec& spec,
                   std::size_t player_index) {
  if (!has_latent_state(spec.kind)) {
    throw std::domain_error("viterbi: model " + to_string(spec.kind) + " has no latent state");
  }
  return viterbi(leg, DiscretizedModel(params, spec), player_index);
}

std::vector<DecodedLeg> decode_dataset(const Dataset& dataset, const ParamVector& params,
                                       const ModelSpec& spec) {
  if (!has_latent_state(spec.kind)) {
    throw std::domain_error("decode: model " + to_string(spec.kind) + " has no latent state");
  }
  params.validate(dataset.player_count());
  const DiscretizedModel model(params, spec);
  std::vector<DecodedLeg> out;
  out.reserve(dataset.leg_count());
  for (std::size_t l = 0; l < dataset.leg_count(); ++l) {
    out.push_back(viterbi(dataset.legs()[l], model, dataset.player_of_leg(l)));
    out.back().leg_index = l;
  }
  return out;
}

double path_log_probability(const Leg& leg, const DiscretizedModel& model,
                            std::size_t player_index, const std::vector<std::size_t>& states) {
  if (states.size() != leg.length()) throw std::domain_error("path length does not match leg");
  double lp = std::log(model.delta()[states[0]]) +
              std::log(model.weights(player_index, 1, leg.y[0])[states[0]]);
  for (std::size_t t = 2; t <= leg.length(); ++t) {
    lp += std::log(model.transition_into(t)(states[t - 2], states[t - 1]));
    lp += std::log(model.weights(player_index, turn_position(t), leg.y[t - 1])[states[t - 1]]);
  }
  return lp;
}

std::vector<TrajectoryRow> trajectory_report(const std::vector<DecodedLeg>& decoded,
                                             const ParamVector& params, const Dataset& dataset) {
  std::vector<TrajectoryRow> rows;
  for (const auto& d : decoded) {
    const auto& leg = dataset.legs().at(d.leg_index);
    const std::size_t p = dataset.player_of_leg(d.leg_index);
    const double baseline = success_probability(params.beta0.at(p));
    for (std::size_t t = 1; t <= leg.length(); ++t) {
      rows.push_back({leg.player_id, leg.leg_id, t, turn_position(t), leg.y[t - 1],
                      d.s_star.at(t - 1), d.pi_star.at(t - 1), baseline, is_across_turn(t)});
    }
  }
  return rows;
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = "player_id,leg_id,t,turn,y,s_star,pi_star,baseline,turn_break\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, ",%zu,%d,%d,%.10g,%.10g,%.10g,%d\n", r.t, r.turn, r.y, r.s_star,
                  r.pi_star, r.baseline, r.turn_break ? 1 : 0);
    out += r.player_id + "," + r.leg_id + buf;
  }
  return out;
}

double edge_state_share(const std::vector<DecodedLeg>& decoded, std::size_t m) {
  std::size_t total = 0;
  std::size_t edge = 0;
  for (const auto& d : decoded) {
    for (auto s : d.states) {
      ++total;
      if (s < 2 || s + 2 >= m) ++edge;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(edge) / static_cast<double>(total);
}

}  // namespace hothand
