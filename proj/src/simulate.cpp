#include "hothand/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace hothand {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication) {
  std::uint64_t z = master + (replication + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::string> synthetic_player_ids(std::size_t count) {
  const int width = std::max(2, static_cast<int>(std::to_string(count).size()));
  std::vector<std::string> ids;
  ids.reserve(count);
  for (std::size_t p = 1; p <= count; ++p) {
    std::string digits = std::to_string(p);
    ids.push_back("P" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits);
  }
  return ids;
}

namespace {

struct LegShape {
  std::string player_id;
  std::string leg_id;
  std::size_t player_index;
  std::size_t length;  // 0 = draw from the synthetic range
};

void simulate_leg(const ParamVector& params, std::size_t player, Leg& leg, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const bool latent = has_latent_state(params.kind);
  double s = 0.0;
  for (std::size_t t = 1; t <= leg.y.size(); ++t) {
    if (latent) {
      if (t == 1) {
        s = params.mu_delta + params.sigma_delta * normal(rng);
      } else if (params.kind == ModelKind::M4) {
        s = is_across_turn(t) ? params.phi_a * s + params.sigma_a * normal(rng)
                              : params.phi_w * s + params.sigma_w * normal(rng);
      } else {
        s = params.phi * s + params.sigma * normal(rng);
      }
    }
    const double pi = success_probability(linear_predictor(params, player, turn_position(t), s));
    leg.y[t - 1] = unif(rng) < pi ? 1 : 0;
  }
}

}  // namespace

Dataset simulate_dataset(const SimulationPlan& plan) {
  std::mt19937_64 rng(plan.seed);
  std::vector<LegShape> shapes;
  const SyntheticStructure* synth = std::get_if<SyntheticStructure>(&plan.structure);
  if (synth) {
    if (synth->players == 0 || synth->legs_per_player == 0 || synth->min_length == 0 ||
        synth->min_length > synth->max_length) {
      throw std::domain_error("simulate: invalid synthetic structure");
    }
    const auto ids = synthetic_player_ids(synth->players);
    char buf[32];
    for (std::size_t p = 0; p < synth->players; ++p) {
      for (std::size_t l = 1; l <= synth->legs_per_player; ++l) {
        std::snprintf(buf, sizeof buf, "L%04zu", l);
        shapes.push_back({ids[p], buf, p, 0});
      }
    }
    plan.params.validate(synth->players);
  } else {
    const auto& tmpl = std::get<Dataset>(plan.structure);
    for (std::size_t l = 0; l < tmpl.leg_count(); ++l) {
      const auto& leg = tmpl.legs()[l];
      shapes.push_back({leg.player_id, leg.leg_id, tmpl.player_of_leg(l), leg.length()});
    }
    plan.params.validate(tmpl.player_count());
  }

  std::vector<Leg> legs;
  legs.reserve(shapes.size());
  for (const auto& shape : shapes) {
    std::size_t length = shape.length;
    if (length == 0) {
      std::uniform_int_distribution<std::size_t> len(synth->min_length, synth->max_length);
      length = len(rng);
    }
    Leg leg{shape.player_id, shape.leg_id, std::vector<std::uint8_t>(length, 0)};
    simulate_leg(plan.params, shape.player_index, leg, rng);
    legs.push_back(std::move(leg));
  }
  return Dataset(std::move(legs));
}

std::string pattern_label(std::size_t k) {
  if (k >= 8) throw std::out_of_range("pattern index must be < 8");
  std::string s(3, '0');
  for (int b = 0; b < 3; ++b) s[b] = ((k >> (2 - b)) & 1U) ? '1' : '0';
  return s;
}

namespace {

std::array<std::size_t, 8> census_counts(const Dataset& dataset, std::size_t& turns) {
  std::array<std::size_t, 8> counts{};
  turns = 0;
  for (const auto& leg : dataset.legs()) {
    for (std::size_t turn = 0; turn < 2; ++turn) {
      const std::size_t first = 3 * turn;
      if (first + 3 > leg.length()) break;
      const std::size_t k = 4U * leg.y[first] + 2U * leg.y[first + 1] + leg.y[first + 2];
      ++counts[k];
      ++turns;
    }
  }
  return counts;
}

}  // namespace

SequenceCensus sequence_census(const Dataset& dataset) {
  std::size_t turns = 0;
  const auto counts = census_counts(dataset, turns);
  if (turns == 0) throw std::domain_error("sequence_census: dataset has no complete turn");
  SequenceCensus census;
  census.turns = turns;
  for (std::size_t k = 0; k < 8; ++k) {
    census.proportions[k] = static_cast<double>(counts[k]) / static_cast<double>(turns);
  }
  return census;
}

SequenceCensus model_implied_census(const FitResult& fit, const Dataset& template_data,
                                    std::size_t replications, std::uint64_t seed) {
  if (replications == 0) throw std::domain_error("model_implied_census: replications must be >= 1");
  if (fit.players != template_data.players()) {
    throw std::domain_error("model_implied_census: template players differ from the fit");
  }
  SimulationPlan plan;
  plan.structure = template_data;
  plan.params = fit.params;

  std::array<double, 8> sum{}, sum_sq{};
  std::size_t turns = 0;
  for (std::size_t r = 0; r < replications; ++r) {
    plan.seed = derive_seed(seed, r);
    const SequenceCensus c = sequence_census(simulate_dataset(plan));
    turns = c.turns;
    for (std::size_t k = 0; k < 8; ++k) {
      sum[k] += c.proportions[k];
      sum_sq[k] += c.proportions[k] * c.proportions[k];
    }
  }
  SequenceCensus out;
  out.turns = turns;
  out.replications = replications;
  const double R = static_cast<double>(replications);
  for (std::size_t k = 0; k < 8; ++k) {
    out.proportions[k] = sum[k] / R;
    if (replications > 1) {
      const double var = std::max(0.0, (sum_sq[k] - R * out.proportions[k] * out.proportions[k]) / (R - 1.0));
      out.std_errors[k] = std::sqrt(var / R);
    }
  }
  return out;
}

nlohmann::json to_json(const SequenceCensus& census) {
  nlohmann::json patterns = nlohmann::json::array();
  for (std::size_t k = 0; k < 8; ++k) {
    patterns.push_back({{"pattern", pattern_label(k)},
                        {"proportion", census.proportions[k]},
                        {"std_error", census.std_errors[k]}});
  }
  return {{"turns", census.turns}, {"replications", census.replications}, {"patterns", patterns}};
}

nlohmann::json census_report(const SequenceCensus& observed, const SequenceCensus& model,
                             ModelKind kind) {
  double max_dev = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < 8; ++k) {
    const double dev = model.proportions[k] - observed.proportions[k];
    max_dev = std::max(max_dev, std::abs(dev));
    rows.push_back({{"pattern", pattern_label(k)},
                    {"observed", observed.proportions[k]},
                    {"model", model.proportions[k]},
                    {"model_std_error", model.std_errors[k]},
                    {"difference", dev}});
  }
  return {{"format", "hothand-census/1"},
          {"model", to_string(kind)},
          {"observed_turns", observed.turns},
          {"replications", model.replications},
          {"max_abs_difference", max_dev},
          {"patterns", rows}};
}

RecoveryReport recovery_experiment(const ParamVector& truth, const ModelSpec& spec,
                                   const SyntheticStructure& structure, std::size_t replications,
                                   std::uint64_t seed, const FitOptions& options) {
  if (replications == 0) throw std::domain_error("recovery_experiment: replications must be >= 1");
  if (truth.kind != spec.kind) throw std::domain_error("recovery_experiment: kind mismatch");
  const ParameterLayout layout(spec.kind, structure.players);
  RecoveryReport report;
  report.kind = spec.kind;
  report.replications = replications;
  report.truth = layout.natural(truth);
  const auto ids = synthetic_player_ids(structure.players);
  for (std::size_t k = 0; k < layout.size(); ++k) {
    report.names.push_back(k < ids.size() ? "beta0[" + ids[k] + "]" : layout.names()[k]);
  }
  const std::size_t n = layout.size();
  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0), covered(n, 0.0);
  for (std::size_t r = 0; r < replications; ++r) {
    SimulationPlan plan{derive_seed(seed, r), structure, truth};
    const Dataset data = simulate_dataset(plan);
    const FitResult f = fit(data, spec, std::nullopt, options);
    if (!f.converged) report.non_converged.push_back(r);
    report.estimates.push_back(f.estimates);
    for (std::size_t k = 0; k < n; ++k) {
      const double err = f.estimates[k] - report.truth[k];
      sum[k] += f.estimates[k];
      sum_sq[k] += err * err;
      const auto& ci = f.ci[k];
      if (ci.available && ci.lower <= report.truth[k] && report.truth[k] <= ci.upper) {
        covered[k] += 1.0;
      }
    }
  }
  const double R = static_cast<double>(replications);
  for (std::size_t k = 0; k < n; ++k) {
    report.mean.push_back(sum[k] / R);
    report.bias.push_back(sum[k] / R - report.truth[k]);
    report.rmse.push_back(std::sqrt(sum_sq[k] / R));
    report.coverage.push_back(covered[k] / R);
  }
  return report;
}

nlohmann::json to_json(const RecoveryReport& report) {
  nlohmann::json params = nlohmann::json::array();
  for (std::size_t k = 0; k < report.names.size(); ++k) {
    params.push_back({{"name", report.names[k]},
                      {"truth", report.truth[k]},
                      {"mean", report.mean[k]},
                      {"bias", report.bias[k]},
                      {"rmse", report.rmse[k]},
                      {"coverage", report.coverage[k]}});
  }
  return {{"format", "hothand-recovery/1"},
          {"model", to_string(report.kind)},
          {"replications", report.replications},
          {"non_converged", report.non_converged},
          {"parameters", params}};
}

std::string recovery_csv(const RecoveryReport& report) {
  std::string out = "name,truth,mean,bias,rmse,coverage\n";
  char buf[256];
  for (std::size_t k = 0; k < report.names.size(); ++k) {
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%.10g,%.10g,%.4f\n", report.truth[k],
                  report.mean[k], report.bias[k], report.rmse[k], report.coverage[k]);
    out += report.names[k] + buf;
  }
  return out;
}

}  // namespace hothand
