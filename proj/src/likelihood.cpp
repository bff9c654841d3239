#include "hothand/likelihood.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace hothand {

namespace {

// Legs are split into at most this many contiguous chunks; partial sums are
// combined in chunk order regardless of how many threads ran them.
constexpr std::size_t kMaxChunks = 16;

void fill_weights(const ParamVector& params, std::size_t player, int turn, int y,
                  const Grid& grid, std::span<double> out) {
  const auto& mid = grid.midpoints();
  for (std::size_t i = 0; i < mid.size(); ++i) {
    const double eta = linear_predictor(params, player, turn, mid[i]);
    out[i] = y == 1 ? success_probability(eta) : failure_probability(eta);
  }
}

struct ChunkRange {
  std::size_t begin;
  std::size_t end;
};

std::vector<ChunkRange> make_chunks(std::size_t n) {
  const std::size_t count = std::min(kMaxChunks, std::max<std::size_t>(n, 1));
  std::vector<ChunkRange> chunks;
  chunks.reserve(count);
  for (std::size_t c = 0; c < count; ++c) chunks.push_back({n * c / count, n * (c + 1) / count});
  return chunks;
}

// Runs body(chunk_index) for every chunk on up to `threads` workers.
void run_chunks(std::size_t chunk_count, unsigned threads,
                const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), chunk_count));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = next++; c < chunk_count; c = next++) body(c);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Supplies observation weight vectors either from the model cache or by
// recomputing them into scratch storage.
class WeightSource {
 public:
  WeightSource(const DiscretizedModel& model, bool cached)
      : model_(model), cached_(cached), scratch_(cached ? 0 : model.grid().size()) {}

  std::span<const double> get(std::size_t player, int turn, int y) {
    if (cached_) return model_.weights(player, turn, y);
    fill_weights(model_.params(), player, turn, y, model_.grid(), scratch_);
    return scratch_;
  }

 private:
  const DiscretizedModel& model_;
  bool cached_;
  std::vector<double> scratch_;
};

// next = prev * gamma (row vector times matrix).
void left_multiply(std::span<const double> prev, const TransitionMatrix& gamma,
                   std::span<double> next) {
  const std::size_t m = gamma.size();
  std::fill(next.begin(), next.end(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = prev[i];
    if (a == 0.0) continue;
    const double* row = gamma.row(i).data();
    double* out = next.data();
    for (std::size_t j = 0; j < m; ++j) out[j] += a * row[j];
  }
}

// Scaled forward pass. Writes normalized forward vectors (T x m) and log
// normalizers if the buffers are non-empty. Returns the log-likelihood.
template <typename Weights>
double forward_leg(const Leg& leg, std::span<const double> delta,
                   const TransitionMatrix& within, const TransitionMatrix& across,
                   bool periodic, Weights&& weights, std::vector<double>& alpha,
                   std::vector<double>& log_c) {
  const std::size_t m = delta.size();
  const std::size_t T = leg.length();
  alpha.resize(T * m);
  log_c.resize(T);
  double loglik = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    std::span<double> cur(alpha.data() + (t - 1) * m, m);
    const auto w = weights(turn_position(t), leg.y[t - 1]);
    if (t == 1) {
      for (std::size_t i = 0; i < m; ++i) cur[i] = delta[i] * w[i];
    } else {
      const auto& gamma = periodic && is_across_turn(t) ? across : within;
      left_multiply({alpha.data() + (t - 2) * m, m}, gamma, cur);
      for (std::size_t i = 0; i < m; ++i) cur[i] *= w[i];
    }
    double c = 0.0;
    for (double v : cur) c += v;
    const double inv = 1.0 / c;
    for (double& v : cur) v *= inv;
    log_c[t - 1] = std::log(c);
    loglik += log_c[t - 1];
  }
  return loglik;
}

void check_dimensions(std::span<const double> delta, const TransitionPair& transitions,
                      std::size_t m) {
  if (delta.size() != m || transitions.within.size() != m || transitions.across.size() != m) {
    throw std::domain_error("forward: delta / transition dimensions do not match the grid");
  }
}

struct GlmCounts {
  // [player][turn-1] trials and successes
  std::vector<std::array<double, 3>> trials;
  std::vector<std::array<double, 3>> successes;
};

GlmCounts count_outcomes(const Dataset& dataset) {
  GlmCounts counts{std::vector<std::array<double, 3>>(dataset.player_count(), {0, 0, 0}),
                   std::vector<std::array<double, 3>>(dataset.player_count(), {0, 0, 0})};
  for (std::size_t l = 0; l < dataset.leg_count(); ++l) {
    const auto& leg = dataset.legs()[l];
    const std::size_t p = dataset.player_of_leg(l);
    for (std::size_t t = 1; t <= leg.length(); ++t) {
      const int d = turn_position(t) - 1;
      counts.trials[p][d] += 1.0;
      counts.successes[p][d] += leg.y[t - 1];
    }
  }
  return counts;
}

LoglikWithGradient glm_with_gradient(const Dataset& dataset, const ParamVector& params) {
  params.validate(dataset.player_count());
  const auto counts = count_outcomes(dataset);
  LoglikWithGradient out;
  out.gradient.beta0.assign(dataset.player_count(), 0.0);
  for (std::size_t p = 0; p < dataset.player_count(); ++p) {
    for (int d = 1; d <= 3; ++d) {
      const double n = counts.trials[p][d - 1];
      if (n == 0.0) continue;
      const double k = counts.successes[p][d - 1];
      const double eta = linear_predictor(params, p, d, 0.0);
      out.value += k * log_success_probability(eta) + (n - k) * log_success_probability(-eta);
      const double score = k - n * success_probability(eta);
      out.gradient.beta0[p] += score;
      if (has_turn_dummies(params.kind)) {
        if (d == 2) out.gradient.beta1 += score;
        if (d == 3) out.gradient.beta2 += score;
      }
    }
  }
  return out;
}

void require_spec_matches(const ParamVector& params, const ModelSpec& spec) {
  if (params.kind != spec.kind) {
    throw std::domain_error("parameter vector kind " + to_string(params.kind) +
                            " does not match model spec " + to_string(spec.kind));
  }
}

// d loglik / d(phi, sigma) of one kernel given expected transition counts
// counts_ij = sum_t alpha_{t-1}(i) P_j(y_t) beta_t(j) / c_t.
std::pair<double, double> kernel_gradient(const Grid& grid, double phi, double sigma,
                                          const std::vector<double>& counts) {
  const std::size_t m = grid.size();
  std::vector<double> d_mean(m), d_sd(m);
  double g_phi = 0.0;
  double g_sigma = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = grid.midpoints()[i];
    interval_mass_derivatives(grid, phi * x, sigma, d_mean, d_sd);
    const double* row = counts.data() + i * m;
    double dm = 0.0;
    double ds = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      dm += row[j] * d_mean[j];
      ds += row[j] * d_sd[j];
    }
    g_phi += x * dm;
    g_sigma += ds;
  }
  return {g_phi, g_sigma};
}

struct ChunkAccumulator {
  std::vector<double> eta_score;  // [player][turn-1]
  std::vector<double> delta_score;
  std::vector<double> within_counts;
  std::vector<double> across_counts;
};

}  // namespace

std::vector<double> observation_weights(const Leg& leg, std::size_t t, const ParamVector& params,
                                        const Grid& grid, std::size_t player_index) {
  if (t < 1 || t > leg.length()) throw std::domain_error("observation_weights: t out of range");
  std::vector<double> out(grid.size());
  fill_weights(params, player_index, turn_position(t), leg.y[t - 1], grid, out);
  return out;
}

DiscretizedModel::DiscretizedModel(const ParamVector& params, const ModelSpec& spec)
    : params_(params),
      grid_((spec.validate(), spec.m), spec.b0, spec.bm),
      periodic_(spec.kind == ModelKind::M4) {
  require_spec_matches(params, spec);
  if (!has_latent_state(spec.kind)) {
    throw std::domain_error("DiscretizedModel requires a latent-state model (m3/m4)");
  }
  params.validate(params.beta0.size());
  delta_ = initial_vector(grid_, params.mu_delta, params.sigma_delta);
  if (periodic_) {
    transitions_ = par_transition_pair(grid_, params.phi_w, params.phi_a, params.sigma_w,
                                       params.sigma_a);
  } else {
    auto gamma = transition_matrix(grid_, params.phi, params.sigma);
    transitions_ = {gamma, gamma};
  }
  const std::size_t m = grid_.size();
  const std::size_t players = params.beta0.size();
  weight_cache_.resize(players * 6 * m);
  for (std::size_t p = 0; p < players; ++p) {
    for (int d = 1; d <= 3; ++d) {
      for (int y = 0; y <= 1; ++y) {
        fill_weights(params_, p, d, y, grid_,
                     {weight_cache_.data() + ((p * 3 + (d - 1)) * 2 + y) * m, m});
      }
    }
  }
}

std::span<const double> DiscretizedModel::weights(std::size_t player, int turn, int y) const {
  const std::size_t m = grid_.size();
  return {weight_cache_.data() + ((player * 3 + (turn - 1)) * 2 + y) * m, m};
}

double loglik_glm(const Dataset& dataset, const ParamVector& params) {
  if (has_latent_state(params.kind)) throw std::domain_error("loglik_glm requires m1 or m2");
  return glm_with_gradient(dataset, params).value;
}

double loglik_leg_forward(const Leg& leg, const ParamVector& params, const ModelSpec& spec,
                          std::size_t player_index, std::span<const double> delta,
                          const TransitionPair& transitions) {
  require_spec_matches(params, spec);
  if (!has_latent_state(spec.kind)) throw std::domain_error("forward requires m3 or m4");
  if (leg.length() == 0) throw std::domain_error("forward: empty leg");
  const Grid grid(spec.m, spec.b0, spec.bm);
  check_dimensions(delta, transitions, grid.size());
  std::vector<double> scratch(grid.size());
  auto weights = [&](int turn, int y) -> std::span<const double> {
    fill_weights(params, player_index, turn, y, grid, scratch);
    return scratch;
  };
  std::vector<double> alpha, log_c;
  return forward_leg(leg, delta, transitions.within, transitions.across,
                     spec.kind == ModelKind::M4, weights, alpha, log_c);
}

std::vector<double> loglik_per_leg(const Dataset& dataset, const ParamVector& params,
                                   const ModelSpec& spec, const LikelihoodOptions& options) {
  require_spec_matches(params, spec);
  params.validate(dataset.player_count());
  std::vector<double> per_leg(dataset.leg_count(), 0.0);
  if (!has_latent_state(spec.kind)) {
    for (std::size_t l = 0; l < dataset.leg_count(); ++l) {
      const auto& leg = dataset.legs()[l];
      const std::size_t p = dataset.player_of_leg(l);
      double sum = 0.0;
      for (std::size_t t = 1; t <= leg.length(); ++t) {
        const double eta = linear_predictor(params, p, turn_position(t), 0.0);
        sum += leg.y[t - 1] ? log_success_probability(eta) : log_success_probability(-eta);
      }
      per_leg[l] = sum;
    }
    return per_leg;
  }
  const DiscretizedModel model(params, spec);
  const auto chunks = make_chunks(dataset.leg_count());
  run_chunks(chunks.size(), options.threads, [&](std::size_t c) {
    WeightSource source(model, options.cache_observation_weights);
    std::vector<double> alpha, log_c;
    for (std::size_t l = chunks[c].begin; l < chunks[c].end; ++l) {
      const std::size_t p = dataset.player_of_leg(l);
      auto weights = [&](int turn, int y) { return source.get(p, turn, y); };
      per_leg[l] = forward_leg(dataset.legs()[l], model.delta(), model.transitions().within,
                               model.transitions().across, model.periodic(), weights, alpha,
                               log_c);
    }
  });
  return per_leg;
}

double loglik_total(const Dataset& dataset, const ParamVector& params, const ModelSpec& spec,
                    const LikelihoodOptions& options) {
  if (!has_latent_state(spec.kind)) {
    require_spec_matches(params, spec);
    return loglik_glm(dataset, params);
  }
  const auto per_leg = loglik_per_leg(dataset, params, spec, options);
  return std::accumulate(per_leg.begin(), per_leg.end(), 0.0);
}

LoglikWithGradient loglik_and_gradient(const Dataset& dataset, const ParamVector& params,
                                       const ModelSpec& spec, const LikelihoodOptions& options) {
  require_spec_matches(params, spec);
  if (!has_latent_state(spec.kind)) return glm_with_gradient(dataset, params);

  params.validate(dataset.player_count());
  const DiscretizedModel model(params, spec);
  const std::size_t m = model.grid().size();
  const std::size_t players = dataset.player_count();
  const bool periodic = model.periodic();
  const auto chunks = make_chunks(dataset.leg_count());
  std::vector<ChunkAccumulator> acc(chunks.size());
  std::vector<double> per_leg(dataset.leg_count(), 0.0);

  run_chunks(chunks.size(), options.threads, [&](std::size_t c) {
    auto& a = acc[c];
    a.eta_score.assign(players * 3, 0.0);
    a.delta_score.assign(m, 0.0);
    a.within_counts.assign(m * m, 0.0);
    if (periodic) a.across_counts.assign(m * m, 0.0);
    WeightSource source(model, options.cache_observation_weights);
    WeightSource score_source(model, options.cache_observation_weights);
    std::vector<double> alpha, log_c, beta(m), beta_next(m), v(m);

    for (std::size_t l = chunks[c].begin; l < chunks[c].end; ++l) {
      const auto& leg = dataset.legs()[l];
      const std::size_t p = dataset.player_of_leg(l);
      auto weights = [&](int turn, int y) { return source.get(p, turn, y); };
      per_leg[l] = forward_leg(leg, model.delta(), model.transitions().within,
                               model.transitions().across, periodic, weights, alpha, log_c);

      // Posterior-weighted observation score at t: sum_i post_i (y_t - pi_i),
      // where y - pi equals w(y=0) for y = 1 and -w(y=1) for y = 0.
      auto add_eta_score = [&](std::size_t t) {
        const int d = turn_position(t);
        const int y = leg.y[t - 1];
        const auto other = score_source.get(p, d, 1 - y);
        const double* al = alpha.data() + (t - 1) * m;
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += al[i] * beta[i] * other[i];
        a.eta_score[p * 3 + (d - 1)] += y == 1 ? s : -s;
      };

      std::fill(beta.begin(), beta.end(), 1.0);
      for (std::size_t t = leg.length(); t >= 2; --t) {
        add_eta_score(t);
        const auto w = source.get(p, turn_position(t), leg.y[t - 1]);
        const double inv_c = std::exp(-log_c[t - 1]);
        for (std::size_t j = 0; j < m; ++j) v[j] = w[j] * beta[j] * inv_c;
        const bool across = periodic && is_across_turn(t);
        auto& counts = across ? a.across_counts : a.within_counts;
        const auto& gamma = across ? model.transitions().across : model.transitions().within;
        const double* prev = alpha.data() + (t - 2) * m;
        for (std::size_t i = 0; i < m; ++i) {
          const double ai = prev[i];
          const double* row = gamma.row(i).data();
          double dot = 0.0;
          for (std::size_t j = 0; j < m; ++j) dot += row[j] * v[j];
          beta_next[i] = dot;
          if (ai == 0.0) continue;
          double* out = counts.data() + i * m;
          for (std::size_t j = 0; j < m; ++j) out[j] += ai * v[j];
        }
        std::swap(beta, beta_next);
      }
      add_eta_score(1);
      const auto w1 = source.get(p, 1, leg.y[0]);
      const double inv_c1 = std::exp(-log_c[0]);
      for (std::size_t i = 0; i < m; ++i) a.delta_score[i] += w1[i] * beta[i] * inv_c1;
    }
  });

  // Chunk-ordered reduction.
  ChunkAccumulator total{std::vector<double>(players * 3, 0.0), std::vector<double>(m, 0.0),
                         std::vector<double>(m * m, 0.0),
                         std::vector<double>(periodic ? m * m : 0, 0.0)};
  for (const auto& a : acc) {
    for (std::size_t k = 0; k < total.eta_score.size(); ++k) total.eta_score[k] += a.eta_score[k];
    for (std::size_t k = 0; k < m; ++k) total.delta_score[k] += a.delta_score[k];
    for (std::size_t k = 0; k < m * m; ++k) total.within_counts[k] += a.within_counts[k];
    for (std::size_t k = 0; k < total.across_counts.size(); ++k) {
      total.across_counts[k] += a.across_counts[k];
    }
  }

  LoglikWithGradient out;
  out.value = std::accumulate(per_leg.begin(), per_leg.end(), 0.0);
  auto& g = out.gradient;
  g.beta0.assign(players, 0.0);
  for (std::size_t p = 0; p < players; ++p) {
    g.beta0[p] = total.eta_score[p * 3] + total.eta_score[p * 3 + 1] + total.eta_score[p * 3 + 2];
    g.beta1 += total.eta_score[p * 3 + 1];
    g.beta2 += total.eta_score[p * 3 + 2];
  }
  const Grid& grid = model.grid();
  {
    std::vector<double> d_mean(m), d_sd(m);
    interval_mass_derivatives(grid, params.mu_delta, params.sigma_delta, d_mean, d_sd);
    for (std::size_t i = 0; i < m; ++i) {
      g.mu_delta += total.delta_score[i] * d_mean[i];
      g.sigma_delta += total.delta_score[i] * d_sd[i];
    }
  }
  if (periodic) {
    std::tie(g.phi_w, g.sigma_w) =
        kernel_gradient(grid, params.phi_w, params.sigma_w, total.within_counts);
    std::tie(g.phi_a, g.sigma_a) =
        kernel_gradient(grid, params.phi_a, params.sigma_a, total.across_counts);
  } else {
    std::tie(g.phi, g.sigma) = kernel_gradient(grid, params.phi, params.sigma, total.within_counts);
  }
  return out;
}

}  // namespace hothand
