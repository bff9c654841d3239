#pragma once

// Discretization of the continuous latent ability process onto m equal
// intervals of [b0, bm]. Interval midpoints become the states of an
// approximating HMM; transition probabilities are normal interval masses.
//
// Mass falling outside [b0, bm] is absorbed by the nearest edge interval so
// every distribution produced here sums to one exactly (up to rounding).

#include <cstddef>
#include <span>
#include <vector>

namespace hothand {

class Grid {
 public:
  /// Throws std::domain_error unless m >= 2 and b0 < bm.
  Grid(std::size_t m, double b0, double bm);

  std::size_t size() const noexcept { return midpoints_.size(); }
  double lower() const noexcept { return boundaries_.front(); }
  double upper() const noexcept { return boundaries_.back(); }
  double step() const noexcept { return step_; }
  /// b_0 < b_1 < ... < b_m (m + 1 values).
  const std::vector<double>& boundaries() const noexcept { return boundaries_; }
  /// b*_i = (b_{i-1} + b_i) / 2, i = 1..m (stored 0-based).
  const std::vector<double>& midpoints() const noexcept { return midpoints_; }

 private:
  double step_;
  std::vector<double> boundaries_;
  std::vector<double> midpoints_;
};

/// Standard normal CDF via erfc; absolute error near machine precision.
double normal_cdf(double z);
double normal_pdf(double z);

/// Mass of N(mean, sd^2) on each grid interval, tails absorbed at the edges.
/// Computed from whichever tail is smaller, so tiny masses keep their
/// relative accuracy and symmetric inputs give symmetric outputs.
void interval_masses(const Grid& grid, double mean, double sd, std::span<double> out);
std::vector<double> interval_masses(const Grid& grid, double mean, double sd);

/// Partial derivatives of interval_masses with respect to mean and sd.
void interval_mass_derivatives(const Grid& grid, double mean, double sd,
                               std::span<double> d_mean, std::span<double> d_sd);

/// Row-stochastic m x m matrix, row-major.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(std::size_t m) : m_(m), entries_(m * m, 0.0) {}

  std::size_t size() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * m_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * m_ + j]; }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * m_, m_}; }
  std::span<double> row(std::size_t i) { return {entries_.data() + i * m_, m_}; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<double> entries_;
};

/// delta_i = Pr(s_1 in B_i) for s_1 ~ N(mu_delta, sigma_delta^2).
/// Throws std::domain_error if sigma_delta <= 0.
std::vector<double> initial_vector(const Grid& grid, double mu_delta, double sigma_delta);

/// gamma_ij = Pr(s_t in B_j | s_{t-1} = b*_i) under s_t = phi s_{t-1} + sigma eps_t.
/// Throws std::domain_error if sigma <= 0.
TransitionMatrix transition_matrix(const Grid& grid, double phi, double sigma);

/// Within-turn and across-turn kernels of the periodic AR(1) process.
struct TransitionPair {
  TransitionMatrix within;
  TransitionMatrix across;
};

TransitionPair par_transition_pair(const Grid& grid, double phi_w, double phi_a, double sigma_w,
                                   double sigma_a);

/// True when the transition into throw t (1-based, t >= 2) crosses a turn
/// boundary, i.e. (t - 1) mod 3 == 0.
constexpr bool is_across_turn(std::size_t t) { return t >= 2 && (t - 1) % 3 == 0; }

}  // namespace hothand
