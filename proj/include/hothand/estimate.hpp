#pragma once

// Maximum likelihood fitting on an unconstrained working scale, observed
// information confidence intervals and AIC comparison.
//
// Working scale: intercepts and dummies are untransformed, scale parameters
// (sigma, sigma_w, sigma_a, sigma_delta) are log-transformed and
// autoregressive coefficients (phi, phi_w, phi_a) are atanh-transformed,
// which keeps every fitted latent process stationary.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hothand/likelihood.hpp"
#include "hothand/model.hpp"
#include "hothand/optimize.hpp"

namespace hothand {

enum class Transform { Identity, Log, Atanh };

/// Coordinate map between ParamVector and the working vector theta.
/// Order: beta0 (one per player), then beta1, beta2 (M2+), then
/// phi, sigma (M3) or phi_w, phi_a, sigma_w, sigma_a (M4), then
/// mu_delta, sigma_delta (M3/M4).
class ParameterLayout {
 public:
  ParameterLayout(ModelKind kind, std::size_t players);

  ModelKind kind() const noexcept { return kind_; }
  std::size_t players() const noexcept { return players_; }
  std::size_t size() const noexcept { return names_.size(); }
  /// Structural names; intercepts are "beta0[<k>]".
  const std::vector<std::string>& names() const noexcept { return names_; }
  Transform transform(std::size_t k) const { return transforms_.at(k); }

  /// Natural-scale values in layout order.
  Vector natural(const ParamVector& params) const;
  ParamVector from_natural(const Vector& values) const;
  Vector to_working(const ParamVector& params) const;
  ParamVector from_working(const Vector& theta) const;
  /// d natural_k / d theta_k (the transform is coordinate-wise).
  Vector jacobian(const Vector& theta) const;
  /// Chain rule: natural-scale gradient -> working-scale gradient.
  Vector working_gradient(const ParamGradient& gradient, const Vector& theta) const;

  static double to_natural(Transform t, double working);
  static double to_working(Transform t, double natural);

 private:
  ModelKind kind_;
  std::size_t players_;
  std::vector<std::string> names_;
  std::vector<Transform> transforms_;
};

/// Number of free parameters: P, P+2, P+6, P+8 for M1..M4.
std::size_t parameter_count(ModelKind kind, std::size_t players);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool available = false;
};

struct IntervalResult {
  std::vector<ConfidenceInterval> intervals;  // layout order, natural scale
  std::vector<double> working_std_errors;     // NaN where unavailable
  /// Set when the information matrix is not positive definite: its
  /// smallest eigenvalue. Parameters loading on non-positive directions
  /// have unavailable intervals.
  std::optional<double> offending_eigenvalue;
};

struct FitOptions {
  OptimizerSettings optimizer;
  LikelihoodOptions likelihood;
  bool compute_intervals = true;
};

struct FitResult {
  ModelSpec spec;
  std::vector<std::string> players;
  ParamVector params;
  std::vector<std::string> names;
  Vector estimates;  // natural scale, layout order
  std::vector<ConfidenceInterval> ci;
  std::vector<bool> fixed;  // intercepts clamped for degenerate players
  std::optional<double> offending_eigenvalue;
  double loglik = 0.0;
  double aic = 0.0;
  std::size_t n_params = 0;
  std::size_t n_throws = 0;
  std::uint64_t dataset_fingerprint = 0;
  bool converged = false;
  bool used_fallback = false;
  int iterations = 0;
  int evaluations = 0;
  double gradient_norm = 0.0;
  std::string message;
  std::vector<TraceEntry> trace;
  std::vector<std::string> warnings;

  /// Index of a structural parameter ("phi_w", "beta1", ...) in layout order.
  std::size_t index_of(const std::string& name) const;
};

/// Intercept assigned to players whose outcomes are all 0 (-) or all 1 (+).
inline constexpr double kDegenerateIntercept = 10.0;

/// Legs sorted by (player_id, leg_id, bits). Fits run on this order so the
/// result does not depend on how the input file was arranged.
Dataset canonical_order(const Dataset& dataset);

/// Maximizes the log-likelihood. Without `init`, warm-starts along
/// M1 -> M2 -> M3/M4: empirical logits, then a fitted M2, then
/// phi = 0.3, sigma = 0.5, mu_delta = 0, sigma_delta = 0.7.
/// Non-convergence is reported through FitResult::converged.
FitResult fit(const Dataset& dataset, const ModelSpec& spec,
              const std::optional<ParamVector>& init = std::nullopt,
              const FitOptions& options = {});

/// 95% intervals from the observed information (numerical Hessian of the
/// negative log-likelihood on the working scale, central differences of the
/// exact gradient with step max(1e-4, 1e-4 |theta_k|)), mapped back through
/// the inverse transform. `fixed` marks coordinates excluded from the
/// Hessian (their intervals are unavailable).
IntervalResult observed_information_ci(const Dataset& dataset, const ModelSpec& spec,
                                       const ParamVector& params_hat,
                                       const std::vector<bool>& fixed = {},
                                       const LikelihoodOptions& options = {});

/// Intervals from a working-scale Hessian of the negative log-likelihood.
IntervalResult intervals_from_hessian(const Vector& hessian, const Vector& theta_hat,
                                      const ParameterLayout& layout,
                                      const std::vector<bool>& fixed = {});

struct AicRow {
  ModelKind kind;
  std::size_t n_params = 0;
  double loglik = 0.0;
  double aic = 0.0;
  double delta_aic = 0.0;
  std::string state_process;
  std::string description;
};

/// AIC comparison sorted by model kind; delta is relative to the minimum.
/// Throws std::domain_error if the fits were run on different datasets.
std::vector<AicRow> aic_table(const std::vector<FitResult>& fits);
std::string aic_table_csv(const std::vector<AicRow>& rows);

/// Fit report: estimates, intervals, loglik, AIC, n_params, convergence
/// summary. The intercept map is keyed by player id.
nlohmann::json to_json(const FitResult& fit);
/// Validates the schema; throws ParseError on missing or ill-typed fields.
FitResult fit_from_json(const nlohmann::json& report);

}  // namespace hothand
