#pragma once

// Unconstrained minimizers and finite-difference derivative helpers used by
// the estimation module. Everything here works on plain vectors; the
// statistical meaning of the coordinates lives in estimate.hpp.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace hothand {

using Vector = std::vector<double>;
using Objective = std::function<double(const Vector&)>;
/// Returns f(x) and writes the gradient into `grad` (resized by the callee).
using ObjectiveWithGradient = std::function<double(const Vector& x, Vector& grad)>;

struct OptimizerSettings {
  double gradient_tolerance = 1e-5;  // infinity norm
  double step_tolerance = 1e-9;      // relative, infinity norm
  int max_iterations = 2000;
  /// Run Nelder-Mead when quasi-Newton fails (line-search breakdown,
  /// non-finite values or iteration cap).
  bool simplex_fallback = true;
  int simplex_max_evaluations = 20000;
};

struct TraceEntry {
  int iteration = 0;
  double value = 0.0;
  double gradient_norm = 0.0;  // infinity norm
  double step = 0.0;           // relative step just taken
  std::string method;          // "bfgs" or "nelder-mead"
};

struct MinimizeResult {
  Vector x;
  double value = 0.0;
  Vector gradient;
  double gradient_norm = 0.0;
  bool converged = false;
  bool used_fallback = false;
  int iterations = 0;
  int evaluations = 0;
  std::string message;
  std::vector<TraceEntry> trace;
};

/// BFGS on the inverse Hessian with a strong-Wolfe line search. Declares
/// convergence only when the gradient infinity norm is below tolerance;
/// stalls (relative step below tolerance) and iteration caps are reported
/// as failures, and trigger the simplex fallback when enabled.
MinimizeResult minimize(const ObjectiveWithGradient& f, Vector x0,
                        const OptimizerSettings& settings = {});

/// Derivative-free Nelder-Mead simplex. Returned gradient is empty.
MinimizeResult nelder_mead(const Objective& f, Vector x0, int max_evaluations,
                           double tolerance = 1e-10);

/// Central-difference gradient with step h_k = 1e-5 max(1, |x_k|).
Vector finite_difference_gradient(const Objective& f, const Vector& x);

/// Per-coordinate Hessian step h_k = max(1e-4, 1e-4 |x_k|).
double hessian_step(double x);

/// Symmetric Hessian from central second differences of f (row-major n x n).
Vector numerical_hessian(const Objective& f, const Vector& x);
/// Symmetric Hessian from central differences of an exact gradient.
Vector numerical_hessian(const ObjectiveWithGradient& f, const Vector& x);

}  // namespace hothand
