#include "hothand/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hothand {

namespace {

double inf_norm(const Vector& v) {
  double n = 0.0;
  for (double x : v) n = std::max(n, std::abs(x));
  return n;
}

double dot(const Vector& a, const Vector& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

Vector axpy(const Vector& x, double alpha, const Vector& p) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + alpha * p[i];
  return out;
}

double relative_step(const Vector& from, const Vector& to) {
  double num = 0.0;
  double den = 1.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    num = std::max(num, std::abs(to[i] - from[i]));
    den = std::max(den, std::abs(from[i]));
  }
  return num / den;
}

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;  // directional derivative
  Vector x;
  Vector g;
};

// Minimizer of the cubic interpolating (a, fa, da), (b, fb, db), safeguarded
// to the interior of the bracket.
double cubic_step(const Point& a, const Point& b) {
  const double lo = std::min(a.alpha, b.alpha);
  const double hi = std::max(a.alpha, b.alpha);
  const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.slope * b.slope;
  double t = 0.5 * (lo + hi);
  if (disc >= 0.0 && std::isfinite(disc)) {
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double cand =
        b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
    if (std::isfinite(cand)) t = cand;
  }
  const double margin = 0.1 * (hi - lo);
  return std::clamp(t, lo + margin, hi - margin);
}

class WolfeSearch {
 public:
  WolfeSearch(const ObjectiveWithGradient& f, const Point& origin, const Vector& direction,
              int& evaluations)
      : f_(f), origin_(origin), p_(direction), evaluations_(evaluations) {}

  // Returns true and fills `out` on success.
  bool run(double alpha0, Point& out) {
    Point prev = origin_;
    prev.alpha = 0.0;
    double alpha = alpha0;
    for (int i = 0; i < 40; ++i) {
      Point cur = evaluate(alpha);
      if (!std::isfinite(cur.f)) {
        // Overshot into a region where the objective is undefined.
        alpha = 0.5 * (prev.alpha + alpha);
        continue;
      }
      if (!sufficient_decrease(cur) || (i > 0 && cur.f >= prev.f && !approx_ok(cur))) {
        return zoom(prev, cur, out);
      }
      if (curvature_ok(cur)) {
        out = std::move(cur);
        return true;
      }
      if (cur.slope >= 0.0) return zoom(cur, prev, out);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return false;
  }

 private:
  static constexpr double kC1 = 1e-4;
  static constexpr double kC2 = 0.9;

  Point evaluate(double alpha) {
    Point pt;
    pt.alpha = alpha;
    pt.x = axpy(origin_.x, alpha, p_);
    ++evaluations_;
    try {
      pt.f = f_(pt.x, pt.g);
    } catch (const std::domain_error&) {
      pt.f = std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(pt.f) || pt.g.size() != pt.x.size()) {
      pt.f = std::numeric_limits<double>::infinity();
      pt.slope = 0.0;
      return pt;
    }
    pt.slope = dot(pt.g, p_);
    return pt;
  }

  // Close to the optimum the Armijo decrease falls below the rounding
  // level of f; accept points that are flat in value and satisfy the
  // slope-based (approximate Wolfe) conditions instead.
  bool approx_ok(const Point& pt) const {
    const double eps = 1e-12 * std::max(1.0, std::abs(origin_.f));
    return pt.f <= origin_.f + eps && pt.slope <= (2.0 * kC1 - 1.0) * origin_.slope &&
           pt.slope >= kC2 * origin_.slope;
  }

  bool sufficient_decrease(const Point& pt) const {
    return pt.f <= origin_.f + kC1 * pt.alpha * origin_.slope || approx_ok(pt);
  }

  bool curvature_ok(const Point& pt) const {
    return std::abs(pt.slope) <= -kC2 * origin_.slope;
  }

  bool zoom(Point lo, Point hi, Point& out) {
    for (int i = 0; i < 40; ++i) {
      double alpha;
      if (std::isfinite(hi.f)) {
        alpha = cubic_step(lo, hi);
      } else {
        alpha = 0.5 * (lo.alpha + hi.alpha);
      }
      Point cur = evaluate(alpha);
      if (!std::isfinite(cur.f) || !sufficient_decrease(cur) || cur.f >= lo.f) {
        if (std::isfinite(cur.f) && approx_ok(cur) && curvature_ok(cur)) {
          out = std::move(cur);
          return true;
        }
        hi = std::move(cur);
      } else {
        if (curvature_ok(cur)) {
          out = std::move(cur);
          return true;
        }
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(cur);
      }
      if (std::abs(hi.alpha - lo.alpha) <= 1e-14 * std::max(1.0, lo.alpha)) break;
    }
    // Bracket collapsed: take the best decreasing point if there is one.
    if (lo.alpha > 0.0 && lo.f < origin_.f) {
      out = std::move(lo);
      return true;
    }
    return false;
  }

  const ObjectiveWithGradient& f_;
  const Point& origin_;
  const Vector& p_;
  int& evaluations_;
};

MinimizeResult bfgs(const ObjectiveWithGradient& f, Vector x0, const OptimizerSettings& settings,
                    int iteration_offset) {
  const std::size_t n = x0.size();
  MinimizeResult result;
  Point cur;
  cur.x = std::move(x0);
  cur.f = f(cur.x, cur.g);
  result.evaluations = 1;
  if (!std::isfinite(cur.f)) {
    result.x = cur.x;
    result.value = cur.f;
    result.message = "objective not finite at the starting point";
    return result;
  }

  std::vector<double> H(n * n, 0.0);
  auto reset_identity = [&](double scale) {
    std::fill(H.begin(), H.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) H[i * n + i] = scale;
  };
  reset_identity(1.0);
  bool scaled = false;
  bool just_reset = false;

  auto finish = [&](bool converged, std::string message) {
    result.x = cur.x;
    result.value = cur.f;
    result.gradient = cur.g;
    result.gradient_norm = inf_norm(cur.g);
    result.converged = converged;
    result.message = std::move(message);
    return result;
  };

  for (int iter = 0;; ++iter) {
    const double gnorm = inf_norm(cur.g);
    if (gnorm < settings.gradient_tolerance) {
      result.iterations = iter;
      return finish(true, "gradient tolerance reached");
    }
    if (iter >= settings.max_iterations) {
      result.iterations = iter;
      return finish(false, "iteration limit reached");
    }

    Vector p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += H[i * n + j] * cur.g[j];
      p[i] = -s;
    }
    cur.slope = dot(cur.g, p);
    if (!(cur.slope < 0.0)) {
      reset_identity(1.0);
      scaled = false;
      for (std::size_t i = 0; i < n; ++i) p[i] = -cur.g[i];
      cur.slope = dot(cur.g, p);
    }
    // Without curvature information, cap the first trial step at unit length.
    const double alpha0 = scaled ? 1.0 : std::min(1.0, 1.0 / inf_norm(p));

    Point next;
    WolfeSearch search(f, cur, p, result.evaluations);
    if (!search.run(alpha0, next)) {
      if (!just_reset) {
        reset_identity(1.0);
        scaled = false;
        just_reset = true;
        continue;
      }
      result.iterations = iter;
      return finish(false, "line search failed");
    }
    just_reset = false;

    const double rel = relative_step(cur.x, next.x);
    Vector s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = next.x[i] - cur.x[i];
      y[i] = next.g[i] - cur.g[i];
    }
    cur = std::move(next);
    result.trace.push_back(
        {iteration_offset + iter + 1, cur.f, inf_norm(cur.g), rel, "bfgs"});

    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      if (!scaled) {
        reset_identity(sy / dot(y, y));
        scaled = true;
      }
      // H <- (I - rho s y') H (I - rho y s') + rho s s'
      const double rho = 1.0 / sy;
      Vector Hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i * n + j] * y[j];
      }
      const double yHy = dot(y, Hy);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          H[i * n + j] += -rho * (s[i] * Hy[j] + Hy[i] * s[j]) + (rho * rho * yHy + rho) * s[i] * s[j];
        }
      }
    }

    if (rel < settings.step_tolerance && inf_norm(cur.g) >= settings.gradient_tolerance) {
      result.iterations = iter + 1;
      return finish(false, "step tolerance reached before gradient tolerance");
    }
  }
}

}  // namespace

MinimizeResult minimize(const ObjectiveWithGradient& f, Vector x0,
                        const OptimizerSettings& settings) {
  MinimizeResult first = bfgs(f, std::move(x0), settings, 0);
  if (first.converged || !settings.simplex_fallback) return first;

  // Simplex from the best point so far, then a quasi-Newton polish so the
  // result carries an exact gradient.
  Objective value_only = [&f](const Vector& x) {
    Vector g;
    try {
      const double v = f(x, g);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  MinimizeResult simplex = nelder_mead(value_only, first.x, settings.simplex_max_evaluations);
  OptimizerSettings polish_settings = settings;
  polish_settings.max_iterations = std::max(0, settings.max_iterations - first.iterations);
  const Vector start = simplex.value <= first.value ? simplex.x : first.x;
  MinimizeResult polish = bfgs(f, start, polish_settings, first.iterations + simplex.iterations);

  MinimizeResult out = polish;
  out.used_fallback = true;
  out.iterations = first.iterations + simplex.iterations + polish.iterations;
  out.evaluations = first.evaluations + simplex.evaluations + polish.evaluations;
  out.trace = first.trace;
  for (auto entry : simplex.trace) {
    entry.iteration += first.iterations;
    out.trace.push_back(entry);
  }
  out.trace.insert(out.trace.end(), polish.trace.begin(), polish.trace.end());
  out.message = "bfgs: " + first.message + "; nelder-mead fallback; polish: " + polish.message;
  return out;
}

MinimizeResult nelder_mead(const Objective& f, Vector x0, int max_evaluations, double tolerance) {
  const std::size_t n = x0.size();
  MinimizeResult result;
  std::vector<Vector> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = x0[i] != 0.0 ? 0.05 * std::abs(x0[i]) : 0.00025;
    simplex[i + 1][i] += std::max(h, 0.01);
  }
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);
  result.evaluations = static_cast<int>(n + 1);

  std::vector<std::size_t> order(n + 1);
  int iter = 0;
  while (result.evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    const double spread = values[worst] - values[best];
    if (std::isfinite(spread) && spread <= tolerance * (std::abs(values[best]) + tolerance)) break;
    ++iter;
    if (iter % 50 == 0) {
      result.trace.push_back({iter, values[best], 0.0, 0.0, "nelder-mead"});
    }

    Vector centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      Vector x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      return x;
    };
    Vector xr = along(-1.0);
    const double fr = f(xr);
    ++result.evaluations;
    if (fr < values[best]) {
      Vector xe = along(-2.0);
      const double fe = f(xe);
      ++result.evaluations;
      if (fe < fr) {
        simplex[worst] = std::move(xe);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(xr);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = std::move(xr);
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    Vector xc = along(outside ? -0.5 : 0.5);
    const double fc = f(xc);
    ++result.evaluations;
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = std::move(xc);
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i) {
        simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
      }
      values[k] = f(simplex[k]);
      ++result.evaluations;
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.iterations = iter;
  result.used_fallback = true;
  result.message = result.evaluations >= max_evaluations ? "evaluation limit reached"
                                                         : "simplex collapsed";
  return result;
}

Vector finite_difference_gradient(const Objective& f, const Vector& x) {
  Vector g(x.size());
  Vector xp = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double h = 1e-5 * std::max(1.0, std::abs(x[k]));
    xp[k] = x[k] + h;
    const double fp = f(xp);
    xp[k] = x[k] - h;
    const double fm = f(xp);
    xp[k] = x[k];
    g[k] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double hessian_step(double x) { return std::max(1e-4, 1e-4 * std::abs(x)); }

Vector numerical_hessian(const Objective& f, const Vector& x) {
  const std::size_t n = x.size();
  Vector H(n * n, 0.0);
  Vector h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = hessian_step(x[k]);
  const double f0 = f(x);
  Vector xp = x;
  for (std::size_t k = 0; k < n; ++k) {
    xp[k] = x[k] + h[k];
    const double fp = f(xp);
    xp[k] = x[k] - h[k];
    const double fm = f(xp);
    xp[k] = x[k];
    H[k * n + k] = (fp - 2.0 * f0 + fm) / (h[k] * h[k]);
    for (std::size_t l = 0; l < k; ++l) {
      auto at = [&](double sk, double sl) {
        xp[k] = x[k] + sk * h[k];
        xp[l] = x[l] + sl * h[l];
        const double v = f(xp);
        xp[k] = x[k];
        xp[l] = x[l];
        return v;
      };
      const double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h[k] * h[l]);
      H[k * n + l] = v;
      H[l * n + k] = v;
    }
  }
  return H;
}

Vector numerical_hessian(const ObjectiveWithGradient& f, const Vector& x) {
  const std::size_t n = x.size();
  Vector H(n * n, 0.0);
  Vector xp = x;
  Vector gp, gm;
  for (std::size_t k = 0; k < n; ++k) {
    const double h = hessian_step(x[k]);
    xp[k] = x[k] + h;
    f(xp, gp);
    xp[k] = x[k] - h;
    f(xp, gm);
    xp[k] = x[k];
    for (std::size_t l = 0; l < n; ++l) H[k * n + l] = (gp[l] - gm[l]) / (2.0 * h);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < k; ++l) {
      const double v = 0.5 * (H[k * n + l] + H[l * n + k]);
      H[k * n + l] = v;
      H[l * n + k] = v;
    }
  }
  return H;
}

}  // namespace hothand
