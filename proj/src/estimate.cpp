#include "hothand/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "hothand/errors.hpp"

namespace hothand {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::vector<std::string> structural_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::M1: return {};
    case ModelKind::M2: return {"beta1", "beta2"};
    case ModelKind::M3:
      return {"beta1", "beta2", "phi", "sigma", "mu_delta", "sigma_delta"};
    case ModelKind::M4:
      return {"beta1", "beta2", "phi_w", "phi_a", "sigma_w", "sigma_a", "mu_delta", "sigma_delta"};
  }
  return {};
}

Transform transform_for(const std::string& name) {
  if (name.rfind("sigma", 0) == 0) return Transform::Log;
  if (name.rfind("phi", 0) == 0) return Transform::Atanh;
  return Transform::Identity;
}

double* field(ParamVector& p, const std::string& name) {
  if (name == "beta1") return &p.beta1;
  if (name == "beta2") return &p.beta2;
  if (name == "phi") return &p.phi;
  if (name == "sigma") return &p.sigma;
  if (name == "phi_w") return &p.phi_w;
  if (name == "phi_a") return &p.phi_a;
  if (name == "sigma_w") return &p.sigma_w;
  if (name == "sigma_a") return &p.sigma_a;
  if (name == "mu_delta") return &p.mu_delta;
  if (name == "sigma_delta") return &p.sigma_delta;
  throw std::logic_error("unknown parameter " + name);
}

double gradient_field(const ParamGradient& g, const std::string& name) {
  if (name == "beta1") return g.beta1;
  if (name == "beta2") return g.beta2;
  if (name == "phi") return g.phi;
  if (name == "sigma") return g.sigma;
  if (name == "phi_w") return g.phi_w;
  if (name == "phi_a") return g.phi_a;
  if (name == "sigma_w") return g.sigma_w;
  if (name == "sigma_a") return g.sigma_a;
  if (name == "mu_delta") return g.mu_delta;
  if (name == "sigma_delta") return g.sigma_delta;
  throw std::logic_error("unknown parameter " + name);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace

ParameterLayout::ParameterLayout(ModelKind kind, std::size_t players)
    : kind_(kind), players_(players) {
  for (std::size_t p = 0; p < players; ++p) {
    names_.push_back("beta0[" + std::to_string(p) + "]");
    transforms_.push_back(Transform::Identity);
  }
  for (const auto& name : structural_names(kind)) {
    names_.push_back(name);
    transforms_.push_back(transform_for(name));
  }
}

double ParameterLayout::to_natural(Transform t, double working) {
  switch (t) {
    case Transform::Identity: return working;
    case Transform::Log: return std::exp(working);
    case Transform::Atanh: return std::tanh(working);
  }
  return working;
}

double ParameterLayout::to_working(Transform t, double natural) {
  switch (t) {
    case Transform::Identity: return natural;
    case Transform::Log:
      if (!(natural > 0.0)) throw std::domain_error("scale parameter must be > 0");
      return std::log(natural);
    case Transform::Atanh:
      if (!(std::abs(natural) < 1.0)) throw std::domain_error("|phi| must be < 1");
      return std::atanh(natural);
  }
  return natural;
}

Vector ParameterLayout::natural(const ParamVector& params) const {
  if (params.beta0.size() != players_) {
    throw std::domain_error("intercept count does not match the layout");
  }
  Vector out(params.beta0.begin(), params.beta0.end());
  ParamVector copy = params;
  for (std::size_t k = players_; k < names_.size(); ++k) out.push_back(*field(copy, names_[k]));
  return out;
}

ParamVector ParameterLayout::from_natural(const Vector& values) const {
  if (values.size() != size()) throw std::domain_error("parameter vector has the wrong length");
  ParamVector p;
  p.kind = kind_;
  p.beta0.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(players_));
  for (std::size_t k = players_; k < names_.size(); ++k) *field(p, names_[k]) = values[k];
  return p;
}

Vector ParameterLayout::to_working(const ParamVector& params) const {
  Vector v = natural(params);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = to_working(transforms_[k], v[k]);
  return v;
}

ParamVector ParameterLayout::from_working(const Vector& theta) const {
  if (theta.size() != size()) throw std::domain_error("working vector has the wrong length");
  Vector v(theta.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = to_natural(transforms_[k], theta[k]);
  return from_natural(v);
}

Vector ParameterLayout::jacobian(const Vector& theta) const {
  Vector j(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    switch (transforms_[k]) {
      case Transform::Identity: j[k] = 1.0; break;
      case Transform::Log: j[k] = std::exp(theta[k]); break;
      case Transform::Atanh: {
        const double t = std::tanh(theta[k]);
        j[k] = 1.0 - t * t;
        break;
      }
    }
  }
  return j;
}

Vector ParameterLayout::working_gradient(const ParamGradient& gradient, const Vector& theta) const {
  const Vector jac = jacobian(theta);
  Vector g(size());
  for (std::size_t p = 0; p < players_; ++p) g[p] = gradient.beta0.at(p);
  for (std::size_t k = players_; k < size(); ++k) g[k] = gradient_field(gradient, names_[k]);
  for (std::size_t k = 0; k < size(); ++k) g[k] *= jac[k];
  return g;
}

std::size_t parameter_count(ModelKind kind, std::size_t players) {
  return ParameterLayout(kind, players).size();
}

std::size_t FitResult::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::out_of_range("no parameter named " + name);
  return static_cast<std::size_t>(it - names.begin());
}

Dataset canonical_order(const Dataset& dataset) {
  std::vector<Leg> legs = dataset.legs();
  std::stable_sort(legs.begin(), legs.end(), [](const Leg& a, const Leg& b) {
    if (a.player_id != b.player_id) return a.player_id < b.player_id;
    if (a.leg_id != b.leg_id) return a.leg_id < b.leg_id;
    return a.y < b.y;
  });
  return Dataset(std::move(legs));
}

IntervalResult intervals_from_hessian(const Vector& hessian, const Vector& theta_hat,
                                      const ParameterLayout& layout,
                                      const std::vector<bool>& fixed) {
  const std::size_t n = theta_hat.size();
  if (hessian.size() != n * n || layout.size() != n) {
    throw std::domain_error("intervals_from_hessian: dimension mismatch");
  }
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < n; ++k) {
    if (fixed.empty() || !fixed[k]) free.push_back(k);
  }
  const auto nf = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd H(nf, nf);
  for (Eigen::Index a = 0; a < nf; ++a) {
    for (Eigen::Index b = 0; b < nf; ++b) H(a, b) = hessian[free[a] * n + free[b]];
  }

  IntervalResult out;
  out.intervals.assign(n, ConfidenceInterval{});
  out.working_std_errors.assign(n, std::numeric_limits<double>::quiet_NaN());
  if (nf == 0) return out;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Eigen::MatrixXd& V = eig.eigenvectors();
  std::vector<bool> affected(free.size(), false);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(nf, nf);
  for (Eigen::Index e = 0; e < nf; ++e) {
    if (lambda(e) > 0.0) {
      cov += V.col(e) * V.col(e).transpose() / lambda(e);
      continue;
    }
    if (!out.offending_eigenvalue || lambda(e) < *out.offending_eigenvalue) {
      out.offending_eigenvalue = lambda(e);
    }
    for (Eigen::Index a = 0; a < nf; ++a) {
      if (V(a, e) * V(a, e) > 1e-6) affected[static_cast<std::size_t>(a)] = true;
    }
  }
  for (Eigen::Index a = 0; a < nf; ++a) {
    const std::size_t k = free[static_cast<std::size_t>(a)];
    if (affected[static_cast<std::size_t>(a)] || !(cov(a, a) > 0.0)) continue;
    const double se = std::sqrt(cov(a, a));
    const auto t = layout.transform(k);
    out.working_std_errors[k] = se;
    out.intervals[k] = {ParameterLayout::to_natural(t, theta_hat[k] - kZ95 * se),
                        ParameterLayout::to_natural(t, theta_hat[k] + kZ95 * se), true};
  }
  return out;
}

IntervalResult observed_information_ci(const Dataset& dataset, const ModelSpec& spec,
                                       const ParamVector& params_hat,
                                       const std::vector<bool>& fixed,
                                       const LikelihoodOptions& options) {
  const ParameterLayout layout(spec.kind, dataset.player_count());
  const Vector theta = layout.to_working(params_hat);
  ObjectiveWithGradient negloglik = [&](const Vector& x, Vector& grad) {
    const auto lg = loglik_and_gradient(dataset, layout.from_working(x), spec, options);
    grad = layout.working_gradient(lg.gradient, x);
    for (double& g : grad) g = -g;
    return -lg.value;
  };
  const Vector H = numerical_hessian(negloglik, theta);
  return intervals_from_hessian(H, theta, layout, fixed);
}

namespace {

ParamVector empirical_logit_start(const Dataset& data, std::vector<bool>& degenerate) {
  const std::size_t P = data.player_count();
  std::vector<double> hits(P, 0.0), trials(P, 0.0);
  for (std::size_t l = 0; l < data.leg_count(); ++l) {
    const std::size_t p = data.player_of_leg(l);
    for (auto y : data.legs()[l].y) hits[p] += y;
    trials[p] += static_cast<double>(data.legs()[l].length());
  }
  ParamVector start;
  start.kind = ModelKind::M1;
  start.beta0.resize(P);
  degenerate.assign(P, false);
  for (std::size_t p = 0; p < P; ++p) {
    if (hits[p] == 0.0) {
      start.beta0[p] = -kDegenerateIntercept;
      degenerate[p] = true;
    } else if (hits[p] == trials[p]) {
      start.beta0[p] = kDegenerateIntercept;
      degenerate[p] = true;
    } else {
      start.beta0[p] = logit(hits[p] / trials[p]);
    }
  }
  return start;
}

ParamVector promote(const ParamVector& from, ModelKind kind) {
  ParamVector p = from;
  p.kind = kind;
  if (kind == ModelKind::M3) {
    p.phi = 0.3;
    p.sigma = 0.5;
  }
  if (kind == ModelKind::M4) {
    p.phi_w = 0.3;
    p.phi_a = 0.3;
    p.sigma_w = 0.5;
    p.sigma_a = 0.5;
  }
  if (has_latent_state(kind)) {
    p.mu_delta = 0.0;
    p.sigma_delta = 0.7;
  }
  return p;
}

}  // namespace

FitResult fit(const Dataset& dataset, const ModelSpec& spec, const std::optional<ParamVector>& init,
              const FitOptions& options) {
  spec.validate();
  if (dataset.empty()) throw std::domain_error("fit: dataset is empty");
  const Dataset data = canonical_order(dataset);
  const std::size_t P = data.player_count();

  std::vector<bool> degenerate;
  const ParamVector m1_start = empirical_logit_start(data, degenerate);
  ParamVector start;
  std::vector<std::string> ladder_notes;
  if (init) {
    start = *init;
    if (start.kind != spec.kind) throw std::domain_error("fit: init kind does not match spec");
  } else if (spec.kind == ModelKind::M1) {
    start = m1_start;
  } else {
    ParamVector m2_start = promote(m1_start, ModelKind::M2);
    if (spec.kind == ModelKind::M2) {
      start = m2_start;
    } else {
      FitOptions ladder = options;
      ladder.compute_intervals = false;
      ModelSpec m2_spec = spec;
      m2_spec.kind = ModelKind::M2;
      const FitResult m2 = fit(data, m2_spec, m2_start, ladder);
      if (!m2.converged) ladder_notes.push_back("warm-start M2 fit did not converge");
      start = promote(m2.params, spec.kind);
    }
  }
  for (std::size_t p = 0; p < P; ++p) {
    if (degenerate[p]) start.beta0[p] = m1_start.beta0[p];
  }
  start.validate(P);

  const ParameterLayout layout(spec.kind, P);
  const Vector theta0 = layout.to_working(start);
  std::vector<bool> fixed(layout.size(), false);
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    if (k < P && degenerate[k]) {
      fixed[k] = true;
    } else {
      free.push_back(k);
    }
  }

  auto expand = [&](const Vector& x) {
    Vector theta = theta0;
    for (std::size_t a = 0; a < free.size(); ++a) theta[free[a]] = x[a];
    return theta;
  };
  ObjectiveWithGradient objective = [&](const Vector& x, Vector& grad) {
    const Vector theta = expand(x);
    const auto lg = loglik_and_gradient(data, layout.from_working(theta), spec, options.likelihood);
    const Vector g = layout.working_gradient(lg.gradient, theta);
    grad.resize(free.size());
    for (std::size_t a = 0; a < free.size(); ++a) grad[a] = -g[free[a]];
    return -lg.value;
  };

  Vector x0(free.size());
  for (std::size_t a = 0; a < free.size(); ++a) x0[a] = theta0[free[a]];
  const MinimizeResult opt = minimize(objective, x0, options.optimizer);

  FitResult result;
  result.spec = spec;
  result.players = data.players();
  const Vector theta_hat = expand(opt.x);
  result.params = layout.from_working(theta_hat);
  result.estimates = layout.natural(result.params);
  for (std::size_t k = 0; k < layout.size(); ++k) {
    result.names.push_back(k < P ? "beta0[" + data.players()[k] + "]" : layout.names()[k]);
  }
  result.fixed = fixed;
  result.loglik = -opt.value;
  result.n_params = layout.size();
  result.aic = 2.0 * static_cast<double>(result.n_params) - 2.0 * result.loglik;
  result.n_throws = data.throw_count();
  result.dataset_fingerprint = data.fingerprint();
  result.converged = opt.converged;
  result.used_fallback = opt.used_fallback;
  result.iterations = opt.iterations;
  result.evaluations = opt.evaluations;
  result.gradient_norm = opt.gradient_norm;
  result.message = opt.message;
  result.trace = opt.trace;
  result.warnings = ladder_notes;
  for (std::size_t p = 0; p < P; ++p) {
    if (degenerate[p]) {
      result.warnings.push_back("player " + data.players()[p] +
                                " has all-identical outcomes; intercept clamped to " +
                                (result.params.beta0[p] > 0 ? "+10" : "-10"));
    }
  }
  if (!opt.converged) result.warnings.push_back("optimizer did not converge: " + opt.message);

  result.ci.assign(layout.size(), ConfidenceInterval{});
  if (options.compute_intervals) {
    const IntervalResult ci =
        observed_information_ci(data, spec, result.params, fixed, options.likelihood);
    result.ci = ci.intervals;
    result.offending_eigenvalue = ci.offending_eigenvalue;
    if (ci.offending_eigenvalue) {
      std::ostringstream msg;
      msg << "observed information not positive definite (eigenvalue "
          << *ci.offending_eigenvalue << "); affected intervals unavailable";
      result.warnings.push_back(msg.str());
    }
  }
  return result;
}

namespace {

const char* state_process_label(ModelKind kind) {
  switch (kind) {
    case ModelKind::M3: return "AR(1)";
    case ModelKind::M4: return "PAR(1)";
    default: return "-";
  }
}

const char* model_description(ModelKind kind) {
  switch (kind) {
    case ModelKind::M1: return "per-player intercepts";
    case ModelKind::M2: return "m1 + turn-position dummies";
    case ModelKind::M3: return "m2 + AR(1) latent ability";
    case ModelKind::M4: return "m2 + PAR(1) latent ability (within/across turn)";
  }
  return "";
}

std::string format_double(double v, const char* fmt = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::vector<AicRow> aic_table(const std::vector<FitResult>& fits) {
  if (fits.empty()) return {};
  for (const auto& f : fits) {
    if (f.dataset_fingerprint != fits.front().dataset_fingerprint) {
      throw std::domain_error("aic_table: fits were run on different datasets");
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : fits) best = std::min(best, f.aic);
  std::vector<AicRow> rows;
  for (const auto& f : fits) {
    rows.push_back({f.spec.kind, f.n_params, f.loglik, f.aic, f.aic - best,
                    state_process_label(f.spec.kind), model_description(f.spec.kind)});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const AicRow& a, const AicRow& b) { return a.kind < b.kind; });
  return rows;
}

std::string aic_table_csv(const std::vector<AicRow>& rows) {
  std::string out = "model,n_params,loglik,aic,delta_aic,state_process,description\n";
  for (const auto& r : rows) {
    out += to_string(r.kind) + "," + std::to_string(r.n_params) + "," + format_double(r.loglik) +
           "," + format_double(r.aic) + "," + format_double(r.delta_aic) + "," +
           r.state_process + ",\"" + r.description + "\"\n";
  }
  return out;
}

nlohmann::json to_json(const FitResult& fit) {
  using nlohmann::json;
  json params = json::array();
  for (std::size_t k = 0; k < fit.names.size(); ++k) {
    json entry = {{"name", fit.names[k]},
                  {"estimate", fit.estimates[k]},
                  {"fixed", static_cast<bool>(fit.fixed.empty() ? false : fit.fixed[k])}};
    const auto& ci = fit.ci.at(k);
    if (ci.available) {
      entry["ci"] = json::array({ci.lower, ci.upper});
    } else {
      entry["ci"] = nullptr;
    }
    params.push_back(entry);
  }
  json trace = json::array();
  for (const auto& t : fit.trace) {
    trace.push_back({{"iteration", t.iteration},
                     {"value", t.value},
                     {"gradient_norm", t.gradient_norm},
                     {"step", t.step},
                     {"method", t.method}});
  }
  char fp[32];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(fit.dataset_fingerprint));
  json out = {
      {"format", "hothand-fit/1"},
      {"model", to_string(fit.spec.kind)},
      {"grid", {{"m", fit.spec.m}, {"b0", fit.spec.b0}, {"bm", fit.spec.bm}}},
      {"players", fit.players},
      {"n_throws", fit.n_throws},
      {"dataset_fingerprint", fp},
      {"loglik", fit.loglik},
      {"aic", fit.aic},
      {"n_params", fit.n_params},
      {"parameters", params},
      {"convergence",
       {{"converged", fit.converged},
        {"used_fallback", fit.used_fallback},
        {"iterations", fit.iterations},
        {"evaluations", fit.evaluations},
        {"gradient_norm", fit.gradient_norm},
        {"message", fit.message},
        {"trace", trace}}},
      {"warnings", fit.warnings},
  };
  out["offending_eigenvalue"] =
      fit.offending_eigenvalue ? json(*fit.offending_eigenvalue) : json(nullptr);
  return out;
}

namespace {

const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                    nlohmann::json::value_t type) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("fit report: missing field '") + key + "'");
  }
  const auto& v = obj.at(key);
  const bool number_ok = type == nlohmann::json::value_t::number_float && v.is_number();
  const bool unsigned_ok = type == nlohmann::json::value_t::number_unsigned && v.is_number_unsigned();
  if (!(v.type() == type || number_ok || unsigned_ok)) {
    throw ParseError(std::string("fit report: field '") + key + "' has the wrong type");
  }
  return v;
}

}  // namespace

FitResult fit_from_json(const nlohmann::json& report) {
  using vt = nlohmann::json::value_t;
  if (require_field(report, "format", vt::string).get<std::string>() != "hothand-fit/1") {
    throw ParseError("fit report: unsupported format");
  }
  FitResult fit;
  try {
    fit.spec.kind = parse_model_kind(require_field(report, "model", vt::string).get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("fit report: ") + e.what());
  }
  const auto& grid = require_field(report, "grid", vt::object);
  fit.spec.m = require_field(grid, "m", vt::number_unsigned).get<std::size_t>();
  fit.spec.b0 = require_field(grid, "b0", vt::number_float).get<double>();
  fit.spec.bm = require_field(grid, "bm", vt::number_float).get<double>();
  for (const auto& p : require_field(report, "players", vt::array)) {
    if (!p.is_string()) throw ParseError("fit report: player ids must be strings");
    fit.players.push_back(p.get<std::string>());
  }
  fit.n_throws = require_field(report, "n_throws", vt::number_unsigned).get<std::size_t>();
  fit.dataset_fingerprint = std::stoull(
      require_field(report, "dataset_fingerprint", vt::string).get<std::string>(), nullptr, 16);
  fit.loglik = require_field(report, "loglik", vt::number_float).get<double>();
  fit.aic = require_field(report, "aic", vt::number_float).get<double>();
  fit.n_params = require_field(report, "n_params", vt::number_unsigned).get<std::size_t>();

  const ParameterLayout layout(fit.spec.kind, fit.players.size());
  const auto& params = require_field(report, "parameters", vt::array);
  if (params.size() != layout.size() || fit.n_params != layout.size()) {
    throw ParseError("fit report: parameter count does not match model and players");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    const auto& entry = params[k];
    const std::string name = require_field(entry, "name", vt::string).get<std::string>();
    const std::string expected =
        k < fit.players.size() ? "beta0[" + fit.players[k] + "]" : layout.names()[k];
    if (name != expected) {
      throw ParseError("fit report: parameter " + std::to_string(k) + " is '" + name +
                       "', expected '" + expected + "'");
    }
    fit.names.push_back(name);
    fit.estimates.push_back(require_field(entry, "estimate", vt::number_float).get<double>());
    fit.fixed.push_back(require_field(entry, "fixed", vt::boolean).get<bool>());
    if (!entry.contains("ci")) throw ParseError("fit report: missing field 'ci'");
    const auto& ci = entry.at("ci");
    if (ci.is_null()) {
      fit.ci.push_back({});
    } else if (ci.is_array() && ci.size() == 2 && ci[0].is_number() && ci[1].is_number()) {
      fit.ci.push_back({ci[0].get<double>(), ci[1].get<double>(), true});
    } else {
      throw ParseError("fit report: 'ci' must be null or [lower, upper]");
    }
  }
  try {
    fit.spec.validate();
    fit.params = layout.from_natural(fit.estimates);
    fit.params.validate(fit.players.size());
  } catch (const std::domain_error& e) {
    throw ParseError(std::string("fit report: ") + e.what());
  }
  const auto& conv = require_field(report, "convergence", vt::object);
  fit.converged = require_field(conv, "converged", vt::boolean).get<bool>();
  fit.used_fallback = require_field(conv, "used_fallback", vt::boolean).get<bool>();
  fit.iterations = require_field(conv, "iterations", vt::number_float).get<int>();
  fit.evaluations = require_field(conv, "evaluations", vt::number_float).get<int>();
  fit.gradient_norm = require_field(conv, "gradient_norm", vt::number_float).get<double>();
  fit.message = require_field(conv, "message", vt::string).get<std::string>();
  for (const auto& t : require_field(conv, "trace", vt::array)) {
    fit.trace.push_back({require_field(t, "iteration", vt::number_float).get<int>(),
                         require_field(t, "value", vt::number_float).get<double>(),
                         require_field(t, "gradient_norm", vt::number_float).get<double>(),
                         require_field(t, "step", vt::number_float).get<double>(),
                         require_field(t, "method", vt::string).get<std::string>()});
  }
  for (const auto& w : require_field(report, "warnings", vt::array)) {
    fit.warnings.push_back(w.get<std::string>());
  }
  if (report.contains("offending_eigenvalue") && report.at("offending_eigenvalue").is_number()) {
    fit.offending_eigenvalue = report.at("offending_eigenvalue").get<double>();
  }
  return fit;
}

}  // namespace hothand
