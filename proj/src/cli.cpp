#include "hothand/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <openssl/evp.h>
#include <unistd.h>

#include "hothand/decode.hpp"
#include "hothand/errors.hpp"
#include "hothand/estimate.hpp"
#include "hothand/ingest.hpp"

#ifndef HOTHAND_VERSION
#define HOTHAND_VERSION "0.0.0"
#endif

namespace hothand::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string hex(const unsigned char* data, unsigned len) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 15]);
  }
  return out;
}

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  return hex(md, len);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects what a run read and wrote, then emits the manifest next to the
// primary output.
struct Run {
  explicit Run(std::string name) : subcommand(std::move(name)) {}

  std::string subcommand;
  json config = json::object();
  std::optional<std::uint64_t> seed;
  json inputs = json::array();
  json outputs = json::array();

  std::string read(const std::string& path) {
    std::string bytes = read_file(path);
    inputs.push_back({{"path", path}, {"sha256", sha256(bytes)}});
    return bytes;
  }

  void write(const std::string& path, const std::string& content) {
    write_atomic(path, content);
    outputs.push_back({{"path", path}, {"sha256", sha256(content)}});
  }

  void finish(const std::string& primary_output) {
    json manifest = {{"format", "hothand-manifest/1"},
                     {"tool", "hothand"},
                     {"version", HOTHAND_VERSION},
                     {"subcommand", subcommand},
                     {"config", config},
                     {"seed", seed ? json(*seed) : json(nullptr)},
                     {"inputs", inputs},
                     {"outputs", outputs},
                     {"created_utc", utc_now()}};
    write_atomic(primary_output + ".manifest.json", manifest.dump(2) + "\n");
  }
};

Dataset parse_legs(const std::string& bytes) {
  std::istringstream in(bytes);
  return load_binary(in);
}

json parse_json(const std::string& bytes, const std::string& path) {
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": malformed JSON: " + e.what());
  }
}

FitResult read_fit(Run& run, const std::string& path) {
  const json j = parse_json(run.read(path), path);
  try {
    return fit_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string legs_jsonl(const Dataset& data) {
  std::ostringstream out;
  save_binary(data, out);
  return out.str();
}

ModelSpec make_spec(ModelKind kind, std::size_t m, double bound) {
  ModelSpec spec{kind, m, -bound, bound};
  try {
    spec.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("invalid grid: ") + e.what());
  }
  return spec;
}

void require_players(const FitResult& fit, const Dataset& data, const std::string& what) {
  if (fit.players != data.players()) {
    throw ParseError(what + ": the fit's players do not match the dataset's players");
  }
}

void warn_if_different_data(const FitResult& fit, const Dataset& data, const std::string& what) {
  if (canonical_order(data).fingerprint() != fit.dataset_fingerprint) {
    std::cerr << "warning: " << what << ": dataset differs from the one the fit was run on\n";
  }
}

// Shared flag storage; each subcommand registers the subset it uses.
struct Flags {
  std::string in;
  std::string out;
  std::string fit_path;
  std::string plan;
  std::string csv;
  std::string raw_out;
  std::vector<std::string> fits;
  std::string model = "m4";
  std::size_t grid_size = 150;
  double grid_bound = 2.5;
  int truncate_at = kDefaultTruncation;
  std::size_t min_legs = kDefaultMinLegs;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t replications = 100;
  int max_iterations = 2000;
  double gradient_tolerance = 1e-5;
  bool no_ci = false;
};

ModelKind model_flag(const Flags& f) {
  try {
    return parse_model_kind(f.model);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

FitOptions fit_options(const Flags& f) {
  FitOptions opt;
  opt.optimizer.max_iterations = f.max_iterations;
  opt.optimizer.gradient_tolerance = f.gradient_tolerance;
  opt.likelihood.threads = f.threads;
  opt.compute_intervals = !f.no_ci;
  return opt;
}

json optimizer_config(const Flags& f) {
  return {{"max_iterations", f.max_iterations},
          {"gradient_tolerance", f.gradient_tolerance},
          {"threads", f.threads}};
}

int cmd_preprocess(const Flags& f) {
  Run run("preprocess");
  run.config = {{"in", f.in}, {"out", f.out}, {"truncate_at", f.truncate_at},
                {"min_legs", f.min_legs}};
  std::istringstream raw(run.read(f.in));
  const auto records = read_raw_throws(raw);
  const Dataset data = preprocess(records, f.truncate_at, f.min_legs);
  if (data.empty()) std::cerr << "warning: preprocess: no legs survive truncation and filtering\n";
  run.write(f.out, legs_jsonl(data));
  run.finish(f.out);
  std::cerr << "preprocess: " << records.size() << " throws -> " << data.player_count()
            << " players, " << data.leg_count() << " legs, " << data.throw_count()
            << " binary outcomes\n";
  return kOk;
}

int cmd_fit(const Flags& f) {
  Run run("fit");
  const ModelSpec spec = make_spec(model_flag(f), f.grid_size, f.grid_bound);
  run.config = {{"in", f.in},
                {"out", f.out},
                {"model", to_string(spec.kind)},
                {"grid", {{"m", spec.m}, {"b0", spec.b0}, {"bm", spec.bm}}},
                {"optimizer", optimizer_config(f)},
                {"intervals", !f.no_ci}};
  const Dataset data = parse_legs(run.read(f.in));
  if (data.empty()) throw ParseError(f.in + ": input contains no legs");

  FitResult result = fit(data, spec, std::nullopt, fit_options(f));
  if (has_latent_state(spec.kind)) {
    const auto decoded = decode_dataset(canonical_order(data), result.params, spec);
    const double share = edge_state_share(decoded, spec.m);
    if (share > 0.01) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "%.2f%% of decoded states lie in the outer two grid intervals; "
                    "consider widening --grid-bound",
                    100.0 * share);
      result.warnings.emplace_back(buf);
    }
  }
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

  run.write(f.out, to_json(result).dump(2) + "\n");
  run.finish(f.out);
  std::fprintf(stderr, "fit: %s loglik=%.6f aic=%.6f n_params=%zu converged=%s\n",
               to_string(spec.kind).c_str(), result.loglik, result.aic, result.n_params,
               result.converged ? "yes" : "no");
  return result.converged ? kOk : kNotConverged;
}

int cmd_decode(const Flags& f) {
  Run run("decode");
  run.config = {{"in", f.in}, {"fit", f.fit_path}, {"out", f.out}};
  const Dataset data = parse_legs(run.read(f.in));
  const FitResult fr = read_fit(run, f.fit_path);
  if (!has_latent_state(fr.spec.kind)) {
    throw UsageError("decode needs an m3 or m4 fit, got " + to_string(fr.spec.kind));
  }
  require_players(fr, data, "decode");
  warn_if_different_data(fr, data, "decode");
  const auto decoded = decode_dataset(data, fr.params, fr.spec);
  run.write(f.out, trajectory_csv(trajectory_report(decoded, fr.params, data)));
  run.finish(f.out);
  return kOk;
}

int cmd_gof(const Flags& f) {
  if (f.replications == 0) throw UsageError("--replications must be >= 1");
  Run run("gof");
  run.seed = f.seed;
  run.config = {{"in", f.in}, {"fit", f.fit_path}, {"out", f.out},
                {"replications", f.replications}};
  const Dataset data = parse_legs(run.read(f.in));
  const FitResult fr = read_fit(run, f.fit_path);
  require_players(fr, data, "gof");
  warn_if_different_data(fr, data, "gof");
  const SequenceCensus observed = sequence_census(data);
  const SequenceCensus model = model_implied_census(fr, data, f.replications, f.seed);
  run.write(f.out, census_report(observed, model, fr.spec.kind).dump(2) + "\n");
  run.finish(f.out);
  return kOk;
}

int cmd_compare(const Flags& f) {
  Run run("compare");
  run.config = {{"fits", f.fits}, {"out", f.out}};
  std::vector<FitResult> fits;
  for (const auto& path : f.fits) fits.push_back(read_fit(run, path));
  std::vector<AicRow> rows;
  try {
    rows = aic_table(fits);
  } catch (const std::domain_error& e) {
    throw ParseError(std::string("compare: ") + e.what());
  }
  run.write(f.out, aic_table_csv(rows));
  run.finish(f.out);
  return kOk;
}

int cmd_simulate(const Flags& f) {
  Run run("simulate");
  run.seed = f.seed;
  run.config = {{"plan", f.plan}, {"out", f.out}};
  if (!f.raw_out.empty()) {
    run.config["raw_out"] = f.raw_out;
    run.config["truncate_at"] = f.truncate_at;
  }
  const json plan_doc = parse_json(run.read(f.plan), f.plan);
  std::vector<std::string> extra_inputs;
  SimulationPlan plan = plan_from_json(plan_doc, fs::path(f.plan).parent_path().string(),
                                       &extra_inputs);
  for (const auto& p : extra_inputs) run.read(p);
  plan.seed = f.seed;
  const Dataset data = simulate_dataset(plan);
  run.write(f.out, legs_jsonl(data));
  if (!f.raw_out.empty()) run.write(f.raw_out, write_raw_csv(synthesize_raw(data, f.truncate_at)));
  run.finish(f.out);
  std::cerr << "simulate: " << data.player_count() << " players, " << data.leg_count()
            << " legs, " << data.throw_count() << " throws\n";
  return kOk;
}

int cmd_recover(const Flags& f) {
  if (f.replications == 0) throw UsageError("--replications must be >= 1");
  Run run("recover");
  run.seed = f.seed;
  const json plan_doc = parse_json(run.read(f.plan), f.plan);
  const SimulationPlan plan = plan_from_json(plan_doc, fs::path(f.plan).parent_path().string());
  const auto* structure = std::get_if<SyntheticStructure>(&plan.structure);
  if (!structure) throw UsageError("recover needs a plan with a synthetic \"structure\"");
  const ModelSpec spec = make_spec(plan.params.kind, f.grid_size, f.grid_bound);
  run.config = {{"plan", f.plan},
                {"out", f.out},
                {"replications", f.replications},
                {"grid", {{"m", spec.m}, {"b0", spec.b0}, {"bm", spec.bm}}},
                {"optimizer", optimizer_config(f)}};
  FitOptions opt = fit_options(f);
  opt.compute_intervals = true;
  const RecoveryReport report =
      recovery_experiment(plan.params, spec, *structure, f.replications, f.seed, opt);
  run.write(f.out, to_json(report).dump(2) + "\n");
  if (!f.csv.empty()) run.write(f.csv, recovery_csv(report));
  run.finish(f.out);
  if (!report.non_converged.empty()) {
    std::cerr << "warning: recover: " << report.non_converged.size() << " of "
              << report.replications << " fits did not converge\n";
  }
  return kOk;
}

double number_field(const json& j, const std::string& key) {
  if (!j.at(key).is_number()) throw ParseError("params: '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::size_t count_field(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_unsigned()) {
    throw ParseError(std::string("plan: structure.") + key + " must be a non-negative integer");
  }
  return j.at(key).get<std::size_t>();
}

}  // namespace

std::string sha256_file(const std::string& path) { return sha256(read_file(path)); }

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  fs::rename(tmp, target);
}

ParamVector params_from_json(const json& j, ModelKind kind, const std::vector<std::string>& players) {
  if (!j.is_object()) throw ParseError("params must be an object");
  ParamVector p;
  p.kind = kind;
  if (!j.contains("beta0")) throw ParseError("params: missing 'beta0'");
  const json& b0 = j.at("beta0");
  if (b0.is_array()) {
    if (b0.size() != players.size()) {
      throw ParseError("params: beta0 has " + std::to_string(b0.size()) + " entries for " +
                       std::to_string(players.size()) + " players");
    }
    for (const auto& v : b0) {
      if (!v.is_number()) throw ParseError("params: beta0 entries must be numbers");
      p.beta0.push_back(v.get<double>());
    }
  } else if (b0.is_object()) {
    for (const auto& id : players) {
      if (!b0.contains(id) || !b0.at(id).is_number()) {
        throw ParseError("params: beta0 has no numeric entry for player '" + id + "'");
      }
      p.beta0.push_back(b0.at(id).get<double>());
    }
    if (b0.size() != players.size()) throw ParseError("params: beta0 names unknown players");
  } else {
    throw ParseError("params: beta0 must be an array or an object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "beta0") continue;
    double* target = nullptr;
    if (key == "beta1") target = &p.beta1;
    else if (key == "beta2") target = &p.beta2;
    else if (key == "phi") target = &p.phi;
    else if (key == "sigma") target = &p.sigma;
    else if (key == "phi_w") target = &p.phi_w;
    else if (key == "phi_a") target = &p.phi_a;
    else if (key == "sigma_w") target = &p.sigma_w;
    else if (key == "sigma_a") target = &p.sigma_a;
    else if (key == "mu_delta") target = &p.mu_delta;
    else if (key == "sigma_delta") target = &p.sigma_delta;
    else throw ParseError("params: unknown parameter '" + key + "'");
    *target = number_field(j, key);
  }
  try {
    p.validate(players.size());
  } catch (const std::domain_error& e) {
    throw ParseError(std::string("params: ") + e.what());
  }
  return p;
}

SimulationPlan plan_from_json(const json& j, const std::string& base_dir,
                              std::vector<std::string>* inputs) {
  if (!j.is_object()) throw ParseError("plan must be a JSON object");
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return (path.is_absolute() || base_dir.empty() ? path : fs::path(base_dir) / path).string();
  };

  SimulationPlan plan;
  const bool has_structure = j.contains("structure");
  const bool has_template = j.contains("template");
  if (has_structure == has_template) {
    throw ParseError("plan: give exactly one of 'structure' and 'template'");
  }
  std::vector<std::string> players;
  if (has_structure) {
    const json& s = j.at("structure");
    if (!s.is_object()) throw ParseError("plan: 'structure' must be an object");
    SyntheticStructure st;
    st.players = count_field(s, "players", st.players);
    st.legs_per_player = count_field(s, "legs_per_player", st.legs_per_player);
    st.min_length = count_field(s, "min_length", st.min_length);
    st.max_length = count_field(s, "max_length", st.max_length);
    if (st.players == 0 || st.legs_per_player == 0 || st.min_length == 0 ||
        st.min_length > st.max_length) {
      throw ParseError("plan: structure needs players, legs_per_player, min_length >= 1 and "
                       "min_length <= max_length");
    }
    players = synthetic_player_ids(st.players);
    plan.structure = st;
  } else {
    if (!j.at("template").is_string()) throw ParseError("plan: 'template' must be a path");
    const std::string path = resolve(j.at("template").get<std::string>());
    if (inputs) inputs->push_back(path);
    Dataset tmpl = parse_legs(read_file(path));
    if (tmpl.empty()) throw ParseError("plan: template '" + path + "' has no legs");
    players = tmpl.players();
    plan.structure = std::move(tmpl);
  }

  const bool has_params = j.contains("params");
  const bool has_fit = j.contains("fit");
  if (has_params == has_fit) throw ParseError("plan: give exactly one of 'params' and 'fit'");
  if (has_params) {
    if (!j.contains("model") || !j.at("model").is_string()) {
      throw ParseError("plan: 'model' (m1..m4) is required with 'params'");
    }
    ModelKind kind;
    try {
      kind = parse_model_kind(j.at("model").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("plan: ") + e.what());
    }
    plan.params = params_from_json(j.at("params"), kind, players);
  } else {
    if (!j.at("fit").is_string()) throw ParseError("plan: 'fit' must be a path");
    const std::string path = resolve(j.at("fit").get<std::string>());
    if (inputs) inputs->push_back(path);
    const FitResult fr = fit_from_json(parse_json(read_file(path), path));
    if (fr.players != players) {
      throw ParseError("plan: fit '" + path + "' has different players than the structure");
    }
    plan.params = fr.params;
  }
  return plan;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Latent-ability state-space models for binary throwing-success sequences",
               "hothand"};
  app.set_version_flag("--version", HOTHAND_VERSION);
  app.require_subcommand(1);
  Flags f;

  auto model_opt = [&](CLI::App* sc) {
    sc->add_option("--model", f.model, "m1, m2, m3 or m4")
        ->check(CLI::IsMember({"m1", "m2", "m3", "m4"}, CLI::ignore_case))
        ->capture_default_str();
  };
  auto grid_opts = [&](CLI::App* sc) {
    sc->add_option("--grid-size", f.grid_size, "number of grid intervals m")
        ->check(CLI::Range(std::size_t{2}, std::size_t{5000}))
        ->capture_default_str();
    sc->add_option("--grid-bound", f.grid_bound, "grid spans [-B, B]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto optimizer_opts = [&](CLI::App* sc) {
    sc->add_option("--threads", f.threads, "worker threads for per-leg sections")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    sc->add_option("--max-iterations", f.max_iterations)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--gradient-tolerance", f.gradient_tolerance)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto seed_opt = [&](CLI::App* sc) {
    sc->add_option("--seed", f.seed, "master seed for all randomness")->capture_default_str();
  };
  auto reps_opt = [&](CLI::App* sc) {
    sc->add_option("--replications", f.replications)->capture_default_str();
  };

  auto* pre = app.add_subcommand("preprocess", "raw throw CSV -> binary legs JSONL");
  pre->add_option("--in", f.in, "raw throw CSV")->required()->check(CLI::ExistingFile);
  pre->add_option("--out", f.out, "legs JSONL")->required();
  pre->add_option("--truncate-at", f.truncate_at, "keep throws with score_before >= c")
      ->capture_default_str();
  pre->add_option("--min-legs", f.min_legs, "drop players with fewer retained legs")
      ->capture_default_str();

  auto* fit_cmd = app.add_subcommand("fit", "maximum likelihood fit -> fit JSON");
  fit_cmd->add_option("--in", f.in, "legs JSONL")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--out", f.out, "fit JSON")->required();
  model_opt(fit_cmd);
  grid_opts(fit_cmd);
  optimizer_opts(fit_cmd);
  fit_cmd->add_flag("--no-ci", f.no_ci, "skip observed-information intervals");

  auto* dec = app.add_subcommand("decode", "Viterbi trajectories -> CSV");
  dec->add_option("--in", f.in, "legs JSONL")->required()->check(CLI::ExistingFile);
  dec->add_option("--fit", f.fit_path, "m3/m4 fit JSON")->required()->check(CLI::ExistingFile);
  dec->add_option("--out", f.out, "trajectory CSV")->required();

  auto* sim = app.add_subcommand("simulate", "simulation plan -> legs JSONL");
  sim->add_option("--plan", f.plan, "plan JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", f.out, "legs JSONL")->required();
  sim->add_option("--raw-out", f.raw_out, "also write a raw throw CSV");
  sim->add_option("--truncate-at", f.truncate_at, "threshold for --raw-out")->capture_default_str();
  seed_opt(sim);

  auto* gof = app.add_subcommand("gof", "observed vs model-implied sequence census -> JSON");
  gof->add_option("--in", f.in, "legs JSONL")->required()->check(CLI::ExistingFile);
  gof->add_option("--fit", f.fit_path, "fit JSON")->required()->check(CLI::ExistingFile);
  gof->add_option("--out", f.out, "census JSON")->required();
  reps_opt(gof);
  seed_opt(gof);

  auto* cmp = app.add_subcommand("compare", "AIC table over fits of one dataset -> CSV");
  cmp->add_option("fits", f.fits, "fit JSON files")->required()->check(CLI::ExistingFile);
  cmp->add_option("--out", f.out, "AIC table CSV")->required();

  auto* rec = app.add_subcommand("recover", "repeated simulate -> fit study -> JSON");
  rec->add_option("--plan", f.plan, "plan JSON with a synthetic structure")
      ->required()
      ->check(CLI::ExistingFile);
  rec->add_option("--out", f.out, "recovery JSON")->required();
  rec->add_option("--csv", f.csv, "also write a per-parameter CSV");
  grid_opts(rec);
  optimizer_opts(rec);
  reps_opt(rec);
  seed_opt(rec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cerr, std::cerr);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*pre) return cmd_preprocess(f);
    if (*fit_cmd) return cmd_fit(f);
    if (*dec) return cmd_decode(f);
    if (*sim) return cmd_simulate(f);
    if (*gof) return cmd_gof(f);
    if (*cmp) return cmd_compare(f);
    if (*rec) return cmd_recover(f);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const StructuralError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace hothand::cli
