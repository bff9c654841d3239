#pragma once

// Batch command-line front end: preprocess, fit, decode, simulate, gof,
// compare and recover. Every output file is written atomically and gets a
// sibling "<out>.manifest.json" with the run configuration, seed, input
// digests and tool version.

#include <string>
#include <vector>

#include <json.hpp>

#include "hothand/model.hpp"
#include "hothand/simulate.hpp"

namespace hothand::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kParseError = 3,
  kNotConverged = 4,
};

int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args[0] is the program name

/// Natural-scale parameters from JSON. `beta0` is either an array in
/// lexicographic player order or an object keyed by player id; omitted
/// structural fields keep their ParamVector defaults. Throws ParseError.
ParamVector params_from_json(const nlohmann::json& j, ModelKind kind,
                             const std::vector<std::string>& players);

/// Simulation plan document:
///   {"model": "m4", "seed": 7, "params": {...},
///    "structure": {"players": 20, "legs_per_player": 150,
///                  "min_length": 7, "max_length": 12}}
/// or with "template": "<legs.jsonl>" (mirror mode) in place of
/// "structure". Relative template paths resolve against `base_dir`.
/// Throws ParseError.
SimulationPlan plan_from_json(const nlohmann::json& j, const std::string& base_dir,
                              std::vector<std::string>* inputs = nullptr);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Writes via a temporary sibling and rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace hothand::cli
