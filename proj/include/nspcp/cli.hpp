#pragma once

// Batch experiment driver behind the nspcp command-line tool.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nspcp/arithmetize.hpp"
#include "nspcp/rational.hpp"
#include "nspcp/strategy.hpp"

namespace nspcp::cli {

inline constexpr const char* kVersion = "nspcp 0.1.0";

// Bad flags, bad config values or parameters outside module scope.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Experiment { Arithmetize, Completeness, SoundnessLp, TestBattery, HypothesisProbe, RoundingProbe };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct ExperimentConfig {
  Experiment kind = Experiment::Completeness;
  std::string circuit;  // path to a circuit file
  std::string input;    // input bits, wire 1 first
  // almss (Alg 1, t = 1), repeated-almss (Alg 2), full (Alg 3)
  std::string verifier = "almss";
  int t = 1;
  int k = 4;
  int k_prime = 2;
  int ell = 4;
  int dim = 2;
  std::vector<Rational> epsilons;
  Rational epsilon = 0;   // noisy polytope radius for soundness-lp
  bool linear = false;    // linearity side constraints
  bool issued = false;    // restrict the SA family to issued sets
  bool mc = false;
  std::uint64_t samples = 1 << 16;
  std::uint64_t seed = 0;
  int threads = 0;
  bool timing = false;
  std::string out;        // report prefix: <out>.json and <out>.csv
  std::string lp_out;     // optional LP export path (soundness-lp)
  std::string strategy;   // optional strategy JSON (tests)
};

// Range and shape checks against the module scopes. Throws UsageError.
void validate(const ExperimentConfig& config);

ExperimentConfig config_from_toml(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Every field that affects results, in a fixed key order.
nlohmann::ordered_json config_json(const ExperimentConfig& config);
// SHA-256 hex digest of config_json(config).dump().
std::string config_hash(const ExperimentConfig& config);

struct Report {
  nlohmann::ordered_json json;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

Report run(const ExperimentConfig& config);

std::string csv_text(const Report& report);
// Writes <prefix>.json and <prefix>.csv.
void write_report(const Report& report, const std::string& prefix);

// One CSV row per JSON report, keyed by the union of their summary fields.
Report summarize(const std::vector<std::string>& report_paths);

// Inputs of the probes, shared with the acceptance suite.

// (1 - eps) L + eps G on every set of size <= k over {0,1}^dim, where L is
// the restriction of x -> x_0 and G answers item i of S with
// (|S| + i) mod 2. Tabulated in almost mode with radius eps.
TableStrategy hypothesis_input(int dim, int k, const Rational& eps);
// (1 - eps) (x -> x_0) + eps (x -> 1) as a mixture of classical proofs.
StrategyPtr rounding_input(int dim, const Rational& eps);

}  // namespace nspcp::cli
