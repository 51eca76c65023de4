#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <toml.hpp>

#include "nspcp/cli.hpp"
#include "nspcp/errors.hpp"

namespace nspcp::cli {

using nspcp::to_string;
namespace {

const std::vector<std::pair<Experiment, std::string>> kNames = {
    {Experiment::Arithmetize, "arithmetize"},          {Experiment::Completeness, "completeness"},
    {Experiment::SoundnessLp, "soundness-lp"},         {Experiment::TestBattery, "test-battery"},
    {Experiment::HypothesisProbe, "hypothesis-probe"}, {Experiment::RoundingProbe, "rounding-probe"},
};

bool needs_circuit(Experiment e) {
  return e == Experiment::Arithmetize || e == Experiment::Completeness || e == Experiment::SoundnessLp;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

template <class T>
T get(const toml::table& t, std::string_view key, T fallback) {
  const auto node = t[key];
  if (!node) return fallback;
  if (auto v = node.value<T>()) return *v;
  throw UsageError("config key '" + std::string(key) + "' has the wrong type");
}

void check_keys(const toml::table& t, const std::string& section, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : t) {
    if (std::find(allowed.begin(), allowed.end(), key.str()) == allowed.end()) {
      throw UsageError("unknown config key '" + section + std::string(key.str()) + "'");
    }
  }
}

Rational rational_node(const toml::node& node, const std::string& what) {
  if (auto s = node.value<std::string>()) {
    try {
      return parse_rational(*s);
    } catch (const InvalidInput&) {
      throw UsageError(what + ": '" + *s + "' is not a rational");
    }
  }
  if (auto i = node.value<std::int64_t>()) return Rational(static_cast<long>(*i));
  throw UsageError(what + " must be a \"p/q\" string");
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [k, name] : kNames) {
    if (k == e) return name;
  }
  return "?";
}

Experiment experiment_from_string(const std::string& name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw UsageError("unknown experiment '" + name + "'");
}

void validate(const ExperimentConfig& c) {
  if (needs_circuit(c.kind)) {
    require(!c.circuit.empty(), "a circuit file is required");
    Circuit circuit = [&] {
      try {
        return parse_circuit_file(c.circuit);
      } catch (const InvalidInput& e) {
        throw UsageError(std::string("circuit: ") + e.what());
      }
    }();
    require(static_cast<int>(c.input.size()) == circuit.inputs(),
            "input has " + std::to_string(c.input.size()) + " bits, circuit takes " + std::to_string(circuit.inputs()));
    require(c.input.find_first_not_of("01") == std::string::npos, "input must be a 0/1 string");
  }
  require(c.verifier == "almss" || c.verifier == "repeated-almss" || c.verifier == "full",
          "verifier must be almss, repeated-almss or full");
  require(c.verifier != "almss" || c.t == 1, "the almss verifier has t = 1; use repeated-almss");
  const int max_t = c.verifier == "full" ? kMaxRepetition / 2 : kMaxRepetition;
  require(c.t >= 1 && c.t <= max_t, "t must be in [1, " + std::to_string(max_t) + "]");
  require(c.k >= 1 && c.k * c.t <= 20, "k must be >= 1 with k * t <= 20");
  require(c.k_prime >= 1 && c.k_prime <= 20, "k' must be in [1, 20]");
  require(c.ell >= 1, "l must be >= 1");
  require(c.dim >= 1 && c.dim <= 3, "dim must be in [1, 3]");
  require(c.epsilon >= 0 && c.epsilon <= 1, "epsilon must be in [0, 1]");
  for (const auto& e : c.epsilons) require(e >= 0 && e <= 1, "every epsilon must be in [0, 1]");
  require(!c.mc || c.samples >= 1, "mc mode needs samples >= 1");
  require(c.threads >= 0, "threads must be >= 0");
  if (c.kind == Experiment::SoundnessLp) {
    require(c.verifier != "full", "soundness-lp supports almss and repeated-almss");
  }
  if (c.kind == Experiment::HypothesisProbe || c.kind == Experiment::RoundingProbe) {
    require(!c.epsilons.empty(), "probes need an epsilon grid");
    require(c.k <= (1 << c.dim), "k exceeds the domain size");
  }
  if (c.kind == Experiment::HypothesisProbe) require(c.k <= 3, "hypothesis-probe supports k <= 3");
}

ExperimentConfig config_from_toml(const std::string& text) {
  toml::table doc;
  try {
    doc = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "config line " << e.source().begin.line << ": " << e.description();
    throw UsageError(os.str());
  }
  check_keys(doc, "", {"experiment", "instance", "parameters", "output"});
  ExperimentConfig c;
  c.kind = experiment_from_string(get<std::string>(doc, "experiment", ""));

  const toml::table empty;
  const toml::table& inst = doc["instance"].as_table() ? *doc["instance"].as_table() : empty;
  const toml::table& par = doc["parameters"].as_table() ? *doc["parameters"].as_table() : empty;
  const toml::table& out = doc["output"].as_table() ? *doc["output"].as_table() : empty;
  check_keys(inst, "instance.", {"circuit", "input", "strategy"});
  check_keys(par, "parameters.",
             {"verifier", "t", "k", "k_prime", "l", "dim", "epsilon", "epsilons", "linear", "family", "mode",
              "samples", "seed", "threads"});
  check_keys(out, "output.", {"path", "lp", "timing"});

  c.circuit = get<std::string>(inst, "circuit", "");
  c.input = get<std::string>(inst, "input", "");
  c.strategy = get<std::string>(inst, "strategy", "");

  c.verifier = get<std::string>(par, "verifier", c.verifier);
  c.t = static_cast<int>(get<std::int64_t>(par, "t", c.t));
  c.k = static_cast<int>(get<std::int64_t>(par, "k", c.k));
  c.k_prime = static_cast<int>(get<std::int64_t>(par, "k_prime", c.k_prime));
  c.ell = static_cast<int>(get<std::int64_t>(par, "l", c.ell));
  c.dim = static_cast<int>(get<std::int64_t>(par, "dim", c.dim));
  if (auto node = par["epsilon"].node()) c.epsilon = rational_node(*node, "epsilon");
  if (auto node = par["epsilons"].node()) {
    const auto* arr = node->as_array();
    require(arr != nullptr, "epsilons must be an array");
    for (const auto& e : *arr) c.epsilons.push_back(rational_node(e, "epsilons"));
  }
  c.linear = get<bool>(par, "linear", false);
  const std::string family = get<std::string>(par, "family", "complete");
  require(family == "complete" || family == "issued", "family must be complete or issued");
  c.issued = family == "issued";
  const std::string mode = get<std::string>(par, "mode", "exact");
  require(mode == "exact" || mode == "mc", "mode must be exact or mc");
  c.mc = mode == "mc";
  const auto samples = get<std::int64_t>(par, "samples", static_cast<std::int64_t>(c.samples));
  require(samples >= 0, "samples must be >= 0");
  c.samples = static_cast<std::uint64_t>(samples);
  const auto seed = get<std::int64_t>(par, "seed", 0);
  require(seed >= 0, "seed must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  c.threads = static_cast<int>(get<std::int64_t>(par, "threads", 0));

  c.out = get<std::string>(out, "path", "");
  c.lp_out = get<std::string>(out, "lp", "");
  c.timing = get<bool>(out, "timing", false);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return config_from_toml(text.str());
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["experiment"] = to_string(c.kind);
  j["circuit"] = c.circuit;
  j["input"] = c.input;
  j["strategy"] = c.strategy;
  j["verifier"] = c.verifier;
  j["t"] = c.t;
  j["k"] = c.k;
  j["k_prime"] = c.k_prime;
  j["l"] = c.ell;
  j["dim"] = c.dim;
  j["epsilon"] = to_string(c.epsilon);
  auto eps = nlohmann::ordered_json::array();
  for (const auto& e : c.epsilons) eps.push_back(to_string(e));
  j["epsilons"] = eps;
  j["linear"] = c.linear;
  j["family"] = c.issued ? "issued" : "complete";
  j["mode"] = c.mc ? "mc" : "exact";
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  return j;
}

std::string config_hash(const ExperimentConfig& c) {
  const std::string text = config_json(c).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  EVP_Digest(text.data(), text.size(), digest, &size, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < size; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

}  // namespace nspcp::cli
