#include <CLI11.hpp>
#include <iostream>

#include "nspcp/cli.hpp"
#include "nspcp/errors.hpp"

using nspcp::cli::Experiment;
using nspcp::cli::ExperimentConfig;

namespace {

struct Flags {
  ExperimentConfig config;
  std::string epsilon = "0";
  std::vector<std::string> epsilons;
  bool exact = false;
  bool mc = false;
  std::string family = "complete";
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--seed", f.config.seed, "root seed");
  app->add_flag("--exact", f.exact, "exhaustive randomness enumeration (default)");
  app->add_flag("--mc", f.mc, "Monte Carlo estimate");
  app->add_option("--samples", f.config.samples, "Monte Carlo samples");
  app->add_option("--threads", f.config.threads, "worker threads (0: all cores)");
  app->add_option("--out", f.config.out, "write <out>.json and <out>.csv");
  app->add_flag("--timing", f.config.timing, "record wall time in the report");
}

void add_instance(CLI::App* app, Flags& f) {
  app->add_option("--circuit", f.config.circuit, "circuit file")->required();
  app->add_option("--input", f.config.input, "input bits, wire 1 first")->required();
}

void add_verifier(CLI::App* app, Flags& f) {
  app->add_option("--verifier", f.config.verifier, "almss | repeated-almss | full");
  app->add_option("-t,--t", f.config.t, "repetition");
}

void add_grid(CLI::App* app, Flags& f) {
  app->add_option("--eps", f.epsilons, "epsilon grid, p/q values")->delimiter(',');
  app->add_option("--dim", f.config.dim, "domain {0,1}^dim");
}

int fail(const char* kind, const std::string& message, int code) {
  nlohmann::ordered_json err{{"error", kind}, {"message", message}};
  std::cerr << err.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-signaling PCP experiments"};
  app.set_version_flag("--version", nspcp::cli::kVersion);
  app.require_subcommand(1);
  Flags f;
  std::string config_path;
  std::vector<std::string> reports;

  auto* arith = app.add_subcommand("arithmetize", "print the constraint system of a circuit and input");
  add_instance(arith, f);
  add_common(arith, f);

  auto* comp = app.add_subcommand("completeness", "acceptance of the intended proof");
  add_instance(comp, f);
  add_verifier(comp, f);
  add_common(comp, f);

  auto* sound = app.add_subcommand("soundness-lp", "maximum acceptance over non-signaling strategies");
  add_instance(sound, f);
  add_verifier(sound, f);
  sound->add_option("-k,--k", f.config.k, "locality");
  sound->add_option("--epsilon", f.epsilon, "noisy polytope radius (0: exact)");
  sound->add_option("--eps", f.epsilons, "epsilon grid, p/q values")->delimiter(',');
  sound->add_flag("--linear", f.config.linear, "linearity side constraints");
  sound->add_option("--family", f.family, "complete | issued");
  sound->add_option("--lp-out", f.config.lp_out, "export the LP (CPLEX format)");
  add_common(sound, f);

  auto* tests = app.add_subcommand("tests", "linearity battery over all functions on {0,1}^dim");
  tests->add_option("--dim", f.config.dim, "domain {0,1}^dim");
  tests->add_option("--strategy", f.config.strategy, "strategy JSON to test as well");
  add_common(tests, f);

  auto* hyp = app.add_subcommand("hyp-probe", "distance to the nearest non-signaling function");
  add_grid(hyp, f);
  hyp->add_option("-k,--k", f.config.k, "locality of the input");
  hyp->add_option("--k-prime", f.config.k_prime, "locality of the approximation");
  hyp->add_option("-l,--l", f.config.ell, "set size of the distance");
  add_common(hyp, f);

  auto* round = app.add_subcommand("round-probe", "rounding to linear non-signaling functions");
  add_grid(round, f);
  round->add_option("-k,--k", f.config.k, "locality k-bar");
  round->add_option("--k-prime", f.config.k_prime, "locality of the exact fit");
  round->add_option("-l,--l", f.config.ell, "set size of the distance");
  add_common(round, f);

  auto* report = app.add_subcommand("report", "one CSV row per JSON report");
  report->add_option("reports", reports, "report files")->required();
  report->add_option("--out", f.config.out, "write <out>.json and <out>.csv");

  auto* run = app.add_subcommand("run", "run a TOML experiment config");
  run->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", f.config.out, "override the output path");
  run->add_flag("--timing", f.config.timing, "record wall time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    nspcp::cli::Report result;
    if (report->parsed()) {
      result = nspcp::cli::summarize(reports);
    } else {
      ExperimentConfig c = f.config;
      if (run->parsed()) {
        c = nspcp::cli::load_config(config_path);
        if (!f.config.out.empty()) c.out = f.config.out;
        c.timing = c.timing || f.config.timing;
      } else {
        if (f.exact && f.mc) throw nspcp::cli::UsageError("--exact and --mc are exclusive");
        c.mc = f.mc;
        c.epsilon = nspcp::parse_rational(f.epsilon);
        for (const auto& e : f.epsilons) c.epsilons.push_back(nspcp::parse_rational(e));
        if (f.family != "complete" && f.family != "issued") {
          throw nspcp::cli::UsageError("--family must be complete or issued");
        }
        c.issued = f.family == "issued";
        if (arith->parsed()) c.kind = Experiment::Arithmetize;
        if (comp->parsed()) c.kind = Experiment::Completeness;
        if (sound->parsed()) c.kind = Experiment::SoundnessLp;
        if (tests->parsed()) c.kind = Experiment::TestBattery;
        if (hyp->parsed()) c.kind = Experiment::HypothesisProbe;
        if (round->parsed()) c.kind = Experiment::RoundingProbe;
      }
      result = nspcp::cli::run(c);
      f.config.out = c.out;
    }
    if (f.config.out.empty()) {
      std::cout << (report->parsed() ? nspcp::cli::csv_text(result) : result.json.dump(2) + "\n");
    } else {
      nspcp::cli::write_report(result, f.config.out);
      std::cout << f.config.out << ".json\n" << f.config.out << ".csv\n";
    }
  } catch (const nspcp::cli::UsageError& e) {
    return fail("usage", e.what(), 2);
  } catch (const nspcp::ScopeExceeded& e) {
    return fail("scope exceeded", e.what(), 3);
  } catch (const std::length_error& e) {
    return fail("scope exceeded", e.what(), 3);
  } catch (const nspcp::InvalidInput& e) {
    return fail("invalid input", e.what(), 4);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
