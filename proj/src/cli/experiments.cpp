#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

#include "nspcp/cli.hpp"
#include "nspcp/errors.hpp"
#include "nspcp/measures.hpp"
#include "nspcp/random.hpp"
#include "nspcp/salp.hpp"
#include "nspcp/strategy_io.hpp"
#include "nspcp/verifier.hpp"

namespace nspcp::cli {

using nspcp::to_string;
namespace {

using Json = nlohmann::ordered_json;

struct Instance {
  Circuit circuit;
  BitVector input;
  BitVector wires;
  ConstraintSystem cs;
};

Instance load_instance(const ExperimentConfig& c) {
  Circuit circuit = parse_circuit_file(c.circuit);
  BitVector input = BitVector::parse(c.input);
  BitVector wires = evaluate(circuit, input);
  ConstraintSystem cs = arithmetize(circuit, input);
  return {std::move(circuit), std::move(input), std::move(wires), std::move(cs)};
}

std::unique_ptr<VerifierSpec> make_verifier(const ExperimentConfig& c, const ConstraintSystem& cs) {
  if (c.verifier == "full") return std::make_unique<FullVerifier>(cs, c.t);
  return std::make_unique<RepeatedAlmss>(cs, c.t);
}

// Runs fn(i) for every grid point concurrently; results in grid order.
template <class Fn>
auto sweep(std::size_t points, Fn fn) {
  std::vector<std::future<decltype(fn(std::size_t{0}))>> futures;
  for (std::size_t i = 0; i < points; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  std::vector<decltype(fn(std::size_t{0}))> out;
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

std::string bits_of(const BitMatrix& m) { return m.as_vector().to_string(); }

Json sub_test_json(const std::vector<std::string>& names, const std::vector<Rational>& values) {
  Json j = Json::object();
  for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) j[names[i]] = to_string(values[i]);
  return j;
}

Report arithmetize_report(const ExperimentConfig& c) {
  const Instance inst = load_instance(c);
  Report r;
  Json constraints = Json::array();
  r.csv_header = {"j", "matrix", "value"};
  for (int j = 0; j < inst.cs.size(); ++j) {
    const auto& q = inst.cs[j];
    constraints.push_back({{"matrix", bits_of(q.matrix)}, {"value", q.value ? 1 : 0}});
    r.csv_rows.push_back({std::to_string(j + 1), bits_of(q.matrix), q.value ? "1" : "0"});
  }
  r.json["result"] = {{"circuit", format_circuit(inst.circuit)},
                      {"wires", inst.wires.to_string()},
                      {"satisfied", inst.cs.satisfied_by(inst.wires)},
                      {"constraints", constraints}};
  return r;
}

Report completeness_report(const ExperimentConfig& c) {
  const Instance inst = load_instance(c);
  const auto spec = make_verifier(c, inst.cs);
  const HadamardProof proof = intended_proof(inst.wires);
  const auto f = make_product(spec->dim(), spec->repetition(), [proof](const BitVector& m) { return proof(m); });
  Report r;
  Json result{{"verifier", spec->name()}, {"t", c.t}, {"satisfied", inst.cs.satisfied_by(inst.wires)}};
  if (c.mc) {
    const std::uint64_t seed = derive_seed(c.seed, "mc");
    const McEstimate m = acceptance_mc(*f, *spec, c.samples, seed, c.threads);
    result["mode"] = "mc";
    result["estimate"] = m.estimate;
    result["half_width"] = m.half_width;
    result["samples"] = m.samples;
    result["seed"] = m.seed;
    Json subs = Json::object();
    const auto names = spec->sub_tests();
    for (std::size_t i = 0; i < names.size() && i < m.sub_tests.size(); ++i) subs[names[i]] = m.sub_tests[i];
    result["sub_tests"] = subs;
    std::ostringstream est, hw;
    est << m.estimate;
    hw << m.half_width;
    r.csv_header = {"verifier", "t", "mode", "acceptance", "half_width", "samples"};
    r.csv_rows.push_back({spec->name(), std::to_string(c.t), "mc", est.str(), hw.str(), std::to_string(m.samples)});
  } else {
    const Acceptance a = acceptance_exact(*f, *spec);
    result["mode"] = "exact";
    result["method"] = a.method;
    result["acceptance"] = to_string(a.value);
    result["sub_tests"] = sub_test_json(spec->sub_tests(), a.sub_tests);
    r.csv_header = {"verifier", "t", "mode", "acceptance", "method"};
    r.csv_rows.push_back({spec->name(), std::to_string(c.t), "exact", to_string(a.value), a.method});
  }
  r.json["result"] = result;
  return r;
}

Report soundness_report(const ExperimentConfig& c) {
  const Instance inst = load_instance(c);
  const auto spec = make_verifier(c, inst.cs);
  std::vector<Rational> grid = c.epsilons;
  if (grid.empty()) grid.push_back(c.epsilon);
  const auto family = c.issued ? FamilyChoice::Issued : FamilyChoice::Complete;

  const auto results = sweep(grid.size(), [&](std::size_t i) {
    SaOptions options;
    options.mode = grid[i] == 0 ? PolytopeMode::Exact : PolytopeMode::Noisy;
    options.epsilon = grid[i];
    if (c.linear) options.allowed = linearity_filter(c.t);
    return max_acceptance(*spec, c.k, options, family);
  });

  if (!c.lp_out.empty()) {
    SaOptions options;
    if (grid.front() != 0) {
      options.mode = PolytopeMode::Noisy;
      options.epsilon = grid.front();
    }
    if (c.linear) options.allowed = linearity_filter(c.t);
    const auto sets = c.issued ? maximal_sets(issued_sets(*spec))
                               : maximal_complete_family(spec->dim(), spec->repetition(), c.k);
    SaProgram p = build_sa_lp(spec->dim(), spec->repetition(), sets, c.k, options);
    add_acceptance_objective(p, *spec);
    std::ofstream lp(c.lp_out), side(c.lp_out + ".rational");
    if (!lp || !side) throw UsageError("cannot write " + c.lp_out);
    write_lp(p.lp, lp, side);
  }

  Report r;
  r.csv_header = {"verifier", "t", "k", "epsilon", "linear", "family", "status", "value", "certificate", "variables",
                  "rows"};
  Json points = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SaResult& s = results[i];
    const std::string label = s.relaxation ? "RELAXATION" : "complete";
    points.push_back({{"epsilon", to_string(grid[i])},
                      {"status", to_string(s.solution.status)},
                      {"value", to_string(s.value)},
                      {"value_decimal", to_double(s.value)},
                      {"certificate", s.certificate.ok},
                      {"certificate_failure", s.certificate.failure},
                      {"family", label},
                      {"variables", s.variables},
                      {"rows", s.rows},
                      {"pivots", s.solution.pivots}});
    r.csv_rows.push_back({spec->name(), std::to_string(c.t), std::to_string(c.k), to_string(grid[i]),
                          c.linear ? "1" : "0", label, to_string(s.solution.status), to_string(s.value),
                          s.certificate.ok ? "ok" : "FAILED", std::to_string(s.variables),
                          std::to_string(s.rows)});
  }
  r.json["result"] = {{"verifier", spec->name()}, {"t", c.t},           {"k", c.k},
                      {"linear", c.linear},       {"satisfied", inst.cs.satisfied_by(inst.wires)},
                      {"points", points}};
  return r;
}

// min over linear g of Pr_x[f(x) != g(x)].
Rational distance_to_linear(const std::vector<bool>& table, int dim) {
  const std::uint64_t size = std::uint64_t{1} << dim;
  std::uint64_t best = size;
  for (std::uint64_t a = 0; a < size; ++a) {
    std::uint64_t differ = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
      if (table[x] != static_cast<bool>(std::popcount(a & x) & 1)) ++differ;
    }
    best = std::min(best, differ);
  }
  return ratio(best, size);
}

Report battery_report(const ExperimentConfig& c) {
  Report r;
  r.csv_header = {"function", "blr_pass", "distance", "bound"};
  const int dim = c.dim;
  const std::uint64_t size = std::uint64_t{1} << dim;
  std::uint64_t holds = 0, total = 0;
  Rational worst_slack = 1;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << size); ++code) {
    std::vector<bool> table(size);
    std::string text;
    for (std::uint64_t x = 0; x < size; ++x) {
      table[x] = (code >> x) & 1U;
      text += table[x] ? '1' : '0';
    }
    const Rational pass = blr_pass_probability(table, dim);
    const Rational delta = distance_to_linear(table, dim);
    const bool ok = pass <= 1 - delta;
    holds += ok;
    ++total;
    worst_slack = std::min(worst_slack, Rational(1 - delta - pass));
    r.csv_rows.push_back({text, to_string(pass), to_string(delta), ok ? "holds" : "VIOLATED"});
  }
  Json result{{"dim", dim},
              {"functions", total},
              {"bound_holds", holds},
              {"min_slack", to_string(worst_slack)}};

  if (!c.strategy.empty()) {
    std::ifstream in(c.strategy);
    if (!in) throw UsageError("cannot open strategy " + c.strategy);
    std::ostringstream text;
    text << in.rdbuf();
    const TableStrategy f = load_strategy(text.str());
    Json s{{"dim", f.dim()}, {"t", f.repetition()}, {"k", f.locality()}};
    s["ns_defect"] = to_string(ns_defect(f, std::min(f.locality(), 2)).epsilon);
    if (f.locality() >= 3) {
      s["linearity_test"] = to_string(acceptance_exact(f, LinearityTest(f.dim(), f.repetition())).value);
      s["min_linearity"] = to_string(min_linearity(f).value);
    }
    if (f.locality() >= 2) {
      s["min_consistency"] = to_string(min_consistency(f).value);
      if (f.repetition() % 2 == 0) {
        s["consistency_test"] = to_string(acceptance_exact(f, ConsistencyTest(f.dim(), f.repetition() / 2)).value);
      }
    }
    result["strategy"] = s;
  }
  r.json["result"] = result;
  return r;
}

Report hypothesis_report(const ExperimentConfig& c) {
  struct Point {
    Rational defect, delta;
    bool certificate;
  };
  const auto points = sweep(c.epsilons.size(), [&](std::size_t i) {
    const TableStrategy f = hypothesis_input(c.dim, c.k, c.epsilons[i]);
    const NsDefect d = ns_defect(f, c.k);
    const NearestResult n = nearest_exact(f, c.k_prime, c.ell);
    return Point{d.epsilon, n.distance, n.certificate.ok};
  });
  Report r;
  r.csv_header = {"epsilon", "k", "k_prime", "l", "ns_defect", "delta", "delta_over_4k_eps", "certificate"};
  Json rows = Json::array();
  bool monotone = true;
  bool within_eps = true;
  const Rational four_k = Rational(mpz_class(1) << (2 * c.k));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Rational& eps = c.epsilons[i];
    const Point& p = points[i];
    std::string scaled;
    if (eps != 0) scaled = to_string(Rational(p.delta / (four_k * eps)));
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (c.epsilons[j] < eps && points[j].delta > p.delta) monotone = false;
    }
    within_eps = within_eps && p.delta <= eps;
    rows.push_back({{"epsilon", to_string(eps)},
                    {"ns_defect", to_string(p.defect)},
                    {"delta", to_string(p.delta)},
                    {"delta_decimal", to_double(p.delta)},
                    {"delta_over_4k_eps", scaled},
                    {"certificate", p.certificate}});
    r.csv_rows.push_back({to_string(eps), std::to_string(c.k), std::to_string(c.k_prime), std::to_string(c.ell),
                          to_string(p.defect), to_string(p.delta), scaled, p.certificate ? "ok" : "FAILED"});
  }
  r.json["result"] = {{"dim", c.dim},           {"k", c.k},       {"k_prime", c.k_prime}, {"l", c.ell},
                      {"monotone", monotone}, {"delta_at_most_eps", within_eps}, {"points", rows}};
  return r;
}

Report rounding_report(const ExperimentConfig& c) {
  struct Point {
    Rational exact_delta, defect, scale;
    bool within, certificates;
  };
  const auto points = sweep(c.epsilons.size(), [&](std::size_t i) {
    const StrategyPtr f = rounding_input(c.dim, c.epsilons[i]);
    const NearestResult n = nearest_exact(*f, c.k_prime, c.ell);
    const RoundingResult l = nearest_linear(*f, c.k);
    return Point{n.distance, l.linearity_defect, l.scale, l.within_bound, n.certificate.ok && l.fit.certificate.ok};
  });
  Report r;
  r.csv_header = {"epsilon", "k_bar", "exact_delta", "linearity_defect", "scale", "within_bound", "certificate"};
  Json rows = Json::array();
  bool all_within = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    all_within = all_within && p.within;
    rows.push_back({{"epsilon", to_string(c.epsilons[i])},
                    {"exact_delta", to_string(p.exact_delta)},
                    {"linearity_defect", to_string(p.defect)},
                    {"scale", to_string(p.scale)},
                    {"within_bound", p.within},
                    {"certificate", p.certificates}});
    r.csv_rows.push_back({to_string(c.epsilons[i]), std::to_string(c.k), to_string(p.exact_delta),
                          to_string(p.defect), to_string(p.scale), p.within ? "1" : "0",
                          p.certificates ? "ok" : "FAILED"});
  }
  r.json["result"] = {{"dim", c.dim}, {"k_bar", c.k}, {"all_within_bound", all_within}, {"points", rows}};
  return r;
}

}  // namespace

TableStrategy hypothesis_input(int dim, int k, const Rational& eps) {
  const auto points = all_points(dim, 1);
  std::map<QuerySet, LocalDistribution> table;
  for (const auto& s : all_sets(points, k)) {
    Assignment linear = 0, signaling = 0;
    for (int i = 0; i < s.size(); ++i) {
      if (s[i][0][0]) linear |= Assignment{1} << i;
      if ((s.size() + i) % 2) signaling |= Assignment{1} << i;
    }
    DistributionBuilder b(s.size(), 1);
    b.add(linear, 1 - eps);
    b.add(signaling, eps);
    table.emplace(s, b.build());
  }
  return TableStrategy(dim, 1, k, std::move(table), StrategyMode::Almost, eps);
}

StrategyPtr rounding_input(int dim, const Rational& eps) {
  const auto linear = make_product(dim, 1, [](const BitVector& x) { return x[0]; });
  if (eps == 0) return linear;
  const auto one = make_product(dim, 1, [](const BitVector&) { return true; });
  if (eps == 1) return one;
  return make_mixture({{1 - eps, linear}, {eps, one}});
}

Report run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  Report r;
  switch (config.kind) {
    case Experiment::Arithmetize: r = arithmetize_report(config); break;
    case Experiment::Completeness: r = completeness_report(config); break;
    case Experiment::SoundnessLp: r = soundness_report(config); break;
    case Experiment::TestBattery: r = battery_report(config); break;
    case Experiment::HypothesisProbe: r = hypothesis_report(config); break;
    case Experiment::RoundingProbe: r = rounding_report(config); break;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;

  Json doc;
  doc["tool"] = kVersion;
  doc["experiment"] = to_string(config.kind);
  doc["config_hash"] = config_hash(config);
  doc["config"] = config_json(config);
  doc["seeds"] = {{"verifier", derive_seed(config.seed, "verifier")},
                  {"self-correction", derive_seed(config.seed, "self-correction")},
                  {"mc", derive_seed(config.seed, "mc")}};
  doc["result"] = r.json["result"];
  if (config.timing) {
    doc["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  } else {
    doc["wall_time_ms"] = nullptr;
  }
  r.json = std::move(doc);
  return r;
}

}  // namespace nspcp::cli
