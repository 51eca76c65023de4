#include "nspcp/strategy_io.hpp"

#include "nspcp/errors.hpp"

namespace nspcp {
namespace {

using Json = nlohmann::ordered_json;

std::string answer_to_text(Answer a, int bits) {
  std::string s(bits, '0');
  for (int j = 0; j < bits; ++j) {
    if ((a >> j) & 1U) s[j] = '1';
  }
  return s;
}

Answer answer_from_text(const std::string& s, int bits) {
  if (static_cast<int>(s.size()) != bits) throw InvalidInput("answer \"" + s + "\" is not " + std::to_string(bits) + " bits");
  Answer a = 0;
  for (int j = 0; j < bits; ++j) {
    if (s[j] == '1') {
      a |= Answer{1} << j;
    } else if (s[j] != '0') {
      throw InvalidInput("answer \"" + s + "\" is not a bit string");
    }
  }
  return a;
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw InvalidInput(std::string("strategy document lacks \"") + name + "\"");
  }
  return doc.at(name);
}

}  // namespace

std::string query_to_text(const Query& q) {
  std::string s;
  for (int j = 0; j < q.repetition(); ++j) {
    if (j) s += ',';
    s += q[j].to_string();
  }
  return s;
}

Query query_from_text(const std::string& text) {
  std::vector<BitVector> coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    coords.push_back(BitVector::parse(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Query(std::move(coords));
}

Json to_json(const TableStrategy& f) {
  Json doc;
  doc["domain"] = {{"dim", f.dim()}, {"points", "all"}};
  doc["alphabet"] = {{"bits", f.repetition()}};
  doc["t"] = f.repetition();
  doc["k"] = f.locality();
  doc["mode"] = f.mode() == StrategyMode::Exact ? "exact" : "almost";
  doc["epsilon"] = to_string(f.epsilon());
  doc["folded"] = f.permutation_folded();
  Json table = Json::array();
  for (const auto& [s, d] : f.table()) {
    Json set = Json::array();
    for (const auto& q : s) set.push_back(query_to_text(q));
    Json dist = Json::array();
    for (const auto& [a, m] : d.masses()) {
      Json answers = Json::array();
      for (int i = 0; i < s.size(); ++i) answers.push_back(answer_to_text(unpack(a, i, d.answer_bits()), d.answer_bits()));
      dist.push_back({{"answers", answers}, {"p", to_string(m)}});
    }
    table.push_back({{"set", set}, {"distribution", dist}});
  }
  doc["table"] = table;
  return doc;
}

TableStrategy table_from_json(const Json& doc) {
  try {
    const int dim = field(doc, "domain").at("dim").get<int>();
    const int t = field(doc, "t").get<int>();
    if (field(doc, "alphabet").at("bits").get<int>() != t) {
      throw InvalidInput("alphabet width differs from t");
    }
    const int k = field(doc, "k").get<int>();
    const std::string mode_name = field(doc, "mode").get<std::string>();
    StrategyMode mode;
    if (mode_name == "exact") {
      mode = StrategyMode::Exact;
    } else if (mode_name == "almost") {
      mode = StrategyMode::Almost;
    } else {
      throw InvalidInput("unknown mode \"" + mode_name + "\"");
    }
    const Rational eps = doc.contains("epsilon") ? parse_rational(doc.at("epsilon").get<std::string>()) : Rational(0);
    const bool folded = doc.contains("folded") && doc.at("folded").get<bool>();

    std::map<QuerySet, LocalDistribution> table;
    for (const auto& entry : field(doc, "table")) {
      std::vector<Query> listed;
      for (const auto& q : field(entry, "set")) listed.push_back(query_from_text(q.get<std::string>()));
      const QuerySet s(listed);
      if (s.size() != static_cast<int>(listed.size())) throw InvalidInput("set lists a query twice");
      std::map<Assignment, Rational> masses;
      for (const auto& row : field(entry, "distribution")) {
        const auto& answers = field(row, "answers");
        if (static_cast<int>(answers.size()) != s.size()) throw InvalidInput("assignment length differs from set size");
        std::vector<Answer> ans(s.size());
        for (std::size_t i = 0; i < listed.size(); ++i) {
          ans[*s.index_of(listed[i])] = answer_from_text(answers[i].get<std::string>(), t);
        }
        masses[pack(ans, t)] += parse_rational(field(row, "p").get<std::string>());
      }
      if (!table.emplace(s, LocalDistribution(s.size(), t, std::move(masses))).second) {
        throw InvalidInput("set " + s.to_string() + " appears twice");
      }
    }
    return TableStrategy(dim, t, k, std::move(table), mode, eps, folded);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed strategy document: ") + e.what());
  }
}

std::string dump_strategy(const TableStrategy& f) { return to_json(f).dump(2) + "\n"; }

TableStrategy load_strategy(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("strategy document is not JSON: ") + e.what());
  }
  return table_from_json(doc);
}

}  // namespace nspcp
