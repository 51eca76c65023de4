#pragma once

// JSON form of a table strategy:
//
//   {"domain": {"dim": n, "points": "all"}, "alphabet": {"bits": t}, "t": t,
//    "k": k, "mode": "exact" | "almost", "epsilon": "p/q",
//    "table": [{"set": ["01,10", ...],
//               "distribution": [{"answers": ["1", "0", ...], "p": "1/2"}]}]}
//
// A query is its coordinates as bit strings joined by ','; an answer is t
// bits, coordinate 0 first. Probabilities are exact "p/q" strings, so
// dump(load(dump(F))) is byte-identical.

#include <string>

#include <json.hpp>

#include "nspcp/strategy.hpp"

namespace nspcp {

nlohmann::ordered_json to_json(const TableStrategy& f);
TableStrategy table_from_json(const nlohmann::ordered_json& doc);

std::string dump_strategy(const TableStrategy& f);
TableStrategy load_strategy(const std::string& text);

std::string query_to_text(const Query& q);
Query query_from_text(const std::string& text);

}  // namespace nspcp
