#include <fstream>
#include <sstream>

#include "nspcp/cli.hpp"

namespace nspcp::cli {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

std::string csv_text(const Report& report) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
    out << '\n';
  };
  line(report.csv_header);
  for (const auto& row : report.csv_rows) line(row);
  return out.str();
}

void write_report(const Report& report, const std::string& prefix) {
  write_file(prefix + ".json", report.json.dump(2) + "\n");
  write_file(prefix + ".csv", csv_text(report));
}

Report summarize(const std::vector<std::string>& report_paths) {
  Report out;
  out.csv_header = {"file", "experiment", "config_hash"};
  std::vector<std::vector<std::pair<std::string, std::string>>> fields;
  auto summary = nlohmann::ordered_json::array();
  for (const auto& path : report_paths) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open report " + path);
    nlohmann::ordered_json doc;
    try {
      doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(path + ": " + e.what());
    }
    if (!doc.contains("experiment") || !doc.contains("result")) throw UsageError(path + " is not an nspcp report");
    std::vector<std::pair<std::string, std::string>> row;
    for (const auto& [key, value] : doc["result"].items()) {
      if (value.is_structured()) continue;
      row.emplace_back(key, scalar_text(value));
      if (std::find(out.csv_header.begin(), out.csv_header.end(), key) == out.csv_header.end()) {
        out.csv_header.push_back(key);
      }
    }
    std::vector<std::string> line{path, doc["experiment"].get<std::string>(),
                                  doc.value("config_hash", std::string())};
    fields.push_back(row);
    out.csv_rows.push_back(line);
    summary.push_back({{"file", path}, {"experiment", line[1]}, {"config_hash", line[2]}});
  }
  for (std::size_t i = 0; i < out.csv_rows.size(); ++i) {
    auto& line = out.csv_rows[i];
    for (std::size_t h = 3; h < out.csv_header.size(); ++h) {
      std::string v;
      for (const auto& [key, value] : fields[i]) {
        if (key == out.csv_header[h]) v = value;
      }
      line.push_back(v);
    }
  }
  out.json = {{"tool", kVersion}, {"experiment", "report"}, {"reports", summary}};
  return out;
}

}  // namespace nspcp::cli
