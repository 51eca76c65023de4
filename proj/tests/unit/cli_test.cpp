#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nspcp/cli.hpp"
#include "nspcp/errors.hpp"

using namespace nspcp;
using namespace nspcp::cli;

namespace {

const std::string kData = NSPCP_DATA_DIR;

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nspcp_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig and_completeness(int t) {
  ExperimentConfig c;
  c.kind = Experiment::Completeness;
  c.circuit = kData + "/circuits/and.txt";
  c.input = "11";
  c.verifier = t == 1 ? "almss" : "repeated-almss";
  c.t = t;
  return c;
}

}  // namespace

TEST(Config, ParsesEverySection) {
  const ExperimentConfig c = config_from_toml(R"(
experiment = "soundness-lp"
[instance]
circuit = "x.txt"
input = "0"
[parameters]
verifier = "repeated-almss"
t = 2
k = 3
epsilons = ["0", "1/8"]
linear = true
family = "issued"
seed = 7
[output]
path = "out/x"
timing = true
)");
  EXPECT_EQ(c.kind, Experiment::SoundnessLp);
  EXPECT_EQ(c.circuit, "x.txt");
  EXPECT_EQ(c.t, 2);
  EXPECT_EQ(c.k, 3);
  ASSERT_EQ(c.epsilons.size(), 2U);
  EXPECT_EQ(c.epsilons[1], Rational(1, 8));
  EXPECT_TRUE(c.linear);
  EXPECT_TRUE(c.issued);
  EXPECT_EQ(c.seed, 7U);
  EXPECT_EQ(c.out, "out/x");
  EXPECT_TRUE(c.timing);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(config_from_toml("experiment = \"completeness\"\nbogus = 1\n"), UsageError);
  EXPECT_THROW(config_from_toml("experiment = \"completeness\"\n[parameters]\ntee = 2\n"), UsageError);
  EXPECT_THROW(config_from_toml("experiment = \"nonsense\"\n"), UsageError);
  EXPECT_THROW(config_from_toml("experiment = \"completeness\"\n[parameters]\nt = \"two\"\n"), UsageError);
  EXPECT_THROW(config_from_toml("experiment = \"completeness\"\n[parameters]\nepsilon = \"x/y\"\n"), UsageError);
  EXPECT_THROW(config_from_toml("experiment = \"completeness\"\n[parameters]\nmode = \"fast\"\n"), UsageError);
  try {
    config_from_toml("experiment = \"completeness\"\n[parameters\n");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Config, ShippedConfigsValidate) {
  for (const auto& entry : std::filesystem::directory_iterator(kData + "/configs")) {
    ExperimentConfig c = load_config(entry.path().string());
    if (!c.circuit.empty()) c.circuit = kData + "/../" + c.circuit;
    EXPECT_NO_THROW(validate(c)) << entry.path();
  }
}

TEST(Validate, RejectsOutOfScope) {
  ExperimentConfig c = and_completeness(1);
  EXPECT_NO_THROW(validate(c));

  ExperimentConfig bad = c;
  bad.t = 2;
  EXPECT_THROW(validate(bad), UsageError);  // almss is t = 1
  bad = c;
  bad.input = "1";
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.input = "12";
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.circuit = kData + "/circuits/missing.txt";
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.verifier = "other";
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.kind = Experiment::SoundnessLp;
  bad.verifier = "full";
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.kind = Experiment::HypothesisProbe;
  EXPECT_THROW(validate(bad), UsageError);  // no epsilon grid
  bad.epsilons = {Rational(1, 4)};
  bad.k = 5;
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.epsilon = Rational(3, 2);
  EXPECT_THROW(validate(bad), UsageError);
}

TEST(Config, HashIsStableAndSensitive) {
  const ExperimentConfig c = and_completeness(2);
  EXPECT_EQ(config_hash(c), config_hash(c));
  EXPECT_EQ(config_hash(c).size(), 64U);
  ExperimentConfig timed = c;
  timed.timing = true;
  timed.out = "elsewhere";
  EXPECT_EQ(config_hash(timed), config_hash(c));
  ExperimentConfig other = c;
  other.seed = 1;
  EXPECT_NE(config_hash(other), config_hash(c));
}

TEST(Run, CompletenessOfAndIsExactlyOne) {
  const Report r = run(and_completeness(2));
  EXPECT_EQ(r.json["experiment"], "completeness");
  EXPECT_EQ(r.json["result"]["acceptance"], "1/1");
  EXPECT_TRUE(r.json["wall_time_ms"].is_null());
  ASSERT_EQ(r.csv_rows.size(), 1U);
  EXPECT_EQ(r.csv_rows[0][3], "1/1");
}

TEST(Run, ReportsAreByteIdentical) {
  const ExperimentConfig c = and_completeness(1);
  write_report(run(c), scratch("a").string());
  write_report(run(c), scratch("b").string());
  EXPECT_EQ(slurp(scratch("a.json")), slurp(scratch("b.json")));
  EXPECT_EQ(slurp(scratch("a.csv")), slurp(scratch("b.csv")));
}

TEST(Run, SoundnessOfUnsatisfiableWireIsBelowOne) {
  ExperimentConfig c;
  c.kind = Experiment::SoundnessLp;
  c.circuit = kData + "/circuits/one_wire.txt";
  c.input = "0";
  c.k = 4;
  c.linear = true;
  const Report r = run(c);
  const auto& point = r.json["result"]["points"][0];
  EXPECT_EQ(point["value"], "1/2");
  EXPECT_TRUE(point["certificate"].get<bool>());
  EXPECT_FALSE(r.json["result"]["satisfied"].get<bool>());
}

TEST(Run, HypothesisProbeIsMonotone) {
  ExperimentConfig c;
  c.kind = Experiment::HypothesisProbe;
  c.dim = 2;
  c.k = 2;
  c.k_prime = 2;
  c.ell = 2;
  c.epsilons = {Rational(0), Rational(1, 16), Rational(1, 4)};
  const Report r = run(c);
  EXPECT_EQ(r.csv_rows.size(), 3U);
  EXPECT_TRUE(r.json["result"]["monotone"].get<bool>());
  EXPECT_TRUE(r.json["result"]["delta_at_most_eps"].get<bool>());
  EXPECT_EQ(r.json["result"]["points"][0]["delta"], "0/1");
}

TEST(Report, SummarizeJoinsScalarFields) {
  write_report(run(and_completeness(1)), scratch("s1").string());
  write_report(run(and_completeness(2)), scratch("s2").string());
  const Report s = summarize({scratch("s1.json").string(), scratch("s2.json").string()});
  ASSERT_EQ(s.csv_rows.size(), 2U);
  const auto& h = s.csv_header;
  const auto col = std::find(h.begin(), h.end(), "acceptance") - h.begin();
  ASSERT_LT(static_cast<std::size_t>(col), h.size());
  EXPECT_EQ(s.csv_rows[1][col], "1/1");
  EXPECT_THROW(summarize({scratch("s1.csv").string()}), UsageError);
}

TEST(Report, CsvQuotesFields) {
  Report r;
  r.csv_header = {"a", "b"};
  r.csv_rows = {{"x,y", "say \"hi\""}};
  EXPECT_EQ(csv_text(r), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
}
