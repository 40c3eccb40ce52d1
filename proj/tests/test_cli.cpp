#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "rispaces/cli.hpp"
#include "rispaces/error.hpp"
#include "rispaces/random.hpp"
#include "rispaces/serialize.hpp"

using namespace rispaces;
using nlohmann::json;

namespace {

const double kPi = std::acos(-1.0);

struct Proc {
  int code;
  std::string out;
};

Proc run_cli(const std::string& args) {
  const std::string cmd = std::string(RISPACES_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_config(const std::string& name, const json& j) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << j.dump();
  return path;
}

json two_level_norm_config() {
  return {{"command", "norm"},
          {"space", {{"kind", "orlicz"}, {"phi", {{"family", "power"}, {"p", 2}}}}},
          {"function", {{"0", "1/4", 2.0}, {"1/4", "1", 1.0}}}};
}

cli::Options quiet() {
  cli::Options o;
  o.timestamp = false;
  return o;
}

}  // namespace

TEST(Cli, NormDisplayPrecision) {
  const auto r = cli::run(two_level_norm_config(), quiet());
  ASSERT_EQ(r.exit_code, 0) << r.text;
  EXPECT_EQ(r.document["norm"].get<double>(), 1.3228757);
  EXPECT_NE(r.text.find("1.3228757"), std::string::npos);
  auto raw = quiet();
  raw.raw = true;
  EXPECT_NEAR(cli::run(two_level_norm_config(), raw).document["norm"].get<double>(), std::sqrt(1.75), 1e-10);
}

TEST(Cli, ClassifyPairEqual) {
  const json c = {{"command", "classify-pair"},
                  {"phi", {{"family", "power"}, {"p", 5}}},
                  {"psi", {{"family", "power"}, {"p", 5}}}};
  const auto r = cli::run(c, quiet());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.document["result"], "Equal");
}

TEST(Cli, SchemaErrorsAreInputErrors) {
  EXPECT_EQ(cli::run(json{{"command", "nope"}}).exit_code, 2);
  EXPECT_EQ(cli::run(json{{"command", "norm"}}).exit_code, 2);
  auto extra = two_level_norm_config();
  extra["bogus"] = 1;
  EXPECT_EQ(cli::run(extra).exit_code, 2);
  auto bad_phi = two_level_norm_config();
  bad_phi["space"]["phi"] = {{"family", "logperiodic"}, {"p", 5}, {"eps", 1}, {"omega", 2 * kPi}};
  const auto r = cli::run(bad_phi);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.document["error"].get<std::string>().find("p > eps*omega"), std::string::npos);
  auto bad_expr = two_level_norm_config();
  bad_expr["space"]["phi"] = {{"family", "expr"}, {"src", "t^^2"}};
  const auto e = cli::run(bad_expr);
  EXPECT_EQ(e.exit_code, 2);
  EXPECT_EQ(e.document["column"], 3);
  auto bad_fn = two_level_norm_config();
  bad_fn["function"] = {{"0", "1/2", 1.0}};
  EXPECT_EQ(cli::run(bad_fn).exit_code, 2);
}

TEST(Cli, ExpressionFunctionsAreValidatedAtLoad) {
  auto c = two_level_norm_config();
  c["space"]["phi"] = {{"family", "expr"}, {"src", "t^0.5"}};
  EXPECT_EQ(cli::run(c).exit_code, 2);
  c["space"]["phi"] = {{"family", "expr"}, {"src", "t^5 * exp(sin(ln(t)))"}};
  EXPECT_EQ(cli::run(c).exit_code, 0);
}

TEST(Cli, Multipliers) {
  const json c = {{"command", "multipliers"}, {"phi", {{"family", "logperiodic"}, {"p", 5}, {"eps", 1}, {"omega", 1}}}};
  auto raw = quiet();
  raw.raw = true;
  const auto r = cli::run(c, raw);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.document["kind"], "Cyclic");
  EXPECT_NEAR(r.document["generator"].get<double>() / std::exp(2 * kPi), 1.0, 1e-9);
  EXPECT_NEAR(r.document["growth_exponent"].get<double>(), 5.0, 1e-9);
}

TEST(Cli, CheckGpAndDiscriminate) {
  const json gp = {{"command", "check-gp"}, {"space", {{"kind", "orlicz"}, {"phi", {{"family", "power"}, {"p", 2}}}}}};
  const auto r = cli::run(gp, quiet());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.document["holds_at"], 1);
  EXPECT_EQ(r.document["status"], "numerically supported");

  const json lo = {{"command", "discriminate"}, {"mode", "lo"}, {"G", {{"family", "power"}, {"p", 2}}}};
  EXPECT_EQ(cli::run(lo, quiet()).exit_code, 1);
  const json lo_id = {{"command", "discriminate"}, {"mode", "lo"}, {"G", {{"family", "power"}, {"p", 1}}}};
  EXPECT_EQ(cli::run(lo_id, quiet()).exit_code, 0);

  const json lor = {{"command", "discriminate"},
                    {"mode", "lorentz"},
                    {"w1", {{"family", "constant"}, {"c", 1}}},
                    {"p1", 2},
                    {"w2", {{"family", "affine"}, {"alpha", 2}, {"beta", 2}}},
                    {"p2", 2},
                    {"s_grid", {0.25}}};
  EXPECT_EQ(cli::run(lor, quiet()).exit_code, 1);
}

TEST(Cli, ClassifyMapAndRearrange) {
  const json m = {{"command", "classify-map"}, {"map", {{"0", "1/4", 2.0}, {"1/4", "1", 2.0 / 3.0}}}, {"a", 3}};
  auto raw = quiet();
  raw.raw = true;
  const auto r = cli::run(m, raw);
  ASSERT_EQ(r.exit_code, 0) << r.text;
  EXPECT_EQ(r.document["scale_invariant"]["member"], true);
  EXPECT_NEAR(r.document["scale_invariant"]["b"].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(r.document["discrete"]["member"], false);

  const json re = {{"command", "rearrange"}, {"function", {{"0", "1/2", 1.0}, {"1/2", "3/4", 3.0}, {"3/4", "1", -2.0}}}};
  const auto rr = cli::run(re, quiet());
  EXPECT_EQ(rr.document["rearranged"], json({{"0/1", "1/4", "3"}, {"1/4", "1/2", "2"}, {"1/2", "1/1", "1"}}));
}

TEST(Cli, VerifyOperatorSuite) {
  const json c = {{"command", "verify"},
                  {"mode", "operator"},
                  {"x", {{"kind", "orlicz"}, {"phi", {{"family", "power"}, {"p", 3}}}}},
                  {"y", {{"kind", "orlicz"}, {"phi", {{"family", "power"}, {"p", 3}}}}},
                  {"operator", {{"h", {{"0", "1", -1.0}}}, {"sigma", {{"0", "1/2", 1.0, 0.5}, {"1/2", "1", 1.0, 0.0}}}}},
                  {"count", 20}};
  const auto r = cli::run(c, quiet());
  EXPECT_EQ(r.exit_code, 0) << r.text;
  EXPECT_EQ(r.document["report"]["summary"]["case_count"], 20);
  auto csv = quiet();
  csv.format = "csv";
  const auto rc = cli::run(c, csv);
  EXPECT_EQ(rc.text.rfind("case_id,residual,pass\nf000,", 0), 0u);
}

TEST(Serialize, RoundTrips) {
  const std::vector<json> functions = {
      {{"family", "power"}, {"p", 2.5}},
      {{"family", "logperiodic"}, {"p", 5}, {"eps", 0.1}, {"omega", 2 * kPi}},
      {{"family", "scaled"}, {"base", {{"family", "logperiodic"}, {"p", 5}, {"eps", 1}, {"omega", 1}}}, {"b", 2}, {"p", 5}},
      {{"family", "piecewise"}, {"knots", {{0, 0}, {0.5, 0}, {1, 1}}}},
      {{"family", "expr"}, {"src", "t^5 * exp(sin(ln(t)))"}},
      {{"family", "tilde"}, {"base", {{"family", "power"}, {"p", 3}}}},
      {{"family", "inverse"}, {"base", {{"family", "power"}, {"p", 4}}}},
      {{"family", "weight_to_F"}, {"w", {{"family", "affine"}, {"alpha", 2}, {"beta", 2}}}, {"G", {{"family", "power"}, {"p", 2}}}},
  };
  for (const auto& j : functions) {
    const auto f = io::function_from_json(j);
    const auto again = io::to_json(io::function_from_json(io::to_json(f)));
    EXPECT_EQ(io::to_json(f), again);
    EXPECT_EQ(f(1.7), io::function_from_json(again)(1.7));
  }
  const std::vector<json> spaces = {
      {{"kind", "orlicz"}, {"phi", {{"family", "power"}, {"p", 2}}}},
      {{"kind", "lorentz"}, {"w", {{"family", "step"}, {"edges", {0, 0.25, 1}}, {"values", {2, 0.5}}}}, {"q", 2}},
      {{"kind", "orlicz_lorentz"}, {"w", {{"family", "constant"}, {"c", 1}}}, {"phi", {{"family", "power"}, {"p", 3}}}},
      {{"kind", "ms"}, {"F", {{"family", "power"}, {"p", 2}}}, {"G", {{"family", "power"}, {"p", 3}}}},
  };
  for (const auto& j : spaces) EXPECT_EQ(io::to_json(io::space_from_json(io::to_json(io::space_from_json(j)))), io::to_json(io::space_from_json(j)));
  for (const groups::GroupDescriptor& g : std::vector<groups::GroupDescriptor>{
           groups::FullNS{}, groups::ScaleInvariant{2.5}, groups::Discrete{3.0, 2}, groups::MeasurePreserving{}})
    EXPECT_EQ(io::to_json(io::group_from_json(io::to_json(g))), io::to_json(g));
  Rng rng(2);
  for (const auto& f : gen::suite(5, 30)) EXPECT_EQ(io::step_function_from_json(io::to_json(f)), f);
  for (int i = 0; i < 30; ++i) {
    const auto s = gen::discrete_class_map(rng, 2.0, 1, 0);
    EXPECT_EQ(io::map_from_json(io::to_json(s)), s);
  }
}

TEST(Serialize, RejectsMalformedDescriptors) {
  EXPECT_THROW(io::function_from_json(json{{"family", "unknown"}}), InvalidArgument);
  EXPECT_THROW(io::function_from_json(json{{"family", "power"}}), InvalidArgument);
  EXPECT_THROW(io::orlicz_from_json(json{{"family", "power"}, {"p", 0.5}}), InvalidArgument);
  EXPECT_THROW(io::space_from_json(json{{"kind", "lorentz"}, {"w", {{"family", "constant"}, {"c", 1}}}, {"q", 0.5}}),
               InvalidArgument);
  EXPECT_THROW(io::step_function_from_json(json{{"0", "1"}}), InvalidArgument);
  EXPECT_THROW(io::group_from_json(json{{"group", "NS_discrete"}, {"a", 2}, {"d", 0}}), InvalidArgument);
}

TEST(CliProcess, ExitCodesAndDeterminism) {
  const auto cfg = write_config("norm.json", two_level_norm_config());
  const auto r = run_cli("--config " + cfg + " --no-timestamp");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1.3228757"), std::string::npos);
  EXPECT_EQ(run_cli("--config /nonexistent.json").code, 2);
  EXPECT_EQ(run_cli("no-such-command").code, 2);
  EXPECT_EQ(run_cli("--config " + cfg + " --format xml").code, 2);
  const auto bad = write_config("bad.json", json::parse("[1,2]"));
  EXPECT_EQ(run_cli("--config " + bad).code, 2);

  const json v = {{"command", "verify"},
                  {"mode", "identity"},
                  {"x", {{"kind", "orlicz"}, {"phi", {{"family", "logperiodic"}, {"p", 5}, {"eps", 1}, {"omega", 1}}}}},
                  {"y", {{"kind", "orlicz"}, {"phi", {{"family", "power"}, {"p", 5}}}}},
                  {"count", 30}};
  const auto vcfg = write_config("verify.json", v);
  const auto a = run_cli("--config " + vcfg + " --seed 17 --no-timestamp");
  const auto b = run_cli("--config " + vcfg + " --seed 17 --no-timestamp");
  EXPECT_EQ(a.code, 1);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
  const auto c = run_cli("--config " + vcfg + " --seed 18 --no-timestamp");
  EXPECT_NE(a.out, c.out);
  EXPECT_NE(run_cli("--config " + vcfg + " --seed 17").out.find("generated_at"), std::string::npos);
}

TEST(CliProcess, ReproduceExampleDefaults) {
  const auto r = run_cli("reproduce-example --no-timestamp --raw");
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["configurations"][0]["name"], "desk");
  EXPECT_LT(doc["configurations"][0]["max_residual"].get<double>(), 1e-6);
  EXPECT_EQ(doc["passed"], true);
}
