#include "rispaces/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "rispaces/error.hpp"
#include "rispaces/expression.hpp"
#include "rispaces/groups.hpp"
#include "rispaces/serialize.hpp"
#include "rispaces/verify.hpp"

namespace rispaces::cli {

namespace {

using nlohmann::json;

struct Schema {
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> table = {
      {"norm", {{"space", "function"}, {}}},
      {"rearrange", {{"function"}, {}}},
      {"classify-map", {{"map"}, {"a", "d"}}},
      {"multipliers", {{"phi"}, {"tol"}}},
      {"check-gp", {{"space"}, {"n_max", "t_grid"}}},
      {"discriminate", {{"mode"}, {"G", "grid_n", "w1", "p1", "w2", "p2", "s_grid", "tol"}}},
      {"verify", {{"mode", "x", "y"}, {"operator", "functions", "seed", "count", "tol"}}},
      {"classify-pair", {{"phi", "psi"}, {"tol"}}},
      {"reproduce-example",
       {{},
        {"configurations", "p", "eps", "omega", "breakpoint", "shift", "count", "seed", "tolerance",
         "identity_gap"}}},
  };
  return table;
}

const json& get(const json& config, const char* key) { return config.at(key); }

double number_or(const json& config, const char* key, double fallback) {
  if (!config.contains(key)) return fallback;
  const json& v = config.at(key);
  if (!v.is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t integer_or(const json& config, const char* key, std::int64_t fallback) {
  if (!config.contains(key)) return fallback;
  const json& v = config.at(key);
  if (!v.is_number_integer()) throw InvalidArgument(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t seed_of(const json& config, const Options& options, std::uint64_t fallback) {
  if (options.seed) return *options.seed;
  const std::int64_t s = integer_or(config, "seed", static_cast<std::int64_t>(fallback));
  if (s < 0) throw InvalidArgument("seed must be nonnegative");
  return static_cast<std::uint64_t>(s);
}

double tol_of(const json& config, const Options& options, const char* key, double fallback) {
  const double t = options.tol ? *options.tol : number_or(config, key, fallback);
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("tolerance must be a positive finite number");
  return t;
}

std::vector<double> number_list(const json& v, const char* what) {
  if (!v.is_array()) throw InvalidArgument(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw InvalidArgument(std::string(what) + " must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

struct Outcome {
  json document;
  std::vector<std::pair<std::string, verify::VerificationReport>> reports;
  int exit_code = kOk;
};

void add_report(Outcome& out, std::string label, verify::VerificationReport report) {
  if (!report.all_passed()) out.exit_code = kVerificationFailure;
  out.reports.emplace_back(std::move(label), std::move(report));
}

Outcome cmd_norm(const json& c, const Options&) {
  const auto x = io::space_from_json(get(c, "space"));
  const auto f = io::step_function_from_json(get(c, "function"));
  return {{{"space", norms::describe(x)}, {"norm", norms::norm(x, f)}}, {}, kOk};
}

Outcome cmd_rearrange(const json& c, const Options&) {
  const auto f = io::step_function_from_json(get(c, "function"));
  return {{{"rearranged", io::to_json(rearrange(f))}}, {}, kOk};
}

Outcome cmd_classify_map(const json& c, const Options&) {
  const auto sigma = io::map_from_json(get(c, "map"));
  json doc;
  json slopes = json::array();
  for (const auto& p : sigma.pieces()) slopes.push_back(p.slope);
  doc["slopes"] = slopes;
  doc["measure_preserving"] = groups::is_measure_preserving(sigma);
  const auto lattice = groups::infer_slope_lattice(sigma);
  doc["inferred_lattice"] = lattice ? json(*lattice) : json(nullptr);
  if (c.contains("a")) {
    const double a = number_or(c, "a", 0.0);
    const auto d = integer_or(c, "d", 1);
    if (d < 1 || d > 1000000) throw InvalidArgument("lattice step d must lie in [1, 1e6]");
    const auto b = groups::scale_class_witness(sigma, a);
    const auto s = groups::discrete_class_witness(sigma, a, static_cast<int>(d));
    doc["scale_invariant"] = {{"a", a}, {"member", b.has_value()}, {"b", b ? json(*b) : json(nullptr)}};
    doc["discrete"] = {{"a", a}, {"d", d}, {"member", s.has_value()}, {"s", s ? json(*s) : json(nullptr)}};
  } else if (c.contains("d")) {
    throw InvalidArgument("field 'd' requires field 'a'");
  }
  return {doc, {}, kOk};
}

Outcome cmd_multipliers(const json& c, const Options& options) {
  const auto f = io::orlicz_from_json(get(c, "phi"));
  const double tol = tol_of(c, options, "tol", 1e-9);
  const auto mg = phi::multiplier_group(f, tol);
  json doc = {{"phi", phi::describe(f)}, {"kind", phi::to_string(mg.kind)}, {"cutoff_reached", mg.cutoff_reached}};
  doc["generator"] = mg.kind == phi::MultiplierGroup::Kind::Cyclic ? json(mg.generator) : json(nullptr);
  if (mg.kind == phi::MultiplierGroup::Kind::Cyclic)
    doc["growth_exponent"] = phi::growth_exponent(f, mg.generator);
  else if (mg.kind == phi::MultiplierGroup::Kind::FullPositiveReals)
    doc["growth_exponent"] = phi::growth_exponent(f, 2.0);
  else
    doc["growth_exponent"] = nullptr;
  const auto iso = groups::iso_group_of_orlicz(f, tol);
  doc["isometry_group"] = groups::describe(iso.group);
  doc["warnings"] = iso.warnings;
  return {doc, {}, kOk};
}

Outcome cmd_check_gp(const json& c, const Options&) {
  const auto x = io::space_from_json(get(c, "space"));
  const auto n_max = integer_or(c, "n_max", 8);
  if (n_max < 1 || n_max > 60) throw InvalidArgument("n_max must lie in [1, 60]");
  const auto grid = c.contains("t_grid") ? number_list(c.at("t_grid"), "t_grid") : verify::default_gp_grid();
  if (grid.empty()) throw InvalidArgument("t_grid must be nonempty");
  for (double t : grid)
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("t_grid entries must lie in (0, inf)");
  const auto r = verify::check_gp(x, static_cast<int>(n_max), grid);
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"n", l.n}, {"indicator_norm", l.indicator_norm}, {"min_margin", l.min_margin}, {"worst_t", l.worst_t}});
  json doc = {{"space", norms::describe(x)}, {"n_max", n_max}, {"levels", levels}};
  doc["holds_at"] = r.holds_at ? json(*r.holds_at) : json(nullptr);
  doc["status"] = r.holds_at ? "numerically supported" : "not observed up to n_max";
  return {doc, {}, kOk};
}

Outcome cmd_discriminate(const json& c, const Options& options) {
  const std::string mode = get(c, "mode").is_string() ? get(c, "mode").get<std::string>() : "";
  Outcome out;
  if (mode == "lo") {
    if (!c.contains("G")) throw InvalidArgument("mode 'lo' requires field 'G'");
    const auto g = io::phi_function_from_json(c.at("G"));
    const auto n = integer_or(c, "grid_n", 50);
    if (n < 1 || n > 2000) throw InvalidArgument("grid_n must lie in [1, 2000]");
    const double tol = tol_of(c, options, "tol", 1e-12);
    const double sup = verify::lo_discriminator(g, verify::lo_grid(static_cast<int>(n)));
    out.document = {{"mode", mode}, {"G", phi::describe(g)}, {"grid_n", n}, {"sup_residual", sup}, {"tolerance", tol},
                    {"identity", sup <= tol}};
    out.exit_code = sup <= tol ? kOk : kVerificationFailure;
    return out;
  }
  if (mode == "lorentz") {
    for (const char* k : {"w1", "p1", "w2", "p2"})
      if (!c.contains(k)) throw InvalidArgument(std::string("mode 'lorentz' requires field '") + k + "'");
    const auto w1 = io::weight_from_json(c.at("w1"));
    const auto w2 = io::weight_from_json(c.at("w2"));
    const double p1 = number_or(c, "p1", 1.0), p2 = number_or(c, "p2", 1.0);
    if (!(p1 >= 1.0) || !(p2 >= 1.0)) throw InvalidArgument("p1 and p2 must be >= 1");
    std::vector<double> s_grid;
    if (c.contains("s_grid")) {
      s_grid = number_list(c.at("s_grid"), "s_grid");
    } else {
      for (int i = 1; i < 20; ++i) s_grid.push_back(i / 20.0);
    }
    for (double s : s_grid)
      if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("s_grid entries must lie in (0,1)");
    auto report = verify::lor_discriminators(w1, p1, w2, p2, s_grid);
    out.document = {{"mode", mode}, {"report", verify::to_json(report)}};
    add_report(out, "lorentz", std::move(report));
    return out;
  }
  throw InvalidArgument("discriminate mode must be 'lo' or 'lorentz'");
}

Outcome cmd_verify(const json& c, const Options& options) {
  const std::string mode = get(c, "mode").is_string() ? get(c, "mode").get<std::string>() : "";
  if (mode != "identity" && mode != "operator") throw InvalidArgument("verify mode must be 'identity' or 'operator'");
  const auto x = io::space_from_json(get(c, "x"));
  const auto y = io::space_from_json(get(c, "y"));
  const double tol = tol_of(c, options, "tol", 1e-9);
  std::optional<WeightedCompositionOp> op;
  if (mode == "operator") {
    if (!c.contains("operator")) throw InvalidArgument("mode 'operator' requires field 'operator'");
    op = io::operator_from_json(c.at("operator"));
  }
  std::vector<StepFunction> suite;
  json params;
  if (c.contains("functions")) {
    if (!c.at("functions").is_array() || c.at("functions").empty())
      throw InvalidArgument("functions must be a nonempty array");
    for (const auto& f : c.at("functions")) suite.push_back(io::step_function_from_json(f));
    params["suite"] = "explicit";
  } else {
    const auto seed = seed_of(c, options, verify::kDefaultSeed);
    const auto count = integer_or(c, "count", 100);
    if (count < 1 || count > 100000) throw InvalidArgument("count must lie in [1, 100000]");
    suite = verify::default_suite(seed, static_cast<std::size_t>(count));
    params = {{"suite", "random"}, {"seed", seed}, {"count", count}};
  }
  auto report = op ? verify::verify_operator_isometry(*op, x, y, suite, tol)
                   : verify::verify_identity_isometry(x, y, suite, tol);
  report.parameters.update(params);
  Outcome out;
  out.document = {{"mode", mode}, {"report", verify::to_json(report)}};
  add_report(out, mode, std::move(report));
  return out;
}

Outcome cmd_classify_pair(const json& c, const Options& options) {
  const auto f = io::orlicz_from_json(get(c, "phi"));
  const auto g = io::orlicz_from_json(get(c, "psi"));
  const double tol = tol_of(c, options, "tol", 1e-9);
  const auto r = verify::orlicz_pair_classify(f, g, tol);
  json doc = {{"phi", phi::describe(f)}, {"psi", phi::describe(g)}, {"result", verify::to_string(r.kind)},
              {"residual", r.residual}, {"notes", r.notes}};
  if (r.kind == verify::PairClassification::Kind::Scaled) {
    doc["b"] = r.b;
    doc["p"] = r.p;
  }
  return {doc, {}, kOk};
}

Outcome cmd_reproduce_example(const json& c, const Options& options) {
  std::vector<std::string> names = {"desk", "full_scale"};
  if (c.contains("configurations")) {
    const json& v = c.at("configurations");
    if (!v.is_array() || v.empty()) throw InvalidArgument("configurations must be a nonempty array");
    names.clear();
    for (const auto& e : v) {
      if (!e.is_string() || (e != "desk" && e != "full_scale"))
        throw InvalidArgument("configurations entries must be 'desk' or 'full_scale'");
      names.push_back(e.get<std::string>());
    }
  }
  Outcome out;
  json configs = json::array();
  bool passed = true;
  for (const auto& name : names) {
    auto cfg = name == "desk" ? verify::ExampleConfig::desk() : verify::ExampleConfig::full_scale();
    cfg.p = number_or(c, "p", cfg.p);
    cfg.eps = number_or(c, "eps", cfg.eps);
    cfg.omega = number_or(c, "omega", cfg.omega);
    if (c.contains("breakpoint")) {
      const json& bp = c.at("breakpoint");
      if (!bp.is_string()) throw InvalidArgument("breakpoint must be a rational string such as \"1/2\"");
      cfg.breakpoint = parse_rational(bp.get<std::string>());
    }
    const auto shift = integer_or(c, "shift", cfg.shift);
    if (shift < -8 || shift > 8) throw InvalidArgument("shift must lie in [-8, 8]");
    cfg.shift = static_cast<int>(shift);
    const auto count = integer_or(c, "count", static_cast<std::int64_t>(cfg.count));
    if (count < 1 || count > 100000) throw InvalidArgument("count must lie in [1, 100000]");
    cfg.count = static_cast<std::size_t>(count);
    cfg.seed = seed_of(c, options, cfg.seed);
    cfg.tolerance = tol_of(c, options, "tolerance", cfg.tolerance);
    cfg.identity_gap = number_or(c, "identity_gap", cfg.identity_gap);
    const auto r = verify::reproduce_example(cfg);
    configs.push_back({{"name", name},
                       {"max_residual", r.operator_report.summary.max_residual},
                       {"identity_max_residual", r.identity_report.summary.max_residual},
                       {"identity_refuted", r.identity_refuted},
                       {"passed", r.passed()},
                       {"operator_report", verify::to_json(r.operator_report)},
                       {"identity_report", verify::to_json(r.identity_report)}});
    passed = passed && r.passed();
    out.reports.emplace_back(name + "/operator", r.operator_report);
  }
  out.document = {{"configurations", configs}, {"passed", passed}};
  out.exit_code = passed ? kOk : kVerificationFailure;
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string render_csv(const Outcome& out, const json& document) {
  if (out.reports.size() == 1) return verify::to_csv(out.reports.front().second);
  if (!out.reports.empty()) {
    std::ostringstream s;
    s << "case_id,residual,pass\n";
    for (const auto& [label, report] : out.reports) {
      std::istringstream rows(verify::to_csv(report));
      std::string line;
      std::getline(rows, line);
      while (std::getline(rows, line)) s << label << '/' << line << '\n';
    }
    return s.str();
  }
  std::ostringstream s;
  s << "key,value\n";
  for (const auto& [k, v] : document.items()) {
    if (v.is_structured()) continue;
    s << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return s.str();
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : schemas()) v.push_back(k);
    return v;
  }();
  return names;
}

void check_schema(const json& config) {
  if (!config.is_object()) throw InvalidArgument("config must be a JSON object");
  if (!config.contains("command") || !config.at("command").is_string())
    throw InvalidArgument("config needs a string field 'command'");
  const std::string command = config.at("command").get<std::string>();
  const auto it = schemas().find(command);
  if (it == schemas().end()) throw InvalidArgument("unknown command '" + command + "'");
  for (const auto& k : it->second.required)
    if (!config.contains(k)) throw InvalidArgument("command '" + command + "' requires field '" + k + "'");
  for (const auto& [k, _] : config.items())
    if (k != "command" && !it->second.required.count(k) && !it->second.optional.count(k))
      throw InvalidArgument("command '" + command + "' does not accept field '" + k + "'");
}

json display_rounded(const json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) return j;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return std::strtod(buf, nullptr);
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(display_rounded(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = display_rounded(v);
    return out;
  }
  return j;
}

RunResult run(const json& config, const Options& options) {
  RunResult result;
  try {
    if (options.format != "json" && options.format != "csv") throw InvalidArgument("format must be 'json' or 'csv'");
    check_schema(config);
    const std::string command = config.at("command").get<std::string>();
    Outcome out;
    if (command == "norm") out = cmd_norm(config, options);
    else if (command == "rearrange") out = cmd_rearrange(config, options);
    else if (command == "classify-map") out = cmd_classify_map(config, options);
    else if (command == "multipliers") out = cmd_multipliers(config, options);
    else if (command == "check-gp") out = cmd_check_gp(config, options);
    else if (command == "discriminate") out = cmd_discriminate(config, options);
    else if (command == "verify") out = cmd_verify(config, options);
    else if (command == "classify-pair") out = cmd_classify_pair(config, options);
    else out = cmd_reproduce_example(config, options);
    json doc = {{"command", command}};
    for (const auto& [k, v] : out.document.items()) doc[k] = v;
    doc["exit_code"] = out.exit_code;
    if (options.timestamp) doc["generated_at"] = utc_timestamp();
    if (!options.raw) doc = display_rounded(doc);
    result.exit_code = out.exit_code;
    result.document = doc;
    result.text = options.format == "csv" ? render_csv(out, doc) : doc.dump(2) + "\n";
  } catch (const expr::ParseError& e) {
    result.exit_code = kInputError;
    result.document = {{"error", e.what()}, {"line", e.line()}, {"column", e.column()}};
  } catch (const InvalidArgument& e) {
    result.exit_code = kInputError;
    result.document = {{"error", e.what()}};
  } catch (const json::exception& e) {
    result.exit_code = kInputError;
    result.document = {{"error", e.what()}};
  } catch (const std::exception& e) {
    result.exit_code = kVerificationFailure;
    result.document = {{"error", e.what()}};
  }
  if (result.exit_code == kInputError || result.document.contains("error")) result.text = result.document.dump(2) + "\n";
  return result;
}

int main(int argc, char** argv) {
  CLI::App app{"Rearrangement-invariant space norms, isometries and discriminators"};
  std::string command, config_path, out_path;
  Options options;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool no_timestamp = false;
  app.add_option("command", command, "Command; overrides the config's 'command' field");
  app.add_option("--config", config_path, "JSON run config");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--format", options.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  auto* seed_opt = app.add_option("--seed", seed, "Random suite seed");
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance override");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the generated_at field");
  app.add_flag("--raw", options.raw, "Full precision numbers");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if (*seed_opt) options.seed = seed;
  if (*tol_opt) options.tol = tol;
  options.timestamp = !no_timestamp;

  json config = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config '" << config_path << "'\n";
      return kInputError;
    }
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      std::cerr << "error: config is not valid JSON: " << e.what() << '\n';
      return kInputError;
    }
    if (!config.is_object()) {
      std::cerr << "error: config must be a JSON object\n";
      return kInputError;
    }
  }
  if (!command.empty()) config["command"] = command;
  if (!config.contains("command")) {
    std::cerr << "error: no command given\n" << app.help();
    return kInputError;
  }

  const auto result = run(config, options);
  if (result.document.contains("error")) {
    std::cerr << "error: " << result.document.at("error").get<std::string>() << '\n';
    return result.exit_code;
  }
  if (out_path.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!(out << result.text)) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kInputError;
    }
  }
  return result.exit_code;
}

}  // namespace rispaces::cli
