#include "rispaces/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rispaces/error.hpp"
#include "rispaces/numerics.hpp"
#include "rispaces/parallel.hpp"
#include "rispaces/random.hpp"

namespace rispaces::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string case_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i);
  return buf;
}

template <typename Eval>
VerificationReport run_suite(std::string name, std::size_t n, double tol, Eval&& eval) {
  VerificationReport report;
  report.name = std::move(name);
  report.cases = parallel_map<CaseResult>(n, [&](std::size_t i) {
    CaseResult c;
    c.tolerance = tol;
    try {
      eval(i, c);
    } catch (const std::exception& e) {
      c.residual = kInf;
      c.error = e.what();
    }
    return c;
  });
  finalize(report);
  return report;
}

std::vector<double> residual_grid() { return numerics::log_grid(1e-3, 1e3, 241); }

double relative_gap(double x, double y) { return std::fabs(x - y) / std::max(1.0, std::fabs(x)); }

double symmetric_gap(double x, double y) { return std::fabs(x - y) / std::max({1.0, std::fabs(x), std::fabs(y)}); }

}  // namespace

void finalize(VerificationReport& report) {
  report.summary = {};
  for (auto& c : report.cases) {
    c.pass = !c.error && c.residual <= c.tolerance;
    if (std::isnan(c.residual) || c.residual > report.summary.max_residual)
      report.summary.max_residual = std::isnan(c.residual) ? kInf : c.residual;
    if (c.pass) ++report.summary.pass_count;
  }
  report.summary.case_count = report.cases.size();
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [k, v] : c.values) values[k] = v;
    nlohmann::json entry = {{"id", c.id},
                            {"values", values},
                            {"residual", c.residual},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass}};
    if (c.error) entry["error"] = *c.error;
    cases.push_back(entry);
  }
  return {{"name", report.name},
          {"parameters", report.parameters},
          {"cases", cases},
          {"summary",
           {{"max_residual", report.summary.max_residual},
            {"pass_count", report.summary.pass_count},
            {"case_count", report.summary.case_count}}}};
}

std::string to_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "case_id,residual,pass\n";
  char buf[64];
  for (const auto& c : report.cases) {
    std::snprintf(buf, sizeof buf, "%.17g", c.residual);
    out << c.id << ',' << buf << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::vector<StepFunction> default_suite(std::uint64_t seed, std::size_t count) {
  return gen::suite(seed, count);
}

std::vector<StepFunction> indicator_tail_suite() {
  std::vector<StepFunction> out;
  for (int n = 1; n <= 6; ++n) {
    const Rational m(1, 1 << n);
    for (double t : {0.0, 0.1, 0.25, 0.5, 0.75})
      for (double c : {1.0, 2.0, 10.0})
        out.push_back(StepFunction::indicator(Rational(0), m, c) + StepFunction::indicator(m, Rational(1), c * t));
  }
  return out;
}

VerificationReport verify_identity_isometry(const norms::SpaceDescriptor& x, const norms::SpaceDescriptor& y,
                                            const std::vector<StepFunction>& suite, double tol) {
  if (suite.empty()) throw InvalidArgument("verification suite is empty");
  auto report = run_suite("identity_isometry", suite.size(), tol, [&](std::size_t i, CaseResult& c) {
    c.id = case_id("f", i);
    const double nx = norms::norm(x, suite[i]);
    const double ny = norms::norm(y, suite[i]);
    c.values = {{"norm_x", nx}, {"norm_y", ny}};
    c.residual = symmetric_gap(nx, ny);
  });
  report.parameters = {{"x", norms::describe(x)}, {"y", norms::describe(y)}, {"tolerance", tol}};
  return report;
}

VerificationReport verify_operator_isometry(const WeightedCompositionOp& op, const norms::SpaceDescriptor& x,
                                            const norms::SpaceDescriptor& y,
                                            const std::vector<StepFunction>& suite, double tol) {
  if (suite.empty()) throw InvalidArgument("verification suite is empty");
  groups::validate(op);
  auto report = run_suite("operator_isometry", suite.size(), tol, [&](std::size_t i, CaseResult& c) {
    c.id = case_id("f", i);
    const double nx = norms::norm(x, suite[i]);
    const double ny = norms::norm(y, apply_op(op, suite[i]));
    c.values = {{"norm_x", nx}, {"norm_y_of_tf", ny}};
    c.residual = relative_gap(nx, ny);
  });
  report.parameters = {{"x", norms::describe(x)}, {"y", norms::describe(y)}, {"tolerance", tol}};
  return report;
}

std::vector<double> default_gp_grid() { return numerics::log_grid(0.05, 20.0, 32); }

GpResult check_gp(const norms::SpaceDescriptor& x, int n_max, const std::vector<double>& t_grid) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  for (double t : t_grid)
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("tail grid must lie in (0, inf)");
  GpResult out;
  for (int n = 1; n <= n_max; ++n) {
    const Rational m(1, 1LL << n);
    const auto base = StepFunction::indicator(Rational(0), m);
    GpLevel level;
    level.n = n;
    level.indicator_norm = norms::norm(x, base);
    level.min_margin = kInf;
    for (double tau : t_grid) {
      const double t = tau * level.indicator_norm;
      const double margin = norms::norm(x, base + StepFunction::indicator(m, Rational(1), t)) - level.indicator_norm;
      if (margin < level.min_margin) {
        level.min_margin = margin;
        level.worst_t = t;
      }
    }
    out.levels.push_back(level);
    if (level.min_margin > 1e-10) {
      out.holds_at = n;
      break;
    }
  }
  return out;
}

double lo1_residual(const phi::PhiFunction& g, double s, double a) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("s must lie in (0,1)");
  if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("a must lie in (0,1]");
  const double gs = g(1.0 / s);
  const double lhs = g((1.0 - a + a * s) / s) / gs + (1.0 - 1.0 / gs) * g(a);
  return std::fabs(lhs - 1.0);
}

std::vector<std::pair<double, double>> lo_grid(int n) {
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out.emplace_back(static_cast<double>(i) / (n + 1), static_cast<double>(j) / n);
  return out;
}

double lo_discriminator(const phi::PhiFunction& g, const std::vector<std::pair<double, double>>& grid) {
  if (grid.empty()) throw InvalidArgument("discriminator grid is empty");
  double sup = 0.0;
  for (const auto& [s, a] : grid) sup = std::max(sup, lo1_residual(g, s, a));
  return sup;
}

double lorentz_profile(const norms::LorentzWeight& w, double p, double s, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("a must lie in [0,1]");
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("s must lie in (0,1)");
  const double ws = w.antiderivative(s);
  return std::pow(ws + std::pow(a, p) * (w.total() - ws), 1.0 / p);
}

double lorentz_profile_slope_at_one(const norms::LorentzWeight& w, double p, double s, double h) {
  auto backward = [&](double step) { return (lorentz_profile(w, p, s, 1.0) - lorentz_profile(w, p, s, 1.0 - step)) / step; };
  return 2.0 * backward(h / 2.0) - backward(h);
}

VerificationReport lor_discriminators(const norms::LorentzWeight& w1, double p1, const norms::LorentzWeight& w2,
                                      double p2, const std::vector<double>& s_grid) {
  VerificationReport report;
  report.name = "lorentz_discriminators";
  char buf[48];
  for (double s : s_grid) {
    CaseResult c1;
    std::snprintf(buf, sizeof buf, "lor1@%.6g", s);
    c1.id = buf;
    const double f1 = lorentz_profile(w1, p1, s, 0.0), f2 = lorentz_profile(w2, p2, s, 0.0);
    c1.values = {{"profile_1", f1}, {"profile_2", f2}};
    c1.residual = std::fabs(f1 - f2);
    c1.tolerance = kLor1Tolerance;
    report.cases.push_back(c1);

    CaseResult c2;
    std::snprintf(buf, sizeof buf, "lor2@%.6g", s);
    c2.id = buf;
    const double d1 = lorentz_profile_slope_at_one(w1, p1, s), d2 = lorentz_profile_slope_at_one(w2, p2, s);
    c2.values = {{"slope_1", d1}, {"slope_2", d2}};
    c2.residual = std::fabs(d1 - d2);
    c2.tolerance = kLor2Tolerance;
    report.cases.push_back(c2);
  }
  finalize(report);
  report.parameters = {{"w1", norms::describe(w1)}, {"p1", p1}, {"w2", norms::describe(w2)}, {"p2", p2},
                       {"step", kLor2Step}};
  return report;
}

std::string to_string(PairClassification::Kind kind) {
  switch (kind) {
    case PairClassification::Kind::Equal:
      return "Equal";
    case PairClassification::Kind::Scaled:
      return "Scaled";
    case PairClassification::Kind::Distinct:
      return "Distinct";
  }
  return "Distinct";
}

PairClassification orlicz_pair_classify(const phi::OrliczFunction& phi, const phi::OrliczFunction& psi,
                                        double tol) {
  PairClassification out;
  const auto grid = residual_grid();
  auto gap = [&](auto&& candidate) {
    double sup = 0.0;
    for (double t : grid) {
      const double target = psi(t);
      const double r = std::fabs(target - candidate(t)) / std::max(1.0, std::fabs(target));
      sup = std::isnan(r) ? kInf : std::max(sup, r);
    }
    return sup;
  };
  const double equal_gap = gap([&](double t) { return phi(t); });
  if (equal_gap < tol) {
    out.kind = PairClassification::Kind::Equal;
    out.residual = equal_gap;
    return out;
  }
  out.residual = equal_gap;
  const auto g1 = phi::multiplier_group(phi, tol);
  const auto g2 = phi::multiplier_group(psi, tol);
  if (g1.kind != g2.kind) {
    out.notes.push_back("multiplier groups differ: " + phi::to_string(g1.kind) + " vs " + phi::to_string(g2.kind));
    return out;
  }
  if (g1.kind != phi::MultiplierGroup::Kind::Cyclic) {
    out.notes.push_back("multiplier groups are " + phi::to_string(g1.kind) + "; no scaling period to scan");
    return out;
  }
  const double abar = g1.generator;
  if (std::fabs(g2.generator / abar - 1.0) > 1e-6) {
    out.notes.push_back("multiplier generators differ");
    return out;
  }
  const double p = phi::growth_exponent(psi, abar);
  const double period = p * std::log(abar);
  auto objective = [&](double u) {
    const double b = std::exp(u);
    const double scale = std::exp(u / p);
    return gap([&](double t) { return phi(scale * t) / b; });
  };
  const int n = kScaleScanPoints;
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[i] = objective(period * i / n);
  double best_u = 0.0, best = kInf;
  const double h = period / n;
  for (int i = 0; i < n; ++i) {
    const double prev = values[(i + n - 1) % n], next = values[(i + 1) % n];
    if (values[i] > prev || values[i] > next) continue;
    const double u0 = period * i / n;
    const double u = numerics::golden_section_minimize(objective, u0 - h, u0 + h);
    const double v = objective(u);
    if (v < best) {
      best = v;
      best_u = u;
    }
  }
  best_u = std::fmod(best_u, period);
  if (best_u < 0.0) best_u += period;
  if (best < tol) {
    out.kind = PairClassification::Kind::Scaled;
    out.b = std::exp(best_u);
    out.p = p;
    out.residual = best;
  } else {
    out.residual = best;
    out.notes.push_back("no scaling b in [1, abar^p) matches within tolerance");
  }
  return out;
}

ExampleConfig ExampleConfig::desk() { return ExampleConfig{}; }

ExampleConfig ExampleConfig::full_scale() {
  ExampleConfig cfg;
  cfg.eps = 1.0;
  cfg.omega = 1.0;
  cfg.tolerance = 1e-4;
  return cfg;
}

ExampleSetup make_example(const ExampleConfig& cfg) {
  if (!(cfg.p >= 1.0) || !(cfg.omega > 0.0)) throw InvalidArgument("example needs p >= 1 and omega > 0");
  if (!(cfg.breakpoint > 0 && cfg.breakpoint < 1)) throw InvalidArgument("example breakpoint must lie in (0,1)");
  ExampleSetup s;
  s.a = std::exp(2.0 * std::acos(-1.0) * cfg.p / cfg.omega);
  const double x = to_double(cfg.breakpoint);
  s.b = 1.0 / (x + s.a * (1.0 - x));
  const auto sigma = PiecewiseLinearMap::increasing({Rational(0), cfg.breakpoint, Rational(1)}, {s.b, s.b * s.a});
  s.op = groups::build_isometry_candidate(sigma, cfg.p);
  const auto base = phi::log_periodic(cfg.p, cfg.eps, cfg.omega);
  const auto problems = phi::validate(base);
  if (!problems.empty()) throw InvalidArgument("example Orlicz function is invalid: " + problems.front());
  s.x = norms::OrliczSpace{phi::scaled(base, s.b * std::pow(s.a, cfg.shift), cfg.p)};
  s.y = norms::OrliczSpace{base};
  return s;
}

ExampleReport reproduce_example(const ExampleConfig& cfg) {
  ExampleReport out;
  out.setup = make_example(cfg);
  const auto suite = default_suite(cfg.seed, cfg.count);
  out.operator_report = verify_operator_isometry(out.setup.op, out.setup.x, out.setup.y, suite, cfg.tolerance);
  auto probes = suite;
  const auto tails = indicator_tail_suite();
  probes.insert(probes.end(), tails.begin(), tails.end());
  out.identity_report = verify_identity_isometry(out.setup.x, out.setup.y, probes, cfg.tolerance);
  out.identity_refuted = out.identity_report.summary.max_residual > cfg.identity_gap;
  const nlohmann::json params = {{"p", cfg.p},
                                 {"eps", cfg.eps},
                                 {"omega", cfg.omega},
                                 {"breakpoint", format_rational(cfg.breakpoint)},
                                 {"shift", cfg.shift},
                                 {"count", cfg.count},
                                 {"seed", cfg.seed},
                                 {"tolerance", cfg.tolerance},
                                 {"identity_gap", cfg.identity_gap},
                                 {"a", out.setup.a},
                                 {"b", out.setup.b}};
  out.operator_report.parameters.update(params);
  out.identity_report.parameters.update(params);
  return out;
}

}  // namespace rispaces::verify
