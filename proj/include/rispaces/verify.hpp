#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rispaces/groups.hpp"
#include "rispaces/linear_map.hpp"
#include "rispaces/norms.hpp"

namespace rispaces::verify {

struct CaseResult {
  std::string id;
  std::vector<std::pair<std::string, double>> values;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<std::string> error;
};

struct Summary {
  double max_residual = 0.0;
  std::size_t pass_count = 0;
  std::size_t case_count = 0;
};

/// Per-case results plus a summary; pass <=> residual <= tolerance.
struct VerificationReport {
  std::string name;
  std::vector<CaseResult> cases;
  Summary summary;
  nlohmann::json parameters = nlohmann::json::object();

  bool all_passed() const { return summary.pass_count == summary.case_count; }
};

/// Sets each pass flag from residual/tolerance and recomputes the summary.
void finalize(VerificationReport& report);

nlohmann::json to_json(const VerificationReport& report);
/// "case_id,residual,pass" rows with a header line.
std::string to_csv(const VerificationReport& report);

/// Fixed seed of the default random suite.
inline constexpr std::uint64_t kDefaultSeed = 20240521;

/// 100 random step functions: 1-8 pieces, dyadic breakpoints, magnitudes
/// log-uniform in [1e-2, 1e2].
std::vector<StepFunction> default_suite(std::uint64_t seed = kDefaultSeed, std::size_t count = 100);

/// c (chi_[0,2^-n] + t chi_[2^-n,1]) for n = 1..6, a spread of tails t and
/// overall scales c.
std::vector<StepFunction> indicator_tail_suite();

/// residual = |N_X(f) - N_Y(f)| / max(1, N_X(f), N_Y(f)), symmetric in X and Y.
VerificationReport verify_identity_isometry(const norms::SpaceDescriptor& x, const norms::SpaceDescriptor& y,
                                            const std::vector<StepFunction>& suite, double tol = 1e-9);

/// residual = |N_Y(T f) - N_X(f)| / max(1, N_X(f)).
VerificationReport verify_operator_isometry(const WeightedCompositionOp& op, const norms::SpaceDescriptor& x,
                                            const norms::SpaceDescriptor& y,
                                            const std::vector<StepFunction>& suite, double tol = 1e-9);

struct GpLevel {
  int n = 0;
  double indicator_norm = 0.0;
  double min_margin = 0.0;
  double worst_t = 0.0;
};

struct GpResult {
  std::optional<int> holds_at;
  std::vector<GpLevel> levels;
};

/// Default tail grid; points are in units of ||chi_[0,2^-n]||_X.
std::vector<double> default_gp_grid();

/// Smallest n <= n_max with ||chi_[0,2^-n] + t chi_[2^-n,1]|| - ||chi_[0,2^-n]|| > 1e-10
/// for every t = tau ||chi_[0,2^-n]||, tau in t_grid. Holding for every t > 0
/// is scale free, so measuring t against the indicator norm keeps one grid
/// meaningful for all n.
GpResult check_gp(const norms::SpaceDescriptor& x, int n_max = 8,
                  const std::vector<double>& t_grid = default_gp_grid());

/// |(1/G(1/s)) G((1-a+as)/s) + (1 - 1/G(1/s)) G(a) - 1|
double lo1_residual(const phi::PhiFunction& g, double s, double a);

/// (s, a) pairs with s = i/(n+1), a = j/n for i, j = 1..n.
std::vector<std::pair<double, double>> lo_grid(int n = 50);

/// Max lo1 residual over the grid.
double lo_discriminator(const phi::PhiFunction& g, const std::vector<std::pair<double, double>>& grid);

/// ||chi_[0,s] + a chi_[s,1]||_{w,p} = (W(s) + a^p (W(1) - W(s)))^{1/p}.
double lorentz_profile(const norms::LorentzWeight& w, double p, double s, double a);

inline constexpr double kLor1Tolerance = 1e-9;
inline constexpr double kLor2Tolerance = 1e-4;
inline constexpr double kLor2Step = 1e-6;

/// Backward difference of the profile at a = 1 with step h, Richardson-refined.
double lorentz_profile_slope_at_one(const norms::LorentzWeight& w, double p, double s, double h = kLor2Step);

/// Cases "lor1@s" (profiles at a = 0) and "lor2@s" (slopes at a = 1).
VerificationReport lor_discriminators(const norms::LorentzWeight& w1, double p1, const norms::LorentzWeight& w2,
                                      double p2, const std::vector<double>& s_grid);

struct PairClassification {
  enum class Kind { Equal, Scaled, Distinct };
  Kind kind = Kind::Distinct;
  /// For Scaled: psi = (1/b) phi(b^{1/p} t), b canonical in [1, abar^p).
  double b = 1.0;
  double p = 1.0;
  double residual = 0.0;
  std::vector<std::string> notes;
};

std::string to_string(PairClassification::Kind kind);

/// Number of log-spaced b candidates scanned before local refinement.
inline constexpr int kScaleScanPoints = 2048;

PairClassification orlicz_pair_classify(const phi::OrliczFunction& phi, const phi::OrliczFunction& psi,
                                        double tol = 1e-9);

/// Two-space construction: Y = L_phi for phi = t^p exp(eps sin(omega ln t)),
/// sigma increasing with slopes {b, b a} on [0, x], [x, 1] where
/// a = exp(2 pi p / omega), h = sigma'^{1/p}, X = L_{phi_sigma} with
/// phi_sigma = (1/b') phi(b'^{1/p} t), b' = b a^{shift}.
struct ExampleConfig {
  double p = 5.0;
  double eps = 0.1;
  double omega = 6.283185307179586;
  Rational breakpoint{1, 2};
  int shift = 0;
  std::size_t count = 100;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-6;
  double identity_gap = 0.01;

  static ExampleConfig desk();
  static ExampleConfig full_scale();
};

struct ExampleSetup {
  double a = 0.0;  // slope ratio
  double b = 0.0;  // slope on the first piece
  WeightedCompositionOp op;
  norms::SpaceDescriptor x;
  norms::SpaceDescriptor y;
};

ExampleSetup make_example(const ExampleConfig& cfg);

struct ExampleReport {
  ExampleSetup setup;
  VerificationReport operator_report;
  VerificationReport identity_report;
  bool identity_refuted = false;
  bool passed() const { return operator_report.all_passed() && identity_refuted; }
};

/// T is checked as an isometry X -> Y on the random suite; the identity
/// X -> Y is checked on the random and indicator-tail suites and must be
/// refuted (max residual > identity_gap).
ExampleReport reproduce_example(const ExampleConfig& cfg);

}  // namespace rispaces::verify
