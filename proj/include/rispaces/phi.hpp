#pragma once

#include <any>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rispaces/expression.hpp"

namespace rispaces::phi {

class OrliczFunction;
using FunctionPtr = std::shared_ptr<const OrliczFunction>;

/// t^p
struct Power {
  double p = 1.0;
};

/// t^p exp(eps sin(omega ln t)), 0 at t = 0.
struct LogPeriodic {
  double p = 1.0;
  double eps = 0.0;
  double omega = 1.0;
};

/// (1/b) base(b^{1/p} t)
struct Scaled {
  FunctionPtr base;
  double b = 1.0;
  double p = 1.0;
};

/// Linear interpolation of (t, value) knots starting at (0, 0); the last
/// segment is extended beyond the last knot.
struct PiecewiseAffine {
  std::vector<std::pair<double, double>> knots;
};

struct ExpressionFamily {
  expr::Expression expression;
  std::string source;
};

/// t -> 1 / base(1/t), 0 at t = 0.
struct Tilde {
  FunctionPtr base;
};

/// Functional inverse of a strictly increasing base.
struct Inverse {
  FunctionPtr base;
};

/// Function supplied by another module (e.g. a Lorentz-weight derived
/// phi-function). `payload` carries the construction data for serialization.
struct Custom {
  std::string kind;
  std::function<double(double)> eval;
  std::function<double(double)> inverse;  // may be empty
  std::any payload;
};

/// Evaluable Orlicz function or phi-function. Immutable; cheap to copy.
class OrliczFunction {
 public:
  using Family =
      std::variant<Power, LogPeriodic, Scaled, PiecewiseAffine, ExpressionFamily, Tilde, Inverse, Custom>;

  OrliczFunction() : family_(Power{1.0}) {}
  template <typename F>
    requires std::is_constructible_v<Family, F>
  OrliczFunction(F family) : family_(std::move(family)) {}

  /// Requires t >= 0.
  double operator()(double t) const;
  const Family& family() const { return family_; }

 private:
  Family family_;
};

/// Phi-functions share the representation; validity is
/// checked with validate(F, Axioms::PhiFunction).
using PhiFunction = OrliczFunction;

OrliczFunction power(double p);
OrliczFunction log_periodic(double p, double eps, double omega);
OrliczFunction scaled(const OrliczFunction& base, double b, double p);
OrliczFunction piecewise_affine(std::vector<std::pair<double, double>> knots);
/// Throws expr::ParseError on malformed source.
OrliczFunction expression(const std::string& source);
OrliczFunction tilde(const OrliczFunction& f);
OrliczFunction inverse_function(const OrliczFunction& f);

/// x with |F(x) - y| <= 1e-12 max(1, y). Closed forms are used for powers
/// and functions that carry one; otherwise bisection on a bracket grown by
/// doubling (BracketError after 200 doublings).
double inverse(const OrliczFunction& f, double y);

/// Bisection path only; used to cross-check closed forms.
double inverse_by_bisection(const OrliczFunction& f, double y);

std::string describe(const OrliczFunction& f);

enum class Axioms { Orlicz, PhiFunction };

/// Empty iff the grid checks pass. Orlicz: phi(0) = 0, finite, nondecreasing
/// and convex on 512 log-spaced points in [1e-6, 1e6]. PhiFunction: phi(0)=0,
/// phi(1)=1, finite, strictly increasing, unbounded on the grid.
std::vector<std::string> validate(const OrliczFunction& f, Axioms axioms = Axioms::Orlicz);

/// sup over t in [1e-3, 1e3] of |phi(ct) - lambda(c) phi(t)| / max(1, phi(ct))
/// with lambda(c) = phi(c) / phi(1). For phi(1) = 1 this is the multiplicative
/// identity residual |phi(ct) - phi(c) phi(t)|.
double multiplier_residual(const OrliczFunction& f, double c);

struct MultiplierGroup {
  enum class Kind { FullPositiveReals, Cyclic, Trivial };
  Kind kind = Kind::Trivial;
  double generator = 1.0;  // only for Cyclic
  /// Trivial result reached the scan ceiling; a generator above it is possible.
  bool cutoff_reached = false;
};

inline constexpr double kMultiplierScanCeiling = 1e6;

MultiplierGroup multiplier_group(const OrliczFunction& f, double tol = 1e-9);

/// ln(phi(a) / phi(1)) / ln a for a verified multiplier a > 1.
double growth_exponent(const OrliczFunction& f, double generator);

std::string to_string(MultiplierGroup::Kind kind);

}  // namespace rispaces::phi
