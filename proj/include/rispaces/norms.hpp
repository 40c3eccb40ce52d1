#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rispaces/phi.hpp"
#include "rispaces/step_function.hpp"

namespace rispaces::norms {

/// Relative stopping tolerance of every Luxemburg-type bisection.
inline constexpr double kBisectionTolerance = 1e-11;

struct ConstantWeight {
  double c = 1.0;
};

/// w(x) = alpha - beta x on (0,1); nonincreasing and positive inside.
struct AffineWeight {
  double alpha = 1.0;
  double beta = 0.0;
};

/// Nonincreasing step weight; `edges` partition [0,1].
struct StepWeight {
  std::vector<double> edges;
  std::vector<double> values;
};

/// Nonincreasing Lorentz weight w on (0,1) with closed-form antiderivative
/// W(t) = int_0^t w and its inverse.
class LorentzWeight {
 public:
  using Family = std::variant<ConstantWeight, AffineWeight, StepWeight>;

  LorentzWeight() : LorentzWeight(ConstantWeight{1.0}) {}
  /// Throws InvalidArgument when w is not nonincreasing and nonnegative, or
  /// vanishes identically.
  LorentzWeight(Family family);

  const Family& family() const { return family_; }

  double operator()(double x) const;
  double antiderivative(double t) const;
  /// Smallest t in [0,1] with W(t) = y, for y in [0, W(1)].
  double antiderivative_inverse(double y) const;
  double total() const { return antiderivative(1.0); }
  /// w > 0 on (0,1), so W is strictly increasing.
  bool strictly_positive() const;

 private:
  Family family_;
  std::vector<double> cumulative_;  // W at StepWeight edges
};

std::string describe(const LorentzWeight& w);

struct OrliczSpace {
  phi::OrliczFunction phi;
};
struct LorentzSpace {
  LorentzWeight w;
  double q = 1.0;
};
struct OrliczLorentzSpace {
  LorentzWeight w;
  phi::OrliczFunction phi;
};
/// Orlicz-Lorentz space L_{F,G} built from two phi-functions.
struct MSSpace {
  phi::PhiFunction F;
  phi::PhiFunction G;
};

using SpaceDescriptor = std::variant<OrliczSpace, LorentzSpace, OrliczLorentzSpace, MSSpace>;

std::string describe(const SpaceDescriptor& x);
std::string kind_name(const SpaceDescriptor& x);

/// Violations of the component axioms; empty when valid.
std::vector<std::string> validate(const SpaceDescriptor& x);

/// sum_i phi(|v_i| / c) len_i
double modular(const phi::OrliczFunction& phi, const StepFunction& f, double c);

/// inf{c > 0 : sum_i phi(|v_i|/c) w_i <= 1}; 0 when every weighted value vanishes.
/// Throws ConvergenceError if no bracket or no convergence in 200 iterations.
double luxemburg_infimum(const phi::OrliczFunction& phi, std::span<const double> values,
                         std::span<const double> weights);

double luxemburg_norm(const phi::OrliczFunction& phi, const StepFunction& f);
double luxemburg_norm(const phi::OrliczFunction& phi, const DecreasingProfile& f);

/// (int w (f*)^q)^{1/q}, exact per level of f*.
double lorentz_norm(const LorentzWeight& w, double q, const StepFunction& f);

/// inf{c : int w phi(f*/c) <= 1}.
double orlicz_lorentz_norm(const LorentzWeight& w, const phi::OrliczFunction& phi, const StepFunction& f);

/// ||f* o F~ o G~^{-1}||_G. A level of f* ending at position m ends at
/// x = G~(F~^{-1}(m)) after the change of variables.
double ms_norm(const phi::PhiFunction& F, const phi::PhiFunction& G, const StepFunction& f);
double ms_norm(const phi::PhiFunction& F, const phi::PhiFunction& G, const DecreasingProfile& f);

/// Breakpoint transform x = G~(F~^{-1}(m)) used by ms_norm.
double ms_breakpoint(const phi::PhiFunction& F, const phi::PhiFunction& G, double m);

/// Payload of the phi-function returned by weight_to_F.
struct WeightDerivedPayload {
  LorentzWeight w;
  phi::PhiFunction G;
};

/// F = W~^{-1} o G, so that L_{F,G} carries the Orlicz-Lorentz norm of
/// (w, G). W is continued past 1 by W(t) = t, which fixes F on [0,1) and
/// keeps F strictly increasing. Requires w > 0 on (0,1) and W(1) = 1.
phi::PhiFunction weight_to_F(const LorentzWeight& w, const phi::PhiFunction& G);

double norm(const SpaceDescriptor& x, const StepFunction& f);

/// Coordinate-ascent lower bound for the Koethe dual norm: the best value of
/// int f|g| / ||f||_X over nonnegative step functions f on `partition`.
/// `partition` must refine g.
double dual_norm_lower_bound(const SpaceDescriptor& x, const StepFunction& g,
                             const std::vector<Rational>& partition, int iters = 20);

}  // namespace rispaces::norms
