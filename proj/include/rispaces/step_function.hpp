#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rispaces/rational.hpp"

namespace rispaces {

struct StepPiece {
  Rational left;
  Rational right;
  double value = 0.0;

  Rational length() const { return right - left; }
  bool operator==(const StepPiece&) const = default;
};

/// A finitely-piecewise-constant function on [0,1].
///
/// Breakpoints are exact rationals so that measures of level sets are exact.
/// The stored form is canonical: pieces are ordered, tile [0,1] without gaps
/// and adjacent pieces never share a value, so two step functions are equal
/// iff their piece lists are equal.
class StepFunction {
 public:
  /// Constant zero on [0,1].
  StepFunction();

  /// Throws InvalidArgument unless the pieces tile [0,1] in order.
  explicit StepFunction(std::vector<StepPiece> pieces);

  /// `breakpoints` = 0 = x_0 < x_1 < ... < x_n = 1, one value per interval.
  StepFunction(std::span<const Rational> breakpoints, std::span<const double> values);

  static StepFunction constant(double c);
  /// c on [a,b], zero elsewhere.
  static StepFunction indicator(const Rational& a, const Rational& b, double c = 1.0);

  const std::vector<StepPiece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  /// Value at x (right-continuous; the last piece owns x = 1).
  double operator()(const Rational& x) const;
  double operator()(double x) const;

  std::vector<Rational> breakpoints() const;
  double max_abs() const;
  bool is_zero() const;

  bool operator==(const StepFunction&) const = default;

 private:
  std::vector<StepPiece> pieces_;
};

/// Pointwise combination on the common refinement of both partitions.
StepFunction combine(const StepFunction& f, const StepFunction& g,
                     const std::function<double(double, double)>& op);

StepFunction operator+(const StepFunction& f, const StepFunction& g);
StepFunction operator*(const StepFunction& f, const StepFunction& g);
StepFunction operator*(double lambda, const StepFunction& f);
StepFunction abs(const StepFunction& f);

/// Nonincreasing rearrangement f*; equimeasurable with |f|.
StepFunction rearrange(const StepFunction& f);

/// Exact measure of {s : |f(s)| >= t}.
Rational distribution(const StepFunction& f, double t);

/// Nonincreasing nonnegative step function whose breakpoints are reals.
///
/// Produced by composing f* with increasing maps whose breakpoints are not
/// rational (the Orlicz-Lorentz change of variables); only the values and the
/// measures of the level intervals matter to the norms evaluated on it.
struct DecreasingProfile {
  std::vector<double> edges;   // 0 = e_0 < ... < e_n = 1
  std::vector<double> values;  // size n, nonincreasing, >= 0

  double measure(std::size_t i) const { return edges[i + 1] - edges[i]; }
  std::size_t size() const { return values.size(); }
};

/// f* with breakpoints converted to doubles.
DecreasingProfile decreasing_profile(const StepFunction& f);

}  // namespace rispaces
