#pragma once

#include <optional>
#include <vector>

#include "rispaces/rational.hpp"
#include "rispaces/step_function.hpp"

namespace rispaces {

/// Absolute tolerance on gaps/overlaps between image intervals.
inline constexpr double kBijectivityTolerance = 1e-12;

struct MapPiece {
  Rational left;
  Rational right;
  double slope = 1.0;
  double image_left = 0.0;

  double image_right() const { return image_left + slope * to_double(right - left); }
  bool operator==(const MapPiece&) const = default;
};

/// Invertible map of [0,1] that is increasing and affine on each piece.
///
/// Pieces partition the domain exactly (rational breakpoints); their images
/// tile [0,1] up to kBijectivityTolerance in some order, so interval
/// exchanges are representable. The slope on each piece is the Radon-Nikodym
/// derivative of the map there.
class PiecewiseLinearMap {
 public:
  /// Identity.
  PiecewiseLinearMap();

  /// Throws InvalidArgument on a bad domain partition or nonpositive slope,
  /// ToleranceError when the images fail to tile [0,1].
  explicit PiecewiseLinearMap(std::vector<MapPiece> pieces);

  /// Pieces laid out left to right in the image, i.e. an increasing map.
  /// Slopes must satisfy sum(slope_i * len_i) = 1 to tolerance.
  static PiecewiseLinearMap increasing(std::vector<Rational> breakpoints, std::vector<double> slopes);

  /// Slope-1 map sending the domain intervals, in order, to image positions
  /// listed by `order` (order[k] = rank of interval k in the image).
  static PiecewiseLinearMap interval_exchange(std::vector<Rational> breakpoints,
                                              const std::vector<std::size_t>& order);

  const std::vector<MapPiece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  double operator()(double x) const;
  /// Slope at x (right-continuous).
  double derivative(double x) const;

  /// (slope, domain measure) pairs, one per piece.
  std::vector<std::pair<double, Rational>> slope_multiset() const;

  bool operator==(const PiecewiseLinearMap&) const = default;

 private:
  std::vector<MapPiece> pieces_;
};

/// f composed with sigma: (f o sigma)(s) = f(sigma(s)).
StepFunction compose(const StepFunction& f, const PiecewiseLinearMap& sigma);

/// outer o inner.
PiecewiseLinearMap map_compose(const PiecewiseLinearMap& outer, const PiecewiseLinearMap& inner);
PiecewiseLinearMap map_invert(const PiecewiseLinearMap& sigma);

/// Tf = h * (f o sigma).
struct WeightedCompositionOp {
  StepFunction h;
  PiecewiseLinearMap sigma;
};

StepFunction apply_op(const WeightedCompositionOp& op, const StepFunction& f);

}  // namespace rispaces
