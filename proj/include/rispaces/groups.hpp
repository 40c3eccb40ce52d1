#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rispaces/linear_map.hpp"
#include "rispaces/phi.hpp"

namespace rispaces::groups {

/// Tolerance for slope-lattice membership, measured on ln(slope).
inline constexpr double kLogTolerance = 1e-9;

/// NS: every automorphism.
struct FullNS {};
/// NS(R+; a): slopes in {b a^k} for one b > 0 per map.
struct ScaleInvariant {
  double a = 2.0;
};
/// NS(a; d): slopes in {a^{s + k d}} for one integer s per map.
struct Discrete {
  double a = 2.0;
  int d = 1;
};
/// U: measure-preserving maps.
struct MeasurePreserving {};

using GroupDescriptor = std::variant<FullNS, ScaleInvariant, Discrete, MeasurePreserving>;

std::string describe(const GroupDescriptor& g);

bool is_measure_preserving(const PiecewiseLinearMap& sigma);

/// b in [1, a) with every slope equal to b a^k within kLogTolerance in log.
std::optional<double> scale_class_witness(const PiecewiseLinearMap& sigma, double a);

/// s in [0, d) with every slope equal to a^{s + k d} within kLogTolerance in log.
std::optional<int> discrete_class_witness(const PiecewiseLinearMap& sigma, double a, int d);

/// Membership test for any descriptor.
bool belongs_to(const PiecewiseLinearMap& sigma, const GroupDescriptor& g);

/// Finest a with all slopes in one coset {b a^k}: the exponential of the
/// real gcd of the log-slope differences. Absent for fewer than two distinct
/// slopes, or when the differences are incommensurable at `tol` (gcd smaller
/// than 1e-6 of the largest difference).
std::optional<double> infer_slope_lattice(const PiecewiseLinearMap& sigma, double tol = kLogTolerance);

/// Operator with |h|^p = slope of sigma on each piece. `signs`, when given,
/// assigns -1/+1 per piece of sigma.
WeightedCompositionOp build_isometry_candidate(const PiecewiseLinearMap& sigma, double p,
                                               const std::vector<int>& signs = {});

/// Throws InvalidArgument unless |h| > 0 and h is constant on each piece of sigma.
void validate(const WeightedCompositionOp& op);

/// tau o sigma o tau^{-1}.
PiecewiseLinearMap conjugate(const PiecewiseLinearMap& tau, const PiecewiseLinearMap& sigma);

struct OrliczIsometryGroup {
  GroupDescriptor group;
  std::vector<std::string> warnings;
};

/// NS for t^p; NS(abar^p; 1) when the multiplier group is generated by abar
/// with growth exponent p; U otherwise.
OrliczIsometryGroup iso_group_of_orlicz(const phi::OrliczFunction& phi, double tol = 1e-9);

}  // namespace rispaces::groups
