#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rispaces/linear_map.hpp"
#include "rispaces/step_function.hpp"

namespace rispaces {

/// Deterministic generator. Draws are derived from raw mt19937_64 output
/// rather than std distributions so sequences match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

namespace gen {

struct StepFunctionSpec {
  int min_pieces = 1;
  int max_pieces = 8;
  int dyadic_depth = 6;  // breakpoints are multiples of 2^-depth
  double min_abs = 1e-2;
  double max_abs = 1e2;
  bool random_signs = true;
};

/// Random step function: piece count uniform in [min, max], dyadic
/// breakpoints, magnitudes log-uniform in [min_abs, max_abs].
StepFunction step_function(Rng& rng, const StepFunctionSpec& spec = {});

std::vector<StepFunction> suite(std::uint64_t seed, std::size_t count, const StepFunctionSpec& spec = {});

/// Random dyadic partition of [0,1] into n intervals.
std::vector<Rational> dyadic_partition(Rng& rng, int n, int depth);

/// Random slope-1 interval exchange with 1..max_pieces dyadic pieces.
PiecewiseLinearMap interval_exchange(Rng& rng, int max_pieces = 6);

/// Increasing map with slopes b a^{k_i}; b is fixed by the tiling condition.
PiecewiseLinearMap scale_class_map(Rng& rng, double a, int max_pieces = 5, int max_power = 3);

/// Map with slopes a^{s + k_i d}, image pieces optionally permuted.
PiecewiseLinearMap discrete_class_map(Rng& rng, double a, int d, int s, int max_pieces = 5,
                                      int max_power = 2);

}  // namespace gen
}  // namespace rispaces
