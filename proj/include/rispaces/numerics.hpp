#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rispaces/error.hpp"

namespace rispaces::numerics {

/// Smallest x in [lo, hi] with pred(x) true, for pred monotone (false below
/// the threshold, true above). Requires !pred(lo) and pred(hi). Stops when
/// hi - lo <= abs_tol + rel_tol * hi, or when the interval is one ULP wide.
template <typename Pred>
double bisect_threshold(Pred&& pred, double lo, double hi, double rel_tol, double abs_tol,
                        std::size_t max_iter = 200) {
  for (std::size_t i = 0; i < max_iter; ++i) {
    if (hi - lo <= abs_tol + rel_tol * std::fabs(hi)) return hi;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return hi;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  throw ConvergenceError("bisection did not converge in " + std::to_string(max_iter) + " iterations");
}

/// Golden-section search for a minimum of a unimodal f on [a, b].
template <typename F>
double golden_section_minimize(F&& f, double a, double b, double tol = 1e-14,
                               std::size_t max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (std::size_t i = 0; i < max_iter && std::fabs(b - a) > tol * (1.0 + std::fabs(a) + std::fabs(b));
       ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

/// n points log-spaced on [lo, hi], endpoints included.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = n == 1 ? lo : std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

}  // namespace rispaces::numerics
