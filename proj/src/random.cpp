#include "rispaces/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "rispaces/error.hpp"

namespace rispaces {

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

namespace gen {

namespace {

std::vector<std::size_t> permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i)
    std::swap(p[i - 1], p[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(i) - 1))]);
  return p;
}

// Domain pieces [bp_k, bp_k+1] with the given slopes; images laid out in a
// random order.
PiecewiseLinearMap with_shuffled_images(Rng& rng, const std::vector<Rational>& bp,
                                        const std::vector<double>& slopes) {
  const std::size_t n = slopes.size();
  const auto rank = permutation(rng, n);
  std::vector<std::size_t> by_rank(n);
  for (std::size_t k = 0; k < n; ++k) by_rank[rank[k]] = k;
  std::vector<double> image_left(n);
  double cursor = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t k = by_rank[r];
    image_left[k] = cursor;
    cursor += slopes[k] * to_double(bp[k + 1] - bp[k]);
  }
  std::vector<MapPiece> pieces;
  for (std::size_t k = 0; k < n; ++k) pieces.push_back({bp[k], bp[k + 1], slopes[k], image_left[k]});
  return PiecewiseLinearMap(std::move(pieces));
}

}  // namespace

std::vector<Rational> dyadic_partition(Rng& rng, int n, int depth) {
  const std::int64_t denom = std::int64_t{1} << depth;
  if (n < 1 || n > denom) throw InvalidArgument("partition size incompatible with dyadic depth");
  std::set<std::int64_t> cuts;
  while (static_cast<int>(cuts.size()) < n - 1) cuts.insert(rng.integer(1, denom - 1));
  std::vector<Rational> out{Rational(0)};
  for (auto c : cuts) out.emplace_back(c, denom);
  out.emplace_back(1);
  return out;
}

StepFunction step_function(Rng& rng, const StepFunctionSpec& spec) {
  const int n = static_cast<int>(rng.integer(spec.min_pieces, spec.max_pieces));
  const auto bp = dyadic_partition(rng, n, spec.dyadic_depth);
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    double v = rng.log_uniform(spec.min_abs, spec.max_abs);
    if (spec.random_signs && rng.coin()) v = -v;
    values.push_back(v);
  }
  return StepFunction(bp, values);
}

std::vector<StepFunction> suite(std::uint64_t seed, std::size_t count, const StepFunctionSpec& spec) {
  Rng rng(seed);
  std::vector<StepFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(step_function(rng, spec));
  return out;
}

PiecewiseLinearMap interval_exchange(Rng& rng, int max_pieces) {
  const int n = static_cast<int>(rng.integer(1, max_pieces));
  auto bp = dyadic_partition(rng, n, 5);
  return PiecewiseLinearMap::interval_exchange(bp, permutation(rng, static_cast<std::size_t>(n)));
}

PiecewiseLinearMap scale_class_map(Rng& rng, double a, int max_pieces, int max_power) {
  const int n = static_cast<int>(rng.integer(1, max_pieces));
  auto bp = dyadic_partition(rng, n, 5);
  std::vector<double> slopes;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    slopes.push_back(std::pow(a, static_cast<double>(rng.integer(-max_power, max_power))));
    total += slopes.back() * to_double(bp[k + 1] - bp[k]);
  }
  for (auto& s : slopes) s /= total;
  return with_shuffled_images(rng, bp, slopes);
}

PiecewiseLinearMap discrete_class_map(Rng& rng, double a, int d, int s, int max_pieces, int max_power) {
  const int n = static_cast<int>(rng.integer(2, std::max(2, max_pieces)));
  std::vector<int> exps;
  for (;;) {
    exps.clear();
    for (int k = 0; k < n; ++k) exps.push_back(s + d * static_cast<int>(rng.integer(-max_power, max_power)));
    const auto [lo, hi] = std::minmax_element(exps.begin(), exps.end());
    if (*lo < 0 && *hi > 0) break;
    if (*lo == 0 && *hi == 0) break;
  }
  std::vector<double> slopes;
  for (int e : exps) slopes.push_back(std::pow(a, static_cast<double>(e)));

  std::vector<double> len(n, 0.0);
  const auto lo_it = std::min_element(exps.begin(), exps.end());
  const auto hi_it = std::max_element(exps.begin(), exps.end());
  const std::size_t L = static_cast<std::size_t>(lo_it - exps.begin());
  const std::size_t H = static_cast<std::size_t>(hi_it - exps.begin());
  if (L == H || exps[L] == exps[H]) {
    // All slopes are 1.
    for (auto& l : len) l = 1.0 / n;
  } else {
    std::vector<double> w(n);
    double wsum = 0.0;
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
      if (k != L && k != H) wsum += (w[k] = rng.uniform(0.2, 1.0));
    double lambda = rng.uniform(0.1, 0.6);
    for (int attempt = 0; attempt < 200; ++attempt, lambda *= 0.5) {
      double S = 0.0, Lam = 0.0;
      for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
        if (k == L || k == H) continue;
        len[k] = wsum > 0 ? lambda * w[k] / wsum : 0.0;
        Lam += len[k];
        S += slopes[k] * len[k];
      }
      const double rest = 1.0 - Lam;
      const double lh = (1.0 - S - slopes[L] * rest) / (slopes[H] - slopes[L]);
      const double ll = rest - lh;
      if (lh > 1e-6 && ll > 1e-6) {
        len[H] = lh;
        len[L] = ll;
        break;
      }
    }
  }
  std::vector<Rational> bp{Rational(0)};
  double cum = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    cum += len[k];
    bp.push_back(exact_rational(cum));
  }
  bp.emplace_back(1);
  return with_shuffled_images(rng, bp, slopes);
}

}  // namespace gen
}  // namespace rispaces
