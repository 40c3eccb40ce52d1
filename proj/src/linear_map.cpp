#include "rispaces/linear_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rispaces/error.hpp"

namespace rispaces {

namespace {

bool same_slope(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(a, b); }

std::vector<MapPiece> canonicalize(std::vector<MapPiece> pieces) {
  if (pieces.empty()) throw InvalidArgument("map needs at least one piece");
  if (pieces.front().left != 0 || pieces.back().right != 1)
    throw InvalidArgument("map domain must be [0,1]");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (!(p.left < p.right)) throw InvalidArgument("map piece with left >= right");
    if (i > 0 && pieces[i - 1].right != p.left) throw InvalidArgument("map pieces must be contiguous");
    if (!(p.slope > 0.0) || !std::isfinite(p.slope)) throw InvalidArgument("map slopes must be positive");
    if (!std::isfinite(p.image_left)) throw InvalidArgument("map image must be finite");
  }

  std::vector<MapPiece> merged;
  merged.reserve(pieces.size());
  for (auto& p : pieces) {
    if (!merged.empty()) {
      auto& last = merged.back();
      if (same_slope(last.slope, p.slope) &&
          std::fabs(last.image_right() - p.image_left) <= kBijectivityTolerance) {
        last.right = p.right;
        continue;
      }
    }
    merged.push_back(std::move(p));
  }

  std::vector<std::size_t> order(merged.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return merged[a].image_left < merged[b].image_left;
  });
  double cursor = 0.0;
  for (std::size_t k : order) {
    if (std::fabs(merged[k].image_left - cursor) > kBijectivityTolerance)
      throw ToleranceError("map images do not tile [0,1]: gap/overlap of " +
                           std::to_string(merged[k].image_left - cursor));
    cursor = merged[k].image_right();
  }
  if (std::fabs(cursor - 1.0) > kBijectivityTolerance)
    throw ToleranceError("map images end at " + std::to_string(cursor) + " instead of 1");
  return merged;
}

const MapPiece& piece_at(const std::vector<MapPiece>& pieces, double x) {
  auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                             [](double v, const MapPiece& p) { return v < to_double(p.right); });
  if (it == pieces.end()) return pieces.back();
  return *it;
}

struct ExactPiece {
  Rational left, right, image_left, slope;
};

ExactPiece exact_piece(const MapPiece& p) {
  return {p.left, p.right, exact_rational(p.image_left), exact_rational(p.slope)};
}

// Rebuilds the images of a map as an exact rational tiling of [0,1].
std::vector<ExactPiece> exact_tiling(const std::vector<MapPiece>& pieces) {
  std::vector<ExactPiece> out;
  for (const auto& p : pieces) out.push_back(exact_piece(p));
  std::vector<std::size_t> order(pieces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pieces[a].image_left < pieces[b].image_left; });
  Rational cursor(0);
  for (std::size_t k : order) {
    out[k].image_left = cursor;
    cursor += out[k].slope * (out[k].right - out[k].left);
  }
  for (auto& p : out) {
    p.image_left /= cursor;
    p.slope /= cursor;
  }
  return out;
}

// Exact preimage of m under the affine piece p, kept only when m is inside its image
// by more than a rounding margin.
void push_split(std::vector<Rational>& cuts, const ExactPiece& p, const Rational& m) {
  static const Rational margin(1, 10000000000000LL);
  const Rational offset = m - p.image_left;
  if (offset <= margin || p.slope * (p.right - p.left) - offset <= margin) return;
  cuts.push_back(p.left + offset / p.slope);
}

Rational exact_image(const ExactPiece& p, const Rational& x) { return p.image_left + p.slope * (x - p.left); }

}  // namespace

PiecewiseLinearMap::PiecewiseLinearMap() : pieces_{{Rational(0), Rational(1), 1.0, 0.0}} {}

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<MapPiece> pieces)
    : pieces_(canonicalize(std::move(pieces))) {}

PiecewiseLinearMap PiecewiseLinearMap::increasing(std::vector<Rational> breakpoints,
                                                  std::vector<double> slopes) {
  if (breakpoints.size() != slopes.size() + 1)
    throw InvalidArgument("need exactly one more breakpoint than slopes");
  std::vector<MapPiece> pieces;
  double image = 0.0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    pieces.push_back({breakpoints[i], breakpoints[i + 1], slopes[i], image});
    image = pieces.back().image_right();
  }
  return PiecewiseLinearMap(std::move(pieces));
}

PiecewiseLinearMap PiecewiseLinearMap::interval_exchange(std::vector<Rational> breakpoints,
                                                         const std::vector<std::size_t>& order) {
  const std::size_t n = order.size();
  if (breakpoints.size() != n + 1) throw InvalidArgument("need exactly one more breakpoint than ranks");
  std::vector<std::size_t> by_rank(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || by_rank[order[k]] != n) throw InvalidArgument("order must be a permutation");
    by_rank[order[k]] = k;
  }
  std::vector<Rational> image_left(n);
  Rational cursor(0);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t k = by_rank[r];
    image_left[k] = cursor;
    cursor += breakpoints[k + 1] - breakpoints[k];
  }
  std::vector<MapPiece> pieces;
  for (std::size_t k = 0; k < n; ++k)
    pieces.push_back({breakpoints[k], breakpoints[k + 1], 1.0, to_double(image_left[k])});
  return PiecewiseLinearMap(std::move(pieces));
}

double PiecewiseLinearMap::operator()(double x) const {
  const auto& p = piece_at(pieces_, x);
  return p.image_left + p.slope * (x - to_double(p.left));
}

double PiecewiseLinearMap::derivative(double x) const { return piece_at(pieces_, x).slope; }

std::vector<std::pair<double, Rational>> PiecewiseLinearMap::slope_multiset() const {
  std::vector<std::pair<double, Rational>> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.emplace_back(p.slope, p.right - p.left);
  return out;
}

StepFunction compose(const StepFunction& f, const PiecewiseLinearMap& sigma) {
  const auto fb = f.breakpoints();
  std::vector<double> fb_d;
  fb_d.reserve(fb.size());
  for (const auto& b : fb) fb_d.push_back(to_double(b));

  std::vector<StepPiece> out;
  for (const auto& p : sigma.pieces()) {
    const double y0 = p.image_left, y1 = p.image_right();
    if (y0 < -kBijectivityTolerance || y1 > 1.0 + kBijectivityTolerance)
      throw ToleranceError("preimage falls outside [0,1]");
    const double dl = to_double(p.left);
    std::vector<Rational> cuts{p.left};
    for (std::size_t k = 1; k + 1 < fb_d.size(); ++k) {
      const double m = fb_d[k];
      if (m <= y0 || m >= y1) continue;
      push_split(cuts, exact_piece(p), fb[k]);
    }
    cuts.push_back(p.right);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double mid = 0.5 * (to_double(cuts[k]) + to_double(cuts[k + 1]));
      const double y = std::clamp(p.image_left + p.slope * (mid - dl), 0.0, 1.0);
      out.push_back({cuts[k], cuts[k + 1], f(y)});
    }
  }
  return StepFunction(std::move(out));
}

PiecewiseLinearMap map_compose(const PiecewiseLinearMap& outer, const PiecewiseLinearMap& inner) {
  std::vector<Rational> ob;
  for (const auto& p : outer.pieces()) ob.push_back(p.right);
  ob.pop_back();

  const auto exact = exact_tiling(inner.pieces());
  std::vector<MapPiece> out;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const auto& p = inner.pieces()[i];
    const auto& e = exact[i];
    const double y0 = p.image_left, y1 = p.image_right();
    const double dl = to_double(p.left);
    std::vector<Rational> cuts{p.left};
    for (const auto& m : ob) {
      const double md = to_double(m);
      if (md <= y0 || md >= y1) continue;
      push_split(cuts, e, m);
    }
    cuts.push_back(p.right);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = to_double(cuts[k]), b = to_double(cuts[k + 1]);
      const double ymid = p.image_left + p.slope * (0.5 * (a + b) - dl);
      const MapPiece& q = piece_at(outer.pieces(), std::clamp(ymid, 0.0, 1.0));
      const auto eq = exact_piece(q);
      const double za = to_double(exact_image(eq, exact_image(e, cuts[k])));
      out.push_back({cuts[k], cuts[k + 1], to_double(eq.slope * e.slope), za});
    }
  }
  return PiecewiseLinearMap(std::move(out));
}

PiecewiseLinearMap map_invert(const PiecewiseLinearMap& sigma) {
  std::vector<MapPiece> src = sigma.pieces();
  std::sort(src.begin(), src.end(),
            [](const MapPiece& a, const MapPiece& b) { return a.image_left < b.image_left; });
  std::vector<Rational> edges{Rational(0)};
  for (std::size_t k = 1; k < src.size(); ++k) edges.push_back(exact_rational(src[k].image_left));
  edges.push_back(Rational(1));
  std::vector<MapPiece> out;
  for (std::size_t k = 0; k < src.size(); ++k)
    out.push_back({edges[k], edges[k + 1], 1.0 / src[k].slope, to_double(src[k].left)});
  return PiecewiseLinearMap(std::move(out));
}

StepFunction apply_op(const WeightedCompositionOp& op, const StepFunction& f) {
  return op.h * compose(f, op.sigma);
}

}  // namespace rispaces
