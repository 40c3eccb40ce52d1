#include "rispaces/phi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rispaces/error.hpp"
#include "rispaces/numerics.hpp"
#include "rispaces/random.hpp"

namespace rispaces::phi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double eval_piecewise(const PiecewiseAffine& f, double t) {
  const auto& k = f.knots;
  auto it = std::upper_bound(k.begin(), k.end(), t,
                             [](double v, const std::pair<double, double>& knot) { return v < knot.first; });
  std::size_t i;
  if (it == k.begin())
    i = 0;
  else if (it == k.end())
    i = k.size() - 2;
  else
    i = static_cast<std::size_t>(it - k.begin()) - 1;
  i = std::min(i, k.size() - 2);
  const auto [t0, v0] = k[i];
  const auto [t1, v1] = k[i + 1];
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

double OrliczFunction::operator()(double t) const {
  return std::visit(
      overloaded{
          [t](const Power& f) { return std::pow(t, f.p); },
          [t](const LogPeriodic& f) {
            if (t == 0.0) return 0.0;
            return std::pow(t, f.p) * std::exp(f.eps * std::sin(f.omega * std::log(t)));
          },
          [t](const Scaled& f) { return (*f.base)(std::pow(f.b, 1.0 / f.p) * t) / f.b; },
          [t](const PiecewiseAffine& f) { return eval_piecewise(f, t); },
          [t](const ExpressionFamily& f) {
            double v = f.expression(t);
            if (t == 0.0 && std::isnan(v)) v = f.expression(1e-300);
            return v;
          },
          [t](const Tilde& f) {
            if (t == 0.0) return 0.0;
            return 1.0 / (*f.base)(1.0 / t);
          },
          [t](const Inverse& f) { return inverse(*f.base, t); },
          [t](const Custom& f) { return f.eval(t); },
      },
      family_);
}

OrliczFunction power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("power exponent must be >= 1");
  return Power{p};
}

OrliczFunction log_periodic(double p, double eps, double omega) {
  if (!(p >= 1.0) || !std::isfinite(p) || !std::isfinite(eps) || !std::isfinite(omega))
    throw InvalidArgument("log-periodic parameters must be finite with p >= 1");
  return LogPeriodic{p, eps, omega};
}

OrliczFunction scaled(const OrliczFunction& base, double b, double p) {
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("scale b must be positive");
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("scaling exponent must be >= 1");
  return Scaled{std::make_shared<const OrliczFunction>(base), b, p};
}

OrliczFunction piecewise_affine(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw InvalidArgument("piecewise affine function needs at least two knots");
  if (knots.front().first != 0.0 || knots.front().second != 0.0)
    throw InvalidArgument("first knot must be (0, 0)");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i].first > knots[i - 1].first) || !std::isfinite(knots[i].second))
      throw InvalidArgument("knots must have strictly increasing abscissae and finite values");
  return PiecewiseAffine{std::move(knots)};
}

OrliczFunction expression(const std::string& source) {
  return ExpressionFamily{expr::Expression::parse(source), source};
}

OrliczFunction tilde(const OrliczFunction& f) { return Tilde{std::make_shared<const OrliczFunction>(f)}; }

OrliczFunction inverse_function(const OrliczFunction& f) {
  return Inverse{std::make_shared<const OrliczFunction>(f)};
}

double inverse_by_bisection(const OrliczFunction& f, double y) {
  if (y < 0.0 || !std::isfinite(y)) throw InvalidArgument("inverse needs a finite y >= 0");
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  int grow = 0;
  while (!(f(hi) >= y)) {
    if (++grow > 200) throw BracketError("inverse: no upper bracket after 200 doublings");
    hi *= 2.0;
  }
  double lo = hi / 2.0;
  int shrink = 0;
  while (lo > 0.0 && f(lo) > y) {
    if (++shrink > 1100) {
      lo = 0.0;
      break;
    }
    lo /= 2.0;
  }
  // f(lo) <= y <= f(hi); find the smallest x with f(x) >= y.
  for (int i = 0; i < 2000; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) >= y)
      hi = mid;
    else
      lo = mid;
  }
  const double x = std::fabs(f(lo) - y) < std::fabs(f(hi) - y) ? lo : hi;
  if (!(std::fabs(f(x) - y) <= 1e-12 * std::max(1.0, y)))
    throw BracketError("inverse: value " + num(y) + " is not attained within tolerance");
  return x;
}

double inverse(const OrliczFunction& f, double y) {
  if (const auto* p = std::get_if<Power>(&f.family())) {
    if (y < 0.0) throw InvalidArgument("inverse needs y >= 0");
    return std::pow(y, 1.0 / p->p);
  }
  if (const auto* inv = std::get_if<Inverse>(&f.family())) return (*inv->base)(y);
  if (const auto* c = std::get_if<Custom>(&f.family()); c && c->inverse) return c->inverse(y);
  return inverse_by_bisection(f, y);
}

std::string describe(const OrliczFunction& f) {
  return std::visit(
      overloaded{
          [](const Power& g) { return "t^" + num(g.p); },
          [](const LogPeriodic& g) {
            return "t^" + num(g.p) + " exp(" + num(g.eps) + " sin(" + num(g.omega) + " ln t))";
          },
          [](const Scaled& g) {
            return "(1/" + num(g.b) + ") [" + describe(*g.base) + "](" + num(g.b) + "^(1/" + num(g.p) + ") t)";
          },
          [](const PiecewiseAffine& g) { return "piecewise affine, " + std::to_string(g.knots.size()) + " knots"; },
          [](const ExpressionFamily& g) { return g.source; },
          [](const Tilde& g) { return "tilde[" + describe(*g.base) + "]"; },
          [](const Inverse& g) { return "inverse[" + describe(*g.base) + "]"; },
          [](const Custom& g) { return g.kind; },
      },
      f.family());
}

std::vector<std::string> validate(const OrliczFunction& f, Axioms axioms) {
  std::vector<std::string> out;
  std::visit(overloaded{
                 [&](const Power& g) {
                   if (!(g.p >= 1.0)) out.push_back("power exponent must be >= 1");
                 },
                 [&](const LogPeriodic& g) {
                   if (!(g.p > g.eps * g.omega))
                     out.push_back("log-periodic family requires p > eps*omega");
                 },
                 [&](const Scaled& g) {
                   if (!(g.b > 0.0)) out.push_back("scale b must be positive");
                   if (!(g.p >= 1.0)) out.push_back("scaling exponent must be >= 1");
                 },
                 [](const auto&) {},
             },
             f.family());

  std::vector<double> grid{0.0};
  for (double t : numerics::log_grid(1e-6, 1e6, 512)) grid.push_back(t);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);

  if (!(std::fabs(v[0]) <= 1e-300)) out.push_back("phi(0) = " + num(v[0]) + ", expected 0");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(v[i])) {
      out.push_back("non-finite value at t = " + num(grid[i]));
      return out;
    }
    if (v[i] < 0.0) {
      out.push_back("negative value at t = " + num(grid[i]));
      return out;
    }
  }

  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double tol = 1e-9 * std::max(std::fabs(v[i]), std::fabs(v[i - 1]));
    if (v[i] < v[i - 1] - tol) {
      out.push_back("not nondecreasing near t = " + num(grid[i]));
      break;
    }
    if (axioms == Axioms::PhiFunction && !(v[i] > v[i - 1])) {
      out.push_back("not strictly increasing near t = " + num(grid[i]));
      break;
    }
  }

  if (axioms == Axioms::Orlicz) {
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      const double s0 = (v[i] - v[i - 1]) / (grid[i] - grid[i - 1]);
      const double s1 = (v[i + 1] - v[i]) / (grid[i + 1] - grid[i]);
      if (s1 < s0 - 1e-9 * std::max(std::fabs(s0), std::fabs(s1))) {
        out.push_back("convexity violated near t = " + num(grid[i]));
        break;
      }
    }
  } else {
    const double one = f(1.0);
    if (std::fabs(one - 1.0) > 1e-12) out.push_back("F(1) = " + num(one) + ", expected 1");
  }
  return out;
}

double multiplier_residual(const OrliczFunction& f, double c) {
  if (!(c > 0.0)) throw InvalidArgument("multiplier candidate must be positive");
  static const std::vector<double> grid = numerics::log_grid(1e-3, 1e3, 241);
  const double at_one = f(1.0);
  const double lambda = (at_one > 0.0 && std::isfinite(at_one)) ? f(c) / at_one : f(c);
  double worst = 0.0;
  for (double t : grid) {
    const double lhs = f(c * t);
    const double r = std::fabs(lhs - lambda * f(t)) / std::max(1.0, lhs);
    if (!(r <= worst)) worst = r;  // NaN propagates as a failure
  }
  return worst;
}

MultiplierGroup multiplier_group(const OrliczFunction& f, double tol) {
  Rng rng(0x6d756c7469706c79ULL);
  bool all = true;
  for (int i = 0; i < 50 && all; ++i) {
    if (!(multiplier_residual(f, rng.log_uniform(1e-2, 1e2)) < tol)) all = false;
  }
  if (all) return {MultiplierGroup::Kind::FullPositiveReals, 1.0, false};

  constexpr int kScan = 4096;
  const double umax = std::log(kMultiplierScanCeiling);
  const double du = umax / kScan;
  auto residual_at = [&](double u) {
    const double r = multiplier_residual(f, std::exp(u));
    return std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
  };
  std::vector<double> r(kScan + 1);
  for (int k = 0; k <= kScan; ++k) r[k] = residual_at(k * du);

  for (int k = 1; k < kScan; ++k) {
    if (!(r[k] <= r[k - 1] && r[k] <= r[k + 1])) continue;
    const double u = numerics::golden_section_minimize(residual_at, (k - 1) * du, (k + 1) * du, 1e-15);
    if (u > 1e-6 && residual_at(u) < tol) return {MultiplierGroup::Kind::Cyclic, std::exp(u), false};
  }
  return {MultiplierGroup::Kind::Trivial, 1.0, true};
}

double growth_exponent(const OrliczFunction& f, double generator) {
  if (!(generator > 1.0)) throw InvalidArgument("growth exponent needs a generator > 1");
  return std::log(f(generator) / f(1.0)) / std::log(generator);
}

std::string to_string(MultiplierGroup::Kind kind) {
  switch (kind) {
    case MultiplierGroup::Kind::FullPositiveReals: return "FullPositiveReals";
    case MultiplierGroup::Kind::Cyclic: return "Cyclic";
    case MultiplierGroup::Kind::Trivial: return "Trivial";
  }
  return "?";
}

}  // namespace rispaces::phi
