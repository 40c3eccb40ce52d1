#include "rispaces/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rispaces/error.hpp"
#include "rispaces/numerics.hpp"

namespace rispaces::norms {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

LorentzWeight::LorentzWeight(Family family) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const ConstantWeight& w) {
                   if (!(w.c > 0.0) || !std::isfinite(w.c)) throw InvalidArgument("constant weight must be positive");
                 },
                 [](const AffineWeight& w) {
                   if (!std::isfinite(w.alpha) || !std::isfinite(w.beta) || w.beta < 0.0)
                     throw InvalidArgument("affine weight alpha - beta x must be nonincreasing");
                   if (!(w.alpha > 0.0) || w.alpha - w.beta < 0.0)
                     throw InvalidArgument("affine weight must be positive on (0,1)");
                 },
                 [this](const StepWeight& w) {
                   if (w.values.empty() || w.edges.size() != w.values.size() + 1)
                     throw InvalidArgument("step weight needs one more edge than values");
                   if (w.edges.front() != 0.0 || w.edges.back() != 1.0)
                     throw InvalidArgument("step weight edges must span [0,1]");
                   cumulative_ = {0.0};
                   for (std::size_t i = 0; i < w.values.size(); ++i) {
                     if (!(w.edges[i + 1] > w.edges[i])) throw InvalidArgument("step weight edges must increase");
                     if (!(w.values[i] >= 0.0) || !std::isfinite(w.values[i]))
                       throw InvalidArgument("step weight values must be nonnegative");
                     if (i > 0 && w.values[i] > w.values[i - 1])
                       throw InvalidArgument("step weight must be nonincreasing");
                     cumulative_.push_back(cumulative_.back() + w.values[i] * (w.edges[i + 1] - w.edges[i]));
                   }
                   if (!(cumulative_.back() > 0.0)) throw InvalidArgument("weight vanishes identically");
                 },
             },
             family_);
}

double LorentzWeight::operator()(double x) const {
  return std::visit(overloaded{
                        [](const ConstantWeight& w) { return w.c; },
                        [x](const AffineWeight& w) { return w.alpha - w.beta * x; },
                        [x](const StepWeight& w) {
                          auto it = std::upper_bound(w.edges.begin() + 1, w.edges.end() - 1, x);
                          return w.values[static_cast<std::size_t>(it - (w.edges.begin() + 1))];
                        },
                    },
                    family_);
}

double LorentzWeight::antiderivative(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  return std::visit(overloaded{
                        [t](const ConstantWeight& w) { return w.c * t; },
                        [t](const AffineWeight& w) { return w.alpha * t - 0.5 * w.beta * t * t; },
                        [t, this](const StepWeight& w) {
                          auto it = std::upper_bound(w.edges.begin() + 1, w.edges.end() - 1, t);
                          const auto i = static_cast<std::size_t>(it - (w.edges.begin() + 1));
                          return cumulative_[i] + w.values[i] * (t - w.edges[i]);
                        },
                    },
                    family_);
}

double LorentzWeight::antiderivative_inverse(double y) const {
  const double total = this->total();
  y = std::clamp(y, 0.0, total);
  return std::visit(overloaded{
                        [y](const ConstantWeight& w) { return std::min(1.0, y / w.c); },
                        [y](const AffineWeight& w) {
                          // Root of alpha t - beta t^2 / 2 = y in the cancellation-free form.
                          const double disc = std::max(0.0, w.alpha * w.alpha - 2.0 * w.beta * y);
                          return std::min(1.0, 2.0 * y / (w.alpha + std::sqrt(disc)));
                        },
                        [y, this](const StepWeight& w) {
                          auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), y);
                          std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
                          i = std::min(i, w.values.size() - 1);
                          if (w.values[i] == 0.0) return w.edges[i];
                          return std::min(1.0, w.edges[i] + (y - cumulative_[i]) / w.values[i]);
                        },
                    },
                    family_);
}

bool LorentzWeight::strictly_positive() const {
  return std::visit(overloaded{
                        [](const ConstantWeight&) { return true; },
                        [](const AffineWeight& w) { return w.alpha - w.beta >= 0.0 && w.alpha > 0.0; },
                        [](const StepWeight& w) { return w.values.back() > 0.0; },
                    },
                    family_);
}

std::string describe(const LorentzWeight& w) {
  return std::visit(overloaded{
                        [](const ConstantWeight& c) { return "w = " + num(c.c); },
                        [](const AffineWeight& a) { return "w = " + num(a.alpha) + " - " + num(a.beta) + " x"; },
                        [](const StepWeight& s) { return "step weight, " + std::to_string(s.values.size()) + " pieces"; },
                    },
                    w.family());
}

std::string kind_name(const SpaceDescriptor& x) {
  return std::visit(overloaded{
                        [](const OrliczSpace&) { return std::string("orlicz"); },
                        [](const LorentzSpace&) { return std::string("lorentz"); },
                        [](const OrliczLorentzSpace&) { return std::string("orlicz_lorentz"); },
                        [](const MSSpace&) { return std::string("ms"); },
                    },
                    x);
}

std::string describe(const SpaceDescriptor& x) {
  return std::visit(overloaded{
                        [](const OrliczSpace& s) { return "L_phi, phi = " + phi::describe(s.phi); },
                        [](const LorentzSpace& s) { return "L_{w,q}, " + describe(s.w) + ", q = " + num(s.q); },
                        [](const OrliczLorentzSpace& s) {
                          return "Lambda_{w,phi}, " + describe(s.w) + ", phi = " + phi::describe(s.phi);
                        },
                        [](const MSSpace& s) {
                          return "L_{F,G}, F = " + phi::describe(s.F) + ", G = " + phi::describe(s.G);
                        },
                    },
                    x);
}

std::vector<std::string> validate(const SpaceDescriptor& x) {
  std::vector<std::string> out;
  auto add = [&out](const std::string& prefix, const std::vector<std::string>& v) {
    for (const auto& s : v) out.push_back(prefix + s);
  };
  std::visit(overloaded{
                 [&](const OrliczSpace& s) { add("phi: ", phi::validate(s.phi)); },
                 [&](const LorentzSpace& s) {
                   if (!(s.q >= 1.0) || !std::isfinite(s.q)) out.push_back("q must be a finite value >= 1");
                 },
                 [&](const OrliczLorentzSpace& s) { add("phi: ", phi::validate(s.phi)); },
                 [&](const MSSpace& s) {
                   add("F: ", phi::validate(s.F, phi::Axioms::PhiFunction));
                   add("G: ", phi::validate(s.G, phi::Axioms::PhiFunction));
                 },
             },
             x);
  return out;
}

double modular(const phi::OrliczFunction& phi, const StepFunction& f, double c) {
  if (!(c > 0.0)) throw InvalidArgument("modular needs c > 0");
  double total = 0.0;
  for (const auto& p : f.pieces()) total += phi(std::fabs(p.value) / c) * to_double(p.length());
  return total;
}

double luxemburg_infimum(const phi::OrliczFunction& phi, std::span<const double> values,
                         std::span<const double> weights) {
  double vmax = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (weights[i] > 0.0) vmax = std::max(vmax, std::fabs(values[i]));
  if (vmax == 0.0) return 0.0;

  auto mod = [&](double c) {
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (weights[i] > 0.0 && values[i] != 0.0) total += phi(std::fabs(values[i]) / c) * weights[i];
    return total;
  };
  auto feasible = [&](double c) { return mod(c) <= 1.0; };

  double hi = vmax;
  for (int k = 0; !feasible(hi); ++k) {
    if (k >= 200) throw ConvergenceError("Luxemburg bracket: modular stays above 1");
    hi *= 2.0;
  }
  double lo = hi / 2.0;
  for (int k = 0; feasible(lo); ++k) {
    if (k >= 2000 || lo == 0.0) return 0.0;
    hi = lo;
    lo /= 2.0;
  }
  return numerics::bisect_threshold(feasible, lo, hi, kBisectionTolerance, 0.0, 200);
}

double luxemburg_norm(const phi::OrliczFunction& phi, const StepFunction& f) {
  std::vector<double> values, weights;
  for (const auto& p : f.pieces()) {
    values.push_back(p.value);
    weights.push_back(to_double(p.length()));
  }
  return luxemburg_infimum(phi, values, weights);
}

double luxemburg_norm(const phi::OrliczFunction& phi, const DecreasingProfile& f) {
  std::vector<double> weights;
  for (std::size_t i = 0; i < f.size(); ++i) weights.push_back(f.measure(i));
  return luxemburg_infimum(phi, f.values, weights);
}

double lorentz_norm(const LorentzWeight& w, double q, const StepFunction& f) {
  if (!(q >= 1.0)) throw InvalidArgument("Lorentz exponent q must be >= 1");
  const auto star = rearrange(f);
  double total = 0.0;
  for (const auto& p : star.pieces()) {
    if (p.value == 0.0) continue;
    total += std::pow(p.value, q) * (w.antiderivative(to_double(p.right)) - w.antiderivative(to_double(p.left)));
  }
  return std::pow(total, 1.0 / q);
}

double orlicz_lorentz_norm(const LorentzWeight& w, const phi::OrliczFunction& phi, const StepFunction& f) {
  const auto star = rearrange(f);
  std::vector<double> values, weights;
  for (const auto& p : star.pieces()) {
    values.push_back(p.value);
    weights.push_back(w.antiderivative(to_double(p.right)) - w.antiderivative(to_double(p.left)));
  }
  return luxemburg_infimum(phi, values, weights);
}

double ms_breakpoint(const phi::PhiFunction& F, const phi::PhiFunction& G, double m) {
  if (m <= 0.0) return 0.0;
  if (m >= 1.0) return 1.0;
  const auto* fp = std::get_if<phi::Power>(&F.family());
  const auto* gp = std::get_if<phi::Power>(&G.family());
  if (fp && gp) return std::pow(m, gp->p / fp->p);
  // F~^{-1}(m), then G~(y) = 1 / G(1/y).
  const double y = phi::inverse(phi::tilde(F), m);
  if (y == 0.0) return 0.0;
  return std::clamp(1.0 / G(1.0 / y), 0.0, 1.0);
}

double ms_norm(const phi::PhiFunction& F, const phi::PhiFunction& G, const DecreasingProfile& f) {
  DecreasingProfile g;
  g.values = f.values;
  g.edges.reserve(f.edges.size());
  for (double m : f.edges) g.edges.push_back(ms_breakpoint(F, G, m));
  g.edges.front() = 0.0;
  g.edges.back() = 1.0;
  return luxemburg_norm(G, g);
}

double ms_norm(const phi::PhiFunction& F, const phi::PhiFunction& G, const StepFunction& f) {
  return ms_norm(F, G, decreasing_profile(f));
}

phi::PhiFunction weight_to_F(const LorentzWeight& w, const phi::PhiFunction& G) {
  if (!w.strictly_positive()) throw InvalidArgument("weight_to_F needs w > 0 on (0,1)");
  if (std::fabs(w.total() - 1.0) > 1e-12) throw InvalidArgument("weight_to_F needs int_0^1 w = 1");
  auto W = [w](double t) { return t <= 1.0 ? w.antiderivative(t) : t; };
  auto W_inv = [w](double y) { return y <= 1.0 ? w.antiderivative_inverse(y) : y; };
  phi::Custom c;
  c.kind = "weight_to_F";
  c.eval = [G, W_inv](double t) {
    if (t == 0.0) return 0.0;
    const double g = G(t);
    if (g == 0.0) return 0.0;
    return 1.0 / W_inv(1.0 / g);
  };
  c.inverse = [G, W](double y) {
    if (y == 0.0) return 0.0;
    return phi::inverse(G, 1.0 / W(1.0 / y));
  };
  c.payload = WeightDerivedPayload{w, G};
  return c;
}

double norm(const SpaceDescriptor& x, const StepFunction& f) {
  return std::visit(overloaded{
                        [&](const OrliczSpace& s) { return luxemburg_norm(s.phi, f); },
                        [&](const LorentzSpace& s) { return lorentz_norm(s.w, s.q, f); },
                        [&](const OrliczLorentzSpace& s) { return orlicz_lorentz_norm(s.w, s.phi, f); },
                        [&](const MSSpace& s) { return ms_norm(s.F, s.G, f); },
                    },
                    x);
}

double dual_norm_lower_bound(const SpaceDescriptor& x, const StepFunction& g,
                             const std::vector<Rational>& partition, int iters) {
  if (partition.size() < 2 || partition.front() != 0 || partition.back() != 1)
    throw InvalidArgument("partition must run from 0 to 1");
  for (std::size_t i = 1; i < partition.size(); ++i)
    if (!(partition[i] > partition[i - 1])) throw InvalidArgument("partition must be increasing");
  for (const auto& b : g.breakpoints())
    if (!std::binary_search(partition.begin(), partition.end(), b))
      throw InvalidArgument("partition must refine the pieces of g");
  if (g.is_zero()) return 0.0;

  const std::size_t n = partition.size() - 1;
  std::vector<double> gv(n), len(n);
  for (std::size_t i = 0; i < n; ++i) {
    gv[i] = std::fabs(g((partition[i] + partition[i + 1]) / 2));
    len[i] = to_double(partition[i + 1] - partition[i]);
  }
  auto ratio = [&](const std::vector<double>& f) {
    double pairing = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      pairing += f[i] * gv[i] * len[i];
      any = any || f[i] != 0.0;
    }
    if (!any) return 0.0;
    const double nf = norm(x, StepFunction(partition, f));
    return nf > 0.0 ? pairing / nf : 0.0;
  };

  std::vector<double> f = gv;
  double best = ratio(f);
  for (int sweep = 0; sweep < iters; ++sweep) {
    const double before = best;
    for (std::size_t i = 0; i < n; ++i) {
      const double upper = 4.0 * *std::max_element(f.begin(), f.end());
      auto at = [&](double v) {
        std::vector<double> trial = f;
        trial[i] = v;
        return ratio(trial);
      };
      double candidate = numerics::golden_section_minimize([&](double v) { return -at(v); }, 0.0, upper, 1e-12);
      for (double v : {0.0, candidate, upper}) {
        const double r = at(v);
        if (r > best) {
          best = r;
          f[i] = v;
        }
      }
    }
    if (best - before <= 1e-13 * best) break;
  }
  return best;
}

}  // namespace rispaces::norms
