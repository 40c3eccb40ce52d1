#include "rispaces/groups.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rispaces/error.hpp"

namespace rispaces::groups {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<double> log_slopes(const PiecewiseLinearMap& sigma) {
  std::vector<double> out;
  for (const auto& p : sigma.pieces()) out.push_back(std::log(p.slope));
  return out;
}

double real_gcd(double x, double y, double tol) {
  if (x < y) std::swap(x, y);
  for (int i = 0; i < 200 && y > tol; ++i) {
    double r = std::fmod(x, y);
    if (y - r < tol) r = 0.0;
    x = y;
    y = r;
  }
  return x;
}

}  // namespace

std::string describe(const GroupDescriptor& g) {
  char buf[96];
  return std::visit(overloaded{
                        [](const FullNS&) { return std::string("NS"); },
                        [&](const ScaleInvariant& s) {
                          std::snprintf(buf, sizeof buf, "NS(R+; %.10g)", s.a);
                          return std::string(buf);
                        },
                        [&](const Discrete& s) {
                          std::snprintf(buf, sizeof buf, "NS(%.10g; %d)", s.a, s.d);
                          return std::string(buf);
                        },
                        [](const MeasurePreserving&) { return std::string("U"); },
                    },
                    g);
}

bool is_measure_preserving(const PiecewiseLinearMap& sigma) {
  return std::all_of(sigma.pieces().begin(), sigma.pieces().end(),
                     [](const MapPiece& p) { return std::fabs(p.slope - 1.0) <= 1e-12; });
}

std::optional<double> scale_class_witness(const PiecewiseLinearMap& sigma, double a) {
  if (!(a > 1.0)) throw InvalidArgument("lattice base a must exceed 1");
  const double la = std::log(a);
  const auto ls = log_slopes(sigma);
  double b0 = std::fmod(ls.front(), la);
  if (b0 < 0.0) b0 += la;
  if (la - b0 < kLogTolerance) b0 = 0.0;
  for (double l : ls) {
    const double k = std::round((l - b0) / la);
    if (std::fabs(l - b0 - k * la) >= kLogTolerance) return std::nullopt;
  }
  return std::exp(b0);
}

std::optional<int> discrete_class_witness(const PiecewiseLinearMap& sigma, double a, int d) {
  if (!(a > 1.0)) throw InvalidArgument("lattice base a must exceed 1");
  if (d < 1) throw InvalidArgument("lattice step d must be >= 1");
  const double la = std::log(a);
  std::optional<long long> residue;
  for (double l : log_slopes(sigma)) {
    const double n = std::round(l / la);
    if (std::fabs(l - n * la) >= kLogTolerance) return std::nullopt;
    const long long r = ((static_cast<long long>(n) % d) + d) % d;
    if (residue && *residue != r) return std::nullopt;
    residue = r;
  }
  return static_cast<int>(*residue);
}

bool belongs_to(const PiecewiseLinearMap& sigma, const GroupDescriptor& g) {
  return std::visit(overloaded{
                        [](const FullNS&) { return true; },
                        [&](const ScaleInvariant& s) { return scale_class_witness(sigma, s.a).has_value(); },
                        [&](const Discrete& s) { return discrete_class_witness(sigma, s.a, s.d).has_value(); },
                        [&](const MeasurePreserving&) { return is_measure_preserving(sigma); },
                    },
                    g);
}

std::optional<double> infer_slope_lattice(const PiecewiseLinearMap& sigma, double tol) {
  const auto ls = log_slopes(sigma);
  std::vector<double> diffs;
  for (double l : ls) {
    const double d = std::fabs(l - ls.front());
    if (d > tol) diffs.push_back(d);
  }
  if (diffs.empty()) return std::nullopt;
  double g = diffs.front();
  for (double d : diffs) g = real_gcd(g, d, tol);
  const double largest = *std::max_element(diffs.begin(), diffs.end());
  if (g < 1e-6 * largest) return std::nullopt;
  for (double d : diffs) {
    const double k = std::round(d / g);
    if (std::fabs(d - k * g) >= tol * std::max(1.0, k)) return std::nullopt;
  }
  return std::exp(g);
}

WeightedCompositionOp build_isometry_candidate(const PiecewiseLinearMap& sigma, double p,
                                               const std::vector<int>& signs) {
  if (!(p >= 1.0)) throw InvalidArgument("isometry candidate needs p >= 1");
  if (!signs.empty() && signs.size() != sigma.size())
    throw InvalidArgument("one sign per map piece expected");
  std::vector<StepPiece> h;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto& piece = sigma.pieces()[i];
    const double sign = signs.empty() || signs[i] >= 0 ? 1.0 : -1.0;
    h.push_back({piece.left, piece.right, sign * std::pow(piece.slope, 1.0 / p)});
  }
  return {StepFunction(std::move(h)), sigma};
}

void validate(const WeightedCompositionOp& op) {
  for (const auto& p : op.h.pieces())
    if (p.value == 0.0) throw InvalidArgument("weight h must be nonzero everywhere");
  std::vector<Rational> sb;
  for (const auto& p : op.sigma.pieces()) sb.push_back(p.left);
  sb.push_back(Rational(1));
  for (const auto& b : op.h.breakpoints())
    if (!std::binary_search(sb.begin(), sb.end(), b))
      throw InvalidArgument("weight h must be constant on each piece of sigma");
}

PiecewiseLinearMap conjugate(const PiecewiseLinearMap& tau, const PiecewiseLinearMap& sigma) {
  return map_compose(tau, map_compose(sigma, map_invert(tau)));
}

OrliczIsometryGroup iso_group_of_orlicz(const phi::OrliczFunction& phi, double tol) {
  OrliczIsometryGroup out{FullNS{}, {}};
  auto l2_warning = [&](double p) {
    if (std::fabs(p - 2.0) < 1e-9)
      out.warnings.push_back("L_2: the isometry group is larger than NS; reported as NS");
  };
  if (const auto* pw = std::get_if<phi::Power>(&phi.family())) {
    l2_warning(pw->p);
    return out;
  }
  const auto mg = phi::multiplier_group(phi, tol);
  switch (mg.kind) {
    case phi::MultiplierGroup::Kind::FullPositiveReals:
      l2_warning(phi::growth_exponent(phi, 2.0));
      return out;
    case phi::MultiplierGroup::Kind::Cyclic: {
      const double p = phi::growth_exponent(phi, mg.generator);
      out.group = Discrete{std::pow(mg.generator, p), 1};
      return out;
    }
    case phi::MultiplierGroup::Kind::Trivial:
      out.group = MeasurePreserving{};
      if (mg.cutoff_reached)
        out.warnings.push_back("no multiplier generator found below the scan ceiling 1e6");
      return out;
  }
  return out;
}

}  // namespace rispaces::groups
