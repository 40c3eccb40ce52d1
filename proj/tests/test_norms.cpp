#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "rispaces/error.hpp"
#include "rispaces/norms.hpp"
#include "rispaces/random.hpp"

using namespace rispaces;
using namespace rispaces::norms;

namespace {

const double kPi = std::acos(-1.0);

Rational q(long long n, long long d) { return Rational(n, d); }

StepFunction two_level() {
  return StepFunction::indicator(q(0, 1), q(1, 4), 2.0) + StepFunction::indicator(q(1, 4), q(1, 1), 1.0);
}

double lp_oracle(const StepFunction& f, double p) {
  double s = 0.0;
  for (const auto& piece : f.pieces()) s += std::pow(std::fabs(piece.value), p) * to_double(piece.length());
  return std::pow(s, 1.0 / p);
}

double lorentz_oracle(double (*W)(double), double qq, const StepFunction& f) {
  const auto star = rearrange(f);
  double s = 0.0;
  for (const auto& piece : star.pieces())
    s += std::pow(piece.value, qq) * (W(to_double(piece.right)) - W(to_double(piece.left)));
  return std::pow(s, 1.0 / qq);
}

double w_affine(double t) { return 2.0 * t - t * t; }

std::vector<SpaceDescriptor> all_spaces() {
  const LorentzWeight affine(AffineWeight{2.0, 2.0});
  return {OrliczSpace{phi::power(2)},
          OrliczSpace{phi::log_periodic(5, 1, 1)},
          OrliczSpace{phi::piecewise_affine({{0, 0}, {0.5, 0}, {1, 1}})},
          LorentzSpace{LorentzWeight(), 1.0},
          LorentzSpace{affine, 2.0},
          OrliczLorentzSpace{affine, phi::log_periodic(3, 0.2, 2)},
          MSSpace{phi::power(2), phi::log_periodic(5, 1, 1)}};
}

}  // namespace

TEST(LorentzWeight, ClosedForms) {
  const LorentzWeight c(ConstantWeight{1.5});
  EXPECT_DOUBLE_EQ(c.antiderivative(0.5), 0.75);
  EXPECT_DOUBLE_EQ(c.antiderivative_inverse(0.75), 0.5);
  const LorentzWeight a(AffineWeight{2.0, 2.0});
  EXPECT_DOUBLE_EQ(a.antiderivative(0.5), 0.75);
  EXPECT_DOUBLE_EQ(a.total(), 1.0);
  EXPECT_NEAR(a.antiderivative_inverse(0.75), 0.5, 1e-15);
  const LorentzWeight s(StepWeight{{0.0, 0.25, 1.0}, {2.0, 2.0 / 3.0}});
  EXPECT_DOUBLE_EQ(s.antiderivative(0.25), 0.5);
  EXPECT_DOUBLE_EQ(s.total(), 1.0);
  EXPECT_NEAR(s.antiderivative_inverse(0.75), 0.625, 1e-15);
  EXPECT_THROW(LorentzWeight(AffineWeight{1.0, -1.0}), InvalidArgument);
  EXPECT_THROW(LorentzWeight(StepWeight{{0.0, 0.5, 1.0}, {1.0, 2.0}}), InvalidArgument);
  EXPECT_THROW(LorentzWeight(ConstantWeight{0.0}), InvalidArgument);
}

TEST(Modular, Examples) {
  EXPECT_DOUBLE_EQ(modular(phi::power(2), two_level(), 1.0), 1.75);
  EXPECT_DOUBLE_EQ(modular(phi::power(1), two_level(), 1.0), 1.25);
  EXPECT_EQ(modular(phi::log_periodic(5, 1, 1), StepFunction(), 0.3), 0.0);
}

TEST(Luxemburg, Examples) {
  EXPECT_NEAR(luxemburg_norm(phi::power(2), two_level()), std::sqrt(1.75), 1e-10);
  EXPECT_NEAR(luxemburg_norm(phi::piecewise_affine({{0, 0}, {0.5, 0}, {1, 1}}), StepFunction::indicator(q(0, 1), q(1, 2))),
              2.0 / 3.0, 1e-10);
  for (const auto& f : {phi::power(1), phi::power(3), phi::log_periodic(5, 1, 1), phi::log_periodic(5, 0.1, 2 * kPi)})
    EXPECT_NEAR(luxemburg_norm(f, StepFunction::constant(1.0)), 1.0, 1e-10);
  EXPECT_EQ(luxemburg_norm(phi::power(2), StepFunction()), 0.0);
}

TEST(Luxemburg, PowerMatchesLpOnRandomSuite) {
  for (const auto& f : gen::suite(21, 50))
    for (double p : {1.0, 2.0, 5.0}) EXPECT_NEAR(luxemburg_norm(phi::power(p), f), lp_oracle(f, p), 1e-10 * lp_oracle(f, p));
}

TEST(Lorentz, Examples) {
  const LorentzWeight one;
  const LorentzWeight affine(AffineWeight{2.0, 2.0});
  EXPECT_NEAR(lorentz_norm(one, 1.0, two_level()), 1.25, 1e-15);
  EXPECT_NEAR(lorentz_norm(affine, 1.0, StepFunction::indicator(q(0, 1), q(1, 2))), 0.75, 1e-15);
  for (const auto& f : gen::suite(22, 50)) {
    EXPECT_NEAR(lorentz_norm(one, 2.0, f), lp_oracle(f, 2.0), 1e-12 * lp_oracle(f, 2.0));
    EXPECT_NEAR(lorentz_norm(affine, 3.0, f), lorentz_oracle(w_affine, 3.0, f), 1e-12 * lp_oracle(f, 3.0));
  }
}

TEST(OrliczLorentz, ReducesToOrliczAndLorentz) {
  const LorentzWeight affine(AffineWeight{2.0, 2.0});
  const auto lp = phi::log_periodic(5, 1, 1);
  for (const auto& f : gen::suite(23, 30)) {
    const double n = luxemburg_norm(lp, f);
    EXPECT_NEAR(orlicz_lorentz_norm(LorentzWeight(), lp, f), n, 1e-10 * std::max(1.0, n));
    const double l = lorentz_norm(affine, 2.0, f);
    EXPECT_NEAR(orlicz_lorentz_norm(affine, phi::power(2), f), l, 1e-10 * std::max(1.0, l));
  }
  EXPECT_EQ(orlicz_lorentz_norm(affine, lp, StepFunction()), 0.0);
}

TEST(MS, IdentityCompositionAndIndicator) {
  const auto G = phi::log_periodic(5, 1, 1);
  for (const auto& f : gen::suite(24, 30)) {
    const double n = luxemburg_norm(G, f);
    EXPECT_NEAR(ms_norm(G, G, f), n, 1e-9 * std::max(1.0, n));
  }
  EXPECT_NEAR(ms_norm(phi::power(2), phi::power(3), StepFunction::indicator(q(0, 1), q(1, 4))), 0.5, 1e-9);
}

TEST(MS, PowerFastPathMatchesNumericInverse) {
  const auto F = phi::power(2), G = phi::power(3);
  const auto Fe = phi::expression("t^2"), Ge = phi::expression("t^3");
  for (double m : {0.1, 0.25, 0.5, 0.9}) EXPECT_NEAR(ms_breakpoint(F, G, m), ms_breakpoint(Fe, Ge, m), 1e-12);
  for (const auto& f : gen::suite(25, 20)) {
    const double n = ms_norm(F, G, f);
    EXPECT_NEAR(ms_norm(Fe, Ge, f), n, 1e-9 * std::max(1.0, n));
  }
}

TEST(WeightToF, ConstantWeightGivesG) {
  const auto G = phi::log_periodic(5, 1, 1);
  const auto F = weight_to_F(LorentzWeight(), G);
  for (double t : {0.01, 0.3, 1.0, 2.0, 50.0}) EXPECT_NEAR(F(t), G(t), 1e-9 * std::max(1.0, G(t)));
}

TEST(WeightToF, IndicatorNormsBothWays) {
  const LorentzWeight affine(AffineWeight{2.0, 2.0});
  const auto G = phi::power(2);
  const auto F = weight_to_F(affine, G);
  for (long long d : {2, 4, 8}) {
    const double m = 1.0 / d;
    const double expected = 1.0 / std::sqrt(1.0 / w_affine(m));
    const auto chi = StepFunction::indicator(q(0, 1), q(1, d));
    EXPECT_NEAR(orlicz_lorentz_norm(affine, G, chi), expected, 1e-8);
    EXPECT_NEAR(ms_norm(F, G, chi), expected, 1e-8);
  }
  for (const auto& f : gen::suite(26, 20)) {
    const double n = orlicz_lorentz_norm(affine, G, f);
    EXPECT_NEAR(ms_norm(F, G, f), n, 1e-7 * std::max(1.0, n));
  }
  EXPECT_THROW(weight_to_F(LorentzWeight(ConstantWeight{2.0}), G), InvalidArgument);
}

TEST(DualBound, Examples) {
  std::vector<Rational> dyadic8;
  for (int i = 0; i <= 8; ++i) dyadic8.push_back(q(i, 8));
  const auto chi = StepFunction::indicator(q(0, 1), q(1, 2));
  EXPECT_GE(dual_norm_lower_bound(OrliczSpace{phi::power(2)}, chi, dyadic8), 1.0 / std::sqrt(2.0) - 1e-4);
  const auto g = StepFunction::indicator(q(0, 1), q(1, 4), 3.0) + StepFunction::indicator(q(1, 4), q(1, 1), -1.0);
  EXPECT_NEAR(dual_norm_lower_bound(OrliczSpace{phi::power(1)}, g, dyadic8), 3.0, 1e-6);
  EXPECT_EQ(dual_norm_lower_bound(OrliczSpace{phi::power(2)}, StepFunction(), dyadic8), 0.0);
}

TEST(NormAxioms, HoldOnRandomPairs) {
  const auto fs = gen::suite(31, 60);
  const auto gs = gen::suite(32, 60);
  for (const auto& x : all_spaces()) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const auto& f = fs[i];
      const auto& g = gs[i];
      const double nf = norm(x, f), ng = norm(x, g);
      EXPECT_NEAR(norm(x, -3.5 * f), 3.5 * nf, 1e-9 * std::max(1.0, 3.5 * nf)) << describe(x);
      EXPECT_LE(norm(x, f + g), nf + ng + 1e-9 * std::max(1.0, nf + ng)) << describe(x);
      const auto smaller = combine(f, g, [](double a, double b) { return std::min(std::fabs(a), std::fabs(b)); });
      EXPECT_LE(norm(x, smaller), std::min(nf, ng) + 1e-9 * std::max(1.0, nf)) << describe(x);
      EXPECT_NEAR(norm(x, rearrange(f)), nf, 1e-9 * std::max(1.0, nf)) << describe(x);
    }
  }
}

TEST(NormAxioms, ModularConsistency) {
  for (const auto& phi : {phi::power(2), phi::log_periodic(5, 1, 1), phi::power(1.3)})
    for (const auto& f : gen::suite(33, 50)) {
      const double n = luxemburg_norm(phi, f);
      EXPECT_NEAR(modular(phi, f, n), 1.0, 1e-6);
    }
}

TEST(NormAxioms, NormalizedIndicatorOfWholeInterval) {
  for (const auto& x : all_spaces()) EXPECT_NEAR(norm(x, StepFunction::constant(1.0)), 1.0, 1e-10) << describe(x);
}

TEST(SpaceDescriptor, Validation) {
  EXPECT_TRUE(validate(SpaceDescriptor{OrliczSpace{phi::power(2)}}).empty());
  EXPECT_FALSE(validate(SpaceDescriptor{OrliczSpace{phi::log_periodic(5, 1, 2 * kPi)}}).empty());
  EXPECT_FALSE(validate(SpaceDescriptor{LorentzSpace{LorentzWeight(), 0.5}}).empty());
  EXPECT_FALSE(validate(SpaceDescriptor{MSSpace{phi::piecewise_affine({{0, 0}, {0.5, 0}, {1, 1}}), phi::power(2)}}).empty());
  EXPECT_EQ(kind_name(SpaceDescriptor{MSSpace{phi::power(2), phi::power(2)}}), "ms");
}
