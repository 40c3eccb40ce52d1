#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "rispaces/error.hpp"
#include "rispaces/numerics.hpp"
#include "rispaces/phi.hpp"
#include "rispaces/random.hpp"

using namespace rispaces;
using phi::MultiplierGroup;

namespace {

const double kPi = std::acos(-1.0);

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Phi, FamilyValues) {
  EXPECT_DOUBLE_EQ(phi::power(2)(3.0), 9.0);
  EXPECT_EQ(phi::log_periodic(5, 1, 1)(0.0), 0.0);
  EXPECT_NEAR(phi::log_periodic(5, 1, 1)(2.0), 32.0 * std::exp(std::sin(std::log(2.0))), 1e-13);
  const auto s = phi::scaled(phi::log_periodic(5, 1, 1), 2.0, 5.0);
  EXPECT_NEAR(s(1.5), std::pow(1.5, 5) * std::exp(std::sin(std::log(std::pow(2.0, 0.2) * 1.5))), 1e-13);
  const auto flat = phi::piecewise_affine({{0, 0}, {0.5, 0}, {1, 1}});
  EXPECT_EQ(flat(0.25), 0.0);
  EXPECT_DOUBLE_EQ(flat(0.75), 0.5);
  EXPECT_DOUBLE_EQ(flat(3.0), 5.0);
}

TEST(Phi, TildeIsInvolution) {
  const auto f = phi::log_periodic(5, 0.1, 2 * kPi);
  const auto tt = phi::tilde(phi::tilde(f));
  for (double t : numerics::log_grid(1e-3, 1e3, 50)) EXPECT_NEAR(tt(t), f(t), 1e-12 * std::max(1.0, f(t)));
  EXPECT_DOUBLE_EQ(phi::tilde(phi::power(3))(2.0), 8.0);
  EXPECT_EQ(phi::tilde(f)(0.0), 0.0);
}

TEST(Phi, InverseClosedFormMatchesBisection) {
  for (double p : {1.0, 1.5, 2.0, 5.0}) {
    const auto f = phi::power(p);
    for (double y : {1e-6, 0.3, 1.0, 7.0, 1e5}) {
      EXPECT_NEAR(phi::inverse(f, y), std::pow(y, 1.0 / p), 1e-12 * std::max(1.0, std::pow(y, 1.0 / p)));
      EXPECT_NEAR(phi::inverse_by_bisection(f, y), phi::inverse(f, y), 1e-11 * std::max(1.0, phi::inverse(f, y)));
    }
  }
  const auto lp = phi::log_periodic(5, 1, 1);
  for (double y : {0.01, 1.0, 100.0}) EXPECT_NEAR(lp(phi::inverse(lp, y)), y, 1e-12 * std::max(1.0, y));
  const auto inv = phi::inverse_function(lp);
  EXPECT_NEAR(inv(lp(1.7)), 1.7, 1e-12);
}

TEST(Phi, ValidateOrliczAxioms) {
  EXPECT_TRUE(phi::validate(phi::power(1)).empty());
  EXPECT_TRUE(phi::validate(phi::log_periodic(5, 1, 1)).empty());
  EXPECT_TRUE(phi::validate(phi::log_periodic(5, 0.1, 2 * kPi)).empty());
  EXPECT_TRUE(phi::validate(phi::piecewise_affine({{0, 0}, {0.5, 0}, {1, 1}})).empty());
  EXPECT_THROW(phi::power(0.5), rispaces::InvalidArgument);
  EXPECT_TRUE(mentions(phi::validate(phi::expression("t^0.5")), "convexity"));
  EXPECT_TRUE(mentions(phi::validate(phi::expression("t - 1")), "phi(0)"));
}

TEST(Phi, LogPeriodicViolationsAreReported) {
  const auto bad = phi::log_periodic(5, 1, 2 * kPi);
  const auto v = phi::validate(bad);
  EXPECT_TRUE(mentions(v, "p > eps*omega"));
  EXPECT_TRUE(mentions(v, "convexity"));
}

TEST(Phi, ValidatePhiFunctionAxioms) {
  EXPECT_TRUE(phi::validate(phi::power(2), phi::Axioms::PhiFunction).empty());
  EXPECT_TRUE(phi::validate(phi::expression("t^0.5"), phi::Axioms::PhiFunction).empty());
  EXPECT_FALSE(phi::validate(phi::scaled(phi::power(2), 4.0, 1.0), phi::Axioms::PhiFunction).empty());
  EXPECT_FALSE(phi::validate(phi::piecewise_affine({{0, 0}, {0.5, 0}, {1, 1}}), phi::Axioms::PhiFunction).empty());
}

TEST(Phi, MultiplierGroups) {
  for (double p : {1.0, 2.0, 5.0}) {
    const auto g = phi::multiplier_group(phi::power(p));
    EXPECT_EQ(g.kind, MultiplierGroup::Kind::FullPositiveReals);
    EXPECT_NEAR(phi::growth_exponent(phi::power(p), 3.0), p, 1e-9);
  }
  const auto lp = phi::log_periodic(5, 1, 1);
  const auto g = phi::multiplier_group(lp);
  ASSERT_EQ(g.kind, MultiplierGroup::Kind::Cyclic);
  EXPECT_NEAR(g.generator / std::exp(2 * kPi), 1.0, 1e-9);
  EXPECT_NEAR(phi::growth_exponent(lp, g.generator), 5.0, 1e-9);

  const auto desk = phi::log_periodic(5, 0.1, 2 * kPi);
  const auto gd = phi::multiplier_group(desk);
  ASSERT_EQ(gd.kind, MultiplierGroup::Kind::Cyclic);
  EXPECT_NEAR(gd.generator / std::exp(1.0), 1.0, 1e-9);
  EXPECT_NEAR(phi::growth_exponent(desk, gd.generator), 5.0, 1e-9);
}

TEST(Phi, MultiplierResidualIdentity) {
  const auto lp = phi::log_periodic(5, 1, 1);
  EXPECT_LT(phi::multiplier_residual(lp, std::exp(2 * kPi)), 1e-12);
  EXPECT_GT(phi::multiplier_residual(lp, 2.0), 1e-3);
  EXPECT_LT(phi::multiplier_residual(phi::power(3), 7.0), 1e-12);
}

TEST(Phi, TrivialMultiplierGroupFlagsCutoff) {
  const auto g = phi::multiplier_group(phi::expression("t^2 + t^3"));
  EXPECT_EQ(g.kind, MultiplierGroup::Kind::Trivial);
  EXPECT_TRUE(g.cutoff_reached);
}

TEST(Phi, ScaledKeepsMultiplierGroupAndGrowth) {
  Rng rng(3);
  const auto lp = phi::log_periodic(5, 1, 1);
  for (int i = 0; i < 5; ++i) {
    const double b = rng.log_uniform(1e-3, 1e3);
    const auto s = phi::scaled(lp, b, 5.0);
    const auto g = phi::multiplier_group(s);
    ASSERT_EQ(g.kind, MultiplierGroup::Kind::Cyclic) << "b = " << b;
    EXPECT_NEAR(g.generator / std::exp(2 * kPi), 1.0, 1e-9);
    EXPECT_NEAR(phi::growth_exponent(s, g.generator), 5.0, 1e-9);
  }
}
