#include <gtest/gtest.h>

#include "rispaces/error.hpp"
#include "rispaces/random.hpp"
#include "rispaces/step_function.hpp"

using namespace rispaces;

namespace {

Rational q(long long n, long long d) { return Rational(n, d); }

StepFunction sample() {
  const std::vector<Rational> bp = {q(0, 1), q(1, 2), q(3, 4), q(1, 1)};
  const std::vector<double> v = {1.0, 3.0, -2.0};
  return StepFunction(bp, v);
}

}  // namespace

TEST(StepFunction, DefaultIsZero) {
  StepFunction f;
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.size(), 1u);
  EXPECT_EQ(f(0.5), 0.0);
}

TEST(StepFunction, MergesEqualNeighbours) {
  const std::vector<Rational> bp = {q(0, 1), q(1, 3), q(2, 3), q(1, 1)};
  const std::vector<double> v = {2.0, 2.0, 5.0};
  StepFunction f(bp, v);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.pieces()[0].right, q(2, 3));
  EXPECT_EQ(f, StepFunction::constant(2.0) * StepFunction::indicator(q(0, 1), q(2, 3)) +
                   StepFunction::indicator(q(2, 3), q(1, 1), 5.0));
}

TEST(StepFunction, RejectsBadTiling) {
  EXPECT_THROW(StepFunction({{q(0, 1), q(1, 2), 1.0}, {q(3, 4), q(1, 1), 1.0}}), InvalidArgument);
  EXPECT_THROW(StepFunction({{q(0, 1), q(1, 2), 1.0}}), InvalidArgument);
  EXPECT_THROW(StepFunction({{q(1, 2), q(1, 2), 1.0}, {q(1, 2), q(1, 1), 1.0}}), InvalidArgument);
}

TEST(StepFunction, EvaluatesRightContinuous) {
  const auto f = sample();
  EXPECT_EQ(f(0.0), 1.0);
  EXPECT_EQ(f(q(1, 2)), 3.0);
  EXPECT_EQ(f(0.7), 3.0);
  EXPECT_EQ(f(1.0), -2.0);
  EXPECT_EQ(f.max_abs(), 3.0);
}

TEST(StepFunction, IndicatorAndArithmetic) {
  const auto chi = StepFunction::indicator(q(1, 4), q(1, 2), 2.0);
  EXPECT_EQ(chi(0.1), 0.0);
  EXPECT_EQ(chi(0.3), 2.0);
  const auto g = sample() + chi;
  EXPECT_EQ(g(0.3), 3.0);
  EXPECT_EQ(g(0.6), 3.0);
  EXPECT_EQ((-1.0 * sample())(0.9), 2.0);
  EXPECT_EQ(abs(sample())(0.9), 2.0);
}

TEST(StepFunction, RearrangementOfSample) {
  const auto star = rearrange(sample());
  const std::vector<Rational> bp = {q(0, 1), q(1, 4), q(1, 2), q(1, 1)};
  const std::vector<double> v = {3.0, 2.0, 1.0};
  EXPECT_EQ(star, StepFunction(bp, v));
}

TEST(StepFunction, DistributionIsExact) {
  const auto f = sample();
  EXPECT_EQ(distribution(f, 0.5), q(1, 1));
  EXPECT_EQ(distribution(f, 1.5), q(1, 2));
  EXPECT_EQ(distribution(f, 2.5), q(1, 4));
  EXPECT_EQ(distribution(f, 3.5), q(0, 1));
}

TEST(StepFunction, RearrangementIsEquimeasurableOnRandomSuite) {
  for (const auto& f : gen::suite(7, 200)) {
    const auto star = rearrange(f);
    for (const auto& p : f.pieces()) {
      const double t = std::fabs(p.value);
      EXPECT_EQ(distribution(f, t), distribution(star, t));
      EXPECT_EQ(distribution(f, std::nextafter(t, 1e300)), distribution(star, std::nextafter(t, 1e300)));
    }
    for (std::size_t i = 1; i < star.size(); ++i) EXPECT_GT(star.pieces()[i - 1].value, star.pieces()[i].value);
    EXPECT_EQ(rearrange(star), star);
  }
}

TEST(StepFunction, DecreasingProfileMatchesRearrangement) {
  const auto prof = decreasing_profile(sample());
  ASSERT_EQ(prof.size(), 3u);
  EXPECT_EQ(prof.values[0], 3.0);
  EXPECT_EQ(prof.edges[1], 0.25);
  EXPECT_EQ(prof.measure(2), 0.5);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/8"), q(3, 8));
  EXPECT_EQ(parse_rational("2"), q(2, 1));
  EXPECT_EQ(parse_rational("0.25"), q(1, 4));
  EXPECT_EQ(format_rational(q(6, 8)), "3/4");
  EXPECT_EQ(format_rational(q(2, 1)), "2/1");
  EXPECT_EQ(exact_rational(0.375), q(3, 8));
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("abc"), InvalidArgument);
}
