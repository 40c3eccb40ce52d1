#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "rispaces/expression.hpp"
#include "rispaces/numerics.hpp"
#include "rispaces/phi.hpp"

using rispaces::expr::Expression;
using rispaces::expr::ParseError;

TEST(Expression, Identity) {
  const auto e = Expression::parse("t");
  EXPECT_EQ(e(0.0), 0.0);
  EXPECT_EQ(e(3.5), 3.5);
}

TEST(Expression, Precedence) {
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2")(1.0), 512.0);
  EXPECT_DOUBLE_EQ(Expression::parse("-2^2")(1.0), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^-1")(1.0), 0.5);
  EXPECT_DOUBLE_EQ(Expression::parse("1 + 2 * 3")(1.0), 7.0);
  EXPECT_DOUBLE_EQ(Expression::parse("(1 + 2) * 3")(1.0), 9.0);
  EXPECT_DOUBLE_EQ(Expression::parse("8 / 4 / 2")(1.0), 1.0);
  EXPECT_DOUBLE_EQ(Expression::parse("10 - 4 - 3")(1.0), 3.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2 * t^2")(3.0), 18.0);
}

TEST(Expression, Functions) {
  EXPECT_NEAR(Expression::parse("exp(ln(t))")(2.5), 2.5, 1e-15);
  EXPECT_NEAR(Expression::parse("sin(pi/2) + cos(0)")(0.0), 2.0, 1e-15);
  EXPECT_NEAR(Expression::parse("e")(0.0), std::exp(1.0), 0.0);
}

TEST(Expression, MatchesLogPeriodicFamily) {
  const auto e = Expression::parse("t^5 * exp(sin(ln(t)))");
  const auto lp = rispaces::phi::log_periodic(5, 1, 1);
  for (double t : rispaces::numerics::log_grid(1e-2, 1e2, 100))
    EXPECT_LE(std::fabs(e(t) - lp(t)), 1e-12 * std::max(1.0, lp(t)));
}

TEST(Expression, SyntaxErrorPosition) {
  try {
    Expression::parse("t^^2");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 1);
    EXPECT_EQ(err.column(), 3);
  }
  try {
    Expression::parse("t +\n  foo");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 2);
    EXPECT_EQ(err.column(), 3);
  }
}

TEST(Expression, RejectsMalformedInput) {
  for (const char* src : {"", "(", "t)", "sin t", "exp()", "2 3", "x", "t^", "1e999", "*t", "t..2", "ln(t,2)"})
    EXPECT_THROW(Expression::parse(src), ParseError) << src;
  EXPECT_THROW(Expression::parse(std::string(5000, '(') + "t" + std::string(5000, ')')), ParseError);
  EXPECT_THROW(Expression::parse(std::string(20000, ' ') + "t"), ParseError);
}

TEST(Expression, PrintParseRoundTrip) {
  for (const char* src : {"t", "t^5 * exp(sin(ln(t)))", "-(t + 1)^2", "1 - (2 - t)", "t / (2 * t)", "2^3^2",
                          "(2^3)^2", "-t^2", "(-t)^2", "0.1 * t + 1e-3", "t - -t"}) {
    const auto e = Expression::parse(src);
    const auto printed = e.to_string();
    const auto again = Expression::parse(printed);
    EXPECT_TRUE(e == again) << src << " -> " << printed;
    EXPECT_EQ(again.to_string(), printed);
    for (double t : {0.5, 1.5, 3.0}) EXPECT_EQ(e(t), again(t)) << src;
  }
}

TEST(Expression, TotalOnArbitraryBytes) {
  std::uint64_t state = 42;
  const std::string alphabet = "t0123456789.+-*/^()eplnsicoxp \n";
  for (int trial = 0; trial < 5000; ++trial) {
    std::string src;
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const int len = static_cast<int>(state >> 59);
    for (int i = 0; i < len; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      src.push_back(alphabet[(state >> 33) % alphabet.size()]);
    }
    try {
      const auto e = Expression::parse(src);
      (void)e(1.0);
    } catch (const ParseError&) {
    }
  }
}
