#include "rispaces/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rispaces/error.hpp"

namespace rispaces {

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot convert non-finite value to a rational");
  return Rational(x);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw InvalidArgument("empty rational");
  try {
    if (s.find_first_of(".eE") != std::string::npos) {
      // Decimal notation: scale to an integer ratio exactly.
      std::size_t epos = s.find_first_of("eE");
      std::string mant = s.substr(0, epos);
      long exp10 = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
      bool neg = !mant.empty() && mant[0] == '-';
      if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant.erase(0, 1);
      std::size_t dot = mant.find('.');
      std::string digits = mant;
      if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
      }
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
          std::labs(exp10) > 1000)
        throw InvalidArgument("malformed rational '" + std::string(text) + "'");
      digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
      boost::multiprecision::cpp_int num(digits);
      boost::multiprecision::cpp_int scale = boost::multiprecision::pow(
          boost::multiprecision::cpp_int(10), static_cast<unsigned>(std::labs(exp10)));
      Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
      return neg ? Rational(-r) : r;
    }
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
      std::string p = part;
      bool neg = false;
      if (!p.empty() && (p[0] == '-' || p[0] == '+')) {
        neg = p[0] == '-';
        p.erase(0, 1);
      }
      if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidArgument("malformed rational '" + std::string(text) + "'");
      p.erase(0, std::min(p.find_first_not_of('0'), p.size() - 1));
      boost::multiprecision::cpp_int v(p);
      return neg ? boost::multiprecision::cpp_int(-v) : v;
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    const auto num = parse_int(s.substr(0, slash));
    const auto den = parse_int(s.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidArgument("malformed rational '" + std::string(text) + "'");
  }
}

std::string format_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

namespace {

std::vector<StepPiece> canonicalize(std::vector<StepPiece> pieces) {
  if (pieces.empty()) throw InvalidArgument("step function needs at least one piece");
  if (pieces.front().left != 0) throw InvalidArgument("step function must start at 0");
  if (pieces.back().right != 1) throw InvalidArgument("step function must end at 1");
  std::vector<StepPiece> out;
  out.reserve(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (!(p.left < p.right)) throw InvalidArgument("step function piece with left >= right");
    if (i > 0 && pieces[i - 1].right != p.left)
      throw InvalidArgument("step function pieces must be contiguous");
    if (!std::isfinite(p.value)) throw InvalidArgument("step function value must be finite");
    if (!out.empty() && out.back().value == p.value) {
      out.back().right = p.right;
    } else {
      out.push_back(p);
      if (out.back().value == 0.0) out.back().value = 0.0;  // drop -0
    }
  }
  return out;
}

}  // namespace

StepFunction::StepFunction() : pieces_{{Rational(0), Rational(1), 0.0}} {}

StepFunction::StepFunction(std::vector<StepPiece> pieces) : pieces_(canonicalize(std::move(pieces))) {}

StepFunction::StepFunction(std::span<const Rational> breakpoints, std::span<const double> values) {
  if (breakpoints.size() != values.size() + 1)
    throw InvalidArgument("need exactly one more breakpoint than values");
  std::vector<StepPiece> pieces;
  for (std::size_t i = 0; i < values.size(); ++i)
    pieces.push_back({breakpoints[i], breakpoints[i + 1], values[i]});
  pieces_ = canonicalize(std::move(pieces));
}

StepFunction StepFunction::constant(double c) {
  return StepFunction(std::vector<StepPiece>{{Rational(0), Rational(1), c}});
}

StepFunction StepFunction::indicator(const Rational& a, const Rational& b, double c) {
  if (a < 0 || b > 1 || !(a < b)) throw InvalidArgument("indicator needs 0 <= a < b <= 1");
  std::vector<StepPiece> pieces;
  if (a > 0) pieces.push_back({Rational(0), a, 0.0});
  pieces.push_back({a, b, c});
  if (b < 1) pieces.push_back({b, Rational(1), 0.0});
  return StepFunction(std::move(pieces));
}

double StepFunction::operator()(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const StepPiece& p) { return v < p.right; });
  if (it == pieces_.end()) return pieces_.back().value;
  return it->value;
}

double StepFunction::operator()(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x, [](double v, const StepPiece& p) {
    return v < to_double(p.right);
  });
  if (it == pieces_.end()) return pieces_.back().value;
  return it->value;
}

std::vector<Rational> StepFunction::breakpoints() const {
  std::vector<Rational> out;
  out.reserve(pieces_.size() + 1);
  out.push_back(pieces_.front().left);
  for (const auto& p : pieces_) out.push_back(p.right);
  return out;
}

double StepFunction::max_abs() const {
  double m = 0.0;
  for (const auto& p : pieces_) m = std::max(m, std::fabs(p.value));
  return m;
}

bool StepFunction::is_zero() const { return pieces_.size() == 1 && pieces_.front().value == 0.0; }

StepFunction combine(const StepFunction& f, const StepFunction& g,
                     const std::function<double(double, double)>& op) {
  const auto& a = f.pieces();
  const auto& b = g.pieces();
  std::vector<StepPiece> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Rational cursor(0);
  while (i < a.size() && j < b.size()) {
    const Rational& end = a[i].right < b[j].right ? a[i].right : b[j].right;
    out.push_back({cursor, end, op(a[i].value, b[j].value)});
    cursor = end;
    if (a[i].right == end) ++i;
    if (b[j].right == end) ++j;
  }
  return StepFunction(std::move(out));
}

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, std::plus<double>());
}

StepFunction operator*(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, std::multiplies<double>());
}

StepFunction operator*(double lambda, const StepFunction& f) {
  std::vector<StepPiece> out = f.pieces();
  for (auto& p : out) p.value *= lambda;
  return StepFunction(std::move(out));
}

StepFunction abs(const StepFunction& f) {
  std::vector<StepPiece> out = f.pieces();
  for (auto& p : out) p.value = std::fabs(p.value);
  return StepFunction(std::move(out));
}

StepFunction rearrange(const StepFunction& f) {
  struct Level {
    double value;
    Rational measure;
  };
  std::vector<Level> levels;
  levels.reserve(f.size());
  for (const auto& p : f.pieces()) levels.push_back({std::fabs(p.value), p.length()});
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& x, const Level& y) { return x.value > y.value; });
  std::vector<StepPiece> out;
  out.reserve(levels.size());
  Rational cursor(0);
  for (const auto& l : levels) {
    Rational next = cursor + l.measure;
    out.push_back({cursor, next, l.value});
    cursor = next;
  }
  return StepFunction(std::move(out));
}

Rational distribution(const StepFunction& f, double t) {
  if (t < 0) throw InvalidArgument("distribution level must be nonnegative");
  Rational m(0);
  for (const auto& p : f.pieces())
    if (std::fabs(p.value) >= t) m += p.length();
  return m;
}

DecreasingProfile decreasing_profile(const StepFunction& f) {
  StepFunction star = rearrange(f);
  DecreasingProfile out;
  out.edges.reserve(star.size() + 1);
  out.edges.push_back(0.0);
  for (const auto& p : star.pieces()) {
    out.edges.push_back(to_double(p.right));
    out.values.push_back(p.value);
  }
  out.edges.back() = 1.0;
  return out;
}

}  // namespace rispaces
