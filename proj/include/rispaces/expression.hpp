#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "rispaces/error.hpp"

namespace rispaces::expr {

/// Syntax or name error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class Func { Exp, Ln, Sin, Cos };

struct Node {
  enum class Kind { Number, Variable, Negate, Call, Binary };
  Kind kind = Kind::Number;
  double number = 0.0;
  Func func = Func::Exp;
  char op = '+';  // one of + - * / ^
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Node>;

/// Expression in the single variable t.
///
/// Grammar, loosest to tightest:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?          right associative
///   primary := number | 't' | 'pi' | 'e' | func '(' sum ')' | '(' sum ')'
/// with func one of exp, ln, sin, cos.
class Expression {
 public:
  static Expression parse(std::string_view source);

  double operator()(double t) const;

  /// Canonical text: minimal parentheses, numbers printed with 17 digits.
  std::string to_string() const;
  const NodePtr& root() const { return root_; }

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  explicit Expression(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

bool structurally_equal(const NodePtr& a, const NodePtr& b);

}  // namespace rispaces::expr
