#include "rispaces/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace rispaces::expr {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Number;
  n->number = v;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    if (src_.size() > 10000) fail("expression longer than 10000 characters", 0);
    skip_space();
    if (at_end()) fail("empty expression");
    NodePtr n = sum();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return n;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  bool at_end() const { return pos_ >= src_.size(); }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > 256) p.fail("expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  static NodePtr binary(char op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      if (accept('+'))
        lhs = binary('+', lhs, product());
      else if (accept('-'))
        lhs = binary('-', lhs, product());
      else
        return lhs;
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = binary('*', lhs, unary());
      else if (accept('/'))
        lhs = binary('/', lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    DepthGuard guard(*this);
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Negate;
      n->lhs = unary();
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr primary() {
    DepthGuard guard(*this);
    skip_space();
    if (at_end()) fail("expected an operand but input ended");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string_view name = src_.substr(start, pos_ - start);
      if (name == "t") {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Variable;
        return n;
      }
      if (name == "pi") return make_number(std::numbers::pi);
      if (name == "e") return make_number(std::numbers::e);
      Func f;
      if (name == "exp")
        f = Func::Exp;
      else if (name == "ln")
        f = Func::Ln;
      else if (name == "sin")
        f = Func::Sin;
      else if (name == "cos")
        f = Func::Cos;
      else
        fail("unknown identifier '" + std::string(name) + "'", start);
      expect('(');
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Call;
      n->func = f;
      n->lhs = sum();
      expect(')');
      return n;
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = sum();
      expect(')');
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (!at_end() && src_[pos_] == '.') {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (!at_end() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    if (text == ".") fail("malformed number", start);
    const double v = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(v)) fail("number out of range", start);
    return make_number(v);
  }
};

double eval(const Node& n, double t) {
  switch (n.kind) {
    case Node::Kind::Number:
      return n.number;
    case Node::Kind::Variable:
      return t;
    case Node::Kind::Negate:
      return -eval(*n.lhs, t);
    case Node::Kind::Call: {
      const double x = eval(*n.lhs, t);
      switch (n.func) {
        case Func::Exp: return std::exp(x);
        case Func::Ln: return std::log(x);
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
      }
      return x;
    }
    case Node::Kind::Binary: {
      const double a = eval(*n.lhs, t), b = eval(*n.rhs, t);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return std::pow(a, b);
      }
    }
  }
  return 0.0;
}

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Binary:
      if (n.op == '+' || n.op == '-') return 1;
      if (n.op == '*' || n.op == '/') return 2;
      return 4;
    case Node::Kind::Negate:
      return 3;
    case Node::Kind::Number:
      return n.number < 0 ? 3 : 5;
    default:
      return 5;
  }
}

std::string print(const Node& n);

std::string wrap(const Node& n, bool parens) { return parens ? "(" + print(n) + ")" : print(n); }

std::string print(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      return buf;
    }
    case Node::Kind::Variable:
      return "t";
    case Node::Kind::Negate:
      return "-" + wrap(*n.lhs, precedence(*n.lhs) < 3);
    case Node::Kind::Call: {
      static const char* names[] = {"exp", "ln", "sin", "cos"};
      return std::string(names[static_cast<int>(n.func)]) + "(" + print(*n.lhs) + ")";
    }
    case Node::Kind::Binary: {
      const int p = precedence(n);
      if (n.op == '^') {
        // base binds tighter than unary; exponent is parsed as a unary.
        return wrap(*n.lhs, precedence(*n.lhs) <= 4) + "^" + wrap(*n.rhs, precedence(*n.rhs) < 3);
      }
      const bool left_assoc_tight = precedence(*n.rhs) <= p;
      return wrap(*n.lhs, precedence(*n.lhs) < p) + " " + n.op + " " + wrap(*n.rhs, left_assoc_tight);
    }
  }
  return {};
}

}  // namespace

Expression Expression::parse(std::string_view source) { return Expression(Parser(source).parse()); }

double Expression::operator()(double t) const { return eval(*root_, t); }

std::string Expression::to_string() const { return print(*root_); }

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Node::Kind::Number:
      return a->number == b->number;
    case Node::Kind::Variable:
      return true;
    case Node::Kind::Negate:
      return structurally_equal(a->lhs, b->lhs);
    case Node::Kind::Call:
      return a->func == b->func && structurally_equal(a->lhs, b->lhs);
    case Node::Kind::Binary:
      return a->op == b->op && structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
  return false;
}

bool operator==(const Expression& a, const Expression& b) { return structurally_equal(a.root_, b.root_); }

}  // namespace rispaces::expr
