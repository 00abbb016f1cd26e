#include "lct/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "lct/constants.hpp"
#include "lct/errors.hpp"

namespace lct {

struct Expression::Node {
  enum class Kind { number, time, mass, omega, add, sub, mul, div, neg, sin, cos, tan, exp, ln };
  Kind kind;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double t, double m, double w) const {
    switch (kind) {
      case Kind::number: return value;
      case Kind::time: return t;
      case Kind::mass: return m;
      case Kind::omega: return w;
      case Kind::add: return lhs->eval(t, m, w) + rhs->eval(t, m, w);
      case Kind::sub: return lhs->eval(t, m, w) - rhs->eval(t, m, w);
      case Kind::mul: return lhs->eval(t, m, w) * rhs->eval(t, m, w);
      case Kind::div: return lhs->eval(t, m, w) / rhs->eval(t, m, w);
      case Kind::neg: return -lhs->eval(t, m, w);
      case Kind::sin: return std::sin(lhs->eval(t, m, w));
      case Kind::cos: return std::cos(lhs->eval(t, m, w));
      case Kind::tan: return std::tan(lhs->eval(t, m, w));
      case Kind::exp: return std::exp(lhs->eval(t, m, w));
      case Kind::ln: return std::log(lhs->eval(t, m, w));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->value = value;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Kind::add, lhs, term());
      else if (accept('-')) lhs = make(Kind::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Kind::mul, lhs, unary());
      else if (accept('/')) lhs = make(Kind::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::neg, unary());
    if (accept('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<size_t>(end - begin);
      return make(Kind::number, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "t") return make(Kind::time);
      if (name == "m") return make(Kind::mass);
      if (name == "omega") return make(Kind::omega);
      if (name == "pi") return make(Kind::number, nullptr, nullptr, kPi);
      Kind fn;
      if (name == "sin") fn = Kind::sin;
      else if (name == "cos") fn = Kind::cos;
      else if (name == "tan") fn = Kind::tan;
      else if (name == "exp") fn = Kind::exp;
      else if (name == "ln") fn = Kind::ln;
      else {
        pos_ = start;
        fail("unknown name '" + name + "'");
      }
      if (!accept('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      return make(fn, arg);
    }
    fail("unexpected character");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::operator()(double t, double mass, double omega) const {
  return root_->eval(t, mass, omega);
}

}  // namespace lct
