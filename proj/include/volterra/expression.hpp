#pragma once

// Recursive-descent parser for kernel expressions over x and t.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?            right associative
//   primary := number | 'x' | 't' | func '(' args ')' | '(' expr ')'
//   func    := exp | log | sqrt | pow (two arguments)

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "volterra/model.hpp"

namespace volterra {

class expression_error : public std::invalid_argument {
 public:
  expression_error(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class Expression {
 public:
  enum class Op { constant, var_x, var_t, neg, add, sub, mul, div, pow, exp, log, sqrt };

  double operator()(double x, double t) const { return eval(*root_, x, t); }

  bool is_constant() const noexcept { return is_constant(*root_); }

  const std::string& source() const noexcept { return source_; }

  static Expression parse(std::string_view src);

 private:
  struct Node {
    Op op;
    double value = 0.0;
    std::unique_ptr<Node> lhs;
    std::unique_ptr<Node> rhs;
  };

  Expression(std::string source, std::shared_ptr<const Node> root)
      : source_(std::move(source)), root_(std::move(root)) {}

  static double eval(const Node& n, double x, double t) {
    switch (n.op) {
      case Op::constant: return n.value;
      case Op::var_x: return x;
      case Op::var_t: return t;
      case Op::neg: return -eval(*n.lhs, x, t);
      case Op::add: return eval(*n.lhs, x, t) + eval(*n.rhs, x, t);
      case Op::sub: return eval(*n.lhs, x, t) - eval(*n.rhs, x, t);
      case Op::mul: return eval(*n.lhs, x, t) * eval(*n.rhs, x, t);
      case Op::div: return eval(*n.lhs, x, t) / eval(*n.rhs, x, t);
      case Op::pow: return std::pow(eval(*n.lhs, x, t), eval(*n.rhs, x, t));
      case Op::exp: return std::exp(eval(*n.lhs, x, t));
      case Op::log: return std::log(eval(*n.lhs, x, t));
      case Op::sqrt: return std::sqrt(eval(*n.lhs, x, t));
    }
    return 0.0;
  }

  static bool is_constant(const Node& n) {
    if (n.op == Op::var_x || n.op == Op::var_t) return false;
    return (!n.lhs || is_constant(*n.lhs)) && (!n.rhs || is_constant(*n.rhs));
  }

  class Parser;

  std::string source_;
  std::shared_ptr<const Node> root_;
};

class Expression::Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  std::unique_ptr<Node> parse_all() {
    auto node = expr();
    skip_ws();
    if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return node;
  }

 private:
  using Ptr = std::unique_ptr<Node>;

  static Ptr make(Op op, Ptr lhs = nullptr, Ptr rhs = nullptr, double value = 0.0) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->value = value;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  [[noreturn]] void fail(const std::string& what) const { throw expression_error(what, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Ptr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = make(Op::sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Ptr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::mul, std::move(lhs), unary());
      } else if (accept('/')) {
        lhs = make(Op::div, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  Ptr unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  Ptr power() {
    auto base = primary();
    if (accept('^')) return make(Op::pow, std::move(base), unary());
    return base;
  }

  Ptr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Ptr number() {
    const std::string rest(src_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return make(Op::constant, nullptr, nullptr, v);
  }

  Ptr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") return make(Op::var_x);
    if (name == "t") return make(Op::var_t);
    Op fn{};
    std::size_t arity = 1;
    if (name == "exp") {
      fn = Op::exp;
    } else if (name == "log") {
      fn = Op::log;
    } else if (name == "sqrt") {
      fn = Op::sqrt;
    } else if (name == "pow") {
      fn = Op::pow;
      arity = 2;
    } else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    auto a = expr();
    Ptr b;
    if (arity == 2) {
      expect(',');
      b = expr();
    }
    expect(')');
    return make(fn, std::move(a), std::move(b));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

inline Expression Expression::parse(std::string_view src) {
  Parser p(src);
  std::shared_ptr<const Node> root = p.parse_all();
  return Expression(std::string(src), std::move(root));
}

/// Kernel from an expression string. Constant expressions become
/// constant_kernel (analytic bounds and row integral); anything else gets
/// sampled bounds. Positivity is checked later, when the kernel is bound to
/// an interval through ProblemSpec or kernel_bounds.
inline Kernel parse_kernel_expression(std::string_view src) {
  Expression e = Expression::parse(src);
  if (e.is_constant()) {
    const double c = e(0.0, 0.0);
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw invalid_kernel("kernel '" + std::string(src) + "' violates 0 < C <= K: constant value " +
                           std::to_string(c));
    }
    return constant_kernel(c);
  }
  std::string name = e.source();
  return Kernel(std::move(name), [e = std::move(e)](double x, double t) { return e(x, t); });
}

/// parse_kernel_expression followed by the positivity check on [0, X].
inline Kernel parse_kernel_expression(std::string_view src, double X) {
  Kernel k = parse_kernel_expression(src);
  (void)kernel_bounds(k, X);
  return k;
}

}  // namespace volterra
