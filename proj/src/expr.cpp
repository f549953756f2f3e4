#include "tox/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "tox/error.hpp"

namespace tox::expr {

namespace {

Node node(Kind kind) {
  Node n{};
  n.kind = kind;
  return n;
}

}  // namespace

Expr literal(double value) {
  Node n = node(Kind::Literal);
  n.value = value;
  return std::make_shared<const Node>(n);
}

Expr variable(Var v) {
  Node n = node(Kind::Variable);
  n.var = v;
  return std::make_shared<const Node>(n);
}

Expr negate(Expr operand) {
  Node n = node(Kind::Negate);
  n.lhs = std::move(operand);
  return std::make_shared<const Node>(n);
}

Expr binary(Op op, Expr lhs, Expr rhs) {
  Node n = node(Kind::Binary);
  n.op = op;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return std::make_shared<const Node>(n);
}

Expr call(Func f, Expr arg) {
  Node n = node(Kind::Call);
  n.func = f;
  n.lhs = std::move(arg);
  return std::make_shared<const Node>(n);
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
  }
  return "?";
}

namespace {

bool lookup_func(const std::string& name, Func& out) {
  static constexpr Func all[] = {Func::Sin, Func::Cos, Func::Tan, Func::Exp,
                                 Func::Log, Func::Sqrt, Func::Sinh, Func::Cosh};
  for (Func f : all) {
    if (name == func_name(f)) {
      out = f;
      return true;
    }
  }
  return false;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  Expr run() {
    Expr e = parse_sum();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { fail_at(ErrorCode::SyntaxError, what, pos_); }
  [[noreturn]] void fail_at(ErrorCode code, const std::string& what, std::size_t at) {
    throw ParseError(code, what, at);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::Add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = binary(Op::Sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return binary(Op::Pow, base, literal(parse_exponent()));
    return base;
  }

  // Exponents are literals; a chain a^b^c folds to a^(b^c).
  double parse_exponent() {
    bool negative = false;
    if (accept('-')) negative = true;
    skip_space();
    if (!is_number_start()) fail("exponent must be a numeric literal");
    double value = parse_number();
    if (negative) value = -value;
    if (accept('^')) value = std::pow(value, parse_exponent());
    if (!std::isfinite(value)) fail("exponent is not a finite number");
    return value;
  }

  bool is_number_start() const {
    if (pos_ >= src_.size()) return false;
    const char c = src_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) ||
           (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])));
  }

  double parse_number() {
    const std::size_t begin = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        fail_at(ErrorCode::SyntaxError, "malformed exponent in number", pos_);
      }
    }
    const std::string text = src_.substr(begin, pos_ - begin);
    const double value = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(value)) fail_at(ErrorCode::SyntaxError, "numeric literal out of range", begin);
    return value;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (is_number_start()) return literal(parse_number());
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t begin = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = src_.substr(begin, pos_ - begin);
      if (name == "t") return variable(Var::T);
      if (name == "tp") return variable(Var::Tp);
      Func f;
      if (!lookup_func(name, f)) {
        fail_at(ErrorCode::UnknownIdentifier, "unknown identifier '" + name + "'", begin);
      }
      if (!accept('(')) fail_at(ErrorCode::ArityError, "function '" + name + "' takes one argument", pos_);
      if (peek() == ')') fail_at(ErrorCode::ArityError, "function '" + name + "' takes one argument", pos_);
      Expr arg = parse_sum();
      if (peek() == ',') fail_at(ErrorCode::ArityError, "function '" + name + "' takes one argument", pos_);
      if (!accept(')')) fail("expected ')'");
      return call(f, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain_error(const char* what) { throw Error(ErrorCode::EvaluationError, what); }

double checked(double value, const char* what) {
  if (!std::isfinite(value)) domain_error(what);
  return value;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Shortest text that reads back to the same double.
  for (int prec = 1; prec <= 17; ++prec) {
    char probe[32];
    std::snprintf(probe, sizeof probe, "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

const char* op_text(Op op) {
  switch (op) {
    case Op::Add: return " + ";
    case Op::Sub: return " - ";
    case Op::Mul: return " * ";
    case Op::Div: return " / ";
    case Op::Pow: return "^";
  }
  return "?";
}

}  // namespace

Expr parse(const std::string& source) { return Parser(source).run(); }

double eval(const Expr& e, double t, double tp) {
  switch (e->kind) {
    case Kind::Literal: return e->value;
    case Kind::Variable: return e->var == Var::T ? t : tp;
    case Kind::Negate: return -eval(e->lhs, t, tp);
    case Kind::Binary: {
      const double a = eval(e->lhs, t, tp);
      const double b = eval(e->rhs, t, tp);
      switch (e->op) {
        case Op::Add: return checked(a + b, "overflow in addition");
        case Op::Sub: return checked(a - b, "overflow in subtraction");
        case Op::Mul: return checked(a * b, "overflow in multiplication");
        case Op::Div:
          if (b == 0.0) domain_error("division by zero");
          return checked(a / b, "overflow in division");
        case Op::Pow:
          if (a == 0.0 && b < 0.0) domain_error("zero raised to a negative power");
          return checked(std::pow(a, b), "power outside the real domain");
      }
      break;
    }
    case Kind::Call: {
      const double x = eval(e->lhs, t, tp);
      switch (e->func) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Tan: return checked(std::tan(x), "tan overflow");
        case Func::Exp: return checked(std::exp(x), "exp overflow");
        case Func::Log:
          if (!(x > 0.0)) domain_error("log of a non-positive number");
          return std::log(x);
        case Func::Sqrt:
          if (x < 0.0) domain_error("sqrt of a negative number");
          return std::sqrt(x);
        case Func::Sinh: return checked(std::sinh(x), "sinh overflow");
        case Func::Cosh: return checked(std::cosh(x), "cosh overflow");
      }
      break;
    }
  }
  domain_error("malformed expression");
}

std::string print(const Expr& e) {
  switch (e->kind) {
    case Kind::Literal: return format_number(e->value);
    case Kind::Variable: return e->var == Var::T ? "t" : "tp";
    case Kind::Negate: return "-" + print(e->lhs);
    case Kind::Call: return std::string(func_name(e->func)) + "(" + print(e->lhs) + ")";
    case Kind::Binary: {
      if (e->op == Op::Pow) {
        const Kind k = e->lhs->kind;
        const bool wrap = k == Kind::Negate || (k == Kind::Binary && e->lhs->op == Op::Pow) ||
                          (k == Kind::Literal && e->lhs->value < 0.0);
        const std::string base = wrap ? "(" + print(e->lhs) + ")" : print(e->lhs);
        return base + "^" + format_number(e->rhs->value);
      }
      return "(" + print(e->lhs) + op_text(e->op) + print(e->rhs) + ")";
    }
  }
  return "?";
}

bool equal(const Expr& a, const Expr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Literal: return a->value == b->value;
    case Kind::Variable: return a->var == b->var;
    case Kind::Negate: return equal(a->lhs, b->lhs);
    case Kind::Call: return a->func == b->func && equal(a->lhs, b->lhs);
    case Kind::Binary: return a->op == b->op && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
  return false;
}

}  // namespace tox::expr
