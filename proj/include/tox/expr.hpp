#pragma once

#include <memory>
#include <string>

namespace tox::expr {

enum class Kind { Literal, Variable, Negate, Binary, Call };
enum class Var { T, Tp };
enum class Op { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  double value = 0.0;  // Literal
  Var var = Var::T;    // Variable
  Op op = Op::Add;     // Binary
  Func func = Func::Sin;
  Expr lhs;  // operand of Negate and Call, left side of Binary
  Expr rhs;
};

Expr literal(double value);
Expr variable(Var v);
Expr negate(Expr operand);
Expr binary(Op op, Expr lhs, Expr rhs);
Expr call(Func f, Expr arg);

// Throws ParseError (syntax-error, unknown-identifier, arity-error).
Expr parse(const std::string& source);

// Throws Error(evaluation-error) on domain violations or non-finite results.
double eval(const Expr& e, double t, double tp);

// Canonical text that parses back to the same tree.
std::string print(const Expr& e);

bool equal(const Expr& a, const Expr& b);

const char* func_name(Func f);

}  // namespace tox::expr
