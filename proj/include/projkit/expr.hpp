#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "projkit/jet.hpp"
#include "projkit/rational.hpp"

namespace projkit {

/// Scalar parameter bindings used when expanding expressions.
using ParamEnv = std::map<std::string, Rational>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class Function { Exp, Sqrt };

namespace ast {

struct Literal {
    Rational value;
};
struct Variable {
    char name; // 'x' or 'y'
};
struct Parameter {
    std::string name;
};
struct Negate {
    ExprPtr operand;
};
struct Binary {
    char op; // one of + - * /
    ExprPtr lhs;
    ExprPtr rhs;
};
struct Power {
    ExprPtr base;
    Rational exponent;
};
struct Apply {
    Function function;
    ExprPtr argument;
};

} // namespace ast

struct Expr {
    std::variant<ast::Literal, ast::Variable, ast::Parameter, ast::Negate, ast::Binary, ast::Power, ast::Apply> node;
};

ExprPtr make_literal(const Rational &value);
ExprPtr make_variable(char name);
ExprPtr make_parameter(std::string name);
ExprPtr make_negate(ExprPtr operand);
ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_power(ExprPtr base, const Rational &exponent);
ExprPtr make_apply(Function function, ExprPtr argument);

/// Structural equality.
bool equal(const Expr &a, const Expr &b);

/// Grammar, loosest to tightest:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := atom ('^' exponent)?
///   atom    := integer | 'x' | 'y' | ident | ('exp'|'sqrt') '(' sum ')' | '(' sum ')'
/// A quotient of two literals folds into a rational literal, as does a
/// negated literal, so "1/2" and "-3" are literals. Exponents must fold to
/// literals. Throws SyntaxError carrying the byte offset of the problem.
ExprPtr parse(std::string_view text);

/// Inverse of parse up to structure: equal(*parse(print(e)), *e).
std::string print(const Expr &e);

std::set<std::string> parameters(const Expr &e);

/// Taylor jet at the origin, truncated at total degree `order`.
Jet2 expand(const Expr &e, const ParamEnv &env, int order = kDefaultOrder);

/// parse + expand.
Jet2 expand(std::string_view text, const ParamEnv &env = {}, int order = kDefaultOrder);

} // namespace projkit
