#pragma once

// Expression language for curve components: one variable t, real literals,
// + - * /, unary minus, integer powers, the elementary functions, pow(e, p)
// with constant real p, and the named constants pi and sqrt3.

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>

#include "pslab/error.hpp"
#include "pslab/jet.hpp"

namespace pslab {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class NamedConstant { pi, sqrt3 };

struct Expr {
  enum class Kind { number, variable, constant, negate, add, sub, mul, div, int_power, real_power, call };

  Kind kind = Kind::number;
  double number = 0.0;
  NamedConstant constant = NamedConstant::pi;
  ElementaryFn fn = ElementaryFn::sin;
  int exponent = 0;
  ExprPtr lhs;
  ExprPtr rhs;
};

ExprPtr make_number(double v);
ExprPtr make_variable();
ExprPtr make_constant(NamedConstant c);
ExprPtr make_unary(Expr::Kind kind, ExprPtr a);
ExprPtr make_binary(Expr::Kind kind, ExprPtr a, ExprPtr b);
ExprPtr make_int_power(ExprPtr base, int exponent);
ExprPtr make_real_power(ExprPtr base, ExprPtr exponent);
ExprPtr make_call(ElementaryFn fn, ExprPtr arg);

double value_of(NamedConstant c);
std::string_view name_of(NamedConstant c);

/// Parses text; throws ParseError with a 1-based character position.
ExprPtr parse_expression(std::string_view text);

/// Fully parenthesized form that re-parses to an identical tree.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);
bool depends_on_t(const Expr& e);

template <class T>
T eval(const Expr& e, const T& t) {
  switch (e.kind) {
    case Expr::Kind::number: return constant_like(t, e.number);
    case Expr::Kind::variable: return t;
    case Expr::Kind::constant: return constant_like(t, value_of(e.constant));
    case Expr::Kind::negate: return -eval(*e.lhs, t);
    case Expr::Kind::add: return eval(*e.lhs, t) + eval(*e.rhs, t);
    case Expr::Kind::sub: return eval(*e.lhs, t) - eval(*e.rhs, t);
    case Expr::Kind::mul: return eval(*e.lhs, t) * eval(*e.rhs, t);
    case Expr::Kind::div: {
      const T den = eval(*e.rhs, t);
      if (constant_term(den) == 0.0) throw DomainError("division by zero");
      return eval(*e.lhs, t) / den;
    }
    case Expr::Kind::int_power: {
      const T base = eval(*e.lhs, t);
      if (e.exponent < 0 && constant_term(base) == 0.0) throw DomainError("negative power of zero");
      if constexpr (std::is_same_v<T, double>) {
        return std::pow(base, e.exponent);
      } else {
        return ipow(base, e.exponent);
      }
    }
    case Expr::Kind::real_power: {
      const double p = eval(*e.rhs, 0.0);
      const T base = eval(*e.lhs, t);
      if constexpr (std::is_same_v<T, double>) {
        if (!(base > 0.0)) throw DomainError("pow: constant term " + std::to_string(base) + " is not positive");
        return std::pow(base, p);
      } else {
        return pow(base, p);
      }
    }
    case Expr::Kind::call: return apply(e.fn, eval(*e.lhs, t));
  }
  throw Error("malformed expression tree");
}

}  // namespace pslab
