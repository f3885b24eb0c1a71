#include "pslab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

namespace pslab {

ExprPtr make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::number;
  e->number = v;
  return e;
}

ExprPtr make_variable() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::variable;
  return e;
}

ExprPtr make_constant(NamedConstant c) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::constant;
  e->constant = c;
  return e;
}

ExprPtr make_unary(Expr::Kind kind, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(a);
  return e;
}

ExprPtr make_binary(Expr::Kind kind, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr make_int_power(ExprPtr base, int exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::int_power;
  e->lhs = std::move(base);
  e->exponent = exponent;
  return e;
}

ExprPtr make_real_power(ExprPtr base, ExprPtr exponent) {
  if (depends_on_t(*exponent)) throw Error("pow exponent must not depend on t");
  return make_binary(Expr::Kind::real_power, std::move(base), std::move(exponent));
}

ExprPtr make_call(ElementaryFn fn, ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::call;
  e->fn = fn;
  e->lhs = std::move(arg);
  return e;
}

double value_of(NamedConstant c) {
  switch (c) {
    case NamedConstant::pi: return std::numbers::pi;
    case NamedConstant::sqrt3: return std::numbers::sqrt3;
  }
  return 0.0;
}

std::string_view name_of(NamedConstant c) {
  switch (c) {
    case NamedConstant::pi: return "pi";
    case NamedConstant::sqrt3: return "sqrt3";
  }
  return "?";
}

bool depends_on_t(const Expr& e) {
  if (e.kind == Expr::Kind::variable) return true;
  return (e.lhs && depends_on_t(*e.lhs)) || (e.rhs && depends_on_t(*e.rhs));
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::number:
      if (a.number != b.number) return false;
      break;
    case Expr::Kind::constant:
      if (a.constant != b.constant) return false;
      break;
    case Expr::Kind::int_power:
      if (a.exponent != b.exponent) return false;
      break;
    case Expr::Kind::call:
      if (a.fn != b.fn) return false;
      break;
    default: break;
  }
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

char binary_symbol(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add: return '+';
    case Expr::Kind::sub: return '-';
    case Expr::Kind::mul: return '*';
    default: return '/';
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::number: out += format_number(e.number); return;
    case Expr::Kind::variable: out += 't'; return;
    case Expr::Kind::constant: out += name_of(e.constant); return;
    case Expr::Kind::negate:
      out += "(-";
      print(*e.lhs, out);
      out += ')';
      return;
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div:
      out += '(';
      print(*e.lhs, out);
      out += binary_symbol(e.kind);
      print(*e.rhs, out);
      out += ')';
      return;
    case Expr::Kind::int_power:
      out += '(';
      print(*e.lhs, out);
      out += '^';
      out += std::to_string(e.exponent);
      out += ')';
      return;
    case Expr::Kind::real_power:
      out += "pow(";
      print(*e.lhs, out);
      out += ',';
      print(*e.rhs, out);
      out += ')';
      return;
    case Expr::Kind::call:
      out += name_of(e.fn);
      out += '(';
      print(*e.lhs, out);
      out += ')';
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExprPtr parse() {
    ExprPtr e = expression();
    skip_space();
    if (i_ < s_.size()) {
      if (s_[i_] == ')') fail("unbalanced ')'");
      fail("unexpected '" + std::string(current_char()) + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, i_); }

  [[noreturn]] void fail_at(const std::string& message, std::size_t byte) const {
    int pos = 1;
    for (std::size_t k = 0; k < byte && k < s_.size(); ++k) {
      if ((static_cast<unsigned char>(s_[k]) & 0xC0) != 0x80) ++pos;
    }
    if (byte > s_.size()) pos += static_cast<int>(byte - s_.size());
    throw ParseError(message, pos);
  }

  std::string_view current_char() const {
    std::size_t n = 1;
    const auto c = static_cast<unsigned char>(s_[i_]);
    if (c >= 0xF0) n = 4;
    else if (c >= 0xE0) n = 3;
    else if (c >= 0xC0) n = 2;
    return s_.substr(i_, n);
  }

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool at_minus() const {
    if (i_ < s_.size() && s_[i_] == '-') return true;
    return s_.substr(i_, 3) == "\xE2\x88\x92";  // U+2212 MINUS SIGN
  }

  void consume_minus() { i_ += s_[i_] == '-' ? 1 : 3; }

  bool accept(char c) {
    skip_space();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* context) {
    skip_space();
    if (i_ >= s_.size()) fail(std::string("expected '") + c + "' " + context + " but input ended");
    if (s_[i_] != c) fail(std::string("expected '") + c + "' " + context);
    ++i_;
  }

  ExprPtr expression() {
    ExprPtr e = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        e = make_binary(Expr::Kind::add, e, term());
      } else if (at_minus()) {
        consume_minus();
        e = make_binary(Expr::Kind::sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      if (accept('*')) {
        e = make_binary(Expr::Kind::mul, e, factor());
      } else if (accept('/')) {
        e = make_binary(Expr::Kind::div, e, factor());
      } else {
        return e;
      }
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (!accept('^')) return b;
    skip_space();
    const std::size_t start = i_;
    bool negative = false;
    if (i_ < s_.size() && (s_[i_] == '+' || at_minus())) {
      negative = s_[i_] != '+';
      if (negative) consume_minus(); else ++i_;
    }
    const std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == digits) fail_at("exponent must be an integer", start);
    if (i_ < s_.size() && (s_[i_] == '.' || s_[i_] == 'e' || s_[i_] == 'E')) {
      fail_at("exponent must be an integer; use pow(x, p) for real powers", start);
    }
    int n = 0;
    const auto [p, ec] = std::from_chars(s_.data() + digits, s_.data() + i_, n);
    if (ec != std::errc{} || n > 64) fail_at("integer exponent out of range", start);
    (void)p;
    return make_int_power(b, negative ? -n : n);
  }

  ExprPtr number() {
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    if (i_ == start + 1 && s_[start] == '.') fail_at("malformed number", start);
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t k = i_ + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        i_ = k;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + i_, v);
    if (ec != std::errc{} || p != s_.data() + i_ || !std::isfinite(v)) fail_at("malformed number", start);
    return make_number(v);
  }

  ExprPtr base() {
    skip_space();
    if (i_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[i_];
    if (at_minus()) {
      consume_minus();
      return make_unary(Expr::Kind::negate, base());
    }
    if (c == '(') {
      ++i_;
      ExprPtr e = expression();
      expect(')', "to close '('");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == ')') fail("unbalanced ')'");
    fail("unexpected '" + std::string(current_char()) + "'");
  }

  ExprPtr identifier() {
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    const std::string_view name = s_.substr(start, i_ - start);
    if (name == "t") return make_variable();
    if (name == "pi") return make_constant(NamedConstant::pi);
    if (name == "sqrt3") return make_constant(NamedConstant::sqrt3);
    ElementaryFn fn{};
    const bool is_pow = name == "pow";
    if (!is_pow && !elementary_from_name(name, fn)) fail_at("unknown identifier '" + std::string(name) + "'", start);
    skip_space();
    if (i_ >= s_.size() || s_[i_] != '(') fail("expected '(' after " + std::string(name));
    ++i_;
    ExprPtr arg = expression();
    skip_space();
    if (is_pow) {
      if (!accept(',')) fail("pow takes two arguments");
      skip_space();
      const std::size_t exp_start = i_;
      ExprPtr p = expression();
      if (depends_on_t(*p)) fail_at("pow exponent must not depend on t", exp_start);
      skip_space();
      if (i_ < s_.size() && s_[i_] == ',') fail("pow takes two arguments");
      expect(')', "to close pow(");
      return make_real_power(arg, p);
    }
    if (i_ < s_.size() && s_[i_] == ',') fail(std::string(name) + " takes one argument");
    expect(')', ("to close " + std::string(name) + "(").c_str());
    return make_call(fn, arg);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace pslab
