#pragma once

// Truncated Taylor arithmetic in one and two variables.
//
// A Jet1 of order N holds the Taylor coefficients a_0..a_N of a scalar
// function of t at an implicit expansion point; the k-th derivative there is
// k! * a_k. A Jet2 holds a_ij with i + j <= N for a function of (s, t).
// Binary operations between jets of different orders truncate to the smaller
// order, since the higher coefficients of the shorter operand are unknown.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "pslab/error.hpp"

namespace pslab {

inline constexpr int kMaxJet1Order = 16;
inline constexpr int kMaxJet2Order = 6;
inline constexpr int kMaxJet2Size = (kMaxJet2Order + 1) * (kMaxJet2Order + 2) / 2;

class Jet1 {
 public:
  Jet1() = default;
  explicit Jet1(int order, double value = 0.0);

  static Jet1 variable(double t0, int order);
  static Jet1 constant(double value, int order) { return Jet1(order, value); }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  std::span<const double> coefficients() const { return {c_.data(), static_cast<std::size_t>(order_ + 1)}; }

  /// k! * a_k. Throws if k exceeds the order.
  double derivative(int k) const;
  /// d/dt as a jet of order N - 1.
  Jet1 differentiated() const;
  Jet1 truncated(int order) const;

  Jet1 operator-() const;
  Jet1& operator+=(const Jet1& b);
  Jet1& operator-=(const Jet1& b);
  Jet1& operator*=(double k);
  Jet1& operator+=(double k) { c_[0] += k; return *this; }
  Jet1& operator-=(double k) { c_[0] -= k; return *this; }

 private:
  int order_ = 0;
  std::array<double, kMaxJet1Order + 1> c_{};
};

Jet1 operator+(Jet1 a, const Jet1& b);
Jet1 operator-(Jet1 a, const Jet1& b);
Jet1 operator*(const Jet1& a, const Jet1& b);
Jet1 operator/(const Jet1& a, const Jet1& b);
Jet1 operator+(Jet1 a, double k);
Jet1 operator+(double k, Jet1 a);
Jet1 operator-(Jet1 a, double k);
Jet1 operator-(double k, const Jet1& a);
Jet1 operator*(Jet1 a, double k);
Jet1 operator*(double k, Jet1 a);
Jet1 operator/(Jet1 a, double k);
Jet1 operator/(double k, const Jet1& a);

Jet1 sin(const Jet1& a);
Jet1 cos(const Jet1& a);
void sincos(const Jet1& a, Jet1& s, Jet1& c);
Jet1 sinh(const Jet1& a);
Jet1 cosh(const Jet1& a);
Jet1 tan(const Jet1& a);
Jet1 sec(const Jet1& a);
Jet1 csc(const Jet1& a);
Jet1 cot(const Jet1& a);
Jet1 exp(const Jet1& a);
Jet1 log(const Jet1& a);
Jet1 sqrt(const Jet1& a);
/// Real power; requires a positive constant term.
Jet1 pow(const Jet1& a, double p);
/// Integer power by repeated multiplication; negative exponents divide.
Jet1 ipow(const Jet1& a, int n);

class Jet2 {
 public:
  Jet2() = default;
  explicit Jet2(int order, double value = 0.0);

  static Jet2 variable_s(double s0, int order);
  static Jet2 variable_t(double t0, int order);
  static Jet2 constant(double value, int order) { return Jet2(order, value); }
  /// Embeds a jet in t as a function of (s, t) independent of s.
  static Jet2 from_t(const Jet1& a, int order);

  static constexpr int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }
  static constexpr int size_for(int order) { return (order + 1) * (order + 2) / 2; }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int i, int j) const { return c_[static_cast<std::size_t>(index(i, j))]; }
  double& coeff(int i, int j) { return c_[static_cast<std::size_t>(index(i, j))]; }

  /// d^{i+j} / ds^i dt^j at the expansion point.
  double partial(int i, int j) const;
  /// Partial derivative as a jet; dir 0 is s, 1 is t.
  Jet2 d(int dir) const;
  Jet2 ds() const { return d(0); }
  Jet2 dt() const { return d(1); }
  Jet2 truncated(int order) const;

  Jet2 operator-() const;
  Jet2& operator+=(const Jet2& b);
  Jet2& operator-=(const Jet2& b);
  Jet2& operator*=(double k);
  Jet2& operator+=(double k) { c_[0] += k; return *this; }
  Jet2& operator-=(double k) { c_[0] -= k; return *this; }

 private:
  int order_ = 0;
  std::array<double, kMaxJet2Size> c_{};
};

Jet2 operator+(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator+(Jet2 a, double k);
Jet2 operator+(double k, Jet2 a);
Jet2 operator-(Jet2 a, double k);
Jet2 operator-(double k, const Jet2& a);
Jet2 operator*(Jet2 a, double k);
Jet2 operator*(double k, Jet2 a);
Jet2 operator/(Jet2 a, double k);
Jet2 operator/(double k, const Jet2& a);

/// Evaluates f(a) = sum_k c_k (a - a0)^k where c_k are the Taylor
/// coefficients of f at a0 (as computed by a Jet1 of f at a0).
Jet2 compose(const Jet1& taylor_at_value, const Jet2& a);

Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 sinh(const Jet2& a);
Jet2 cosh(const Jet2& a);
Jet2 tan(const Jet2& a);
Jet2 sec(const Jet2& a);
Jet2 csc(const Jet2& a);
Jet2 cot(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);
Jet2 pow(const Jet2& a, double p);
Jet2 ipow(const Jet2& a, int n);

// Scalar overloads so geometry templates can run on plain doubles.
inline double constant_term(double x) { return x; }
inline double constant_term(const Jet1& x) { return x.value(); }
inline double constant_term(const Jet2& x) { return x.value(); }
/// A constant of the same kind (and jet order) as ref.
inline double constant_like(double, double v) { return v; }
inline Jet1 constant_like(const Jet1& ref, double v) { return Jet1(ref.order(), v); }
inline Jet2 constant_like(const Jet2& ref, double v) { return Jet2(ref.order(), v); }

enum class ElementaryFn { sin, cos, tan, sec, csc, cot, sinh, cosh, exp, ln, sqrt };

std::string_view name_of(ElementaryFn fn);
bool elementary_from_name(std::string_view name, ElementaryFn& out);

double apply(ElementaryFn fn, double x);
Jet1 apply(ElementaryFn fn, const Jet1& x);
Jet2 apply(ElementaryFn fn, const Jet2& x);

/// A scalar function available both as plain double evaluation (used by the
/// finite-difference oracle) and as jet evaluation.
struct ScalarFunction {
  std::function<double(double)> value;
  std::function<Jet1(const Jet1&)> jet;
};

/// Central-difference estimate of the k-th derivative (k in 1..4) with one
/// level of Richardson extrapolation. h <= 0 selects a k-dependent default.
double central_difference(const std::function<double(double)>& f, double t0, int k, double h = 0.0);

/// |jet derivative - finite difference| / max(|jet derivative|, 1).
double fd_crosscheck(const ScalarFunction& f, double t0, int k, double h = 0.0);

}  // namespace pslab
