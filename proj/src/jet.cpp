#include "pslab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace pslab {

namespace {

void check_order(int order, int max_order, const char* what) {
  if (order < 0 || order > max_order) {
    throw ShapeError(std::string(what) + " order " + std::to_string(order) + " outside [0, " +
                     std::to_string(max_order) + "]");
  }
}

[[noreturn]] void domain_error(std::string_view fn, double value, std::string_view why) {
  std::ostringstream os;
  os.precision(17);
  os << fn << ": constant term " << value << " " << why;
  throw DomainError(os.str());
}

}  // namespace

// ---------------------------------------------------------------- Jet1

Jet1::Jet1(int order, double value) : order_(order) {
  check_order(order, kMaxJet1Order, "Jet1");
  c_[0] = value;
}

Jet1 Jet1::variable(double t0, int order) {
  Jet1 j(order, t0);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

double Jet1::derivative(int k) const {
  if (k < 0 || k > order_) {
    throw ShapeError("derivative " + std::to_string(k) + " requested from a jet of order " + std::to_string(order_));
  }
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f * c_[static_cast<std::size_t>(k)];
}

Jet1 Jet1::differentiated() const {
  if (order_ == 0) throw ShapeError("cannot differentiate an order-0 jet");
  Jet1 r(order_ - 1);
  for (int k = 0; k < order_; ++k) r[k] = (k + 1) * (*this)[k + 1];
  return r;
}

Jet1 Jet1::truncated(int order) const {
  if (order > order_) throw ShapeError("cannot raise jet order by truncation");
  Jet1 r(order);
  for (int k = 0; k <= order; ++k) r[k] = (*this)[k];
  return r;
}

Jet1 Jet1::operator-() const {
  Jet1 r(*this);
  for (int k = 0; k <= order_; ++k) r[k] = -r[k];
  return r;
}

Jet1& Jet1::operator+=(const Jet1& b) {
  if (b.order_ < order_) *this = truncated(b.order_);
  for (int k = 0; k <= order_; ++k) c_[k] += b[k];
  return *this;
}

Jet1& Jet1::operator-=(const Jet1& b) {
  if (b.order_ < order_) *this = truncated(b.order_);
  for (int k = 0; k <= order_; ++k) c_[k] -= b[k];
  return *this;
}

Jet1& Jet1::operator*=(double k) {
  for (int i = 0; i <= order_; ++i) c_[i] *= k;
  return *this;
}

Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
Jet1 operator+(Jet1 a, double k) { return a += k; }
Jet1 operator+(double k, Jet1 a) { return a += k; }
Jet1 operator-(Jet1 a, double k) { return a -= k; }
Jet1 operator-(double k, const Jet1& a) { return (-a) += k; }
Jet1 operator*(Jet1 a, double k) { return a *= k; }
Jet1 operator*(double k, Jet1 a) { return a *= k; }
Jet1 operator/(Jet1 a, double k) {
  if (k == 0.0) throw DomainError("division by zero scalar");
  return a *= (1.0 / k);
}

Jet1 operator*(const Jet1& a, const Jet1& b) {
  const int n = std::min(a.order(), b.order());
  Jet1 r(n);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    r[k] = acc;
  }
  return r;
}

Jet1 operator/(const Jet1& a, const Jet1& b) {
  if (b.value() == 0.0) throw DomainError("division by a jet with zero constant term");
  const int n = std::min(a.order(), b.order());
  Jet1 q(n);
  for (int k = 0; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
    q[k] = acc / b.value();
  }
  return q;
}

Jet1 operator/(double k, const Jet1& a) { return Jet1(a.order(), k) / a; }

void sincos(const Jet1& a, Jet1& s, Jet1& c) {
  const int n = a.order();
  s = Jet1(n, std::sin(a.value()));
  c = Jet1(n, std::cos(a.value()));
  for (int k = 1; k <= n; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a[j] * c[k - j];
      cc += j * a[j] * s[k - j];
    }
    s[k] = ss / k;
    c[k] = -cc / k;
  }
}

Jet1 sin(const Jet1& a) {
  Jet1 s, c;
  sincos(a, s, c);
  return s;
}

Jet1 cos(const Jet1& a) {
  Jet1 s, c;
  sincos(a, s, c);
  return c;
}

namespace {

void sinhcosh(const Jet1& a, Jet1& sh, Jet1& ch) {
  const int n = a.order();
  sh = Jet1(n, std::sinh(a.value()));
  ch = Jet1(n, std::cosh(a.value()));
  for (int k = 1; k <= n; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a[j] * ch[k - j];
      cc += j * a[j] * sh[k - j];
    }
    sh[k] = ss / k;
    ch[k] = cc / k;
  }
}

constexpr double kPoleTolerance = 1e-14;

}  // namespace

Jet1 sinh(const Jet1& a) {
  Jet1 s, c;
  sinhcosh(a, s, c);
  return s;
}

Jet1 cosh(const Jet1& a) {
  Jet1 s, c;
  sinhcosh(a, s, c);
  return c;
}

Jet1 tan(const Jet1& a) {
  Jet1 s, c;
  sincos(a, s, c);
  if (std::abs(c.value()) < kPoleTolerance) domain_error("tan", a.value(), "is a pole");
  return s / c;
}

Jet1 sec(const Jet1& a) {
  Jet1 c = cos(a);
  if (std::abs(c.value()) < kPoleTolerance) domain_error("sec", a.value(), "is a pole");
  return 1.0 / c;
}

Jet1 csc(const Jet1& a) {
  Jet1 s = sin(a);
  if (std::abs(s.value()) < kPoleTolerance) domain_error("csc", a.value(), "is a pole");
  return 1.0 / s;
}

Jet1 cot(const Jet1& a) {
  Jet1 s, c;
  sincos(a, s, c);
  if (std::abs(s.value()) < kPoleTolerance) domain_error("cot", a.value(), "is a pole");
  return c / s;
}

Jet1 exp(const Jet1& a) {
  const int n = a.order();
  Jet1 e(n, std::exp(a.value()));
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a[j] * e[k - j];
    e[k] = acc / k;
  }
  return e;
}

Jet1 log(const Jet1& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) domain_error("ln", a0, "is not positive");
  const int n = a.order();
  Jet1 l(n, std::log(a0));
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j < k; ++j) acc += j * l[j] * a[k - j];
    l[k] = (a[k] - acc / k) / a0;
  }
  return l;
}

Jet1 sqrt(const Jet1& a) {
  const double a0 = a.value();
  const int n = a.order();
  if (a0 < 0.0 || (a0 == 0.0 && n > 0) || std::isnan(a0)) domain_error("sqrt", a0, "is not positive");
  Jet1 r(n, std::sqrt(a0));
  for (int k = 1; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (2.0 * r.value());
  }
  return r;
}

Jet1 pow(const Jet1& a, double p) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) domain_error("pow", a0, "is not positive");
  const int n = a.order();
  Jet1 r(n, std::pow(a0, p));
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += (p * j - (k - j)) * a[j] * r[k - j];
    r[k] = acc / (k * a0);
  }
  return r;
}

Jet1 ipow(const Jet1& a, int n) {
  if (n < 0) return 1.0 / ipow(a, -n);
  Jet1 result(a.order(), 1.0);
  Jet1 base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- Jet2

namespace {

struct Exponents {
  int i;
  int j;
};

constexpr auto kExponentTable = [] {
  std::array<Exponents, Jet2::size_for(kMaxJet2Order)> table{};
  for (int n = 0; n <= kMaxJet2Order; ++n) {
    for (int j = 0; j <= n; ++j) table[static_cast<std::size_t>(Jet2::index(n - j, j))] = {n - j, j};
  }
  return table;
}();

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Jet2::Jet2(int order, double value) : order_(order) {
  check_order(order, kMaxJet2Order, "Jet2");
  c_[0] = value;
}

Jet2 Jet2::variable_s(double s0, int order) {
  Jet2 j(order, s0);
  if (order >= 1) j.coeff(1, 0) = 1.0;
  return j;
}

Jet2 Jet2::variable_t(double t0, int order) {
  Jet2 j(order, t0);
  if (order >= 1) j.coeff(0, 1) = 1.0;
  return j;
}

Jet2 Jet2::from_t(const Jet1& a, int order) {
  if (a.order() < order) throw ShapeError("Jet2::from_t needs a jet of at least the target order");
  Jet2 r(order);
  for (int j = 0; j <= order; ++j) r.coeff(0, j) = a[j];
  return r;
}

double Jet2::partial(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) {
    throw ShapeError("partial (" + std::to_string(i) + "," + std::to_string(j) + ") requested from a bi-jet of order " +
                     std::to_string(order_));
  }
  return factorial(i) * factorial(j) * coeff(i, j);
}

Jet2 Jet2::d(int dir) const {
  if (order_ == 0) throw ShapeError("cannot differentiate an order-0 bi-jet");
  Jet2 r(order_ - 1);
  const int n = size_for(order_ - 1);
  for (int k = 0; k < n; ++k) {
    const auto [i, j] = kExponentTable[static_cast<std::size_t>(k)];
    r.c_[static_cast<std::size_t>(k)] = dir == 0 ? (i + 1) * coeff(i + 1, j) : (j + 1) * coeff(i, j + 1);
  }
  return r;
}

Jet2 Jet2::truncated(int order) const {
  if (order > order_) throw ShapeError("cannot raise bi-jet order by truncation");
  Jet2 r(order);
  std::copy_n(c_.begin(), size_for(order), r.c_.begin());
  return r;
}

Jet2 Jet2::operator-() const {
  Jet2 r(*this);
  for (int k = 0; k < size_for(order_); ++k) r.c_[k] = -r.c_[k];
  return r;
}

Jet2& Jet2::operator+=(const Jet2& b) {
  if (b.order_ < order_) *this = truncated(b.order_);
  for (int k = 0; k < size_for(order_); ++k) c_[k] += b.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& b) {
  if (b.order_ < order_) *this = truncated(b.order_);
  for (int k = 0; k < size_for(order_); ++k) c_[k] -= b.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(double k) {
  for (int i = 0; i < size_for(order_); ++i) c_[i] *= k;
  return *this;
}

Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
Jet2 operator+(Jet2 a, double k) { return a += k; }
Jet2 operator+(double k, Jet2 a) { return a += k; }
Jet2 operator-(Jet2 a, double k) { return a -= k; }
Jet2 operator-(double k, const Jet2& a) { return (-a) += k; }
Jet2 operator*(Jet2 a, double k) { return a *= k; }
Jet2 operator*(double k, Jet2 a) { return a *= k; }
Jet2 operator/(Jet2 a, double k) {
  if (k == 0.0) throw DomainError("division by zero scalar");
  return a *= (1.0 / k);
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  const int n = std::min(a.order(), b.order());
  Jet2 r(n);
  const int size = Jet2::size_for(n);
  for (int ka = 0; ka < size; ++ka) {
    const auto [ia, ja] = kExponentTable[static_cast<std::size_t>(ka)];
    const double av = a.coeff(ia, ja);
    if (av == 0.0) continue;
    const int room = n - ia - ja;
    for (int kb = 0; kb < Jet2::size_for(room); ++kb) {
      const auto [ib, jb] = kExponentTable[static_cast<std::size_t>(kb)];
      r.coeff(ia + ib, ja + jb) += av * b.coeff(ib, jb);
    }
  }
  return r;
}

Jet2 compose(const Jet1& taylor, const Jet2& a) {
  const int n = a.order();
  if (taylor.order() < n) throw ShapeError("compose: Taylor expansion shorter than the bi-jet");
  Jet2 delta = a;
  delta.coeff(0, 0) = 0.0;
  Jet2 r(n, taylor[n]);
  for (int k = n - 1; k >= 0; --k) {
    r = r * delta;
    r += taylor[k];
  }
  return r;
}

namespace {

template <class F>
Jet2 lift(const Jet2& a, F f) {
  return compose(f(Jet1::variable(a.value(), a.order())), a);
}

}  // namespace

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.value() == 0.0) throw DomainError("division by a jet with zero constant term");
  const Jet2 inv = lift(b, [](const Jet1& x) { return 1.0 / x; });
  return a * inv;
}

Jet2 operator/(double k, const Jet2& a) { return Jet2(a.order(), k) / a; }

Jet2 sin(const Jet2& a) { return lift(a, [](const Jet1& x) { return sin(x); }); }
Jet2 cos(const Jet2& a) { return lift(a, [](const Jet1& x) { return cos(x); }); }
Jet2 sinh(const Jet2& a) { return lift(a, [](const Jet1& x) { return sinh(x); }); }
Jet2 cosh(const Jet2& a) { return lift(a, [](const Jet1& x) { return cosh(x); }); }
Jet2 tan(const Jet2& a) { return lift(a, [](const Jet1& x) { return tan(x); }); }
Jet2 sec(const Jet2& a) { return lift(a, [](const Jet1& x) { return sec(x); }); }
Jet2 csc(const Jet2& a) { return lift(a, [](const Jet1& x) { return csc(x); }); }
Jet2 cot(const Jet2& a) { return lift(a, [](const Jet1& x) { return cot(x); }); }
Jet2 exp(const Jet2& a) { return lift(a, [](const Jet1& x) { return exp(x); }); }
Jet2 log(const Jet2& a) { return lift(a, [](const Jet1& x) { return log(x); }); }
Jet2 sqrt(const Jet2& a) { return lift(a, [](const Jet1& x) { return sqrt(x); }); }
Jet2 pow(const Jet2& a, double p) { return lift(a, [p](const Jet1& x) { return pow(x, p); }); }

Jet2 ipow(const Jet2& a, int n) {
  if (n < 0) return 1.0 / ipow(a, -n);
  Jet2 result(a.order(), 1.0);
  Jet2 base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- dispatch

namespace {

constexpr std::pair<ElementaryFn, std::string_view> kNames[] = {
    {ElementaryFn::sin, "sin"},   {ElementaryFn::cos, "cos"},   {ElementaryFn::tan, "tan"},
    {ElementaryFn::sec, "sec"},   {ElementaryFn::csc, "csc"},   {ElementaryFn::cot, "cot"},
    {ElementaryFn::sinh, "sinh"}, {ElementaryFn::cosh, "cosh"}, {ElementaryFn::exp, "exp"},
    {ElementaryFn::ln, "ln"},     {ElementaryFn::sqrt, "sqrt"},
};

template <class T>
T dispatch(ElementaryFn fn, const T& x) {
  switch (fn) {
    case ElementaryFn::sin: return sin(x);
    case ElementaryFn::cos: return cos(x);
    case ElementaryFn::tan: return tan(x);
    case ElementaryFn::sec: return sec(x);
    case ElementaryFn::csc: return csc(x);
    case ElementaryFn::cot: return cot(x);
    case ElementaryFn::sinh: return sinh(x);
    case ElementaryFn::cosh: return cosh(x);
    case ElementaryFn::exp: return exp(x);
    case ElementaryFn::ln: return log(x);
    case ElementaryFn::sqrt: return sqrt(x);
  }
  throw Error("unknown elementary function");
}

}  // namespace

std::string_view name_of(ElementaryFn fn) {
  for (const auto& [f, name] : kNames) {
    if (f == fn) return name;
  }
  return "?";
}

bool elementary_from_name(std::string_view name, ElementaryFn& out) {
  for (const auto& [f, n] : kNames) {
    if (n == name) {
      out = f;
      return true;
    }
  }
  return false;
}

double apply(ElementaryFn fn, double x) {
  // Plain evaluation shares the domain rules of the jet versions.
  return dispatch(fn, Jet1(0, x)).value();
}

Jet1 apply(ElementaryFn fn, const Jet1& x) { return dispatch(fn, x); }
Jet2 apply(ElementaryFn fn, const Jet2& x) { return dispatch(fn, x); }

// ---------------------------------------------------------------- finite differences

double central_difference(const std::function<double(double)>& f, double t0, int k, double h) {
  if (k < 1 || k > 4) throw Error("central_difference supports derivative orders 1..4");
  if (h <= 0.0) {
    static constexpr double kDefaultStep[] = {1e-3, 2e-3, 5e-3, 1e-2};
    h = kDefaultStep[k - 1] * std::max(1.0, std::abs(t0));
  }
  auto stencil = [&](double step) {
    switch (k) {
      case 1: return (f(t0 + step) - f(t0 - step)) / (2.0 * step);
      case 2: return (f(t0 + step) - 2.0 * f(t0) + f(t0 - step)) / (step * step);
      case 3:
        return (f(t0 + 2 * step) - 2.0 * f(t0 + step) + 2.0 * f(t0 - step) - f(t0 - 2 * step)) /
               (2.0 * step * step * step);
      default:
        return (f(t0 + 2 * step) - 4.0 * f(t0 + step) + 6.0 * f(t0) - 4.0 * f(t0 - step) + f(t0 - 2 * step)) /
               (step * step * step * step);
    }
  };
  return (4.0 * stencil(h / 2) - stencil(h)) / 3.0;
}

double fd_crosscheck(const ScalarFunction& f, double t0, int k, double h) {
  const double jet = f.jet(Jet1::variable(t0, k)).derivative(k);
  const double fd = central_difference(f.value, t0, k, h);
  return std::abs(jet - fd) / std::max(std::abs(jet), 1.0);
}

}  // namespace pslab
