#pragma once

// Pseudo-Euclidean linear algebra on E^n_t with metric
// diag(-1, ..., -1, +1, ..., +1), timelike coordinates first.
//
// Vectors are templated on the scalar so the same code runs on plain values
// and on jets; decisions (pivots, signs, causal type) are always taken on
// constant terms, which keeps jet-valued frames smooth around the expansion
// point.

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "pslab/error.hpp"
#include "pslab/jet.hpp"

namespace pslab {

struct Signature {
  int dim = 5;
  int index = 2;

  double sign(int i) const { return i < index ? -1.0 : 1.0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline constexpr Signature kE52{5, 2};

template <class T>
class BasicPseudoVector {
 public:
  BasicPseudoVector() : BasicPseudoVector(kE52) {}
  explicit BasicPseudoVector(Signature sig, const T& fill = T{})
      : sig_(sig), c_(static_cast<std::size_t>(sig.dim), fill) {}
  BasicPseudoVector(Signature sig, std::vector<T> components) : sig_(sig), c_(std::move(components)) {
    if (static_cast<int>(c_.size()) != sig.dim) {
      throw ShapeError("vector has " + std::to_string(c_.size()) + " components for a signature of dimension " +
                       std::to_string(sig.dim));
    }
  }
  BasicPseudoVector(Signature sig, std::initializer_list<T> components)
      : BasicPseudoVector(sig, std::vector<T>(components)) {}

  const Signature& signature() const { return sig_; }
  int dim() const { return sig_.dim; }
  const T& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  T& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<T>& components() const { return c_; }

  BasicPseudoVector& operator+=(const BasicPseudoVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  BasicPseudoVector& operator-=(const BasicPseudoVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  BasicPseudoVector& operator*=(double k) {
    for (auto& x : c_) x *= k;
    return *this;
  }
  BasicPseudoVector operator-() const {
    BasicPseudoVector r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  void check_same(const BasicPseudoVector& o) const {
    if (!(sig_ == o.sig_)) throw ShapeError("signature mismatch between pseudo-vectors");
  }

 private:
  Signature sig_;
  std::vector<T> c_;
};

using PseudoVector = BasicPseudoVector<double>;
using JetVector1 = BasicPseudoVector<Jet1>;
using JetVector2 = BasicPseudoVector<Jet2>;

template <class T>
BasicPseudoVector<T> operator+(BasicPseudoVector<T> a, const BasicPseudoVector<T>& b) {
  return a += b;
}
template <class T>
BasicPseudoVector<T> operator-(BasicPseudoVector<T> a, const BasicPseudoVector<T>& b) {
  return a -= b;
}
template <class T>
BasicPseudoVector<T> operator*(BasicPseudoVector<T> a, double k) {
  return a *= k;
}
template <class T>
BasicPseudoVector<T> operator*(double k, BasicPseudoVector<T> a) {
  return a *= k;
}
template <class T>
BasicPseudoVector<T> operator/(BasicPseudoVector<T> a, double k) {
  return a *= 1.0 / k;
}
/// Scalar field times vector field (jets) or scalar times vector (values).
template <class T>
BasicPseudoVector<T> operator*(const T& k, const BasicPseudoVector<T>& a)
  requires(!std::is_same_v<T, double>)
{
  BasicPseudoVector<T> r(a);
  for (int i = 0; i < a.dim(); ++i) r[i] = k * a[i];
  return r;
}

/// Indefinite inner product; throws ShapeError on signature mismatch.
template <class T>
T inner(const BasicPseudoVector<T>& u, const BasicPseudoVector<T>& v) {
  u.check_same(v);
  const int t = u.signature().index;
  T acc = u[0] * v[0];
  if (t > 0) acc = -acc;
  for (int i = 1; i < u.dim(); ++i) {
    if (i < t) {
      acc -= u[i] * v[i];
    } else {
      acc += u[i] * v[i];
    }
  }
  return acc;
}

/// Constant terms of a jet-valued vector.
template <class T>
PseudoVector value_of(const BasicPseudoVector<T>& v) {
  PseudoVector r(v.signature());
  for (int i = 0; i < v.dim(); ++i) r[i] = constant_term(v[i]);
  return r;
}

/// Partial derivative of a bi-jet vector field; dir 0 is s, 1 is t.
JetVector2 partial(const JetVector2& v, int dir);
JetVector1 differentiated(const JetVector1& v);
JetVector2 from_t(const JetVector1& v, int order);

/// Euclidean max-norm, used for componentwise residuals.
double max_abs(const PseudoVector& v);

enum class Causal { spacelike, timelike, null };

struct CausalCharacter {
  Causal kind;
  double tolerance;
};

inline constexpr double kDefaultCausalTolerance = 1e-10;

CausalCharacter causal_character(const PseudoVector& v, double tol = kDefaultCausalTolerance);
std::string to_string(Causal c);

/// |<v,v> - 1/r2|; zero means v lies on S^{n-1}_t(r2).
double sphere_membership(const PseudoVector& v, double r2 = 1.0);

using Gram4 = std::array<std::array<double, 4>, 4>;

/// diag(-1, 1, 1, -1): timelike e1, spacelike e2, e3, timelike e4.
inline constexpr Gram4 kOrthonormalGram{{{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}};
/// <f1,f2> = <f3,f4> = -1, all other pairs 0.
inline constexpr Gram4 kPseudoOrthonormalGram{{{0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}}};

template <class T>
using Frame4 = std::array<BasicPseudoVector<T>, 4>;

/// max_{A,B} |<f_A,f_B> - expected[A][B]|.
double gram_residual(const Frame4<double>& frame, const Gram4& expected);

inline constexpr double kSignFixThreshold = 1e-12;
inline constexpr double kPivotThreshold = 1e-11;
inline constexpr double kDegenerateMetricThreshold = 1e-12;

namespace detail {

template <class T>
void fix_sign(BasicPseudoVector<T>& v) {
  for (int i = 0; i < v.dim(); ++i) {
    const double c = constant_term(v[i]);
    if (std::abs(c) > kSignFixThreshold) {
      if (c < 0) v = -v;
      return;
    }
  }
}

template <class T>
BasicPseudoVector<T> divided(BasicPseudoVector<T> v, const T& d) {
  for (int i = 0; i < v.dim(); ++i) v[i] = v[i] / d;
  return v;
}

template <class T>
T abs_sqrt(const T& q) {
  using std::sqrt;
  return constant_term(q) < 0 ? sqrt(-q) : sqrt(q);
}

/// Orthonormal basis (timelike, spacelike) of the Lorentzian plane span{a, b}.
template <class T>
std::pair<BasicPseudoVector<T>, BasicPseudoVector<T>> lorentz_plane_basis(const BasicPseudoVector<T>& a,
                                                                          const BasicPseudoVector<T>& b,
                                                                          const char* what) {
  const std::array<BasicPseudoVector<T>, 4> candidates{a, b, a + b, a - b};
  std::size_t best = 0;
  double best_q = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double q = std::abs(constant_term(inner(candidates[i], candidates[i])));
    if (q > best_q) {
      best_q = q;
      best = i;
    }
  }
  if (best_q < kDegenerateMetricThreshold) throw DegenerateError(std::string(what) + " plane is totally null");
  const T q1 = inner(candidates[best], candidates[best]);
  const double eps1 = constant_term(q1) < 0 ? -1.0 : 1.0;
  BasicPseudoVector<T> u1 = divided(candidates[best], abs_sqrt(q1));

  BasicPseudoVector<T> r_best = a;
  double r_q = -1.0;
  for (const auto* w : {&a, &b}) {
    BasicPseudoVector<T> r = *w - (eps1 * inner(*w, u1)) * u1;
    const double q = std::abs(constant_term(inner(r, r)));
    if (q > r_q) {
      r_q = q;
      r_best = r;
    }
  }
  if (r_q < kDegenerateMetricThreshold) throw DegenerateError(std::string(what) + " plane is degenerate");
  const T q2 = inner(r_best, r_best);
  const double eps2 = constant_term(q2) < 0 ? -1.0 : 1.0;
  if (eps1 == eps2) throw DegenerateError(std::string(what) + " plane is not Lorentzian");
  BasicPseudoVector<T> u2 = divided(r_best, abs_sqrt(q2));
  fix_sign(u1);
  fix_sign(u2);
  if (eps1 < 0) return {u1, u2};
  return {u2, u1};
}

/// Two vectors spanning {n : <n,x> = <n,xs> = <n,xt> = 0}, from a reduced
/// row echelon form with complete pivoting on constant terms.
template <class T>
std::pair<BasicPseudoVector<T>, BasicPseudoVector<T>> normal_space(const BasicPseudoVector<T>& x,
                                                                   const BasicPseudoVector<T>& xs,
                                                                   const BasicPseudoVector<T>& xt) {
  const Signature sig = x.signature();
  const int n = sig.dim;
  if (n != 5) throw ShapeError("normal space construction needs a 5-dimensional ambient space");
  std::array<std::array<T, 5>, 3> m;
  const std::array<const BasicPseudoVector<T>*, 3> rows{&x, &xs, &xt};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < n; ++c) m[r][c] = sig.sign(c) * (*rows[r])[c];
  }
  std::array<int, 5> col{0, 1, 2, 3, 4};
  for (int k = 0; k < 3; ++k) {
    int pr = k;
    int pc = k;
    double best = -1.0;
    for (int r = k; r < 3; ++r) {
      for (int c = k; c < n; ++c) {
        const double v = std::abs(constant_term(m[r][col[c]]));
        if (v > best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (best < kPivotThreshold) throw DegenerateError("normal-space system is rank deficient");
    std::swap(m[k], m[pr]);
    std::swap(col[k], col[pc]);
    const T pivot = m[k][col[k]];
    for (int c = 0; c < n; ++c) m[k][col[c]] = m[k][col[c]] / pivot;
    m[k][col[k]] = constant_like(pivot, 1.0);
    for (int r = 0; r < 3; ++r) {
      if (r == k) continue;
      const T f = m[r][col[k]];
      for (int c = 0; c < n; ++c) m[r][col[c]] -= f * m[k][col[c]];
    }
  }
  auto null_vector = [&](int free) {
    BasicPseudoVector<T> v(sig, constant_like(x[0], 0.0));
    v[col[free]] = constant_like(x[0], 1.0);
    for (int r = 0; r < 3; ++r) v[col[r]] = -m[r][col[free]];
    return v;
  };
  return {null_vector(3), null_vector(4)};
}

}  // namespace detail

/// Orthonormal frame (e1 timelike tangent, e2 spacelike tangent, e3 spacelike
/// normal, e4 timelike normal) of a Lorentzian surface in S^4_2(1) at x.
/// Throws DegenerateError when the tangent plane is degenerate.
template <class T>
Frame4<T> orthonormal_tangent_normal_frame(const BasicPseudoVector<T>& x, const BasicPseudoVector<T>& xs,
                                           const BasicPseudoVector<T>& xt) {
  x.check_same(xs);
  x.check_same(xt);
  const double gss = constant_term(inner(xs, xs));
  const double gst = constant_term(inner(xs, xt));
  const double gtt = constant_term(inner(xt, xt));
  const double det = gss * gtt - gst * gst;
  if (std::abs(det) < kDegenerateMetricThreshold) {
    throw DegenerateError("induced metric is degenerate (det g = " + std::to_string(det) + ")");
  }
  if (det > 0) throw DegenerateError("induced metric is not Lorentzian (det g > 0)");
  auto [e1, e2] = detail::lorentz_plane_basis(xs, xt, "tangent");
  auto [n1, n2] = detail::normal_space(x, xs, xt);
  auto [e4, e3] = detail::lorentz_plane_basis(n1, n2, "normal");
  return {e1, e2, e3, e4};
}

/// f1 = (e1+e2)/√2, f2 = (e1-e2)/√2, f3 = (e3+e4)/√2, f4 = (e4-e3)/√2.
template <class T>
Frame4<T> to_null_frame(const Frame4<T>& e) {
  const double k = 1.0 / std::sqrt(2.0);
  return {(e[0] + e[1]) * k, (e[0] - e[1]) * k, (e[2] + e[3]) * k, (e[3] - e[2]) * k};
}

/// Inverse of to_null_frame.
template <class T>
Frame4<T> to_orthonormal_frame(const Frame4<T>& f) {
  const double k = 1.0 / std::sqrt(2.0);
  return {(f[0] + f[1]) * k, (f[0] - f[1]) * k, (f[2] - f[3]) * k, (f[2] + f[3]) * k};
}

template <class T>
Frame4<double> value_of(const Frame4<T>& f) {
  return {value_of(f[0]), value_of(f[1]), value_of(f[2]), value_of(f[3])};
}

}  // namespace pslab
