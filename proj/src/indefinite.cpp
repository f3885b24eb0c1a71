#include "pslab/indefinite.hpp"

#include <algorithm>
#include <cmath>

namespace pslab {

JetVector2 partial(const JetVector2& v, int dir) {
  JetVector2 r(v.signature());
  for (int i = 0; i < v.dim(); ++i) r[i] = v[i].d(dir);
  return r;
}

JetVector1 differentiated(const JetVector1& v) {
  JetVector1 r(v.signature());
  for (int i = 0; i < v.dim(); ++i) r[i] = v[i].differentiated();
  return r;
}

JetVector2 from_t(const JetVector1& v, int order) {
  JetVector2 r(v.signature());
  for (int i = 0; i < v.dim(); ++i) r[i] = Jet2::from_t(v[i], order);
  return r;
}

double max_abs(const PseudoVector& v) {
  double m = 0.0;
  for (double c : v.components()) m = std::max(m, std::abs(c));
  return m;
}

CausalCharacter causal_character(const PseudoVector& v, double tol) {
  const double q = inner(v, v);
  if (q > tol) return {Causal::spacelike, tol};
  if (q < -tol) return {Causal::timelike, tol};
  return {Causal::null, tol};
}

std::string to_string(Causal c) {
  switch (c) {
    case Causal::spacelike: return "spacelike";
    case Causal::timelike: return "timelike";
    case Causal::null: return "null";
  }
  return "?";
}

double sphere_membership(const PseudoVector& v, double r2) {
  if (!(r2 > 0)) throw Error("sphere_membership needs r2 > 0");
  return std::abs(inner(v, v) - 1.0 / r2);
}

double gram_residual(const Frame4<double>& frame, const Gram4& expected) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      worst = std::max(worst, std::abs(inner(frame[a], frame[b]) - expected[a][b]));
    }
  }
  return worst;
}

}  // namespace pslab
