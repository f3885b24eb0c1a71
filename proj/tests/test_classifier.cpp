#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pslab/classifier.hpp"

using namespace pslab;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;
const double kS3 = std::numbers::sqrt3;

// Closed form of the surface generated by the circle-type curve.
PseudoVector circle_surface(double s, double t) {
  const double k = 1.0 / (6.0 * kS3);
  return PseudoVector(kE52, {k * 2 * s * (s * std::cos(t) - 3 * std::sin(t)), k * 2 * s * (s * std::sin(t) + 3 * std::cos(t)),
                             k * ((s * s - 9) * std::cos(2 * t) - 6 * s * std::sin(2 * t)),
                             k * ((s * s - 9) * std::sin(2 * t) + 6 * s * std::cos(2 * t)), k * kS3 * (s * s + 3)});
}

double alpha0_coefficient(double t) {
  const double sn = std::sin(t), cs = std::cos(t);
  return (21.0 / 800.0) * (-180 * std::cos(2 * t) + 45 * std::cos(4 * t) - 121) / std::pow(sn * cs, 4);
}

const TheoremSurface& circle() {
  static const TheoremSurface ts = build_theorem_surface(builtin_curve("veronese-generator"));
  return ts;
}

const TheoremSurface& alpha0() {
  static const TheoremSurface ts = build_theorem_surface(builtin_curve("alpha0"));
  return ts;
}

}  // namespace

TEST_CASE("theorem surface of the circle-type curve") {
  const PseudoVector x0 = value_of(circle().patch.evaluator(0, 0, 0));
  const PseudoVector expected(kE52, {0, 0, -kS3 / 2, 0, 0.5});
  CHECK(max_abs(x0 - expected) < 1e-15);
  double worst = 0;
  for (const auto& p : grid_points({-3, 3}, {-3, 3}, 10, 10)) {
    worst = std::max(worst, max_abs(value_of(theorem_surface_jet(circle().generator, p.s, p.t, 0)) - circle_surface(p.s, p.t)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("theorem surfaces lie on the sphere with the null-coordinate metric") {
  for (const TheoremSurface* ts : {&circle(), &alpha0()}) {
    double sphere = 0, gss = 0, gst = 0, gtt = 0;
    for (const auto& p : grid_points(ts->s_range, ts->t_range, 12, 12)) {
      const PseudoVector x = value_of(ts->patch.evaluator(p.s, p.t, 0));
      sphere = std::max(sphere, std::abs(inner(x, x) - 1));
      const FirstFundamentalForm g = induced_metric(ts->patch, p.s, p.t);
      const double m = p.s * p.s / 6 + 0.675 * curve_invariants(ts->generator, p.t).eta;
      gss = std::max(gss, std::abs(g.gss));
      gst = std::max(gst, std::abs(g.gst + 1));
      gtt = std::max(gtt, std::abs(g.gtt - 2 * m));
    }
    INFO(ts->generator.label);
    CHECK(sphere < 1e-10);
    CHECK(gss < 1e-11);
    CHECK(gst < 1e-11);
    CHECK(gtt < 1e-9);
  }
}

TEST_CASE("invalid curves are rejected with their report") {
  NullCurve c = builtin_curve("veronese-generator");
  c.components[4] = parse_expression("1/2");
  try {
    (void)build_theorem_surface(c);
    FAIL("expected rejection");
  } catch (const CurveValidationError& e) {
    CHECK_FALSE(e.report().passed);
    CHECK(std::string(e.what()).find("light_cone") != std::string::npos);
  }
  CHECK_THROWS_AS(build_theorem_surface(builtin_curve("alpha0"), {1, -1}), Error);
  CHECK_THROWS_AS(build_theorem_surface(builtin_curve("alpha0"), kDefaultSRange, Interval{-1, 1}), Error);
}

TEST_CASE("canonical frame is pseudo-orthonormal and adapted") {
  CHECK(canonical_frame(circle(), 0, 0).gram_residual < 1e-10);
  CHECK(canonical_frame(circle(), 0, 0).position_residual < 1e-12);
  CHECK(canonical_frame(alpha0(), 0, kPi / 4).gram_residual < 1e-8);
  for (const TheoremSurface* ts : {&circle(), &alpha0()}) {
    for (const auto& p : grid_points(ts->s_range, ts->t_range, 5, 5)) {
      INFO(ts->generator.label, " s=", p.s, " t=", p.t);
      const CanonicalFrame cf = canonical_frame(*ts, p.s, p.t);
      CHECK(cf.gram_residual < 1e-8);
      const LocalGeometry geo = local_geometry(ts->patch, p.s, p.t);
      const SecondFundamentalForm h = spherical_sff(geo, cf.f);
      // h(f~1, f~1) = f3, h_E(f~1, f~2) = x, and h_E(f~1, f~1) = alpha is null.
      CHECK(max_abs(h.h11 - cf.f[2]) < 1e-9);
      CHECK(max_abs(h.ambient_h12 - value_of(geo.x)) < 1e-9);
      CHECK(std::abs(inner(h.ambient_h11, h.ambient_h11)) < 1e-10);
      CHECK(max_abs(h.h12) < 1e-9);
    }
  }
}

TEST_CASE("connection forms of the canonical frame") {
  const ConnectionForms w = connection_forms(circle().patch, 1.5, 0.4, circle().patch.frame_field);
  CHECK(w(3, 3, 2) == Approx(-1.0).epsilon(1e-9));
  CHECK(w(1, 1, 2) == Approx(-0.5).epsilon(1e-9));
  for (int i = 1; i <= 2; ++i) CHECK(std::abs(w(1, 4, i)) < 1e-9);

  std::mt19937 rng(11);
  for (const TheoremSurface* ts : {&circle(), &alpha0()}) {
    std::uniform_real_distribution<double> us(ts->s_range.lo, ts->s_range.hi), ut(ts->t_range.lo, ts->t_range.hi);
    for (int k = 0; k < 10; ++k) {
      const double s = us(rng), t = ut(rng);
      INFO(ts->generator.label, " s=", s, " t=", t);
      const ConnectionForms f = connection_forms(ts->patch, s, t, ts->patch.frame_field);
      CHECK(f.relation_residual < 1e-7);
      CHECK(f.sphere_residual < 1e-7);
      CHECK(std::abs(f(3, 3, 2) + 2 * s / 3) < 1e-7);
      CHECK(std::abs(f(1, 1, 2) + s / 3) < 1e-7);
      CHECK(std::abs(f(2, 4, 2) + 2.0 / 3) < 1e-7);
      CHECK(std::abs(f(1, 3, 1) - 1) < 1e-7);
      CHECK(std::abs(f(1, 4, 1)) + std::abs(f(1, 4, 2)) < 1e-7);
      // Normal connection: D_{f~1} f3 = D_{f~1} f4 = 0, D_{f~2} f4 = (2s/3) f4.
      CHECK(std::abs(f(3, 3, 1)) + std::abs(f(3, 4, 1)) + std::abs(f(4, 3, 1)) + std::abs(f(4, 4, 1)) < 1e-7);
      CHECK(std::abs(f(3, 4, 2)) + std::abs(f(4, 3, 2)) < 1e-7);
      CHECK(std::abs(f(4, 4, 2) - 2 * s / 3) < 1e-7);
      // Levi-Civita: nabla_{f~2} f~1 = -(s/3) f~1.
      CHECK(std::abs(f(1, 2, 2)) < 1e-7);
    }
  }
}

TEST_CASE("congruence coefficient") {
  for (const auto& p : grid_points({-3, 3}, circle().t_range, 4, 4)) {
    const CongruenceCoefficient c = congruence_coefficient(circle(), p.s, p.t);
    CHECK(std::abs(c.c) < 1e-9);
    CHECK(c.c4 == Approx(-2.0 / 3).epsilon(1e-9));
  }
  CHECK(congruence_coefficient(alpha0(), 0, kPi / 4).c == Approx(-69.72).epsilon(1e-8));
  for (double t : Interval{0.3, kPi / 2 - 0.3}.grid(10)) {
    const CongruenceCoefficient c = congruence_coefficient(alpha0(), 0, t);
    CHECK(c.c == Approx(alpha0_coefficient(t)).epsilon(1e-6));
    CHECK(c.c4 == Approx(-2.0 / 3).epsilon(1e-9));
  }
}

TEST_CASE("veronese congruence test verdicts") {
  const CongruenceCertificate a = veronese_congruence_test(circle(), 10, 10, 1e-8);
  CHECK(a.verdict == Verdict::veronese_congruent);
  CHECK(a.max_abs_c < 1e-8);
  CHECK(a.evaluated == 100);
  CHECK(a.max_c4_deviation < 1e-9);

  const TheoremSurface a0 = build_theorem_surface(builtin_curve("alpha0"), kDefaultSRange, Interval{0.3, kPi / 2 - 0.3});
  const CongruenceCertificate b = veronese_congruence_test(a0, 10, 10, 1e-8);
  CHECK(b.verdict == Verdict::not_congruent);
  CHECK(b.max_abs_c > 69.0);
  CHECK(b.failures.empty());

  CHECK_THROWS_AS(veronese_congruence_test(circle(), 2, 2, 1e-8), Error);
  CHECK_THROWS_AS(veronese_congruence_test(circle(), 10, 4, 1e-8), Error);

  // The t = 0 column lies outside the open domain: 5 of 25 points fail.
  const TheoremSurface edge = build_theorem_surface(builtin_curve("alpha0"), kDefaultSRange, Interval{0, 1.2});
  const CongruenceCertificate c = veronese_congruence_test(edge, 5, 5, 1e-8);
  CHECK(c.verdict == Verdict::inconclusive);
  CHECK(c.failures.size() == 5);
  CHECK(c.failures[0].reason.find("outside the curve domain") != std::string::npos);

  CHECK(to_string(Verdict::veronese_congruent) == "veronese-congruent");
  CHECK(to_string(Verdict::not_congruent) == "not-congruent");
  CHECK(to_string(Verdict::inconclusive) == "inconclusive");
}

TEST_CASE("certificates do not depend on the worker count") {
  setenv("PSLAB_THREADS", "1", 1);
  const CongruenceCertificate one = veronese_congruence_test(alpha0(), 7, 6, 1e-8);
  setenv("PSLAB_THREADS", "5", 1);
  const CongruenceCertificate many = veronese_congruence_test(alpha0(), 7, 6, 1e-8);
  unsetenv("PSLAB_THREADS");
  CHECK(one.max_abs_c == many.max_abs_c);
  CHECK(one.worst.s == many.worst.s);
  CHECK(one.worst.t == many.worst.t);
  CHECK(one.max_c4_deviation == many.max_c4_deviation);
}

TEST_CASE("Lorentzian Veronese surface") {
  const SurfacePatch v = veronese_patch();
  CHECK(max_abs(value_of(v.evaluator(0, 0, 0)) - PseudoVector(kE52, {0, 0, 0.5, kS3 / 2, 0})) < 1e-15);
  double sphere = 0, metric = 0;
  for (const auto& p : grid_points(v.s_domain, v.t_domain, 20, 20)) {
    const PseudoVector x = value_of(v.evaluator(p.s, p.t, 0));
    sphere = std::max(sphere, std::abs(inner(x, x) - 1));
    const CurvatureReport r = curvature_report(v, p.s, p.t);
    metric = std::max(metric, r.metric_form_residual);
  }
  CHECK(sphere < 1e-10);
  CHECK(metric < 1e-12);
  // The frame built from the printed orthonormal frame is admissible.
  for (double u : {-1.5, 0.0, 1.2}) {
    const Frame4<double> f = value_of(v.frame_field(u, 0.7, 0));
    CHECK(gram_residual(f, kPseudoOrthonormalGram) < 1e-12);
    const LocalGeometry geo = local_geometry(v, u, 0.7);
    CHECK(normal_curvature(geo, f) == Approx(-2.0 / 3).epsilon(1e-12));
  }
  const ClassificationSummary sum = classification_report(v, 20, 20, 1e-8, v.s_domain, v.t_domain);
  CHECK(sum.passed());
  CHECK(sum.points.size() == 400);
  double kd = 0;
  for (const auto& r : sum.points) kd = std::max(kd, std::abs(r.K_normal + 2.0 / 3));
  CHECK(kd < 1e-8);
}

TEST_CASE("classification of the theorem surfaces") {
  const ClassificationSummary a = classification_report(circle().patch, 12, 12, 1e-8, circle().s_range, circle().t_range);
  CHECK(a.passed());
  CHECK(a.offending.empty());
  CHECK(a.singular.empty());
  CHECK(a.K_stddev < 1e-8);
  CHECK(a.KD_stddev < 1e-8);
  CHECK(std::max({a.max_gauss, a.max_codazzi, a.max_ricci}) < 1e-7);

  const ClassificationSummary b = classification_report(alpha0().patch, 12, 12, 1e-7, alpha0().s_range, alpha0().t_range);
  CHECK(b.passed());
  CHECK(b.K_stddev < 1e-8);
  CHECK(b.KD_stddev < 1e-8);
  CHECK(std::max({b.max_gauss, b.max_codazzi, b.max_ricci}) < 1e-7);
}

TEST_CASE("classification lists offending and singular points") {
  const SurfacePatch p = product_patch(0.6);
  const ClassificationSummary sum = classification_report(p, 4, 3, 1e-8, {-1, 1}, {-1, 1});
  CHECK_FALSE(sum.passed());
  CHECK_FALSE(sum.minimal);
  CHECK(sum.offending.size() == 12);
  CHECK(sum.max_K_deviation == Approx(1.0 / 3));

  // Reaching past the end of the domain makes those points singular.
  const ClassificationSummary edge = classification_report(alpha0().patch, 5, 5, 1e-7, {-1, 1}, {0.5, kPi / 2});
  CHECK(edge.singular.size() == 5);
  CHECK(edge.points.size() == 20);
  CHECK(edge.passed());
  CHECK_THROWS_AS(classification_report(p, 0, 3, 1e-8, {-1, 1}, {-1, 1}), Error);
}
