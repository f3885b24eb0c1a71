#include "pslab/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pslab {

namespace {

std::string validation_message(const ValidationReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "curve '" << r.label << "' fails the generator constraints:";
  for (const auto& c : r.constraints) {
    if (c.max_value >= r.tolerance) os << " " << c.name << " residual " << c.max_value << " at t = " << c.worst_t << ";";
  }
  return os.str();
}

struct CurveJets {
  std::array<JetVector2, 5> a;  // alpha .. alpha''''
  Jet2 eta;
  Jet2 eta_prime;
  Jet2 xi;
};

/// alpha and its first four derivatives as bi-jets of the given order.
CurveJets curve_jets(const NullCurve& curve, double t, int order) {
  JetVector1 d = eval_curve_jet(curve, t, order + 4);
  std::array<JetVector1, 5> ders;
  for (int k = 0; k <= 4; ++k) {
    ders[k] = d;
    if (k < 4) d = differentiated(d);
  }
  CurveJets j;
  for (int k = 0; k <= 4; ++k) j.a[k] = from_t(ders[k], order);
  j.eta = Jet2::from_t(inner(ders[3], ders[3]), order);
  j.eta_prime = Jet2::from_t(2.0 * inner(ders[4], ders[3]), order);
  j.xi = Jet2::from_t(inner(ders[4], ders[4]), order);
  return j;
}

}  // namespace

CurveValidationError::CurveValidationError(ValidationReport report)
    : Error(validation_message(report)), report_(std::move(report)) {}

JetVector2 theorem_surface_jet(const NullCurve& curve, double s0, double t0, int order) {
  JetVector1 a = eval_curve_jet(curve, t0, order + 3);
  const JetVector1 a1 = differentiated(a);
  const JetVector1 a2 = differentiated(a1);
  const JetVector1 a3 = differentiated(a2);
  const Jet2 eta = Jet2::from_t(inner(a3, a3), order);
  const Jet2 s = Jet2::variable_s(s0, order);
  return (0.5 * s * s + (27.0 / 40.0) * eta) * from_t(a, order) + (1.5 * s) * from_t(a1, order) +
         1.5 * from_t(a2, order);
}

Interval default_t_range(const NullCurve& curve) {
  if (curve.surface_range) return *curve.surface_range;
  return curve.domain.shrunk(kDefaultMargin);
}

TheoremSurface build_theorem_surface(const NullCurve& curve, Interval s_range, std::optional<Interval> t_range,
                                     double curve_tol) {
  if (!(s_range.lo < s_range.hi)) throw Error("s-range must satisfy lo < hi");
  const Interval tr = t_range.value_or(default_t_range(curve));
  if (!(tr.lo < tr.hi)) throw Error("t-range must satisfy lo < hi");
  if (tr.lo < curve.domain.lo || tr.hi > curve.domain.hi) throw Error("t-range must lie inside the curve domain");
  TheoremSurface ts;
  ts.generator = curve;
  ts.s_range = s_range;
  ts.t_range = tr;
  ts.validation = validate_theorem_curve(curve, 101, curve_tol, default_t_range(curve), 0.0);
  if (!ts.validation.passed) throw CurveValidationError(ts.validation);

  ts.patch.evaluator = [curve](double s, double t, int order) { return theorem_surface_jet(curve, s, t, order); };
  ts.patch.s_domain = s_range;
  ts.patch.t_domain = tr;
  ts.patch.label = curve.label;
  ts.patch.expected_metric = [curve](double s, double t) {
    const double m = s * s / 6.0 + (27.0 / 40.0) * curve_invariants(curve, t).eta;
    return FirstFundamentalForm{0.0, -1.0, 2.0 * m, -1.0};
  };
  ts.patch.frame_field = canonical_frame_field(curve);
  return ts;
}

FrameField canonical_frame_field(const NullCurve& curve) {
  return [curve](double s0, double t0, int order) {
    const JetVector2 x = theorem_surface_jet(curve, s0, t0, order + 1);
    const CurveJets j = curve_jets(curve, t0, order);
    const Jet2 s = Jet2::variable_s(s0, order);
    const Jet2& eta = j.eta;
    const Jet2& ep = j.eta_prime;
    const Jet2 s2 = s * s;
    const Jet2 m = s2 / 6.0 + (27.0 / 40.0) * eta;
    const JetVector2 f1 = partial(x, 0);
    const JetVector2 f2 = m * f1 + partial(x, 1);
    const Jet2 c0 = (-100.0 * s2 * s2 - 162.0 * (5.0 * s2 * eta + 10.0 * s * ep + 81.0 * eta * eta) + 6075.0 * j.xi) / 2400.0;
    const Jet2 c1 = (-40.0 * s2 * s - 270.0 * s * eta - 567.0 * ep) / 160.0;
    const Jet2 c2 = -0.15 * (5.0 * s2 + 27.0 * eta);
    const Jet2 c3 = -1.5 * s;
    const JetVector2 f4 = c0 * j.a[0] + c1 * j.a[1] + c2 * j.a[2] + c3 * j.a[3] - 2.25 * j.a[4];
    return Frame4<Jet2>{f1, f2, j.a[0], f4};
  };
}

CanonicalFrame canonical_frame(const TheoremSurface& ts, double s, double t) {
  CanonicalFrame cf;
  cf.f = value_of(ts.patch.frame_field(s, t, 0));
  cf.gram_residual = gram_residual(cf.f, kPseudoOrthonormalGram);
  const PseudoVector x = value_of(ts.patch.evaluator(s, t, 0));
  for (const auto& v : cf.f) cf.position_residual = std::max(cf.position_residual, std::abs(inner(v, x)));
  return cf;
}

CongruenceCoefficient congruence_coefficient(const TheoremSurface& ts, double s, double t) {
  const LocalGeometry geo = local_geometry(ts.patch, s, t);
  const SecondFundamentalForm h = spherical_sff(geo, value_of(ts.patch.frame_field(s, t, 0)));
  return {-h.h4_22, -h.h3_22};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::veronese_congruent: return "veronese-congruent";
    case Verdict::not_congruent: return "not-congruent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<GridPoint> grid_points(Interval s_range, Interval t_range, int ns, int nt) {
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt));
  for (double s : s_range.grid(ns))
    for (double t : t_range.grid(nt)) pts.push_back({s, t});
  return pts;
}

CongruenceCertificate veronese_congruence_test(const TheoremSurface& ts, int ns, int nt, double tol) {
  if (ns < 5 || nt < 5) {
    throw Error("congruence test needs a grid of at least 5x5 (got " + std::to_string(ns) + "x" + std::to_string(nt) + ")");
  }
  CongruenceCertificate cert;
  cert.ns = ns;
  cert.nt = nt;
  cert.s_range = ts.s_range;
  cert.t_range = ts.t_range;
  cert.tolerance = tol;
  const auto pts = grid_points(ts.s_range, ts.t_range, ns, nt);
  struct Outcome {
    bool ok = false;
    CongruenceCoefficient c;
    std::string reason;
  };
  std::vector<Outcome> out(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    try {
      out[i].c = congruence_coefficient(ts, pts[i].s, pts[i].t);
      out[i].ok = std::isfinite(out[i].c.c) && std::isfinite(out[i].c.c4);
      if (!out[i].ok) out[i].reason = "non-finite coefficient";
    } catch (const Error& e) {
      out[i].reason = e.what();
    }
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!out[i].ok) {
      cert.failures.push_back({pts[i].s, pts[i].t, out[i].reason});
      continue;
    }
    ++cert.evaluated;
    const double a = std::abs(out[i].c.c);
    if (cert.evaluated == 1 || a > cert.max_abs_c) {
      cert.max_abs_c = a;
      cert.worst = pts[i];
    }
    cert.max_c4_deviation = std::max(cert.max_c4_deviation, std::abs(out[i].c.c4 + 2.0 / 3.0));
  }
  const double failed = static_cast<double>(cert.failures.size()) / static_cast<double>(pts.size());
  if (failed > kMaxFailedFraction || cert.evaluated < kMinCongruencePoints) {
    cert.verdict = Verdict::inconclusive;
  } else {
    cert.verdict = cert.max_abs_c < tol ? Verdict::veronese_congruent : Verdict::not_congruent;
  }
  return cert;
}

SurfacePatch veronese_patch() {
  const double k = 1.0 / std::numbers::sqrt3;
  const double h = std::numbers::sqrt3 / 2.0;
  SurfacePatch p;
  p.evaluator = [k, h](double u0, double v0, int order) {
    const Jet2 u = Jet2::variable_s(u0, order);
    const Jet2 v = Jet2::variable_t(v0, order);
    const Jet2 ch = cosh(k * u);
    const Jet2 ch2 = ch * ch;
    const Jet2 sh2 = sinh(2.0 * k * u);
    // Printed order (u1, ..., u5) is reordered to (u4, u5, u1, u2, u3).
    return JetVector2(kE52, {h * sh2 * cos(k * v), h * sh2 * sin(k * v), 1.5 * ch2 - 1.0, h * ch2 * cos(2.0 * k * v),
                             h * ch2 * sin(2.0 * k * v)});
  };
  p.s_domain = {-2.0, 2.0};
  p.t_domain = {-2.0, 2.0};
  p.label = "veronese-surface";
  p.expected_metric = [k](double u, double) {
    const double c = std::cosh(k * u);
    return FirstFundamentalForm{-1.0, 0.0, c * c, -c * c};
  };
  SurfacePatch base = p;
  p.frame_field = [base, k](double u0, double v0, int order) {
    const LocalGeometry geo = local_geometry(base, u0, v0, std::max(3, order + 2));
    const Jet2 u = Jet2::variable_s(u0, order + 1);
    const Jet2 sech = 1.0 / cosh(k * u);
    const Frame4<Jet2> e{geo.dx[0], sech * geo.dx[1], std::numbers::sqrt3 * geo.h_sphere[0][0],
                         std::numbers::sqrt3 * sech * geo.h_sphere[0][1]};
    return to_null_frame(e);
  };
  return p;
}

ClassificationSummary classification_report(const SurfacePatch& patch, int ns, int nt, double tol, Interval s_range,
                                            Interval t_range) {
  if (ns < 1 || nt < 1) throw Error("classification grid must be non-empty");
  const auto pts = grid_points(s_range, t_range, ns, nt);
  struct Outcome {
    bool ok = false;
    CurvatureReport r;
    std::string reason;
  };
  std::vector<Outcome> out(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    try {
      out[i].r = curvature_report(patch, pts[i].s, pts[i].t);
      out[i].ok = true;
    } catch (const SingularPointError& e) {
      out[i].reason = e.what();
    } catch (const DomainError& e) {
      out[i].reason = e.what();
    }
  });
  ClassificationSummary sum;
  sum.tolerance = tol;
  double k_mean = 0.0, kd_mean = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!out[i].ok) {
      sum.singular.push_back({pts[i].s, pts[i].t, out[i].reason});
      continue;
    }
    const CurvatureReport& r = out[i].r;
    sum.points.push_back(r);
    const double dk = std::abs(r.K - 1.0 / 3.0);
    const double dkd = std::abs(std::abs(r.K_normal) - 2.0 / 3.0);
    sum.max_H = std::max(sum.max_H, r.H_max_component);
    sum.max_K_deviation = std::max(sum.max_K_deviation, dk);
    sum.max_KD_deviation = std::max(sum.max_KD_deviation, dkd);
    sum.max_sphere = std::max(sum.max_sphere, r.sphere_residual);
    sum.max_metric_form = std::max(sum.max_metric_form, r.metric_form_residual);
    sum.max_K_routes = std::max(sum.max_K_routes, r.gauss_curvature_residual);
    sum.max_gauss = std::max(sum.max_gauss, r.gauss_residual);
    sum.max_codazzi = std::max(sum.max_codazzi, r.codazzi_residual);
    sum.max_ricci = std::max(sum.max_ricci, r.ricci_residual);
    if (!(r.H_max_component < tol) || !(dk < tol) || !(dkd < tol)) sum.offending.push_back({r.s, r.t});
    k_mean += r.K;
    kd_mean += r.K_normal;
  }
  if (!sum.points.empty()) {
    const double n = static_cast<double>(sum.points.size());
    k_mean /= n;
    kd_mean /= n;
    double vk = 0.0, vkd = 0.0;
    for (const auto& r : sum.points) {
      vk += (r.K - k_mean) * (r.K - k_mean);
      vkd += (r.K_normal - kd_mean) * (r.K_normal - kd_mean);
    }
    sum.K_stddev = std::sqrt(vk / n);
    sum.KD_stddev = std::sqrt(vkd / n);
  }
  sum.minimal = sum.max_H < tol;
  sum.constant_K = sum.max_K_deviation < tol;
  sum.constant_KD = sum.max_KD_deviation < tol;
  return sum;
}

}  // namespace pslab
