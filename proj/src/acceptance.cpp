#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "pslab/cli.hpp"

namespace pslab {

namespace {

constexpr double kClosedFormTolerance = 1e-12;
constexpr double kCoefficientRelTolerance = 1e-6;
constexpr double kFdTolerance = 1e-5;
constexpr double kNullTolerance = 1e-10;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Explicit surface generated by the circle-type curve.
PseudoVector circle_surface(double s, double t) {
  const double k = 1.0 / (6.0 * std::numbers::sqrt3);
  return PseudoVector(kE52, {k * 2 * s * (s * std::cos(t) - 3 * std::sin(t)), k * 2 * s * (s * std::sin(t) + 3 * std::cos(t)),
                             k * ((s * s - 9) * std::cos(2 * t) - 6 * s * std::sin(2 * t)),
                             k * ((s * s - 9) * std::sin(2 * t) + 6 * s * std::cos(2 * t)),
                             k * std::numbers::sqrt3 * (s * s + 3)});
}

// f3-coefficient of h(f~2, f~2) for alpha0.
double alpha0_coefficient(double t) {
  return (21.0 / 800.0) * (-180 * std::cos(2 * t) + 45 * std::cos(4 * t) - 121) / std::pow(std::sin(t) * std::cos(t), 4);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); }
};

Criterion named(int id, std::string name) {
  Criterion c;
  c.id = id;
  c.name = std::move(name);
  return c;
}

CheckStatus status_of(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

std::vector<TheoremSurface> builtin_surfaces(const RunConfig& config) {
  std::vector<TheoremSurface> out;
  for (const auto& name : builtin_curve_names())
    out.push_back(build_theorem_surface(builtin_curve(name), kDefaultSRange, std::nullopt, config.tol.curve));
  return out;
}

Criterion veronese_constants(const RunConfig& config) {
  Timer timer;
  const SurfacePatch v = veronese_patch();
  const auto pts = grid_points({-2, 2}, {-2, 2}, 20, 20);
  std::vector<double> dk(pts.size()), dkd(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    const CurvatureReport r = curvature_report(v, pts[i].s, pts[i].t);
    dk[i] = std::abs(r.K - 1.0 / 3.0);
    dkd[i] = std::abs(r.K_normal + 2.0 / 3.0);
  });
  double mk = 0, mkd = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    mk = std::max(mk, std::isnan(dk[i]) ? INFINITY : dk[i]);
    mkd = std::max(mkd, std::isnan(dkd[i]) ? INFINITY : dkd[i]);
  }
  Criterion c = named(1, "veronese-constants");
  c.seconds = timer.seconds();
  const double tol = config.tol.geometry;
  c.status = status_of(mk < tol && mkd < tol && c.seconds < 10.0);
  c.detail = "20x20 grid: max|K-1/3| = " + sci(mk) + ", max|K^D+2/3| = " + sci(mkd) + " (tol " + sci(tol) + ")";
  return c;
}

Criterion theorem_surface_constants(const RunConfig& config, const std::vector<TheoremSurface>& surfaces) {
  Timer timer;
  const double tol = config.tol.geometry;
  bool ok = true;
  std::string detail;
  for (const auto& ts : surfaces) {
    const ClassificationSummary sum = classification_report(ts.patch, 20, 20, tol, ts.s_range, ts.t_range);
    ok = ok && sum.passed() && sum.points.size() == 400;
    if (!detail.empty()) detail += "; ";
    detail += ts.generator.label + ": max|H| = " + sci(sum.max_H) + ", max|K-1/3| = " + sci(sum.max_K_deviation) +
              ", max||K^D|-2/3| = " + sci(sum.max_KD_deviation);
  }
  Criterion c = named(2, "theorem-surface-constants");
  c.seconds = timer.seconds();
  c.status = status_of(ok && c.seconds < 30.0);
  c.detail = detail;
  return c;
}

Criterion closed_form(const RunConfig&) {
  Timer timer;
  const NullCurve curve = builtin_curve("veronese-generator");
  double worst = 0;
  for (const auto& p : grid_points({-3, 3}, {-3, 3}, 10, 10)) {
    const double d = max_abs(value_of(theorem_surface_jet(curve, p.s, p.t, 0)) - circle_surface(p.s, p.t));
    worst = std::max(worst, std::isnan(d) ? INFINITY : d);
  }
  Criterion c = named(3, "closed-form-surface");
  c.seconds = timer.seconds();
  c.status = status_of(worst < kClosedFormTolerance);
  c.detail = "10x10 grid on [-3,3]^2: max componentwise deviation = " + sci(worst);
  return c;
}

Criterion congruence(const RunConfig& config) {
  Timer timer;
  const TheoremSurface circle = build_theorem_surface(builtin_curve("veronese-generator"), kDefaultSRange, std::nullopt,
                                                      config.tol.curve);
  const double pi = std::numbers::pi;
  const TheoremSurface a0 = build_theorem_surface(builtin_curve("alpha0"), kDefaultSRange, Interval{0.3, pi / 2 - 0.3},
                                                  config.tol.curve);
  const CongruenceCertificate yes = veronese_congruence_test(circle, 10, 10, config.tol.congruence);
  const CongruenceCertificate no = veronese_congruence_test(a0, 10, 10, config.tol.congruence);
  double rel = 0;
  const auto ts = Interval{0.3, pi / 2 - 0.3}.grid(12);
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const double expected = alpha0_coefficient(ts[i]);
    const double got = congruence_coefficient(a0, 0.0, ts[i]).c;
    const double r = std::abs(got - expected) / std::abs(expected);
    rel = std::max(rel, std::isnan(r) ? INFINITY : r);
  }
  Criterion c = named(4, "congruence-discrimination");
  c.seconds = timer.seconds();
  c.status = status_of(yes.verdict == Verdict::veronese_congruent && no.verdict == Verdict::not_congruent &&
                       rel < kCoefficientRelTolerance);
  c.detail = "circle-type: " + to_string(yes.verdict) + " (max|c| = " + sci(yes.max_abs_c) + "); alpha0: " +
             to_string(no.verdict) + " (max|c| = " + sci(no.max_abs_c) + "); closed-form coefficient rel. deviation " + sci(rel);
  return c;
}

Criterion canonical_frames(const RunConfig& config, const std::vector<TheoremSurface>& surfaces) {
  Criterion c = named(5, "canonical-frame");
  if (config.jet_order < kConnectionJetOrder) {
    c.status = CheckStatus::skipped;
    c.detail = "jet order " + std::to_string(config.jet_order) + " < " + std::to_string(kConnectionJetOrder) +
               ": connection forms need sixth derivatives of the curve";
    return c;
  }
  Timer timer;
  const double id_tol = config.tol.geometry * config.tol.identity_factor;
  double gram = 0, omega = 0;
  for (const auto& ts : surfaces) {
    for (const auto& p : grid_points(ts.s_range, ts.t_range, 5, 5)) {
      gram = std::max(gram, canonical_frame(ts, p.s, p.t).gram_residual);
      const ConnectionForms w = connection_forms(ts.patch, p.s, p.t, ts.patch.frame_field);
      omega = std::max({omega, std::abs(w(3, 3, 2) + 2 * p.s / 3), std::abs(w(1, 1, 2) + p.s / 3),
                        std::abs(w(2, 4, 2) + 2.0 / 3), std::abs(w(1, 4, 1)), std::abs(w(1, 4, 2))});
    }
  }
  c.seconds = timer.seconds();
  c.status = status_of(gram < config.tol.geometry && omega < id_tol);
  c.detail = "25 points per curve: max Gram residual = " + sci(gram) + ", max connection-form deviation = " + sci(omega);
  return c;
}

Criterion fundamental(const RunConfig& config, const std::vector<TheoremSurface>& surfaces) {
  Timer timer;
  const double id_tol = config.tol.geometry * config.tol.identity_factor;
  std::vector<std::pair<std::string, const SurfacePatch*>> patches;
  const SurfacePatch v = veronese_patch();
  patches.emplace_back(std::string(kVeroneseSurfaceBuiltin), &v);
  std::vector<Interval> sr{v.s_domain}, tr{v.t_domain};
  for (const auto& ts : surfaces) {
    patches.emplace_back(ts.generator.label, &ts.patch);
    sr.push_back(ts.s_range);
    tr.push_back(ts.t_range);
  }
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < patches.size(); ++k) {
    const ClassificationSummary sum = classification_report(*patches[k].second, 10, 10, config.tol.geometry, sr[k], tr[k]);
    const double worst = std::max({sum.max_gauss, sum.max_codazzi, sum.max_ricci});
    ok = ok && !sum.points.empty() && sum.singular.empty() && worst < id_tol;
    if (!detail.empty()) detail += "; ";
    detail += patches[k].first + ": gauss " + sci(sum.max_gauss) + ", codazzi " + sci(sum.max_codazzi) + ", ricci " +
              sci(sum.max_ricci);
  }
  Criterion c = named(6, "fundamental-equations");
  c.seconds = timer.seconds();
  c.status = status_of(ok);
  c.detail = detail;
  return c;
}

Criterion jet_soundness(const RunConfig& config) {
  Timer timer;
  std::mt19937_64 rng(20240611);
  double worst = 0;
  for (const auto& name : builtin_curve_names()) {
    const NullCurve curve = builtin_curve(name);
    const Interval r = curve.surface_range.value_or(curve.domain.shrunk(config.margin));
    std::uniform_real_distribution<double> u(r.lo, r.hi);
    for (int p = 0; p < 20; ++p) {
      const double t0 = u(rng);
      for (int i = 0; i < 5; ++i) {
        const ScalarFunction f = component_function(curve, i);
        for (int k = 1; k <= 4; ++k) {
          const double d = fd_crosscheck(f, t0, k);
          worst = std::max(worst, std::isnan(d) ? INFINITY : d);
        }
      }
    }
  }
  Criterion c = named(7, "jet-soundness");
  c.seconds = timer.seconds();
  c.status = status_of(worst < kFdTolerance);
  c.detail = "20 points per curve, orders 1-4: max relative jet/finite-difference discrepancy = " + sci(worst);
  return c;
}

Criterion null_form_instance(const RunConfig& config, const std::vector<TheoremSurface>& surfaces) {
  Timer timer;
  double null = 0, spread = 0;
  for (const auto& ts : surfaces) {
    for (const auto& p : grid_points(ts.s_range, ts.t_range, 10, 10)) {
      const LocalGeometry geo = local_geometry(ts.patch, p.s, p.t);
      const SecondFundamentalForm h = spherical_sff(geo, value_of(ts.patch.frame_field(p.s, p.t, 0)));
      null = std::max(null, std::abs(inner(h.ambient_h11, h.ambient_h11)));
    }
    const ClassificationSummary sum = classification_report(ts.patch, 10, 10, config.tol.geometry, ts.s_range, ts.t_range);
    spread = std::max({spread, sum.K_stddev, sum.KD_stddev});
  }
  Criterion c = named(8, "null-form-instance");
  c.seconds = timer.seconds();
  c.status = status_of(null < kNullTolerance && spread < config.tol.geometry);
  c.detail = "max|<h_E(f1,f1), h_E(f1,f1)>| = " + sci(null) + ", max std dev of K, K^D = " + sci(spread) +
             "; flat case untested (no constructive instance)";
  return c;
}

}  // namespace

std::vector<Criterion> run_acceptance(const RunConfig& config) {
  std::vector<Criterion> out;
  std::vector<TheoremSurface> surfaces;
  try {
    surfaces = builtin_surfaces(config);
  } catch (const Error& e) {
    for (int id = 1; id <= 8; ++id) {
      Criterion c = named(id, "criterion");
      c.detail = std::string("error building the builtin surfaces: ") + e.what();
      out.push_back(c);
    }
    return out;
  }
  auto guarded = [&](int id, const char* name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const Error& e) {
      Criterion c = named(id, name);
      c.detail = std::string("error: ") + e.what();
      out.push_back(c);
    }
  };
  guarded(1, "veronese-constants", [&] { return veronese_constants(config); });
  guarded(2, "theorem-surface-constants", [&] { return theorem_surface_constants(config, surfaces); });
  guarded(3, "closed-form-surface", [&] { return closed_form(config); });
  guarded(4, "congruence-discrimination", [&] { return congruence(config); });
  guarded(5, "canonical-frame", [&] { return canonical_frames(config, surfaces); });
  guarded(6, "fundamental-equations", [&] { return fundamental(config, surfaces); });
  guarded(7, "jet-soundness", [&] { return jet_soundness(config); });
  guarded(8, "null-form-instance", [&] { return null_form_instance(config, surfaces); });
  return out;
}

std::string format_criterion(const Criterion& c) {
  const char* tag = c.status == CheckStatus::pass ? "PASS" : c.status == CheckStatus::fail ? "FAIL" : "SKIP";
  char time[32];
  std::snprintf(time, sizeof time, "%.2f s", c.seconds);
  return std::string(tag) + " [" + std::to_string(c.id) + "] " + c.name + " (" + time + "): " + c.detail;
}

}  // namespace pslab
