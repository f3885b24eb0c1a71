#include "pslab/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pslab {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double constant_value(std::string_view text, std::string_view what) {
  const ExprPtr e = parse_expression(text);
  if (depends_on_t(*e)) throw Error(std::string(what) + " must be a constant expression: '" + std::string(text) + "'");
  const double v = eval(*e, 0.0);
  if (!std::isfinite(v)) throw Error(std::string(what) + " is not finite: '" + std::string(text) + "'");
  return v;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Running maximum with its location; NaN counts as +infinity.
struct Worst {
  double value = 0.0;
  std::optional<GridPoint> at;

  void update(double v, GridPoint p) {
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    if (!at || v > value) {
      value = v;
      at = p;
    }
  }
};

Check worst_check(std::string name, const Worst& w, double tol) { return make_check(std::move(name), w.value, tol, w.at); }

json point_json(const std::optional<GridPoint>& p) {
  if (!p) return nullptr;
  return json{{"s", p->s}, {"t", p->t}};
}

json interval_json(Interval r) { return json::array({r.lo, r.hi}); }

json failures_json(const std::vector<FailedPoint>& f) {
  json a = json::array();
  for (const auto& p : f) a.push_back({{"s", p.s}, {"t", p.t}, {"reason", p.reason}});
  return a;
}

void dump(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) {
    json o{{"name", c.name},
           {"status", to_string(c.status)},
           {"max_residual", c.max_residual},
           {"tolerance", c.tolerance},
           {"worst_point", c.worst_t ? json{{"t", *c.worst_t}} : point_json(c.worst)}};
    if (!c.note.empty()) o["note"] = c.note;
    a.push_back(o);
  }
  return a;
}

Certificate rejected_curve(std::string command, const CurveValidationError& e) {
  Certificate cert;
  cert.command = std::move(command);
  const ValidationReport& r = e.report();
  for (const auto& c : r.constraints) {
    Check chk = make_check("curve_" + c.name, c.max_value, r.tolerance);
    chk.worst_t = c.worst_t;
    cert.checks.push_back(chk);
  }
  cert.verdict = "fail";
  cert.details["rejected"] = e.what();
  cert.exit_code = kExitCheckFailed;
  return cert;
}

const NullCurve& require_curve(const Input& input, std::string_view command) {
  if (!input.curve) throw Error(std::string(command) + " needs a curve; '" + input.label + "' is a surface");
  return *input.curve;
}

}  // namespace

Projection Projection::coordinates(int i, int j, int k) {
  Projection p;
  const int idx[3] = {i, j, k};
  for (int r = 0; r < 3; ++r) {
    if (idx[r] < 1 || idx[r] > 5) throw Error("projection coordinates must lie in 1..5");
    p.matrix[r][static_cast<std::size_t>(idx[r] - 1)] = 1.0;
  }
  p.description = "coordinates " + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k);
  return p;
}

Projection Projection::parse(std::string_view text) {
  const auto parts = split(text, ',');
  std::vector<double> v;
  for (const auto& p : parts) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), x);
    if (p.empty() || ec != std::errc() || ptr != p.data() + p.size() || !std::isfinite(x)) {
      throw Error("invalid projection entry '" + p + "'");
    }
    v.push_back(x);
  }
  if (v.size() == 3) {
    for (double x : v)
      if (x != std::floor(x)) throw Error("projection indices must be integers");
    return coordinates(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]));
  }
  if (v.size() != 15) throw Error("projection needs 3 indices or 15 matrix entries, got " + std::to_string(v.size()));
  Projection p;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 5; ++c) p.matrix[r][c] = v[static_cast<std::size_t>(5 * r + c)];
  p.description = "matrix " + trim(text);
  return p;
}

std::array<double, 3> Projection::apply(const PseudoVector& x) const {
  std::array<double, 3> out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 5; ++c) out[r] += matrix[r][c] * x[c];
  return out;
}

std::pair<int, int> parse_grid(std::string_view text) {
  const auto parts = split(text, 'x');
  auto to_int = [&](const std::string& p) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (p.empty() || ec != std::errc() || ptr != p.data() + p.size() || v < 1) {
      throw Error("invalid grid '" + std::string(text) + "' (expected NSxNT, e.g. 20x20)");
    }
    return v;
  };
  if (parts.size() != 2) throw Error("invalid grid '" + std::string(text) + "' (expected NSxNT, e.g. 20x20)");
  return {to_int(parts[0]), to_int(parts[1])};
}

Interval parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw Error("invalid range '" + std::string(text) + "' (expected A:B)");
  const Interval r{constant_value(parts[0], "range start"), constant_value(parts[1], "range end")};
  if (!(r.lo < r.hi)) throw Error("range '" + std::string(text) + "' must satisfy A < B");
  return r;
}

std::vector<std::string> builtin_input_names() {
  auto names = builtin_curve_names();
  names.emplace_back(kVeroneseSurfaceBuiltin);
  return names;
}

Input load_input(const std::optional<std::string>& file, const std::optional<std::string>& builtin) {
  if (file.has_value() == builtin.has_value()) throw Error("exactly one of --curve FILE or --builtin NAME is required");
  Input in;
  if (builtin) {
    in.source = "builtin:" + *builtin;
    if (*builtin == kVeroneseSurfaceBuiltin) {
      in.patch = veronese_patch();
      in.label = *builtin;
      in.canonical = in.source;
      return in;
    }
    in.curve = builtin_curve(*builtin);
  } else {
    in.source = *file;
    in.curve = load_curve_spec(*file);
  }
  in.label = in.curve->label;
  in.canonical = to_spec(*in.curve);
  return in;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

Check make_check(std::string name, double value, double tolerance, std::optional<GridPoint> worst) {
  Check c;
  c.name = std::move(name);
  c.max_residual = value;
  c.tolerance = tolerance;
  c.worst = worst;
  c.status = value < tolerance ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

std::string verdict_of(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) return "fail";
  return "pass";
}

std::string dump_json(const json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

std::string certificate_json(const Certificate& cert, const Input& input, const RunConfig& config) {
  char digest[32];
  std::snprintf(digest, sizeof digest, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(input.canonical)));
  json j;
  j["schema"] = kCertificateSchema;
  j["tool"] = {{"name", "pslab"}, {"version", PSLAB_VERSION}};
  j["command"] = cert.command;
  j["input"] = {{"label", input.label}, {"source", input.source}, {"digest", digest},
                {"kind", input.curve ? "curve" : "surface"}};
  json cfg{{"jet_order", config.jet_order},
           {"grid", json::array({config.ns, config.nt})},
           {"tolerances",
            {{"curve", config.tol.curve},
             {"geometry", config.tol.geometry},
             {"congruence", config.tol.congruence},
             {"identity_factor", config.tol.identity_factor}}},
           {"margin", config.margin},
           {"s_range", config.s_range ? interval_json(*config.s_range) : json(nullptr)},
           {"t_range", config.t_range ? interval_json(*config.t_range) : json(nullptr)}};
  j["config"] = cfg;
  j["checks"] = checks_json(cert.checks);
  j["verdict"] = cert.verdict;
  j["details"] = cert.details;
  return dump_json(j);
}

Certificate cmd_validate_curve(const Input& input, const RunConfig& config) {
  const NullCurve& curve = require_curve(input, "validate-curve");
  std::optional<Interval> range = config.t_range;
  double margin = 0.0;
  if (!range) {
    if (curve.surface_range) {
      range = curve.surface_range;
    } else {
      margin = config.margin;
    }
  }
  const int samples = std::max(2, config.ns * config.nt);
  const ValidationReport r = validate_theorem_curve(curve, samples, config.tol.curve, range, margin);
  Certificate cert;
  cert.command = "validate-curve";
  for (const auto& c : r.constraints) {
    Check chk = make_check(c.name, c.max_value, r.tolerance);
    chk.worst_t = c.worst_t;
    cert.checks.push_back(chk);
  }
  json ids = json::object();
  for (const auto& i : r.identities) ids[i.name] = {{"max_residual", i.max_value}, {"worst_t", i.worst_t}};
  cert.details["identities"] = ids;
  cert.details["range"] = interval_json(r.range);
  cert.details["samples"] = r.samples;
  const CurveInvariants inv = curve_invariants(curve, 0.5 * (r.range.lo + r.range.hi));
  cert.details["invariants_at_midpoint"] = {{"eta", inv.eta}, {"eta_prime", inv.eta_prime}, {"xi", inv.xi}};
  cert.verdict = verdict_of(cert.checks);
  cert.exit_code = cert.verdict == "pass" ? kExitPass : kExitCheckFailed;
  return cert;
}

SurfaceSelection select_surface(const Input& input, const RunConfig& config) {
  SurfaceSelection sel;
  if (input.patch) {
    sel.patch = *input.patch;
    sel.s_range = config.s_range.value_or(sel.patch.s_domain);
    sel.t_range = config.t_range.value_or(sel.patch.t_domain);
    return sel;
  }
  sel.theorem = build_theorem_surface(*input.curve, config.s_range.value_or(kDefaultSRange), config.t_range,
                                      config.tol.curve);
  sel.patch = sel.theorem->patch;
  sel.s_range = sel.theorem->s_range;
  sel.t_range = sel.theorem->t_range;
  return sel;
}

Certificate cmd_report(const Input& input, const RunConfig& config) {
  SurfaceSelection sel;
  try {
    sel = select_surface(input, config);
  } catch (const CurveValidationError& e) {
    return rejected_curve("report", e);
  }
  const double tol = config.tol.geometry;
  const double id_tol = tol * config.tol.identity_factor;
  const ClassificationSummary sum = classification_report(sel.patch, config.ns, config.nt, tol, sel.s_range, sel.t_range);

  Worst H, K, KD, sphere, metric, routes, gauss, codazzi, ricci, signed_kd;
  for (const auto& r : sum.points) {
    const GridPoint p{r.s, r.t};
    H.update(r.H_max_component, p);
    K.update(std::abs(r.K - 1.0 / 3.0), p);
    KD.update(std::abs(std::abs(r.K_normal) - 2.0 / 3.0), p);
    sphere.update(r.sphere_residual, p);
    metric.update(r.metric_form_residual, p);
    routes.update(r.gauss_curvature_residual, p);
    gauss.update(r.gauss_residual, p);
    codazzi.update(r.codazzi_residual, p);
    ricci.update(r.ricci_residual, p);
    signed_kd.update(std::abs(r.K_normal + 2.0 / 3.0), p);
  }
  Certificate cert;
  cert.command = "report";
  const std::size_t total = static_cast<std::size_t>(config.ns) * static_cast<std::size_t>(config.nt);
  Check evaluated = make_check("evaluated_points", static_cast<double>(sum.singular.size()) / static_cast<double>(total),
                               kMaxFailedFraction + 1e-12);
  if (sum.points.empty()) evaluated.status = CheckStatus::fail;
  evaluated.note = "fraction of grid points excluded as singular";
  cert.checks.push_back(evaluated);
  cert.checks.push_back(worst_check("minimality", H, tol));
  cert.checks.push_back(worst_check("gaussian_curvature", K, tol));
  cert.checks.push_back(worst_check("normal_curvature", KD, tol));
  if (input.patch) cert.checks.push_back(worst_check("signed_normal_curvature", signed_kd, tol));
  cert.checks.push_back(worst_check("sphere", sphere, tol));
  Check mf = worst_check("metric_form", metric, tol);
  if (!sel.patch.expected_metric) {
    mf.status = CheckStatus::skipped;
    mf.note = "no closed-form metric";
  }
  cert.checks.push_back(mf);
  cert.checks.push_back(worst_check("curvature_routes", routes, tol));
  cert.checks.push_back(worst_check("gauss_equation", gauss, id_tol));
  cert.checks.push_back(worst_check("codazzi_equation", codazzi, id_tol));
  cert.checks.push_back(worst_check("ricci_equation", ricci, id_tol));
  Check constancy = make_check("curvature_constancy", std::max(sum.K_stddev, sum.KD_stddev), tol);
  constancy.note = "standard deviation of K and K^D over the grid";
  cert.checks.push_back(constancy);

  if (sel.theorem) {
    const TheoremSurface& ts = *sel.theorem;
    const bool connections = config.jet_order >= kConnectionJetOrder;
    struct FramePoint {
      bool ok = false;
      double gram = 0.0, null = 0.0, omega = 0.0, relation = 0.0;
    };
    const auto pts = grid_points(sel.s_range, sel.t_range, config.ns, config.nt);
    std::vector<FramePoint> fp(pts.size());
    parallel_for(static_cast<int>(pts.size()), [&](int i) {
      const double s = pts[i].s, t = pts[i].t;
      try {
        const CanonicalFrame cf = canonical_frame(ts, s, t);
        fp[i].gram = cf.gram_residual;
        const LocalGeometry geo = local_geometry(ts.patch, s, t);
        const SecondFundamentalForm h = spherical_sff(geo, cf.f);
        fp[i].null = std::abs(inner(h.ambient_h11, h.ambient_h11));
        if (connections) {
          const ConnectionForms w = connection_forms(geo, ts.patch.frame_field);
          fp[i].omega = std::max({std::abs(w(3, 3, 2) + 2.0 * s / 3.0), std::abs(w(1, 1, 2) + s / 3.0),
                                  std::abs(w(2, 4, 2) + 2.0 / 3.0), std::abs(w(1, 4, 1)), std::abs(w(1, 4, 2))});
          fp[i].relation = w.relation_residual;
        }
        fp[i].ok = true;
      } catch (const SingularPointError&) {
      } catch (const DegenerateError&) {
      } catch (const DomainError&) {
      }
    });
    Worst gram, null, omega, relation;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!fp[i].ok) continue;
      gram.update(fp[i].gram, pts[i]);
      null.update(fp[i].null, pts[i]);
      omega.update(fp[i].omega, pts[i]);
      relation.update(fp[i].relation, pts[i]);
    }
    cert.checks.push_back(worst_check("canonical_frame_gram", gram, tol));
    Check n = worst_check("null_second_fundamental_form", null, tol);
    n.note = "<h_E(f1,f1), h_E(f1,f1)>";
    cert.checks.push_back(n);
    for (auto [name, w] : {std::pair{"connection_forms", omega}, std::pair{"connection_relations", relation}}) {
      Check c = worst_check(name, w, id_tol);
      if (!connections) {
        c = Check{name, CheckStatus::skipped, 0.0, id_tol, std::nullopt, std::nullopt,
                  "jet order " + std::to_string(config.jet_order) + " < " + std::to_string(kConnectionJetOrder)};
      }
      cert.checks.push_back(c);
    }
  }
  cert.details["s_range"] = interval_json(sel.s_range);
  cert.details["t_range"] = interval_json(sel.t_range);
  cert.details["evaluated"] = sum.points.size();
  cert.details["singular_points"] = failures_json(sum.singular);
  json offending = json::array();
  for (const auto& p : sum.offending) offending.push_back(point_json(p));
  cert.details["offending_points"] = offending;
  if (!sum.points.empty()) {
    const CurvatureReport& r0 = sum.points.front();
    cert.details["K"] = r0.K;
    cert.details["K_normal"] = r0.K_normal;
  }
  cert.verdict = verdict_of(cert.checks);
  cert.exit_code = cert.verdict == "pass" ? kExitPass : kExitCheckFailed;
  return cert;
}

Certificate cmd_congruence(const Input& input, const RunConfig& config) {
  require_curve(input, "congruence");
  SurfaceSelection sel;
  try {
    sel = select_surface(input, config);
  } catch (const CurveValidationError& e) {
    return rejected_curve("congruence", e);
  }
  const CongruenceCertificate cc = veronese_congruence_test(*sel.theorem, config.ns, config.nt, config.tol.congruence);
  Certificate cert;
  cert.command = "congruence";
  Check c = make_check("congruence_coefficient", cc.max_abs_c, config.tol.congruence,
                       cc.evaluated > 0 ? std::optional<GridPoint>(cc.worst) : std::nullopt);
  if (cc.verdict == Verdict::inconclusive) {
    c.status = CheckStatus::fail;
    c.note = "inconclusive: " + std::to_string(cc.failures.size()) + " of " + std::to_string(config.ns * config.nt) +
             " points failed, " + std::to_string(cc.evaluated) + " evaluated";
  }
  cert.checks.push_back(c);
  Check c4 = make_check("f4_coefficient", cc.max_c4_deviation, config.tol.geometry);
  c4.note = "max |c4 + 2/3|";
  if (cc.evaluated == 0) c4.status = CheckStatus::skipped;
  cert.checks.push_back(c4);
  cert.details["congruence"] = {{"verdict", to_string(cc.verdict)},
                                {"max_abs_c", cc.max_abs_c},
                                {"worst_point", cc.evaluated > 0 ? point_json(cc.worst) : json(nullptr)},
                                {"evaluated", cc.evaluated},
                                {"grid", json::array({cc.ns, cc.nt})},
                                {"s_range", interval_json(cc.s_range)},
                                {"t_range", interval_json(cc.t_range)},
                                {"failed_points", failures_json(cc.failures)}};
  cert.verdict = to_string(cc.verdict);
  cert.exit_code = cc.verdict == Verdict::veronese_congruent ? kExitPass : kExitCheckFailed;
  return cert;
}

std::vector<SampleRow> sample_surface(const SurfacePatch& patch, Interval s_range, Interval t_range, int ns, int nt) {
  if (ns < 2 || nt < 2) throw Error("sampling needs a grid of at least 2x2");
  const auto pts = grid_points(s_range, t_range, ns, nt);
  std::vector<SampleRow> rows(pts.size());
  std::vector<std::string> errors(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    try {
      const CurvatureReport r = curvature_report(patch, pts[i].s, pts[i].t);
      rows[i] = {r.s, r.t, r.x, r.K, std::abs(r.K_normal), r.H_max_component, r.sphere_residual};
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  std::size_t failed = 0;
  std::size_t first = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!errors[i].empty()) {
      ++failed;
      first = std::min(first, i);
    }
  }
  if (failed) {
    throw SingularPointError(std::to_string(failed) + " grid point(s) could not be sampled, first: " + errors[first],
                             pts[first].s, pts[first].t);
  }
  return rows;
}

std::string format_csv(const std::vector<SampleRow>& rows) {
  std::string out = "s,t,x1,x2,x3,x4,x5,K,Kd_abs,H_max_component,sphere_residual\n";
  for (const auto& r : rows) {
    const double v[] = {r.s, r.t, r.x[0], r.x[1], r.x[2], r.x[3], r.x[4], r.K, r.Kd_abs, r.H_max_component, r.sphere_residual};
    for (std::size_t i = 0; i < std::size(v); ++i) {
      if (i) out += ',';
      out += format_number(v[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<SampleRow> parse_csv(std::string_view text) {
  std::vector<SampleRow> rows;
  std::size_t pos = 0;
  int line = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view l = text.substr(pos, end - pos);
    pos = end + 1;
    if (line++ == 0 || l.empty()) continue;
    const auto cells = split(l, ',');
    if (cells.size() != 11) throw ParseError("expected 11 columns", 1, line);
    double v[11];
    for (int i = 0; i < 11; ++i) {
      const auto& c = cells[static_cast<std::size_t>(i)];
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v[i]);
      if (ec != std::errc() || ptr != c.data() + c.size()) throw ParseError("invalid number '" + c + "'", i + 1, line);
    }
    SampleRow r;
    r.s = v[0];
    r.t = v[1];
    r.x = PseudoVector(kE52, {v[2], v[3], v[4], v[5], v[6]});
    r.K = v[7];
    r.Kd_abs = v[8];
    r.H_max_component = v[9];
    r.sphere_residual = v[10];
    rows.push_back(r);
  }
  return rows;
}

std::string format_obj(const std::vector<SampleRow>& rows, int ns, int nt, const Projection& projection,
                       const std::string& label) {
  if (rows.size() != static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt)) throw Error("row count does not match the grid");
  std::string out = "# pslab surface export\n# surface: " + label + "\n# projection: " + projection.description +
                    "\n# grid: " + std::to_string(ns) + "x" + std::to_string(nt) + "\n";
  for (const auto& r : rows) {
    const auto p = projection.apply(r.x);
    out += "v " + format_number(p[0]) + " " + format_number(p[1]) + " " + format_number(p[2]) + "\n";
  }
  auto id = [nt](int i, int j) { return std::to_string(i * nt + j + 1); };
  for (int i = 0; i + 1 < ns; ++i) {
    for (int j = 0; j + 1 < nt; ++j) {
      out += "f " + id(i, j) + " " + id(i + 1, j) + " " + id(i + 1, j + 1) + "\n";
      out += "f " + id(i, j) + " " + id(i + 1, j + 1) + " " + id(i, j + 1) + "\n";
    }
  }
  return out;
}

}  // namespace pslab
