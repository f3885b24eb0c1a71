#include "pslab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pslab {

std::vector<double> Interval::grid(int n) const {
  if (n < 1) throw Error("grid needs at least one point");
  if (n == 1) return {0.5 * (lo + hi)};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return g;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int column_of(std::string_view line, std::string_view part) {
  int col = 1;
  for (const char* p = line.data(); p < part.data(); ++p) {
    if ((static_cast<unsigned char>(*p) & 0xC0) != 0x80) ++col;
  }
  return col;
}

double parse_bound(std::string_view line, std::string_view token, int line_no) {
  ExprPtr e;
  try {
    e = parse_expression(token);
  } catch (const ParseError& err) {
    throw ParseError(err.message(), column_of(line, token) + err.position() - 1, line_no);
  }
  if (depends_on_t(*e)) throw ParseError("domain bound must not depend on t", column_of(line, token), line_no);
  return eval(*e, 0.0);
}

}  // namespace

NullCurve parse_curve_spec(std::string_view text) {
  NullCurve curve;
  std::array<bool, 5> seen{};
  bool have_domain = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", column_of(raw, trim(line)), line_no);
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value = trim(line.substr(colon + 1));
    const int value_col = value.empty() ? static_cast<int>(colon) + 2 : column_of(raw, value);
    if (key.size() == 2 && key[0] == 'c' && key[1] >= '1' && key[1] <= '5') {
      const int idx = key[1] - '1';
      if (seen[static_cast<std::size_t>(idx)]) throw ParseError("duplicate component " + std::string(key), 1, line_no);
      if (value.empty()) throw ParseError("empty expression", value_col, line_no);
      try {
        curve.components[static_cast<std::size_t>(idx)] = parse_expression(value);
      } catch (const ParseError& err) {
        throw ParseError(err.message(), value_col + err.position() - 1, line_no);
      }
      seen[static_cast<std::size_t>(idx)] = true;
    } else if (key == "domain") {
      if (have_domain) throw ParseError("duplicate domain", 1, line_no);
      std::vector<std::string_view> tokens;
      std::size_t k = 0;
      while (k < value.size()) {
        while (k < value.size() && (value[k] == ' ' || value[k] == '\t')) ++k;
        const std::size_t start = k;
        while (k < value.size() && value[k] != ' ' && value[k] != '\t') ++k;
        if (k > start) tokens.push_back(value.substr(start, k - start));
      }
      if (tokens.size() != 2) throw ParseError("domain needs exactly two bounds", value_col, line_no);
      curve.domain = {parse_bound(raw, tokens[0], line_no), parse_bound(raw, tokens[1], line_no)};
      if (!(curve.domain.lo < curve.domain.hi)) throw ParseError("domain must satisfy t_min < t_max", value_col, line_no);
      have_domain = true;
    } else if (key == "label") {
      curve.label = std::string(value);
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", column_of(raw, key), line_no);
    }
  }
  for (int i = 0; i < 5; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) throw ParseError("missing component c" + std::to_string(i + 1), 1, line_no);
  }
  if (!have_domain) throw ParseError("missing domain", 1, line_no);
  return curve;
}

NullCurve load_curve_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open curve spec '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve_spec(ss.str());
}

std::string to_spec(const NullCurve& curve) {
  std::string out;
  if (!curve.label.empty()) out += "label: " + curve.label + "\n";
  for (int i = 0; i < 5; ++i) {
    out += "c" + std::to_string(i + 1) + ": " + to_string(*curve.components[static_cast<std::size_t>(i)]) + "\n";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "domain: %.17g %.17g\n", curve.domain.lo, curve.domain.hi);
  out += buf;
  return out;
}

namespace {

constexpr std::string_view kVeroneseGenerator =
    "label: veronese-generator\n"
    "c1: 2*cos(t)/(3*sqrt3)\n"
    "c2: 2*sin(t)/(3*sqrt3)\n"
    "c3: cos(2*t)/(3*sqrt3)\n"
    "c4: sin(2*t)/(3*sqrt3)\n"
    "c5: sqrt3/(3*sqrt3)\n"
    "domain: -pi pi\n";

constexpr std::string_view kAlpha0 =
    "label: alpha0\n"
    "c1: cos(2*t)*cot(t)/(3*sqrt3)\n"
    "c2: 2*cos(t)^2/(3*sqrt3)\n"
    "c3: cos(t)*cot(t)*cos(sqrt3*ln(tan(t)+sec(t)))/(3*sqrt3)\n"
    "c4: cos(t)*cot(t)*sin(sqrt3*ln(tan(t)+sec(t)))/(3*sqrt3)\n"
    "c5: cos(t)/(3*sqrt3)\n"
    "domain: 0 pi/2\n";

}  // namespace

std::vector<std::string> builtin_curve_names() { return {"veronese-generator", "alpha0"}; }

bool is_builtin_curve(std::string_view name) { return name == "veronese-generator" || name == "alpha0"; }

NullCurve builtin_curve(std::string_view name) {
  if (name == "veronese-generator") {
    NullCurve c = parse_curve_spec(kVeroneseGenerator);
    c.surface_range = Interval{-3.0, 3.0};
    return c;
  }
  if (name == "alpha0") {
    NullCurve c = parse_curve_spec(kAlpha0);
    c.surface_range = Interval{0.3, std::numbers::pi / 2 - 0.3};
    return c;
  }
  throw Error("unknown builtin curve '" + std::string(name) + "'");
}

JetVector1 eval_curve_jet(const NullCurve& curve, double t0, int order) {
  if (!curve.domain.contains(t0)) {
    std::ostringstream os;
    os.precision(17);
    os << "t = " << t0 << " lies outside the curve domain (" << curve.domain.lo << ", " << curve.domain.hi << ")";
    throw DomainError(os.str());
  }
  const Jet1 t = Jet1::variable(t0, order);
  JetVector1 a(kE52, Jet1(order));
  for (int i = 0; i < 5; ++i) {
    try {
      a[i] = eval(*curve.components[static_cast<std::size_t>(i)], t);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os.precision(17);
      os << "component c" << i + 1 << " at t = " << t0 << ": " << e.what();
      throw DomainError(os.str());
    }
  }
  return a;
}

PseudoVector eval_curve(const NullCurve& curve, double t0) { return value_of(eval_curve_jet(curve, t0, 0)); }

ScalarFunction component_function(const NullCurve& curve, int index) {
  if (index < 0 || index >= 5) throw Error("curve component index out of range");
  ExprPtr e = curve.components[static_cast<std::size_t>(index)];
  return {[e](double t) { return eval(*e, t); }, [e](const Jet1& t) { return eval(*e, t); }};
}

double ValidationReport::worst_constraint() const {
  double w = 0.0;
  for (const auto& r : constraints) w = std::max(w, r.max_value);
  return w;
}

double ValidationReport::worst_identity() const {
  double w = 0.0;
  for (const auto& r : identities) w = std::max(w, r.max_value);
  return w;
}

namespace {

std::array<PseudoVector, 5> derivatives(const NullCurve& curve, double t) {
  const JetVector1 a = eval_curve_jet(curve, t, 4);
  std::array<PseudoVector, 5> d;
  for (int k = 0; k <= 4; ++k) {
    d[static_cast<std::size_t>(k)] = PseudoVector(kE52);
    for (int i = 0; i < 5; ++i) d[static_cast<std::size_t>(k)][i] = a[i].derivative(k);
  }
  return d;
}

void record(Residual& r, double value, double t) {
  if (std::isnan(value)) value = HUGE_VAL;
  if (value > r.max_value) {
    r.max_value = value;
    r.worst_t = t;
  }
}

}  // namespace

ValidationReport validate_theorem_curve(const NullCurve& curve, int samples, double tol,
                                        std::optional<Interval> range, double margin) {
  if (samples < 2) throw Error("validation needs at least 2 samples");
  if (!(tol >= 0)) throw Error("validation tolerance must be non-negative");
  if (!(margin >= 0 && margin < 0.5)) throw Error("margin fraction must lie in [0, 0.5)");
  ValidationReport rep;
  rep.label = curve.label;
  rep.range = range.value_or(curve.domain).shrunk(margin);
  rep.samples = samples;
  rep.tolerance = tol;
  rep.constraints = {Residual{"light_cone"}, Residual{"null_tangent"}, Residual{"acceleration"}};
  rep.identities = {Residual{"a.a1"},       Residual{"a.a2"},        Residual{"a1.a2"},
                    Residual{"a.a3"},       Residual{"a2.a2+a1.a3"}, Residual{"a2.a2-a.a4"}};
  for (double t : rep.range.grid(samples)) {
    std::array<PseudoVector, 5> d;
    try {
      d = derivatives(curve, t);
    } catch (const Error& e) {
      std::ostringstream os;
      os.precision(17);
      os << "curve evaluation failed at t = " << t << ": " << e.what();
      throw DomainError(os.str());
    }
    record(rep.constraints[0], std::abs(inner(d[0], d[0])), t);
    record(rep.constraints[1], std::abs(inner(d[1], d[1])), t);
    record(rep.constraints[2], std::abs(inner(d[2], d[2]) - 4.0 / 9.0), t);
    record(rep.identities[0], std::abs(inner(d[0], d[1])), t);
    record(rep.identities[1], std::abs(inner(d[0], d[2])), t);
    record(rep.identities[2], std::abs(inner(d[1], d[2])), t);
    record(rep.identities[3], std::abs(inner(d[0], d[3])), t);
    record(rep.identities[4], std::abs(inner(d[2], d[2]) + inner(d[1], d[3])), t);
    record(rep.identities[5], std::abs(inner(d[2], d[2]) - inner(d[0], d[4])), t);
  }
  rep.passed = rep.worst_constraint() < tol;
  return rep;
}

CurveInvariants curve_invariants(const NullCurve& curve, double t0) {
  const JetVector1 a = eval_curve_jet(curve, t0, 4);
  PseudoVector a3(kE52), a4(kE52);
  for (int i = 0; i < 5; ++i) {
    a3[i] = a[i].derivative(3);
    a4[i] = a[i].derivative(4);
  }
  return {inner(a3, a3), 2.0 * inner(a4, a3), inner(a4, a4)};
}

}  // namespace pslab
