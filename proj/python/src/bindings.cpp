#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pslab/cli.hpp"

namespace py = pybind11;
using namespace pslab;

namespace {

std::vector<double> to_list(const PseudoVector& v) {
  std::vector<double> out(static_cast<std::size_t>(v.dim()));
  for (int i = 0; i < v.dim(); ++i) out[static_cast<std::size_t>(i)] = v[i];
  return out;
}

py::tuple interval(const Interval& r) { return py::make_tuple(r.lo, r.hi); }

std::optional<Interval> to_interval(const std::optional<std::pair<double, double>>& r) {
  if (!r) return std::nullopt;
  return Interval{r->first, r->second};
}

py::dict residual_dict(const Residual& r) {
  py::dict d;
  d["max"] = r.max_value;
  d["worst_t"] = r.worst_t;
  return d;
}

py::dict validation_dict(const ValidationReport& v) {
  py::dict d;
  d["label"] = v.label;
  d["range"] = interval(v.range);
  d["samples"] = v.samples;
  d["tolerance"] = v.tolerance;
  d["passed"] = v.passed;
  py::dict constraints, identities;
  for (const auto& r : v.constraints) constraints[py::str(r.name)] = residual_dict(r);
  for (const auto& r : v.identities) identities[py::str(r.name)] = residual_dict(r);
  d["constraints"] = constraints;
  d["identities"] = identities;
  return d;
}

py::list failures_list(const std::vector<FailedPoint>& fs) {
  py::list out;
  for (const auto& f : fs) out.append(py::make_tuple(f.s, f.t, f.reason));
  return out;
}

py::dict curvature_dict(const CurvatureReport& r) {
  py::dict d;
  d["s"] = r.s;
  d["t"] = r.t;
  d["x"] = to_list(r.x);
  d["K"] = r.K;
  d["K_extrinsic"] = r.K_extrinsic;
  d["K_normal"] = r.K_normal;
  d["mean_curvature"] = to_list(r.mean_curvature);
  d["H_max_component"] = r.H_max_component;
  d["sphere_residual"] = r.sphere_residual;
  d["metric_form_residual"] = r.metric_form_residual;
  d["gauss_residual"] = r.gauss_residual;
  d["codazzi_residual"] = r.codazzi_residual;
  d["ricci_residual"] = r.ricci_residual;
  return d;
}

py::dict summary_dict(const ClassificationSummary& s) {
  py::dict d;
  d["evaluated"] = s.points.size();
  d["singular"] = failures_list(s.singular);
  d["tolerance"] = s.tolerance;
  d["max_H"] = s.max_H;
  d["max_K_deviation"] = s.max_K_deviation;
  d["max_KD_deviation"] = s.max_KD_deviation;
  d["max_sphere"] = s.max_sphere;
  d["max_gauss"] = s.max_gauss;
  d["max_codazzi"] = s.max_codazzi;
  d["max_ricci"] = s.max_ricci;
  d["K_stddev"] = s.K_stddev;
  d["KD_stddev"] = s.KD_stddev;
  d["minimal"] = s.minimal;
  d["constant_K"] = s.constant_K;
  d["constant_KD"] = s.constant_KD;
  d["passed"] = s.passed();
  return d;
}

py::dict congruence_dict(const CongruenceCertificate& c) {
  py::dict d;
  d["verdict"] = to_string(c.verdict);
  d["max_abs_c"] = c.max_abs_c;
  d["worst"] = py::make_tuple(c.worst.s, c.worst.t);
  d["max_c4_deviation"] = c.max_c4_deviation;
  d["grid"] = py::make_tuple(c.ns, c.nt);
  d["s_range"] = interval(c.s_range);
  d["t_range"] = interval(c.t_range);
  d["tolerance"] = c.tolerance;
  d["evaluated"] = c.evaluated;
  d["failures"] = failures_list(c.failures);
  return d;
}

RunConfig make_config(int ns, int nt, double tol_geom, double tol_cong, double tol_curve, int jet_order,
                      const std::optional<std::pair<double, double>>& s_range,
                      const std::optional<std::pair<double, double>>& t_range) {
  RunConfig c;
  c.ns = ns;
  c.nt = nt;
  c.tol.geometry = tol_geom;
  c.tol.congruence = tol_cong;
  c.tol.curve = tol_curve;
  c.jet_order = jet_order;
  c.s_range = to_interval(s_range);
  c.t_range = to_interval(t_range);
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimal Lorentzian surfaces in the pseudo-sphere S^4_2(1)";
  m.attr("__version__") = PSLAB_VERSION;

  auto error = py::register_exception<Error>(m, "PslabError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<SingularPointError>(m, "SingularPointError", error.ptr());
  py::register_exception<CurveValidationError>(m, "CurveValidationError", error.ptr());

  py::class_<NullCurve>(m, "Curve")
      .def_static("parse", &parse_curve_spec, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_curve_spec(path); }, py::arg("path"))
      .def_static("builtin", &builtin_curve, py::arg("name"))
      .def_readonly("label", &NullCurve::label)
      .def_property_readonly("domain", [](const NullCurve& c) { return interval(c.domain); })
      .def("to_spec", [](const NullCurve& c) { return to_spec(c); })
      .def("__call__", [](const NullCurve& c, double t) { return to_list(eval_curve(c, t)); }, py::arg("t"))
      .def(
          "derivatives",
          [](const NullCurve& c, double t, int order) {
            const JetVector1 j = eval_curve_jet(c, t, order);
            std::vector<std::vector<double>> out(static_cast<std::size_t>(order + 1), std::vector<double>(5));
            for (int k = 0; k <= order; ++k)
              for (int i = 0; i < 5; ++i) out[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = j[i].derivative(k);
            return out;
          },
          py::arg("t"), py::arg("order"), "[x, x', x'', ...] at t")
      .def(
          "invariants",
          [](const NullCurve& c, double t) {
            const auto inv = curve_invariants(c, t);
            py::dict d;
            d["eta"] = inv.eta;
            d["eta_prime"] = inv.eta_prime;
            d["xi"] = inv.xi;
            return d;
          },
          py::arg("t"))
      .def(
          "validate",
          [](const NullCurve& c, int samples, double tol, std::optional<std::pair<double, double>> range) {
            return validation_dict(validate_theorem_curve(c, samples, tol, to_interval(range)));
          },
          py::arg("samples") = 400, py::arg("tol") = kDefaultCurveTolerance, py::arg("range") = py::none());

  m.def("builtin_curve_names", &builtin_curve_names);

  py::class_<SurfacePatch>(m, "Surface")
      .def_readonly("label", &SurfacePatch::label)
      .def_property_readonly("s_domain", [](const SurfacePatch& p) { return interval(p.s_domain); })
      .def_property_readonly("t_domain", [](const SurfacePatch& p) { return interval(p.t_domain); })
      .def("__call__", [](const SurfacePatch& p, double s, double t) { return to_list(value_of(p.evaluator(s, t, 0))); },
           py::arg("s"), py::arg("t"))
      .def(
          "metric",
          [](const SurfacePatch& p, double s, double t) {
            const auto g = induced_metric(p, s, t);
            return py::make_tuple(g.gss, g.gst, g.gtt);
          },
          py::arg("s"), py::arg("t"), "(g_ss, g_st, g_tt)")
      .def("curvature", [](const SurfacePatch& p, double s, double t) { return curvature_dict(curvature_report(p, s, t)); },
           py::arg("s"), py::arg("t"))
      .def(
          "classify",
          [](const SurfacePatch& p, int ns, int nt, double tol, std::pair<double, double> s_range,
             std::pair<double, double> t_range) {
            return summary_dict(classification_report(p, ns, nt, tol, *to_interval(s_range), *to_interval(t_range)));
          },
          py::arg("ns"), py::arg("nt"), py::arg("tol"), py::arg("s_range"), py::arg("t_range"));

  m.def("veronese_surface", &veronese_patch);
  m.def("product_surface", &product_patch, py::arg("r1"));

  py::class_<TheoremSurface>(m, "TheoremSurface")
      .def(py::init([](const NullCurve& c, std::pair<double, double> s_range,
                       std::optional<std::pair<double, double>> t_range, double tol) {
             return build_theorem_surface(c, *to_interval(s_range), to_interval(t_range), tol);
           }),
           py::arg("curve"), py::arg("s_range") = std::pair{kDefaultSRange.lo, kDefaultSRange.hi},
           py::arg("t_range") = py::none(), py::arg("tol") = kDefaultCurveTolerance)
      .def_readonly("generator", &TheoremSurface::generator)
      .def_readonly("surface", &TheoremSurface::patch)
      .def_property_readonly("s_range", [](const TheoremSurface& ts) { return interval(ts.s_range); })
      .def_property_readonly("t_range", [](const TheoremSurface& ts) { return interval(ts.t_range); })
      .def_property_readonly("validation", [](const TheoremSurface& ts) { return validation_dict(ts.validation); })
      .def(
          "congruence_coefficient",
          [](const TheoremSurface& ts, double s, double t) {
            const auto c = congruence_coefficient(ts, s, t);
            return py::make_tuple(c.c, c.c4);
          },
          py::arg("s"), py::arg("t"), "(c, c4): f3 and f4 coefficients of h(f2, f2) in the canonical frame")
      .def(
          "congruence_test",
          [](const TheoremSurface& ts, int ns, int nt, double tol) {
            return congruence_dict(veronese_congruence_test(ts, ns, nt, tol));
          },
          py::arg("ns") = 20, py::arg("nt") = 20, py::arg("tol") = 1e-8)
      .def(
          "classify",
          [](const TheoremSurface& ts, int ns, int nt, double tol) {
            return summary_dict(classification_report(ts.patch, ns, nt, tol, ts.s_range, ts.t_range));
          },
          py::arg("ns") = 20, py::arg("nt") = 20, py::arg("tol") = 1e-8);

  m.def(
      "certificate",
      [](const std::string& command, std::optional<std::string> curve, std::optional<std::string> builtin, int ns,
         int nt, double tol_geom, double tol_cong, double tol_curve, int jet_order,
         std::optional<std::pair<double, double>> s_range, std::optional<std::pair<double, double>> t_range) {
        const RunConfig config = make_config(ns, nt, tol_geom, tol_cong, tol_curve, jet_order, s_range, t_range);
        const Input input = load_input(curve, builtin);
        Certificate cert;
        if (command == "validate-curve") cert = cmd_validate_curve(input, config);
        else if (command == "report") cert = cmd_report(input, config);
        else if (command == "congruence") cert = cmd_congruence(input, config);
        else throw Error("unknown command '" + command + "'");
        return py::make_tuple(certificate_json(cert, input, config), cert.exit_code);
      },
      py::arg("command"), py::kw_only(), py::arg("curve") = py::none(), py::arg("builtin") = py::none(),
      py::arg("ns") = 20, py::arg("nt") = 20, py::arg("tol_geom") = 1e-8, py::arg("tol_cong") = 1e-8,
      py::arg("tol_curve") = kDefaultCurveTolerance, py::arg("jet_order") = 6, py::arg("s_range") = py::none(),
      py::arg("t_range") = py::none(), "(json text, exit code) of a certificate command");

  m.def(
      "acceptance",
      []() {
        py::list out;
        for (const auto& c : run_acceptance(RunConfig{})) {
          py::dict d;
          d["id"] = c.id;
          d["name"] = c.name;
          d["status"] = to_string(c.status);
          d["detail"] = c.detail;
          d["line"] = format_criterion(c);
          out.append(d);
        }
        return out;
      },
      "the eight acceptance criteria with default settings");
}
