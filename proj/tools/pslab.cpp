// pslab: certificates for minimal Lorentzian surfaces in S^4_2(1).

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pslab/cli.hpp"

using namespace pslab;

namespace {

struct Options {
  std::optional<std::string> curve;
  std::optional<std::string> builtin;
  std::string grid = "20x20";
  std::optional<std::string> s_range;
  std::optional<std::string> t_range;
  double tol_geom = 1e-8;
  double tol_cong = 1e-8;
  double tol_curve = kDefaultCurveTolerance;
  int jet_order = 6;
  std::optional<std::string> out;
  std::string format;
  std::string projection = "3,4,5";
};

RunConfig make_config(const Options& o) {
  RunConfig c;
  std::tie(c.ns, c.nt) = parse_grid(o.grid);
  if (o.s_range) c.s_range = parse_range(*o.s_range);
  if (o.t_range) c.t_range = parse_range(*o.t_range);
  if (!(o.tol_geom > 0) || !(o.tol_cong > 0) || !(o.tol_curve > 0)) throw Error("tolerances must be positive");
  c.tol.geometry = o.tol_geom;
  c.tol.congruence = o.tol_cong;
  c.tol.curve = o.tol_curve;
  if (o.jet_order < 1 || o.jet_order > kMaxJet1Order) throw Error("--jet-order must lie in 1.." + std::to_string(kMaxJet1Order));
  c.jet_order = o.jet_order;
  c.projection = Projection::parse(o.projection);
  return c;
}

/// Writes to --out or stdout; an unwritable path is an input error.
void emit(const std::optional<std::string>& out, const std::string& text) {
  if (!out) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(*out, std::ios::binary);
  if (!f) throw Error("cannot open '" + *out + "' for writing");
  f << text;
  f.close();
  if (!f) throw Error("failed to write '" + *out + "'");
}

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--curve", o.curve, "curve spec file");
  cmd->add_option("--builtin", o.builtin, "builtin input")->check(CLI::IsMember(builtin_input_names()));
}

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--grid", o.grid, "grid size NSxNT")->capture_default_str();
  cmd->add_option("--s-range", o.s_range, "s sampling range A:B");
  cmd->add_option("--t-range", o.t_range, "t sampling range A:B");
  cmd->add_option("--tol-geom", o.tol_geom, "geometry tolerance")->capture_default_str();
  cmd->add_option("--tol-cong", o.tol_cong, "congruence tolerance")->capture_default_str();
  cmd->add_option("--tol-curve", o.tol_curve, "curve constraint tolerance")->capture_default_str();
  cmd->add_option("--jet-order", o.jet_order, "jet order for curve expansions")->capture_default_str();
  cmd->add_option("--out", o.out, "output path (default: stdout)");
}

int run_certificate(const Options& o, Certificate (*command)(const Input&, const RunConfig&)) {
  if (!o.format.empty() && o.format != "json") throw Error("certificates are written as json, not " + o.format);
  const RunConfig config = make_config(o);
  const Input input = load_input(o.curve, o.builtin);
  const Certificate cert = command(input, config);
  emit(o.out, certificate_json(cert, input, config));
  if (cert.exit_code != kExitPass) std::cerr << "pslab: " << cert.command << ": " << cert.verdict << "\n";
  return cert.exit_code;
}

int run_sample(const Options& o) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "obj") throw Error("sample writes csv or obj, not " + format);
  const RunConfig config = make_config(o);
  const Input input = load_input(o.curve, o.builtin);
  SurfaceSelection sel;
  try {
    sel = select_surface(input, config);
  } catch (const CurveValidationError& e) {
    std::cerr << "pslab: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  std::vector<SampleRow> rows;
  try {
    rows = sample_surface(sel.patch, sel.s_range, sel.t_range, config.ns, config.nt);
  } catch (const SingularPointError& e) {
    std::cerr << "pslab: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  emit(o.out, format == "csv" ? format_csv(rows) : format_obj(rows, config.ns, config.nt, config.projection, input.label));
  return kExitPass;
}

int run_selftest(const Options& o) {
  const RunConfig config = make_config(o);
  const auto criteria = run_acceptance(config);
  bool ok = true;
  std::string text;
  for (const auto& c : criteria) {
    text += format_criterion(c) + "\n";
    ok = ok && c.status != CheckStatus::fail;
  }
  emit(o.out, text);
  return ok ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for minimal Lorentzian surfaces in the pseudo-sphere S^4_2(1)", "pslab"};
  app.set_version_flag("--version", std::string(PSLAB_VERSION));
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate-curve", "check the generator constraints of a null curve");
  add_input_options(validate, o);
  add_run_options(validate, o);
  validate->add_option("--format", o.format, "json");

  auto* report = app.add_subcommand("report", "build the surface and certify its curvatures");
  add_input_options(report, o);
  add_run_options(report, o);
  report->add_option("--format", o.format, "json");

  auto* cong = app.add_subcommand("congruence", "test congruence with the Lorentzian Veronese surface");
  add_input_options(cong, o);
  add_run_options(cong, o);
  cong->add_option("--format", o.format, "json");

  auto* sample = app.add_subcommand("sample", "sample the surface as CSV or an OBJ mesh");
  add_input_options(sample, o);
  add_run_options(sample, o);
  sample->add_option("--format", o.format, "csv or obj")->check(CLI::IsMember({"csv", "obj"}));
  sample->add_option("--projection", o.projection, "OBJ projection: i,j,k or a 3x5 matrix")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite on the builtins");
  add_run_options(selftest, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*validate) return run_certificate(o, cmd_validate_curve);
    if (*report) return run_certificate(o, cmd_report);
    if (*cong) return run_certificate(o, cmd_congruence);
    if (*sample) return run_sample(o);
    if (*selftest) return run_selftest(o);
  } catch (const ParseError& e) {
    std::cerr << "pslab: parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "pslab: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
