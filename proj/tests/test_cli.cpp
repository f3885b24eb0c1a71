#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pslab/cli.hpp"

using namespace pslab;
using nlohmann::json;

namespace {

const std::string kCurves = PSLAB_CURVES_DIR;

std::string curve_path(const std::string& name) { return kCurves + "/" + name + ".curve"; }

RunConfig small_config(int n = 10) {
  RunConfig c;
  c.ns = n;
  c.nt = n;
  return c;
}

json cert_json(const Certificate& cert, const Input& in, const RunConfig& config) {
  return json::parse(certificate_json(cert, in, config));
}

bool has_check(const Certificate& cert, const std::string& name) {
  return std::any_of(cert.checks.begin(), cert.checks.end(), [&](const Check& c) { return c.name == name; });
}

const Check& find_check(const Certificate& cert, const std::string& name) {
  for (const auto& c : cert.checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  return cert.checks.front();
}

#ifdef PSLAB_TOOL_PATH
int run_tool(const std::string& args) {
  const std::string cmd = std::string("\"") + PSLAB_TOOL_PATH + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}
#endif

}  // namespace

TEST_CASE("grid and range arguments") {
  CHECK(parse_grid("20x20") == std::pair{20, 20});
  CHECK(parse_grid("5x7") == std::pair{5, 7});
  for (const char* bad : {"20", "x20", "20x", "3y3", "0x5", "-2x4", "2.5x3", "20x20x20", ""})
    CHECK_THROWS_AS(parse_grid(bad), Error);

  const Interval r = parse_range("-pi/2:pi/2");
  CHECK(r.lo == doctest::Approx(-std::numbers::pi / 2).epsilon(1e-15));
  CHECK(r.hi == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(parse_range("0:1.2").hi == 1.2);
  CHECK_THROWS_AS(parse_range("1:0"), Error);
  CHECK_THROWS_AS(parse_range("0:0"), Error);
  CHECK_THROWS_AS(parse_range("0"), Error);
  CHECK_THROWS_AS(parse_range("0:t"), Error);
  CHECK_THROWS_AS(parse_range("0:1/0"), Error);
}

TEST_CASE("projection") {
  const PseudoVector x(kE52, {1, 2, 3, 4, 5});
  const auto p = Projection::coordinates(3, 4, 5).apply(x);
  CHECK(p == std::array<double, 3>{3, 4, 5});
  CHECK(Projection::parse("1,5,2").apply(x) == std::array<double, 3>{1, 5, 2});
  const auto m = Projection::parse("1,1,0,0,0, 0,0,1,0,0, 0,0,0,0,-1").apply(x);
  CHECK(m == std::array<double, 3>{3, 3, -5});
  CHECK_THROWS_AS(Projection::parse("0,1,2"), Error);
  CHECK_THROWS_AS(Projection::parse("1,2,6"), Error);
  CHECK_THROWS_AS(Projection::parse("1,2"), Error);
  CHECK_THROWS_AS(Projection::parse("1,2,x"), Error);
  CHECK_THROWS_AS(Projection::parse("1.5,2,3"), Error);
}

TEST_CASE("input loading") {
  CHECK_THROWS_AS(load_input(std::nullopt, std::nullopt), Error);
  CHECK_THROWS_AS(load_input(std::string("a"), std::string("alpha0")), Error);
  CHECK_THROWS_AS(load_input(std::nullopt, std::string("no-such-curve")), Error);
  CHECK_THROWS_AS(load_input(kCurves + "/missing.curve", std::nullopt), Error);

  const Input v = load_input(std::nullopt, std::string(kVeroneseSurfaceBuiltin));
  CHECK(v.patch.has_value());
  CHECK_FALSE(v.curve.has_value());
  CHECK(v.canonical == "builtin:veronese-surface");

  const Input c = load_input(curve_path("circle"), std::nullopt);
  REQUIRE(c.curve.has_value());
  CHECK(c.source == curve_path("circle"));
  CHECK_FALSE(c.canonical.empty());

  const auto names = builtin_input_names();
  CHECK(std::find(names.begin(), names.end(), "alpha0") != names.end());
  CHECK(std::find(names.begin(), names.end(), "veronese-generator") != names.end());
  CHECK(std::find(names.begin(), names.end(), "veronese-surface") != names.end());

  // A parse error names its line.
  const auto tmp = std::filesystem::temp_directory_path() / "pslab_bad.curve";
  {
    std::ofstream f(tmp);
    f << "label: bad\nx1: cos(t\n";
  }
  CHECK_THROWS_AS(load_input(tmp.string(), std::nullopt), ParseError);
  std::filesystem::remove(tmp);
}

TEST_CASE("fnv1a64 test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("json output format") {
  json j;
  j["zeta"] = 1;
  j["alpha"] = {{"b", 0.1}, {"a", std::numeric_limits<double>::quiet_NaN()}};
  j["mid"] = std::numeric_limits<double>::infinity();
  const std::string s = dump_json(j);
  CHECK(s.find("\"alpha\"") < s.find("\"mid\""));
  CHECK(s.find("\"mid\"") < s.find("\"zeta\""));
  CHECK(s.find("\"a\": null") != std::string::npos);
  CHECK(s.find("\"mid\": null") != std::string::npos);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\n  \"alpha\"") != std::string::npos);
  CHECK(json::parse(s)["alpha"]["b"].get<double>() == 0.1);
}

TEST_CASE("checks and verdicts") {
  CHECK(make_check("a", 1e-9, 1e-8).status == CheckStatus::pass);
  CHECK(make_check("a", 1e-8, 1e-8).status == CheckStatus::fail);
  CHECK(make_check("a", std::nan(""), 1e-8).status == CheckStatus::fail);
  std::vector<Check> cs{make_check("a", 0, 1), Check{"b", CheckStatus::skipped}};
  CHECK(verdict_of(cs) == "pass");
  cs.push_back(make_check("c", 2, 1));
  CHECK(verdict_of(cs) == "fail");
}

TEST_CASE("validate-curve certificates") {
  const RunConfig config = small_config();
  SUBCASE("builtin generator") {
    const Input in = load_input(std::nullopt, std::string("veronese-generator"));
    const Certificate cert = cmd_validate_curve(in, config);
    CHECK(cert.exit_code == kExitPass);
    CHECK(cert.verdict == "pass");
    for (const char* name : {"light_cone", "null_tangent", "acceleration"}) {
      CHECK(find_check(cert, name).status == CheckStatus::pass);
      CHECK(find_check(cert, name).max_residual < 1e-10);
    }
    const json j = cert_json(cert, in, config);
    CHECK(j["schema"] == kCertificateSchema);
    CHECK(j["tool"]["name"] == "pslab");
    CHECK(j["command"] == "validate-curve");
    CHECK(j["details"]["samples"] == 100);
    CHECK(j["checks"][0]["worst_point"].contains("t"));
    const std::string digest = j["input"]["digest"];
    CHECK(digest.rfind("fnv1a64:", 0) == 0);
    CHECK(digest.size() == 8 + 16);
  }
  SUBCASE("alpha0 file") {
    const Input in = load_input(curve_path("alpha0"), std::nullopt);
    CHECK(cmd_validate_curve(in, config).exit_code == kExitPass);
  }
  SUBCASE("off the light cone") {
    const Input in = load_input(curve_path("off-cone"), std::nullopt);
    const Certificate cert = cmd_validate_curve(in, config);
    CHECK(cert.exit_code == kExitCheckFailed);
    CHECK(cert.verdict == "fail");
    CHECK(find_check(cert, "light_cone").status == CheckStatus::fail);
  }
  SUBCASE("surface input is rejected") {
    const Input in = load_input(std::nullopt, std::string(kVeroneseSurfaceBuiltin));
    CHECK_THROWS_AS(cmd_validate_curve(in, config), Error);
  }
}

TEST_CASE("certificates are byte-identical across runs and thread counts") {
  const Input in = load_input(std::nullopt, std::string("alpha0"));
  const RunConfig config = small_config(8);
  const std::string a = certificate_json(cmd_report(in, config), in, config);
  ::setenv("PSLAB_THREADS", "1", 1);
  const std::string b = certificate_json(cmd_report(in, config), in, config);
  ::setenv("PSLAB_THREADS", "5", 1);
  const std::string c = certificate_json(cmd_report(in, config), in, config);
  ::unsetenv("PSLAB_THREADS");
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("report certificates") {
  const RunConfig config = small_config();
  SUBCASE("generator surface") {
    const Input in = load_input(std::nullopt, std::string("veronese-generator"));
    const Certificate cert = cmd_report(in, config);
    CHECK(cert.exit_code == kExitPass);
    for (const auto& c : cert.checks) CHECK_MESSAGE(c.status != CheckStatus::fail, c.name);
    CHECK(find_check(cert, "canonical_frame_gram").status == CheckStatus::pass);
    CHECK(find_check(cert, "connection_forms").status == CheckStatus::pass);
    CHECK_FALSE(has_check(cert, "signed_normal_curvature"));
    CHECK(cert.details["K"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(std::abs(cert.details["K_normal"].get<double>()) == doctest::Approx(2.0 / 3).epsilon(1e-9));
  }
  SUBCASE("builtin Veronese patch") {
    const Input in = load_input(std::nullopt, std::string(kVeroneseSurfaceBuiltin));
    const Certificate cert = cmd_report(in, config);
    CHECK(cert.exit_code == kExitPass);
    CHECK(find_check(cert, "signed_normal_curvature").status == CheckStatus::pass);
    CHECK(find_check(cert, "metric_form").status == CheckStatus::pass);
    CHECK_FALSE(has_check(cert, "canonical_frame_gram"));
  }
  SUBCASE("alpha0") {
    const Input in = load_input(std::nullopt, std::string("alpha0"));
    const Certificate cert = cmd_report(in, config);
    CHECK(cert.exit_code == kExitPass);
    CHECK(find_check(cert, "minimality").max_residual < 1e-8);
  }
  SUBCASE("low jet order skips connection checks") {
    RunConfig low = config;
    low.jet_order = 4;
    const Input in = load_input(std::nullopt, std::string("veronese-generator"));
    const Certificate cert = cmd_report(in, low);
    CHECK(find_check(cert, "connection_forms").status == CheckStatus::skipped);
    CHECK(find_check(cert, "connection_relations").status == CheckStatus::skipped);
    CHECK(cert.exit_code == kExitPass);
  }
  SUBCASE("rejected curve") {
    const Input in = load_input(curve_path("off-cone"), std::nullopt);
    const Certificate cert = cmd_report(in, config);
    CHECK(cert.exit_code == kExitCheckFailed);
    CHECK(cert.verdict == "fail");
    CHECK(cert.details.contains("rejected"));
  }
  SUBCASE("tight tolerance fails") {
    RunConfig tight = config;
    tight.tol.geometry = 1e-18;
    const Input in = load_input(std::nullopt, std::string("alpha0"));
    CHECK(cmd_report(in, tight).exit_code == kExitCheckFailed);
  }
}

TEST_CASE("congruence certificates") {
  RunConfig config = small_config();
  SUBCASE("generator is congruent") {
    const Input in = load_input(std::nullopt, std::string("veronese-generator"));
    const Certificate cert = cmd_congruence(in, config);
    CHECK(cert.verdict == "veronese-congruent");
    CHECK(cert.exit_code == kExitPass);
    CHECK(find_check(cert, "congruence_coefficient").max_residual < 1e-8);
    CHECK(find_check(cert, "f4_coefficient").status == CheckStatus::pass);
  }
  SUBCASE("alpha0 is not congruent") {
    const Input in = load_input(std::nullopt, std::string("alpha0"));
    const Certificate cert = cmd_congruence(in, config);
    CHECK(cert.verdict == "not-congruent");
    CHECK(cert.exit_code == kExitCheckFailed);
    const json& d = cert.details["congruence"];
    const double t = d["worst_point"]["t"];
    const double sn = std::sin(t), cs = std::cos(t);
    const double closed = (21.0 / 800.0) * (-180 * std::cos(2 * t) + 45 * std::cos(4 * t) - 121) / std::pow(sn * cs, 4);
    CHECK(d["max_abs_c"].get<double>() == doctest::Approx(std::abs(closed)).epsilon(1e-6));
  }
  SUBCASE("degenerate window is inconclusive") {
    config.ns = config.nt = 5;
    config.t_range = Interval{0.0, 1.2};
    const Input in = load_input(std::nullopt, std::string("alpha0"));
    const Certificate cert = cmd_congruence(in, config);
    CHECK(cert.verdict == "inconclusive");
    CHECK(cert.exit_code == kExitCheckFailed);
    CHECK(find_check(cert, "congruence_coefficient").note.find("inconclusive") == 0);
    CHECK(cert.details["congruence"]["failed_points"].size() == 5);
  }
  SUBCASE("surface input is rejected") {
    const Input in = load_input(std::nullopt, std::string(kVeroneseSurfaceBuiltin));
    CHECK_THROWS_AS(cmd_congruence(in, config), Error);
  }
}

TEST_CASE("csv export round-trips bit-exactly") {
  const Input in = load_input(std::nullopt, std::string(kVeroneseSurfaceBuiltin));
  RunConfig config;
  const SurfaceSelection sel = select_surface(in, config);
  const auto rows = sample_surface(sel.patch, sel.s_range, sel.t_range, config.ns, config.nt);
  REQUIRE(rows.size() == 400);
  for (const auto& r : rows) {
    CHECK(r.sphere_residual < 1e-10);
    CHECK(r.K == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(r.Kd_abs == doctest::Approx(2.0 / 3).epsilon(1e-9));
  }
  const std::string text = format_csv(rows);
  CHECK(text.rfind("s,t,x1,x2,x3,x4,x5,K,Kd_abs,H_max_component,sphere_residual\n", 0) == 0);
  const auto back = parse_csv(text);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].s == rows[i].s);
    CHECK(back[i].t == rows[i].t);
    for (int k = 0; k < 5; ++k) CHECK(back[i].x[k] == rows[i].x[k]);
    CHECK(back[i].K == rows[i].K);
    CHECK(back[i].sphere_residual == rows[i].sphere_residual);
  }
  CHECK(format_csv(back) == text);
  CHECK_THROWS_AS(parse_csv("s,t\n1,2\n"), ParseError);
  CHECK_THROWS_AS(sample_surface(sel.patch, sel.s_range, sel.t_range, 1, 5), Error);
}

TEST_CASE("obj export") {
  const Input in = load_input(std::nullopt, std::string("veronese-generator"));
  RunConfig config;
  const SurfaceSelection sel = select_surface(in, config);
  const auto rows = sample_surface(sel.patch, sel.s_range, sel.t_range, config.ns, config.nt);
  const std::string obj = format_obj(rows, config.ns, config.nt, config.projection, in.label);
  std::istringstream is(obj);
  std::string line;
  int v = 0, f = 0, max_index = 0;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) {
      ++f;
      std::istringstream ls(line.substr(2));
      int a, b, c;
      ls >> a >> b >> c;
      max_index = std::max({max_index, a, b, c});
      CHECK(std::min({a, b, c}) >= 1);
    }
  }
  CHECK(v == 400);
  CHECK(f == 2 * 19 * 19);
  CHECK(max_index == 400);
  CHECK_THROWS_AS(format_obj(rows, 10, 10, config.projection, in.label), Error);
}

TEST_CASE("sampling a singular window throws") {
  const Input in = load_input(std::nullopt, std::string("alpha0"));
  RunConfig config = small_config(5);
  config.t_range = Interval{0.0, 1.2};
  const SurfaceSelection sel = select_surface(in, config);
  CHECK_THROWS_AS(sample_surface(sel.patch, sel.s_range, sel.t_range, 5, 5), SingularPointError);
  const Input bad = load_input(curve_path("off-cone"), std::nullopt);
  CHECK_THROWS_AS(select_surface(bad, config), CurveValidationError);
}

TEST_CASE("acceptance runner") {
  const auto ok = run_acceptance(RunConfig{});
  REQUIRE(ok.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(ok[i].id == i + 1);
    CHECK_MESSAGE(ok[i].status == CheckStatus::pass, format_criterion(ok[i]));
  }
  CHECK(format_criterion(ok[0]).rfind("PASS [1] ", 0) == 0);

  RunConfig tight;
  tight.tol.geometry = 1e-15;
  tight.tol.congruence = 1e-15;
  const auto bad = run_acceptance(tight);
  CHECK(std::any_of(bad.begin(), bad.end(), [](const Criterion& c) { return c.status == CheckStatus::fail; }));

  RunConfig low;
  low.jet_order = 4;
  const auto skipped = run_acceptance(low);
  CHECK(skipped[4].status == CheckStatus::skipped);
  CHECK(format_criterion(skipped[4]).rfind("SKIP", 0) == 0);
}

#ifdef PSLAB_TOOL_PATH
TEST_CASE("tool exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "pslab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "out").string();
  const std::string circle = "--curve \"" + curve_path("circle") + "\"";
  const std::string offcone = "--curve \"" + curve_path("off-cone") + "\"";

  CHECK(run_tool("--help") == 0);
  CHECK(run_tool("") == 1);
  CHECK(run_tool("frobnicate") == 1);
  CHECK(run_tool("validate-curve " + circle + " --grid 5x5") == 0);
  CHECK(run_tool("validate-curve " + offcone) == 2);
  CHECK(run_tool("validate-curve --builtin nope") == 1);
  CHECK(run_tool("validate-curve " + circle + " --builtin alpha0") == 1);
  CHECK(run_tool("report --builtin alpha0 --grid 3y3") == 1);
  CHECK(run_tool("report --builtin alpha0 --jet-order 0") == 1);
  CHECK(run_tool("report --builtin alpha0 --tol-geom -1") == 1);
  CHECK(run_tool("report --builtin veronese-generator --grid 5x5") == 0);
  CHECK(run_tool("congruence --builtin veronese-generator --grid 5x5") == 0);
  CHECK(run_tool("congruence --builtin alpha0 --grid 5x5") == 2);
  CHECK(run_tool("sample --builtin veronese-surface --out /nonexistent-dir/x.csv") == 1);

  std::filesystem::remove(out);
  CHECK(run_tool("sample " + offcone + " --out \"" + out + "\"") == 2);
  CHECK_FALSE(std::filesystem::exists(out));
  CHECK(run_tool("sample --builtin alpha0 --t-range 0:1.2 --grid 5x5 --out \"" + out + "\"") == 2);
  CHECK_FALSE(std::filesystem::exists(out));

  CHECK(run_tool("sample --builtin veronese-generator --format obj --out \"" + out + "\"") == 0);
  CHECK(std::filesystem::exists(out));
  std::filesystem::remove_all(dir);
}
#endif
