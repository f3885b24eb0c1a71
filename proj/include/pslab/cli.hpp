#pragma once

// Command implementations behind the pslab tool: certificates, sampling and
// the acceptance self-test. Everything here is deterministic for fixed input.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pslab/classifier.hpp"

namespace pslab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kCertificateSchema = 1;
inline constexpr int kConnectionJetOrder = 6;

/// Linear map E^5_2 -> R^3 used for OBJ vertices.
struct Projection {
  std::array<std::array<double, 5>, 3> matrix{};
  std::string description;

  /// Coordinates are 1-based, e.g. {3, 4, 5}.
  static Projection coordinates(int i, int j, int k);
  /// "i,j,k" or fifteen comma-separated numbers (a 3x5 matrix, row-major).
  static Projection parse(std::string_view text);
  std::array<double, 3> apply(const PseudoVector& x) const;
};

struct Tolerances {
  double curve = kDefaultCurveTolerance;
  double geometry = 1e-8;
  double congruence = 1e-8;
  /// Gauss, Codazzi, Ricci and connection-form identities involve one more
  /// derivative than the curvatures and are held to this multiple of geometry.
  double identity_factor = 10.0;
};

struct RunConfig {
  int jet_order = 6;
  int ns = 20;
  int nt = 20;
  Tolerances tol;
  std::optional<Interval> s_range;  // default: [-3, 3] for built surfaces, the patch domain otherwise
  std::optional<Interval> t_range;  // default: default_t_range / the patch domain
  double margin = kDefaultMargin;
  Projection projection = Projection::coordinates(3, 4, 5);
};

/// "NSxNT", e.g. "20x20".
std::pair<int, int> parse_grid(std::string_view text);
/// "A:B" with constant expressions, e.g. "-pi/2:pi/2".
Interval parse_range(std::string_view text);

/// A curve (from a file or builtin) or the builtin Veronese patch.
struct Input {
  std::string label;
  std::string source;  // "builtin:NAME" or the file path
  std::optional<NullCurve> curve;
  std::optional<SurfacePatch> patch;
  /// Canonical text hashed into the certificate digest.
  std::string canonical;
};

inline constexpr std::string_view kVeroneseSurfaceBuiltin = "veronese-surface";
std::vector<std::string> builtin_input_names();
Input load_input(const std::optional<std::string>& file, const std::optional<std::string>& builtin);

std::uint64_t fnv1a64(std::string_view bytes);

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::optional<GridPoint> worst;
  /// Curve checks locate their worst sample by t alone.
  std::optional<double> worst_t;
  std::string note;
};

/// status from value < tolerance; NaN fails.
Check make_check(std::string name, double value, double tolerance, std::optional<GridPoint> worst = std::nullopt);

struct Certificate {
  std::string command;
  std::string verdict;
  std::vector<Check> checks;
  nlohmann::json details = nlohmann::json::object();
  int exit_code = kExitPass;
};

/// pass unless a check failed.
std::string verdict_of(const std::vector<Check>& checks);

/// Sorted keys, two-space indent, numbers with 17 significant digits,
/// non-finite numbers as null.
std::string dump_json(const nlohmann::json& j);
std::string certificate_json(const Certificate& cert, const Input& input, const RunConfig& config);

Certificate cmd_validate_curve(const Input& input, const RunConfig& config);
Certificate cmd_report(const Input& input, const RunConfig& config);
Certificate cmd_congruence(const Input& input, const RunConfig& config);

/// The surface and sampling window a command works on. Throws
/// CurveValidationError for invalid curves.
struct SurfaceSelection {
  SurfacePatch patch;
  Interval s_range;
  Interval t_range;
  std::optional<TheoremSurface> theorem;
};
SurfaceSelection select_surface(const Input& input, const RunConfig& config);

struct SampleRow {
  double s = 0.0;
  double t = 0.0;
  PseudoVector x;
  double K = 0.0;
  double Kd_abs = 0.0;
  double H_max_component = 0.0;
  double sphere_residual = 0.0;
};

/// Row-major in s, then t. Throws Error naming the first point that fails.
std::vector<SampleRow> sample_surface(const SurfacePatch& patch, Interval s_range, Interval t_range, int ns, int nt);
std::string format_csv(const std::vector<SampleRow>& rows);
std::vector<SampleRow> parse_csv(std::string_view text);
std::string format_obj(const std::vector<SampleRow>& rows, int ns, int nt, const Projection& projection,
                       const std::string& label);

struct Criterion {
  int id = 0;
  std::string name;
  CheckStatus status = CheckStatus::fail;
  std::string detail;
  double seconds = 0.0;
};

/// The eight acceptance criteria on the builtins.
std::vector<Criterion> run_acceptance(const RunConfig& config);
std::string format_criterion(const Criterion& c);

}  // namespace pslab
