#pragma once

// Minimal Lorentzian surfaces x(s,t) = (s^2/2 + 27 eta/40) alpha + (3/2) s alpha'
// + (3/2) alpha'' built from null curves in the light cone, their canonical
// frame, and the congruence test against the Lorentzian Veronese surface.

#include <optional>
#include <string>
#include <vector>

#include "pslab/curve.hpp"
#include "pslab/surface.hpp"

namespace pslab {

/// Thrown when a curve fails validation; carries the report.
class CurveValidationError : public Error {
 public:
  explicit CurveValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

inline constexpr Interval kDefaultSRange{-3.0, 3.0};

struct TheoremSurface {
  NullCurve generator;
  SurfacePatch patch;
  Interval s_range;
  Interval t_range;
  ValidationReport validation;
};

/// x(s, t) as bi-jets of the given order at (s, t).
JetVector2 theorem_surface_jet(const NullCurve& curve, double s, double t, int order);

/// The t-range used for a curve when none is given: its recommended surface
/// range, else its domain minus the default margins.
Interval default_t_range(const NullCurve& curve);

/// Validates the curve on default_t_range (101 samples) and realizes the
/// patch over s_range x t_range; t_range defaults to default_t_range and may
/// reach the domain ends. Throws CurveValidationError if the constraints fail.
TheoremSurface build_theorem_surface(const NullCurve& curve, Interval s_range = kDefaultSRange,
                                     std::optional<Interval> t_range = std::nullopt,
                                     double curve_tol = kDefaultCurveTolerance);

/// f~1 = x_s, f~2 = m~ x_s + x_t, f3 = alpha, f4 from alpha..alpha'''', eta, eta', xi.
FrameField canonical_frame_field(const NullCurve& curve);

struct CanonicalFrame {
  Frame4<double> f;
  double gram_residual = 0.0;
  /// max_A |<f_A, x>|
  double position_residual = 0.0;
};

CanonicalFrame canonical_frame(const TheoremSurface& ts, double s, double t);

struct CongruenceCoefficient {
  double c = 0.0;   // f3-coefficient of h(f~2, f~2)
  double c4 = 0.0;  // f4-coefficient, -2/3 on every Theorem surface
};

CongruenceCoefficient congruence_coefficient(const TheoremSurface& ts, double s, double t);

enum class Verdict { veronese_congruent, not_congruent, inconclusive };
std::string to_string(Verdict v);

struct GridPoint {
  double s = 0.0;
  double t = 0.0;
};

struct FailedPoint {
  double s = 0.0;
  double t = 0.0;
  std::string reason;
};

inline constexpr int kMinCongruencePoints = 25;
inline constexpr double kMaxFailedFraction = 0.10;

struct CongruenceCertificate {
  Verdict verdict = Verdict::inconclusive;
  double max_abs_c = 0.0;
  GridPoint worst;
  double max_c4_deviation = 0.0;  // max |c4 + 2/3|
  int ns = 0;
  int nt = 0;
  Interval s_range;
  Interval t_range;
  double tolerance = 0.0;
  int evaluated = 0;
  std::vector<FailedPoint> failures;
};

/// Throws Error if the grid is smaller than 5x5.
CongruenceCertificate veronese_congruence_test(const TheoremSurface& ts, int ns, int nt, double tol);

/// The Lorentzian Veronese surface with coordinates reordered so the two
/// timelike ones come first; carries its orthonormal frame
/// e1 = d_u, e2 = sech(u/sqrt3) d_v, e3 = sqrt3 h(e1,e1), e4 = sqrt3 h(e1,e2).
SurfacePatch veronese_patch();

struct ClassificationSummary {
  std::vector<CurvatureReport> points;
  std::vector<FailedPoint> singular;
  double tolerance = 0.0;
  double max_H = 0.0;
  double max_K_deviation = 0.0;   // |K - 1/3|
  double max_KD_deviation = 0.0;  // ||K^D| - 2/3|
  double max_sphere = 0.0;
  double max_metric_form = 0.0;
  double max_K_routes = 0.0;
  double max_gauss = 0.0;
  double max_codazzi = 0.0;
  double max_ricci = 0.0;
  double K_stddev = 0.0;
  double KD_stddev = 0.0;
  bool minimal = false;
  bool constant_K = false;
  bool constant_KD = false;
  /// Points violating minimality, K = 1/3 or |K^D| = 2/3.
  std::vector<GridPoint> offending;

  bool passed() const { return minimal && constant_K && constant_KD && !points.empty(); }
};

/// Curvature reports on an ns x nt grid over the ranges; singular points are
/// excluded and listed.
ClassificationSummary classification_report(const SurfacePatch& patch, int ns, int nt, double tol,
                                            Interval s_range, Interval t_range);

std::vector<GridPoint> grid_points(Interval s_range, Interval t_range, int ns, int nt);

}  // namespace pslab
