#pragma once

// Null generating curves alpha: I -> E^5_2 and their validation against
// <alpha,alpha> = <alpha',alpha'> = 0, <alpha'',alpha''> = 4/9.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pslab/expr.hpp"
#include "pslab/indefinite.hpp"

namespace pslab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x > lo && x < hi; }
  /// Uniform grid of n points from lo to hi inclusive.
  std::vector<double> grid(int n) const;
  /// The interval shrunk by fraction * width at both ends.
  Interval shrunk(double fraction) const { return {lo + fraction * width(), hi - fraction * width()}; }
};

struct NullCurve {
  std::array<ExprPtr, 5> components;
  Interval domain;
  std::string label;
  /// Recommended t-range for building and sampling surfaces, when the
  /// domain is unbounded in practice or the curve degenerates near its ends.
  std::optional<Interval> surface_range;
};

/// Parses the curve spec format ("c1: expr" .. "c5: expr", "domain: a b",
/// optional "label: text", '#' comments). Throws ParseError with line and
/// position.
NullCurve parse_curve_spec(std::string_view text);
NullCurve load_curve_spec(const std::filesystem::path& path);
/// Inverse of parse_curve_spec.
std::string to_spec(const NullCurve& curve);

std::vector<std::string> builtin_curve_names();
bool is_builtin_curve(std::string_view name);
/// "veronese-generator" or "alpha0". Throws Error on unknown names.
NullCurve builtin_curve(std::string_view name);

inline constexpr int kDefaultCurveJetOrder = 6;

/// Jets of alpha at t0. DomainError messages name the component and t0.
JetVector1 eval_curve_jet(const NullCurve& curve, double t0, int order);
PseudoVector eval_curve(const NullCurve& curve, double t0);
/// Scalar handle on one component, for finite-difference cross checks.
ScalarFunction component_function(const NullCurve& curve, int index);

struct Residual {
  std::string name;
  double max_value = 0.0;
  double worst_t = 0.0;
};

struct ValidationReport {
  std::string label;
  Interval range;
  int samples = 0;
  double tolerance = 0.0;
  /// light_cone, null_tangent, acceleration (|<a'',a''> - 4/9|).
  std::array<Residual, 3> constraints;
  /// <a,a'>, <a,a''>, <a',a''>, <a,a'''>, <a'',a''> + <a',a'''>, <a'',a''> - <a,a''''>.
  std::array<Residual, 6> identities;
  bool passed = false;

  double worst_constraint() const;
  double worst_identity() const;
};

inline constexpr double kDefaultCurveTolerance = 1e-9;
inline constexpr double kDefaultMargin = 0.01;

/// Evaluates the constraints on a uniform grid over range (or the domain)
/// after removing margin * width at both ends. Throws if samples < 2; an
/// evaluation failure is rethrown naming the offending t.
ValidationReport validate_theorem_curve(const NullCurve& curve, int samples, double tol,
                                        std::optional<Interval> range = std::nullopt,
                                        double margin = kDefaultMargin);

struct CurveInvariants {
  double eta = 0.0;
  double eta_prime = 0.0;
  double xi = 0.0;
};

CurveInvariants curve_invariants(const NullCurve& curve, double t0);

}  // namespace pslab
