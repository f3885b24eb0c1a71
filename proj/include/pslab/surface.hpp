#pragma once

// Lorentzian surface patches in S^4_2(1) and their local geometry. All
// quantities are computed from bi-jets of the immersion, so derivatives are
// exact up to rounding.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pslab/curve.hpp"
#include "pslab/indefinite.hpp"

namespace pslab {

inline constexpr int kSurfaceJetOrder = 4;

struct FirstFundamentalForm {
  double gss = 0.0;
  double gst = 0.0;
  double gtt = 0.0;
  double det = 0.0;
};

/// Jet-valued pseudo-orthonormal frame field: f1, f2 tangent, f3, f4 normal,
/// expanded at (s, t) to at least the requested order.
using FrameField = std::function<Frame4<Jet2>(double s, double t, int order)>;

struct SurfacePatch {
  /// x(s, t) as bi-jets of the requested total order expanded at (s, t).
  std::function<JetVector2(double s, double t, int order)> evaluator;
  Interval s_domain;
  Interval t_domain;
  std::string label;
  /// Closed-form metric, when known, checked as the metric-form residual.
  std::function<FirstFundamentalForm(double s, double t)> expected_metric;
  /// Preferred frame; fixes the orientation used for the signed K^D.
  FrameField frame_field;
};

/// Everything the curvature computations need at one point, as jets.
struct LocalGeometry {
  double s = 0.0;
  double t = 0.0;
  JetVector2 x;
  std::array<JetVector2, 2> dx;                 // x_s, x_t
  std::array<std::array<JetVector2, 2>, 2> ddx; // x_ij
  std::array<std::array<Jet2, 2>, 2> g;
  std::array<std::array<Jet2, 2>, 2> ginv;
  Jet2 det;
  std::array<std::array<std::array<Jet2, 2>, 2>, 2> christoffel;  // [l][i][j] = Gamma^l_ij
  std::array<std::array<JetVector2, 2>, 2> h_ambient;            // h_E(d_i, d_j)
  std::array<std::array<JetVector2, 2>, 2> h_sphere;             // h^(d_i, d_j)
  Frame4<Jet2> orthonormal;                                      // e1..e4 constructed from x

  /// Coordinate components (a^s, a^t) of a tangent vector at the point.
  std::array<double, 2> coordinates_of(const PseudoVector& v) const;
};

/// Throws SingularPointError at degenerate or non-Lorentzian points.
LocalGeometry local_geometry(const SurfacePatch& patch, double s, double t, int order = kSurfaceJetOrder);

FirstFundamentalForm induced_metric(const SurfacePatch& patch, double s, double t);

/// Null frame built from the constructed orthonormal frame.
Frame4<double> constructed_frame(const LocalGeometry& geo);
/// The patch's own frame field if it has one, otherwise the constructed frame.
Frame4<double> preferred_frame(const SurfacePatch& patch, const LocalGeometry& geo);

struct SecondFundamentalForm {
  double h3_11 = 0.0;
  double h3_12 = 0.0;
  double h3_22 = 0.0;
  double h4_11 = 0.0;
  double h4_12 = 0.0;
  double h4_22 = 0.0;
  PseudoVector h11;
  PseudoVector h12;  // spherical h(f1, f2); zero iff minimal
  PseudoVector h22;
  PseudoVector ambient_h12;  // h_E(f1, f2)
  PseudoVector ambient_h11;
};

inline constexpr double kFrameTolerance = 1e-8;

/// h^mu_ij = <h(f_i, f_j), f_mu> for a pseudo-orthonormal frame at the
/// point; throws DegenerateError if the frame is not admissible.
SecondFundamentalForm spherical_sff(const LocalGeometry& geo, const Frame4<double>& frame);
SecondFundamentalForm spherical_sff(const SurfacePatch& patch, double s, double t, const Frame4<double>& frame);

/// H = (1/2) g^{ij} h_ij, evaluated as -h(f1, f2) in the constructed frame.
PseudoVector mean_curvature(const LocalGeometry& geo);
PseudoVector mean_curvature(const SurfacePatch& patch, double s, double t);

struct GaussianCurvature {
  double intrinsic = 0.0;
  double extrinsic = 0.0;
  double residual = 0.0;
};

GaussianCurvature gaussian_curvature(const LocalGeometry& geo);
GaussianCurvature gaussian_curvature(const SurfacePatch& patch, double s, double t);

/// K^D = -<[A_f3, A_f4] f1, f2>; the sign follows the frame orientation.
double normal_curvature(const LocalGeometry& geo, const Frame4<double>& frame);
double normal_curvature(const SurfacePatch& patch, double s, double t, const Frame4<double>& frame);

struct ConnectionForms {
  /// omega[A][B][i] = omega_A^B(f_i), zero-based.
  std::array<std::array<std::array<double, 2>, 4>, 4> omega{};
  std::array<double, 2> phi{};  // omega_1^1(f_i)
  std::array<double, 2> psi{};  // omega_3^3(f_i)
  /// Largest violation of the pseudo-orthonormal symmetry relations,
  /// relative to max(1, max |omega|).
  double relation_residual = 0.0;
  /// Largest x-component left after subtracting the sphere term.
  double sphere_residual = 0.0;

  double operator()(int a, int b, int i) const { return omega[a - 1][b - 1][i - 1]; }
};

/// Differentiates the frame field along f1, f2 at the point.
ConnectionForms connection_forms(const LocalGeometry& geo, const FrameField& field);
ConnectionForms connection_forms(const SurfacePatch& patch, double s, double t, const FrameField& field);

/// Jet frame field built by the constructed orthonormal frame of the patch.
FrameField constructed_frame_field(const SurfacePatch& patch);

struct FundamentalResiduals {
  double gauss = 0.0;
  double codazzi = 0.0;
  double ricci = 0.0;
};

FundamentalResiduals fundamental_residuals(const LocalGeometry& geo);
FundamentalResiduals fundamental_residuals(const SurfacePatch& patch, double s, double t);

struct CurvatureReport {
  double s = 0.0;
  double t = 0.0;
  PseudoVector x;
  double K = 0.0;
  double K_extrinsic = 0.0;
  double K_normal = 0.0;
  PseudoVector mean_curvature;
  double mean_curvature_norm = 0.0;  // <H, H>, may vanish for null H
  double H_max_component = 0.0;
  double sphere_residual = 0.0;
  double metric_form_residual = 0.0;
  double gauss_curvature_residual = 0.0;  // |intrinsic - extrinsic|
  double gauss_residual = 0.0;
  double codazzi_residual = 0.0;
  double ricci_residual = 0.0;
};

CurvatureReport curvature_report(const SurfacePatch& patch, double s, double t);

/// x = (r1 sinh s, 0, r1 cosh s, r2 cos t, r2 sin t) with r1^2 + r2^2 = 1:
/// a non-minimal product patch unless r1 = r2, with a parallel normal.
SurfacePatch product_patch(double r1);

/// Number of grid workers: PSLAB_THREADS if set and positive, else the
/// hardware concurrency.
int worker_count();
/// Runs body(i) for i in [0, n) on up to worker_count() threads.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace pslab
