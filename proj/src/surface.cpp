#include "pslab/surface.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace pslab {

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 values(const std::array<std::array<Jet2, 2>, 2>& m) {
  return {{{m[0][0].value(), m[0][1].value()}, {m[1][0].value(), m[1][1].value()}}};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

double bilinear(const Mat2& m, const std::array<double, 2>& a, const std::array<double, 2>& b) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) acc += a[i] * m[i][j] * b[j];
  return acc;
}

PseudoVector bilinear(const std::array<std::array<JetVector2, 2>, 2>& h, const std::array<double, 2>& a,
                      const std::array<double, 2>& b) {
  PseudoVector r(kE52);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r += (a[i] * b[j]) * value_of(h[i][j]);
  return r;
}

/// B_xi[i][j] = <h(d_i, d_j), xi>.
Mat2 shape_matrix(const LocalGeometry& geo, const PseudoVector& xi) {
  Mat2 b{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b[i][j] = inner(value_of(geo.h_sphere[i][j]), xi);
  return b;
}

/// <[A_xi, A_eta] d_i, d_j> as a matrix in (i, j).
Mat2 shape_commutator(const LocalGeometry& geo, const PseudoVector& xi, const PseudoVector& eta) {
  const Mat2 bx = shape_matrix(geo, xi);
  const Mat2 be = shape_matrix(geo, eta);
  const Mat2 gi = values(geo.ginv);
  const Mat2 p = mul(mul(be, gi), bx);
  const Mat2 q = mul(mul(bx, gi), be);
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = p[i][j] - q[i][j];
  return r;
}

/// R(d_s, d_t, d_t, d_s) from the Christoffel jets.
double intrinsic_curvature_tensor(const LocalGeometry& geo) {
  const auto& G = geo.christoffel;
  std::array<double, 2> r{};
  for (int l = 0; l < 2; ++l) {
    double acc = G[l][1][1].partial(1, 0) - G[l][0][1].partial(0, 1);
    for (int m = 0; m < 2; ++m) {
      acc += G[m][1][1].value() * G[l][0][m].value() - G[m][0][1].value() * G[l][1][m].value();
    }
    r[l] = acc;
  }
  return geo.g[0][0].value() * r[0] + geo.g[1][0].value() * r[1];
}

std::string point_text(double s, double t) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << s << ", " << t << ")";
  return os.str();
}

}  // namespace

std::array<double, 2> LocalGeometry::coordinates_of(const PseudoVector& v) const {
  const double p = inner(v, value_of(dx[0]));
  const double q = inner(v, value_of(dx[1]));
  const Mat2 gi = values(ginv);
  return {gi[0][0] * p + gi[0][1] * q, gi[1][0] * p + gi[1][1] * q};
}

LocalGeometry local_geometry(const SurfacePatch& patch, double s, double t, int order) {
  if (order < 3) throw ShapeError("local geometry needs bi-jets of order >= 3");
  LocalGeometry geo;
  geo.s = s;
  geo.t = t;
  geo.x = patch.evaluator(s, t, order);
  if (geo.x.dim() != 5) throw ShapeError("surface patches must live in E^5_2");
  for (int i = 0; i < 2; ++i) geo.dx[i] = partial(geo.x, i);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) geo.ddx[i][j] = partial(geo.dx[i], j);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) geo.g[i][j] = inner(geo.dx[i], geo.dx[j]);
  geo.det = geo.g[0][0] * geo.g[1][1] - geo.g[0][1] * geo.g[0][1];
  const double det = geo.det.value();
  if (!(std::abs(det) >= kDegenerateMetricThreshold)) {
    throw SingularPointError("induced metric is degenerate (det g = " + std::to_string(det) + ")", s, t);
  }
  if (det > 0) throw SingularPointError("induced metric is not Lorentzian (det g > 0)", s, t);
  geo.ginv = {{{geo.g[1][1] / geo.det, -geo.g[0][1] / geo.det}, {-geo.g[1][0] / geo.det, geo.g[0][0] / geo.det}}};

  // Gamma_kij = (d_i g_jk + d_j g_ik - d_k g_ij) / 2, raised with g^{lk}.
  std::array<std::array<std::array<Jet2, 2>, 2>, 2> lowered;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        lowered[k][i][j] = 0.5 * (geo.g[j][k].d(i) + geo.g[i][k].d(j) - geo.g[i][j].d(k));
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) geo.christoffel[l][i][j] = geo.ginv[l][0] * lowered[0][i][j] + geo.ginv[l][1] * lowered[1][i][j];

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      geo.h_ambient[i][j] =
          geo.ddx[i][j] - geo.christoffel[0][i][j] * geo.dx[0] - geo.christoffel[1][i][j] * geo.dx[1];
      geo.h_sphere[i][j] = geo.h_ambient[i][j] + geo.g[i][j] * geo.x;
    }
  }
  try {
    geo.orthonormal = orthonormal_tangent_normal_frame(geo.x, geo.dx[0], geo.dx[1]);
  } catch (const DegenerateError& e) {
    throw SingularPointError(e.what(), s, t);
  }
  return geo;
}

FirstFundamentalForm induced_metric(const SurfacePatch& patch, double s, double t) {
  const JetVector2 x = patch.evaluator(s, t, 1);
  const PseudoVector xs = value_of(partial(x, 0));
  const PseudoVector xt = value_of(partial(x, 1));
  FirstFundamentalForm g{inner(xs, xs), inner(xs, xt), inner(xt, xt), 0.0};
  g.det = g.gss * g.gtt - g.gst * g.gst;
  return g;
}

Frame4<double> constructed_frame(const LocalGeometry& geo) { return to_null_frame(value_of(geo.orthonormal)); }

Frame4<double> preferred_frame(const SurfacePatch& patch, const LocalGeometry& geo) {
  if (patch.frame_field) return value_of(patch.frame_field(geo.s, geo.t, 0));
  return constructed_frame(geo);
}

SecondFundamentalForm spherical_sff(const LocalGeometry& geo, const Frame4<double>& f) {
  const double gram = gram_residual(f, kPseudoOrthonormalGram);
  if (!(gram < kFrameTolerance)) {
    throw DegenerateError("frame is not pseudo-orthonormal (Gram residual " + std::to_string(gram) + ") at " +
                          point_text(geo.s, geo.t));
  }
  const PseudoVector x = value_of(geo.x);
  const PseudoVector xs = value_of(geo.dx[0]);
  const PseudoVector xt = value_of(geo.dx[1]);
  const double scale = std::max({1.0, max_abs(xs), max_abs(xt)});
  double off = 0.0;
  for (const auto& v : f) off = std::max(off, std::abs(inner(v, x)));
  for (int a = 2; a < 4; ++a) off = std::max({off, std::abs(inner(f[a], xs)) / scale, std::abs(inner(f[a], xt)) / scale});
  if (!(off < kFrameTolerance)) {
    throw DegenerateError("frame is not adapted to the surface (residual " + std::to_string(off) + ") at " +
                          point_text(geo.s, geo.t));
  }
  const auto a1 = geo.coordinates_of(f[0]);
  const auto a2 = geo.coordinates_of(f[1]);
  SecondFundamentalForm h;
  h.h11 = bilinear(geo.h_sphere, a1, a1);
  h.h12 = bilinear(geo.h_sphere, a1, a2);
  h.h22 = bilinear(geo.h_sphere, a2, a2);
  h.ambient_h11 = bilinear(geo.h_ambient, a1, a1);
  h.ambient_h12 = bilinear(geo.h_ambient, a1, a2);
  h.h3_11 = inner(h.h11, f[2]);
  h.h3_12 = inner(h.h12, f[2]);
  h.h3_22 = inner(h.h22, f[2]);
  h.h4_11 = inner(h.h11, f[3]);
  h.h4_12 = inner(h.h12, f[3]);
  h.h4_22 = inner(h.h22, f[3]);
  return h;
}

SecondFundamentalForm spherical_sff(const SurfacePatch& patch, double s, double t, const Frame4<double>& frame) {
  return spherical_sff(local_geometry(patch, s, t), frame);
}

PseudoVector mean_curvature(const LocalGeometry& geo) { return -spherical_sff(geo, constructed_frame(geo)).h12; }

PseudoVector mean_curvature(const SurfacePatch& patch, double s, double t) {
  return mean_curvature(local_geometry(patch, s, t));
}

GaussianCurvature gaussian_curvature(const LocalGeometry& geo) {
  GaussianCurvature k;
  k.intrinsic = intrinsic_curvature_tensor(geo) / geo.det.value();
  const SecondFundamentalForm h = spherical_sff(geo, constructed_frame(geo));
  k.extrinsic = 1.0 + h.h3_22 * h.h4_11 + h.h3_11 * h.h4_22 + inner(h.h12, h.h12);
  k.residual = std::abs(k.intrinsic - k.extrinsic);
  return k;
}

GaussianCurvature gaussian_curvature(const SurfacePatch& patch, double s, double t) {
  return gaussian_curvature(local_geometry(patch, s, t));
}

double normal_curvature(const LocalGeometry& geo, const Frame4<double>& f) {
  (void)spherical_sff(geo, f);
  const Mat2 c = shape_commutator(geo, f[2], f[3]);
  return -bilinear(c, geo.coordinates_of(f[0]), geo.coordinates_of(f[1]));
}

double normal_curvature(const SurfacePatch& patch, double s, double t, const Frame4<double>& frame) {
  return normal_curvature(local_geometry(patch, s, t), frame);
}

namespace {

/// Solves G c = r for a 4x4 system by Gaussian elimination with pivoting.
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> m, std::array<double, 4> r) {
  for (int k = 0; k < 4; ++k) {
    int p = k;
    for (int i = k + 1; i < 4; ++i)
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    if (std::abs(m[p][k]) < 1e-14) throw DegenerateError("frame vectors are linearly dependent");
    std::swap(m[k], m[p]);
    std::swap(r[k], r[p]);
    for (int i = k + 1; i < 4; ++i) {
      const double f = m[i][k] / m[k][k];
      for (int j = k; j < 4; ++j) m[i][j] -= f * m[k][j];
      r[i] -= f * r[k];
    }
  }
  std::array<double, 4> c{};
  for (int k = 3; k >= 0; --k) {
    double acc = r[k];
    for (int j = k + 1; j < 4; ++j) acc -= m[k][j] * c[j];
    c[k] = acc / m[k][k];
  }
  return c;
}

}  // namespace

ConnectionForms connection_forms(const LocalGeometry& geo, const FrameField& field) {
  if (!field) throw Error("connection forms need a frame field");
  const Frame4<Jet2> F = field(geo.s, geo.t, 1);
  for (const auto& v : F) {
    if (v[0].order() < 1) throw ShapeError("frame field must be differentiable (order >= 1)");
  }
  const Frame4<double> f = value_of(F);
  (void)spherical_sff(geo, f);
  const PseudoVector x = value_of(geo.x);
  std::array<std::array<double, 4>, 4> gram{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) gram[a][b] = inner(f[a], f[b]);

  ConnectionForms cf;
  for (int i = 0; i < 2; ++i) {
    const auto a = geo.coordinates_of(f[i]);
    for (int A = 0; A < 4; ++A) {
      const PseudoVector v = a[0] * value_of(partial(F[A], 0)) + a[1] * value_of(partial(F[A], 1)) +
                             inner(f[i], f[A]) * x;
      std::array<double, 4> rhs{};
      for (int B = 0; B < 4; ++B) rhs[B] = inner(v, f[B]);
      const auto c = solve4(gram, rhs);
      PseudoVector rest = v;
      for (int B = 0; B < 4; ++B) {
        cf.omega[A][B][i] = c[B];
        rest -= c[B] * f[B];
      }
      cf.sphere_residual = std::max(cf.sphere_residual, max_abs(rest));
    }
  }
  // d<f_A, f_B> = 0 gives omega_A^C g_CB + omega_B^C g_CA = 0.
  for (int i = 0; i < 2; ++i) {
    for (int A = 0; A < 4; ++A) {
      for (int B = A; B < 4; ++B) {
        double acc = 0.0;
        for (int C = 0; C < 4; ++C) {
          acc += cf.omega[A][C][i] * kPseudoOrthonormalGram[C][B] + cf.omega[B][C][i] * kPseudoOrthonormalGram[C][A];
        }
        cf.relation_residual = std::max(cf.relation_residual, std::abs(acc));
      }
    }
    cf.phi[i] = cf.omega[0][0][i];
    cf.psi[i] = cf.omega[2][2][i];
  }
  double scale = 1.0;
  for (const auto& row : cf.omega)
    for (const auto& col : row)
      for (double w : col) scale = std::max(scale, std::abs(w));
  cf.relation_residual /= scale;
  return cf;
}

ConnectionForms connection_forms(const SurfacePatch& patch, double s, double t, const FrameField& field) {
  return connection_forms(local_geometry(patch, s, t), field);
}

FrameField constructed_frame_field(const SurfacePatch& patch) {
  auto eval = patch.evaluator;
  return [eval](double s, double t, int order) {
    const JetVector2 x = eval(s, t, order + 1);
    try {
      return to_null_frame(orthonormal_tangent_normal_frame(x, partial(x, 0), partial(x, 1)));
    } catch (const DegenerateError& e) {
      throw SingularPointError(e.what(), s, t);
    }
  };
}

FundamentalResiduals fundamental_residuals(const LocalGeometry& geo) {
  FundamentalResiduals r;
  const Frame4<double> f = constructed_frame(geo);
  const std::array<std::array<double, 2>, 2> a{geo.coordinates_of(f[0]), geo.coordinates_of(f[1])};
  const double area = a[0][0] * a[1][1] - a[0][1] * a[1][0];

  // Gauss in S^4_2(1): R(X,Y,Y,X) = <X,X><Y,Y> - <X,Y>^2 + <h(Y,Y), h(X,X)> - <h(X,Y), h(X,Y)>.
  // The unit-curvature term relies on <x, x> = 1 to second order.
  const double lhs = intrinsic_curvature_tensor(geo);
  const PseudoVector hss = value_of(geo.h_sphere[0][0]);
  const PseudoVector hst = value_of(geo.h_sphere[0][1]);
  const PseudoVector htt = value_of(geo.h_sphere[1][1]);
  const double rhs = geo.det.value() + inner(htt, hss) - inner(hst, hst);
  r.gauss = std::abs(lhs - rhs) * area * area;

  // Codazzi: (nabla_i h)_jk symmetric in i, j; the normal connection is the
  // projection of the ambient derivative onto span{e3, e4}.
  const PseudoVector e3 = value_of(geo.orthonormal[2]);
  const PseudoVector e4 = value_of(geo.orthonormal[3]);
  auto normal_part = [&](const PseudoVector& v) { return inner(v, e3) * e3 - inner(v, e4) * e4; };
  std::array<std::array<std::array<PseudoVector, 2>, 2>, 2> cov;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        PseudoVector v = normal_part(value_of(partial(geo.h_sphere[j][k], i)));
        for (int m = 0; m < 2; ++m) {
          v -= geo.christoffel[m][i][j].value() * value_of(geo.h_sphere[m][k]);
          v -= geo.christoffel[m][i][k].value() * value_of(geo.h_sphere[j][m]);
        }
        cov[i][j][k] = v;
      }
    }
  }
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      for (int w = 0; w < 2; ++w) {
        PseudoVector d(kE52);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) d += (a[p][i] * a[q][j] * a[w][k]) * (cov[i][j][k] - cov[j][i][k]);
        r.codazzi = std::max(r.codazzi, max_abs(d));
      }
    }
  }

  // Ricci: <R^D(d_s, d_t) e3, e4> = d_s theta_t - d_t theta_s with
  // theta_i = <d_i e3, e4>, against <[A_e3, A_e4] d_s, d_t>.
  std::array<Jet2, 2> theta;
  for (int i = 0; i < 2; ++i) theta[i] = inner(partial(geo.orthonormal[2], i), geo.orthonormal[3]);
  const double curl = theta[1].partial(1, 0) - theta[0].partial(0, 1);
  const Mat2 c = shape_commutator(geo, e3, e4);
  r.ricci = std::abs(curl - c[0][1]) * std::abs(area);
  return r;
}

FundamentalResiduals fundamental_residuals(const SurfacePatch& patch, double s, double t) {
  return fundamental_residuals(local_geometry(patch, s, t));
}

CurvatureReport curvature_report(const SurfacePatch& patch, double s, double t) {
  const LocalGeometry geo = local_geometry(patch, s, t);
  CurvatureReport rep;
  rep.s = s;
  rep.t = t;
  rep.x = value_of(geo.x);
  const GaussianCurvature k = gaussian_curvature(geo);
  rep.K = k.intrinsic;
  rep.K_extrinsic = k.extrinsic;
  rep.gauss_curvature_residual = k.residual;
  rep.K_normal = normal_curvature(geo, preferred_frame(patch, geo));
  rep.mean_curvature = mean_curvature(geo);
  rep.mean_curvature_norm = inner(rep.mean_curvature, rep.mean_curvature);
  rep.H_max_component = max_abs(rep.mean_curvature);
  rep.sphere_residual = sphere_membership(rep.x);
  if (patch.expected_metric) {
    const FirstFundamentalForm e = patch.expected_metric(s, t);
    rep.metric_form_residual = std::max({std::abs(geo.g[0][0].value() - e.gss), std::abs(geo.g[0][1].value() - e.gst),
                                         std::abs(geo.g[1][1].value() - e.gtt)});
  }
  const FundamentalResiduals f = fundamental_residuals(geo);
  rep.gauss_residual = f.gauss;
  rep.codazzi_residual = f.codazzi;
  rep.ricci_residual = f.ricci;
  return rep;
}

SurfacePatch product_patch(double r1) {
  if (!(r1 > 0.0 && r1 < 1.0)) throw Error("product patch needs 0 < r1 < 1");
  const double r2 = std::sqrt(1.0 - r1 * r1);
  SurfacePatch p;
  p.evaluator = [r1, r2](double s0, double t0, int order) {
    const Jet2 s = Jet2::variable_s(s0, order);
    const Jet2 t = Jet2::variable_t(t0, order);
    return JetVector2(kE52, {r1 * sinh(s), Jet2(order), r1 * cosh(s), r2 * cos(t), r2 * sin(t)});
  };
  p.s_domain = {-2.0, 2.0};
  p.t_domain = {-3.0, 3.0};
  p.label = "product";
  p.expected_metric = [r1, r2](double, double) {
    return FirstFundamentalForm{-r1 * r1, 0.0, r2 * r2, -r1 * r1 * r2 * r2};
  };
  return p;
}

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("PSLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<int>(std::min<long>(v, 256));
  }
  return n;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace pslab
