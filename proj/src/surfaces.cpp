#include "s2xs2/surfaces.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace s2xs2 {

namespace {

const cplx kI(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);

Vec3 mercator(double u, double v) {
  double s = 1.0 / std::cosh(v);
  return Vec3(s * std::cos(u), s * std::sin(u), std::tanh(v));
}

}  // namespace

// ---- canonical surfaces ----------------------------------------------------

SurfaceGrid build_canonical(CanonicalKind kind, int n1, int n2, double vmax) {
  SurfaceGrid g;
  bool torus = (kind == CanonicalKind::clifford);
  if (torus) {
    g.spec = {n1, n2, 0.0, 2.0 * kPi, 0.0, 2.0 * kPi, true, true};
  } else {
    g.spec = {n1, n2, 0.0, 2.0 * kPi, -vmax, vmax, true, false};
    g.params["vmax"] = vmax;
  }
  switch (kind) {
    case CanonicalKind::slice_first: g.construction = "slice-first"; break;
    case CanonicalKind::slice_second: g.construction = "slice-second"; break;
    case CanonicalKind::diagonal: g.construction = "diagonal"; break;
    case CanonicalKind::clifford: g.construction = "clifford"; break;
  }
  g.x.resize(g.spec.size());
  g.jets.resize(g.spec.size());
  const Vec3 pole(0.0, 0.0, 1.0);

  for (int j = 0; j < g.spec.m2(); ++j) {
    double v = g.spec.u2(j);
    double th = std::tanh(v), sc = 1.0 / std::cosh(v);

    DataJet d;
    switch (kind) {
      case CanonicalKind::slice_first:
      case CanonicalKind::slice_second:
        d.F.sigma = std::log(sc);
        d.F.C1 = 1.0;
        d.F.C2 = (kind == CanonicalKind::slice_first) ? 1.0 : -1.0;
        d.sigma_z = 0.5 * kI * th;
        d.sigma_zzb = -0.25 * sc * sc;
        d.flag1 = d.flag2 = true;
        break;
      case CanonicalKind::diagonal:
        d.F.sigma = 0.5 * std::log(2.0) + std::log(sc);
        d.F.rho = -0.5 * kI * th;
        d.F.C1 = 1.0;
        d.F.C2 = 0.0;
        d.F.g2 = sc;
        d.sigma_z = 0.5 * kI * th;
        d.sigma_zzb = -0.25 * sc * sc;
        d.rho_z = cplx(-0.25 * sc * sc, 0.0);
        d.rho_zb = cplx(0.25 * sc * sc, 0.0);
        d.g2_zb = -0.5 * kI * th * sc;
        d.flag1 = true;
        break;
      case CanonicalKind::clifford:
        d.F.g1 = kI / kSqrt2;
        d.F.g2 = -kI / kSqrt2;
        break;
    }

    for (int i = 0; i < g.spec.m1(); ++i) {
      double u = g.spec.u1(i);
      int at = g.spec.idx(i, j);
      switch (kind) {
        case CanonicalKind::slice_first:
          g.x[at] = join(mercator(u, v), pole);
          break;
        case CanonicalKind::slice_second:
          g.x[at] = join(pole, mercator(u, v));
          break;
        case CanonicalKind::diagonal: {
          Vec3 m = mercator(u, v);
          g.x[at] = join(m, m);
          break;
        }
        case CanonicalKind::clifford:
          g.x[at] = join(Vec3(0.0, std::cos(u), std::sin(u)),
                         Vec3(0.0, std::cos(v), std::sin(v)));
          break;
      }
      g.jets[at] = d;
    }
  }
  return g;
}

// ---- products of spherical curves ------------------------------------------

namespace {

DataJet product_jet(double k1, double k1p, double k1pp, double k2, double k2p,
                    double k2pp) {
  DataJet d;
  d.F.g1 = kI / kSqrt2;
  d.F.g2 = -kI / kSqrt2;
  d.F.f1 = (kI * k1 - k2) / (4.0 * kSqrt2);
  d.F.f2 = (-kI * k1 - k2) / (4.0 * kSqrt2);
  d.F.H = 0.5 * cplx(k1, k2);
  d.f1_zb = kI * (k1p - k2p) / (8.0 * kSqrt2);
  d.f2_zb = -kI * (k1p + k2p) / (8.0 * kSqrt2);
  d.f1_zbzb = (kI * k1pp + k2pp) / (16.0 * kSqrt2);
  d.f2_zbzb = (-kI * k1pp + k2pp) / (16.0 * kSqrt2);
  d.H_z = 0.25 * (k1p + k2p);
  d.H_zb = 0.25 * (k1p - k2p);
  d.H_zzb = 0.125 * cplx(k1pp, k2pp);
  return d;
}

bool closes_as_circle(const CurvatureProfile& p, double span) {
  return p.is_constant() && std::abs(span - circle_period(p.k(0.0))) < 1e-9;
}

}  // namespace

SurfaceGrid build_product(const CurvatureProfile& p1, double span1, int n1,
                          const CurvatureProfile& p2, double span2, int n2) {
  SurfaceGrid g;
  g.spec = {n1, n2, 0.0, span1, 0.0, span2,
            closes_as_circle(p1, span1), closes_as_circle(p2, span2)};
  g.construction = "product";
  SphericalCurve c1 = reconstruct_spherical_curve(p1, span1, g.spec.h1());
  SphericalCurve c2 = reconstruct_spherical_curve(p2, span2, g.spec.h2());
  int m1 = g.spec.m1(), m2 = g.spec.m2();
  g.x.resize(g.spec.size());
  g.jets.resize(g.spec.size());

  std::vector<std::array<double, 3>> q1(m1), q2(m2);
  for (int i = 0; i < m1; ++i) {
    double u = g.spec.u1(i);
    q1[i] = {p1.k(u), p1.kp(u), p1.kpp(u)};
  }
  for (int j = 0; j < m2; ++j) {
    double u = g.spec.u2(j);
    q2[j] = {p2.k(u), p2.kp(u), p2.kpp(u)};
  }

  for (int j = 0; j < m2; ++j) {
    for (int i = 0; i < m1; ++i) {
      int at = g.spec.idx(i, j);
      g.x[at] = join(c1.x[i], c2.x[j]);
      g.jets[at] = product_jet(q1[i][0], q1[i][1], q1[i][2], q2[j][0],
                               q2[j][1], q2[j][2]);
    }
  }
  return g;
}

// ---- associated family -----------------------------------------------------

namespace {

// d/du1 of the profile pair, shared by the data and the residual
struct PQ {
  double p, q, pd, qd, pdd, qdd, pddd, qddd;
};

PQ pq_at(const XtParams& P, double u1) {
  double v = P.v.v(u1), vp = P.v.vp(u1), vpp = P.v.vpp(u1),
         vppp = P.v.vppp(u1);
  double w = P.w.v(u1), wp = P.w.vp(u1), wpp = P.w.vpp(u1),
         wppp = P.w.vppp(u1);
  return {v + w, v - w, vp + wp, vp - wp, vpp + wpp, vpp - wpp,
          vppp + wppp, vppp - wppp};
}

}  // namespace

DataJet xt_data(const XtParams& P, double u1) {
  PQ s = pq_at(P, u1);
  double cp = std::cosh(s.p), cq = std::cosh(s.q);
  double tp = std::tanh(s.p), tq = std::tanh(s.q);
  double sp2 = 1.0 - tp * tp, sq2 = 1.0 - tq * tq;  // sech^2

  DataJet d;
  d.F.sigma = 0.5 * std::log(4.0 * cp * cq);
  d.sigma_z = 0.25 * (tp * s.pd + tq * s.qd);
  d.sigma_zzb =
      0.125 * (sp2 * s.pd * s.pd + tp * s.pdd + sq2 * s.qd * s.qd + tq * s.qdd);

  double rho = 0.25 * (tp * s.pd - tq * s.qd);
  double rhop =
      0.25 * (sp2 * s.pd * s.pd + tp * s.pdd - sq2 * s.qd * s.qd - tq * s.qdd);
  d.F.rho = rho;
  d.rho_z = 0.5 * rhop;
  d.rho_zb = 0.5 * rhop;

  d.F.C1 = tq;
  d.F.C2 = tp;
  d.C1_z = 0.5 * sq2 * s.qd;
  d.C2_z = 0.5 * sp2 * s.pd;

  cplx ph = std::exp(0.5 * kI * P.t);
  cplx g1 = kSqrt2 * ph * std::sqrt(cp / cq);
  cplx g2 = kSqrt2 * ph * std::sqrt(cq / cp);
  d.F.g1 = g1;
  d.F.g2 = g2;
  d.g1_zb = rho * g1;
  d.g2_zb = -rho * g2;

  d.F.f1 = -0.5 * kI * g1 * s.qd;
  d.F.f2 = -0.5 * kI * g2 * s.pd;
  d.f1_zb = -0.5 * kI * g1 * (rho * s.qd + 0.5 * s.qdd);
  d.f2_zb = -0.5 * kI * g2 * (-rho * s.pd + 0.5 * s.pdd);
  d.f1_zbzb = -0.125 * kI * g1 *
              ((2.0 * rhop + 4.0 * rho * rho) * s.qd + 4.0 * rho * s.qdd +
               s.qddd);
  d.f2_zbzb = -0.125 * kI * g2 *
              ((-2.0 * rhop + 4.0 * rho * rho) * s.pd - 4.0 * rho * s.pdd +
               s.pddd);

  Tolerances tol;
  d.flag1 = (1.0 - tq * tq) < tol.near_complex;
  d.flag2 = (1.0 - tp * tp) < tol.near_complex;
  return d;
}

cplx xt_constraint_residual(const XtParams& P, double u1) {
  PQ s = pq_at(P, u1);
  double cp = std::cosh(s.p), cq = std::cosh(s.q);
  return std::exp(kI * P.t) * cq * cq * cq * (0.5 * s.pd) -
         cp * cp * cp * (0.5 * s.qd);
}

namespace {

FrameState axpy(const FrameState& s, double a, const FrameState& d) {
  FrameState r;
  r.x = s.x + a * d.x;
  r.xz = s.xz + a * d.xz;
  r.xi = s.xi + a * d.xi;
  return r;
}

// derivative of the frame along a coordinate direction, from the z and
// zbar halves of the structure equations
FrameState axis_derivative(const FrameState& s, const DataJet& d, int axis) {
  FrameRhs r = structure_rhs(s, d.F, d.sigma_z);
  FrameState out;
  if (axis == 1) {
    out.x = 2.0 * s.xz.real();
    out.xz = r.xzz + r.xzzb;
    out.xi = r.xiz + r.xizb;
  } else {
    out.x = -2.0 * s.xz.imag();
    out.xz = kI * (r.xzz - r.xzzb);
    out.xi = kI * (r.xiz - r.xizb);
  }
  return out;
}

FrameState xt_rk4_step(const FrameState& s, const XtParams& P, double u1,
                       int axis, double h) {
  DataJet d0 = xt_data(P, u1);
  DataJet dm = (axis == 1) ? xt_data(P, u1 + 0.5 * h) : d0;
  DataJet d1 = (axis == 1) ? xt_data(P, u1 + h) : d0;
  FrameState k1 = axis_derivative(s, d0, axis);
  FrameState k2 = axis_derivative(axpy(s, 0.5 * h, k1), dm, axis);
  FrameState k3 = axis_derivative(axpy(s, 0.5 * h, k2), dm, axis);
  FrameState k4 = axis_derivative(axpy(s, h, k3), d1, axis);
  FrameState out = s;
  out.x += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  out.xz += (h / 6.0) * (k1.xz + 2.0 * k2.xz + 2.0 * k3.xz + k4.xz);
  out.xi += (h / 6.0) * (k1.xi + 2.0 * k2.xi + 2.0 * k3.xi + k4.xi);
  return out;
}

FrameState xt_march(FrameState s, const XtParams& P, double u1, int axis,
                    double span, double target) {
  int nsub = std::max(1, static_cast<int>(std::ceil(std::abs(span) / target)));
  double h = span / nsub;
  for (int k = 0; k < nsub; ++k) {
    s = xt_rk4_step(s, P, u1, axis, h);
    if (axis == 1) u1 += h;
  }
  return s;
}

// closed-form frame at u = 0 in the eigenbasis of J at the north pole
FrameState xt_initial(const XtParams& P) {
  double v0 = P.v.v(0.0), w0 = P.w.v(0.0);
  double p0 = v0 + w0, q0 = v0 - w0;
  cplx rot = std::exp(kI * P.t);
  const CVec3 eps(cplx(1.0, 0.0), cplx(0.0, -1.0), cplx(0.0, 0.0));
  const CVec3 epsb = eps.conjugate();

  cplx ap = 0.5 * std::exp(v0);
  cplx am = 0.5 * std::exp(-v0) * rot;
  cplx bp = 0.5 * std::exp(-w0);
  cplx bm = -0.5 * std::exp(w0) * rot;

  double C1 = std::tanh(q0);
  cplx g1 = kSqrt2 * std::exp(0.5 * kI * P.t) *
            std::sqrt(std::cosh(p0) / std::cosh(q0));

  FrameState s;
  s.x = join(Vec3(0.0, 0.0, 1.0), Vec3(0.0, 0.0, 1.0));
  s.xz = join(CVec3(ap * eps + am * epsb), CVec3(bp * eps + bm * epsb));
  s.xi = join(CVec3((kI * (1.0 - C1) * ap) * eps -
                    (kI * (1.0 + C1) * am) * epsb),
              CVec3((kI * (1.0 - C1) * bp) * eps -
                    (kI * (1.0 + C1) * bm) * epsb)) /
         g1;
  return s;
}

constexpr double kSubstepTarget = 0.005;

}  // namespace

SurfaceGrid build_xt(const XtParams& P, int n1, int n2, double u1span,
                     double u2span, FrameIntegrationReport* report) {
  SurfaceGrid g;
  g.spec = {n1, n2, 0.0, u1span, 0.0, u2span, false, false};
  g.construction = "xt";
  g.params["t"] = P.t;
  int m1 = g.spec.m1(), m2 = g.spec.m2();
  g.x.resize(g.spec.size());
  g.jets.resize(g.spec.size());

  std::vector<FrameState> states(g.spec.size());
  states[g.spec.idx(0, 0)] = xt_initial(P);
  for (int i = 1; i < m1; ++i) {
    states[g.spec.idx(i, 0)] =
        xt_march(states[g.spec.idx(i - 1, 0)], P, g.spec.u1(i - 1), 1,
                 g.spec.h1(), kSubstepTarget);
  }
  for (int i = 0; i < m1; ++i) {
    for (int j = 1; j < m2; ++j) {
      states[g.spec.idx(i, j)] =
          xt_march(states[g.spec.idx(i, j - 1)], P, g.spec.u1(i), 2,
                   g.spec.h2(), kSubstepTarget);
    }
  }

  FrameIntegrationReport rep;
  for (int i = 0; i < m1; ++i) {
    DataJet d = xt_data(P, g.spec.u1(i));
    for (int j = 0; j < m2; ++j) {
      int at = g.spec.idx(i, j);
      g.x[at] = states[at].x;
      g.jets[at] = d;
      rep.max_defect = std::max(rep.max_defect, frame_defect(states[at]));
      rep.max_hat_defect =
          std::max(rep.max_hat_defect, hat_relation_defect(states[at], d.F));
    }
  }
  if (report) *report = rep;
  return g;
}

namespace {

FrameState xt_rk2_step(const FrameState& s, const XtParams& P, double u1,
                       int axis, double h) {
  DataJet d0 = xt_data(P, u1);
  DataJet dm = (axis == 1) ? xt_data(P, u1 + 0.5 * h) : d0;
  FrameState k1 = axis_derivative(s, d0, axis);
  FrameState k2 = axis_derivative(axpy(s, 0.5 * h, k1), dm, axis);
  return axpy(s, h, k2);
}

double state_distance(const FrameState& a, const FrameState& b) {
  return (a.x - b.x).norm() + (a.xz - b.xz).norm() + (a.xi - b.xi).norm();
}

}  // namespace

double xt_two_sweep_gap(const XtParams& P, int n1, int n2, double u1span,
                        double u2span) {
  GridSpec spec{n1, n2, 0.0, u1span, 0.0, u2span, false, false};
  int m1 = spec.m1(), m2 = spec.m2();
  std::vector<FrameState> a(spec.size()), b(spec.size());
  FrameState s0 = xt_initial(P);

  // sweep A: bottom row in u1, then every column upward in u2
  a[spec.idx(0, 0)] = s0;
  for (int i = 1; i < m1; ++i)
    a[spec.idx(i, 0)] =
        xt_rk2_step(a[spec.idx(i - 1, 0)], P, spec.u1(i - 1), 1, spec.h1());
  for (int i = 0; i < m1; ++i)
    for (int j = 1; j < m2; ++j)
      a[spec.idx(i, j)] =
          xt_rk2_step(a[spec.idx(i, j - 1)], P, spec.u1(i), 2, spec.h2());

  // sweep B: left column in u2, then every row rightward in u1
  b[spec.idx(0, 0)] = s0;
  for (int j = 1; j < m2; ++j)
    b[spec.idx(0, j)] =
        xt_rk2_step(b[spec.idx(0, j - 1)], P, spec.u1(0), 2, spec.h2());
  for (int j = 0; j < m2; ++j)
    for (int i = 1; i < m1; ++i)
      b[spec.idx(i, j)] =
          xt_rk2_step(b[spec.idx(i - 1, j)], P, spec.u1(i - 1), 1, spec.h1());

  double gap = 0.0;
  for (int at = 0; at < spec.size(); ++at)
    gap = std::max(gap, state_distance(a[at], b[at]));
  return gap;
}

// ---- doubly periodic construction ------------------------------------------

namespace {

// conjugated stereographic chart: holomorphic for the orientation fixed
// by J(q) w = q x w on both factors
Vec3 sphere_chart(const WPValue& v) {
  if (v.pole) return Vec3(0.0, 0.0, 1.0);
  double n = std::norm(v.P);
  return Vec3(2.0 * v.P.real(), -2.0 * v.P.imag(), n - 1.0) / (1.0 + n);
}

}  // namespace

SurfaceGrid build_weierstrass(cplx tau, cplx z0, int n1, int n2) {
  if (std::abs(tau.real()) > 1e-12)
    throw std::invalid_argument(
        "build_weierstrass: tau must be purely imaginary for a conformal "
        "grid");
  WeierstrassLattice L = WeierstrassLattice::from_tau(tau);
  WPEvaluator wp(L);

  SurfaceGrid g;
  g.spec = {n1, n2, 0.0, 1.0, 0.0, tau.imag(), true, true};
  g.construction = "weierstrass";
  g.params["tau_im"] = tau.imag();
  g.params["z0_re"] = z0.real();
  g.params["z0_im"] = z0.imag();
  g.x.resize(g.spec.size());

  for (int j = 0; j < g.spec.m2(); ++j) {
    for (int i = 0; i < g.spec.m1(); ++i) {
      cplx z(g.spec.u1(i), g.spec.u2(j));
      g.x[g.spec.idx(i, j)] = join(sphere_chart(wp(z)), sphere_chart(wp(z - z0)));
    }
  }
  return g;
}

// ---- polar construction ----------------------------------------------------

namespace {

using Vec4 = Eigen::Vector4d;
using CVec4 = Eigen::Vector4cd;

struct PsiState {
  Vec4 psi;
  CVec4 psiz;
  Vec4 N;
};

PsiState psi_axpy(const PsiState& s, double a, const PsiState& d) {
  return {s.psi + a * d.psi, s.psiz + a * d.psiz, s.N + a * d.N};
}

// Hopf coefficient of the harmonic map system; the sign is pinned by
// conformality of the assembled sphere-valued map
const cplx kQ(0.0, -0.5);

PsiState psi_axis_derivative(const PsiState& s, double v, double vp,
                             int axis) {
  cplx vz = 0.5 * vp;
  double e2v = std::exp(2.0 * v);
  CVec4 psizz = 2.0 * vz * s.psiz + kQ * s.N.cast<cplx>();
  CVec4 psizzb = cplx(-0.5 * e2v, 0.0) * s.psi.cast<cplx>();
  CVec4 Nz = (-2.0 / e2v) * kQ * s.psiz.conjugate();
  PsiState d;
  if (axis == 1) {
    d.psi = 2.0 * s.psiz.real();
    d.psiz = psizz + psizzb;
    d.N = 2.0 * Nz.real();
  } else {
    d.psi = -2.0 * s.psiz.imag();
    d.psiz = kI * (psizz - psizzb);
    d.N = -2.0 * Nz.imag();
  }
  return d;
}

PsiState psi_rk4_step(const PsiState& s, const SinhGordonProfile& prof,
                      double u1, int axis, double h) {
  double ua = u1, um = (axis == 1) ? u1 + 0.5 * h : u1,
         ub = (axis == 1) ? u1 + h : u1;
  PsiState k1 = psi_axis_derivative(s, prof.v(ua), prof.vp(ua), axis);
  PsiState k2 = psi_axis_derivative(psi_axpy(s, 0.5 * h, k1), prof.v(um),
                                    prof.vp(um), axis);
  PsiState k3 = psi_axis_derivative(psi_axpy(s, 0.5 * h, k2), prof.v(um),
                                    prof.vp(um), axis);
  PsiState k4 = psi_axis_derivative(psi_axpy(s, h, k3), prof.v(ub),
                                    prof.vp(ub), axis);
  PsiState out = s;
  out.psi += (h / 6.0) * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
  out.psiz += (h / 6.0) * (k1.psiz + 2.0 * k2.psiz + 2.0 * k3.psiz + k4.psiz);
  out.N += (h / 6.0) * (k1.N + 2.0 * k2.N + 2.0 * k3.N + k4.N);
  return out;
}

PsiState psi_march(PsiState s, const SinhGordonProfile& prof, double u1,
                   int axis, double span, double target) {
  int nsub = std::max(1, static_cast<int>(std::ceil(std::abs(span) / target)));
  double h = span / nsub;
  for (int k = 0; k < nsub; ++k) {
    s = psi_rk4_step(s, prof, u1, axis, h);
    if (axis == 1) u1 += h;
  }
  return s;
}

// coordinates of a wedge in the orthonormal basis e_i ^ e_j, i < j
Vec6 wedge4(const Vec4& a, const Vec4& b) {
  Vec6 w;
  w << a(0) * b(1) - a(1) * b(0), a(0) * b(2) - a(2) * b(0),
      a(0) * b(3) - a(3) * b(0), a(1) * b(2) - a(2) * b(1),
      a(1) * b(3) - a(3) * b(1), a(2) * b(3) - a(3) * b(2);
  return w;
}

}  // namespace

SurfaceGrid build_gauss_map(const SinhGordonProfile& prof, int n1, int n2,
                            GaussMapReport* report) {
  SurfaceGrid g;
  g.spec = {n1, n2, 0.0, prof.period(), 0.0, kPi, false, false};
  g.construction = "gaussmap";
  g.params["k"] = prof.k;
  g.params["delta"] = prof.delta;
  int m1 = g.spec.m1(), m2 = g.spec.m2();
  g.x.resize(g.spec.size());

  PsiState s0;
  s0.psi = Vec4(1.0, 0.0, 0.0, 0.0);
  double half = 0.5 * std::exp(prof.v(0.0));
  s0.psiz = CVec4(cplx(0.0, 0.0), cplx(half, 0.0), cplx(0.0, -half),
                  cplx(0.0, 0.0));
  s0.N = Vec4(0.0, 0.0, 0.0, 1.0);

  std::vector<PsiState> states(g.spec.size());
  states[g.spec.idx(0, 0)] = s0;
  for (int i = 1; i < m1; ++i)
    states[g.spec.idx(i, 0)] =
        psi_march(states[g.spec.idx(i - 1, 0)], prof, g.spec.u1(i - 1), 1,
                  g.spec.h1(), kSubstepTarget);
  for (int i = 0; i < m1; ++i)
    for (int j = 1; j < m2; ++j)
      states[g.spec.idx(i, j)] =
          psi_march(states[g.spec.idx(i, j - 1)], prof, g.spec.u1(i), 2,
                    g.spec.h2(), kSubstepTarget);

  // assemble the degenerate-projection direction field
  std::vector<Vec6> V(g.spec.size());
  double unit_defect = 0.0;
  for (int i = 0; i < m1; ++i) {
    double e2v = std::exp(2.0 * prof.v(g.spec.u1(i)));
    for (int j = 0; j < m2; ++j) {
      int at = g.spec.idx(i, j);
      const PsiState& s = states[at];
      Vec4 psiu = 2.0 * s.psiz.real();
      Vec4 psiv = -2.0 * s.psiz.imag();
      V[at] = (wedge4(psiu, psiv) / e2v + wedge4(s.psi, s.N)) / kSqrt2;
      unit_defect = std::max(unit_defect, std::abs(V[at].norm() - 1.0));
    }
  }

  // V stays inside a fixed 3-space of self-dual forms; identify it from
  // the second-moment matrix and express V there
  Eigen::Matrix<double, 6, 6> M = Eigen::Matrix<double, 6, 6>::Zero();
  for (const Vec6& v : V) M += v * v.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> eig(M);
  double lo = eig.eigenvalues().head(3).sum();
  double hi = eig.eigenvalues().tail(3).sum();

  Vec6 basis[3];
  for (int k = 0; k < 3; ++k) {
    Vec6 b = eig.eigenvectors().col(5 - k);
    int imax = 0;
    for (int r = 1; r < 6; ++r)
      if (std::abs(b(r)) > std::abs(b(imax))) imax = r;
    if (b(imax) < 0.0) b = -b;
    basis[k] = b;
  }

  for (int j = 0; j < m2; ++j) {
    double u2 = g.spec.u2(j);
    Vec3 circle(std::cos(2.0 * u2), std::sin(2.0 * u2), 0.0);
    for (int i = 0; i < m1; ++i) {
      int at = g.spec.idx(i, j);
      Vec3 first(V[at].dot(basis[0]), V[at].dot(basis[1]),
                 V[at].dot(basis[2]));
      g.x[at] = join(first, circle);
    }
  }

  if (report) {
    report->max_unit_defect = unit_defect;
    report->rank3_residual = lo / hi;
  }
  return g;
}

}  // namespace s2xs2
