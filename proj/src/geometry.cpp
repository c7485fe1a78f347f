#include "s2xs2/geometry.hpp"

#include <cmath>

namespace s2xs2 {

namespace {

const cplx kI(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);

// deterministic unit tangent at a point of the unit sphere: take the
// coordinate axis most transverse to p and project it to the tangent plane
Vec3 pick_tangent(const Vec3& p) {
  int k = 0;
  for (int j = 1; j < 3; ++j)
    if (std::abs(p[j]) < std::abs(p[k])) k = j;
  Vec3 t = Vec3::Unit(k) - p[k] * p;
  return t.normalized();
}

}  // namespace

Vec6 j1(const Vec6& x, const Vec6& v) {
  return join(head3(x).cross(head3(v)), tail3(x).cross(tail3(v)));
}
Vec6 j2(const Vec6& x, const Vec6& v) {
  return join(head3(x).cross(head3(v)), Vec3(-tail3(x).cross(tail3(v))));
}
CVec6 j1(const Vec6& x, const CVec6& v) {
  CVec3 p = head3(x).cast<cplx>(), q = tail3(x).cast<cplx>();
  return join(p.cross(head3(v)), q.cross(tail3(v)));
}
CVec6 j2(const Vec6& x, const CVec6& v) {
  CVec3 p = head3(x).cast<cplx>(), q = tail3(x).cast<cplx>();
  return join(p.cross(head3(v)), CVec3(-q.cross(tail3(v))));
}

double omega1(const Vec6& x, const Vec6& X, const Vec6& Y) {
  return bilinear(j1(x, X), Y);
}
double omega2(const Vec6& x, const Vec6& X, const Vec6& Y) {
  return bilinear(j2(x, X), Y);
}

double curvature_tensor(const Vec6& x, const Vec6& X, const Vec6& Y,
                        const Vec6& Z, const Vec6& W) {
  Vec6 j1X = j1(x, X), j1Y = j1(x, Y);
  Vec6 j2Z = j2(x, Z), j2W = j2(x, W);
  return -0.5 * (bilinear(X, W) * bilinear(Y, Z) -
                 bilinear(X, Z) * bilinear(Y, W) +
                 bilinear(j1X, j2W) * bilinear(j1Y, j2Z) -
                 bilinear(j1X, j2Z) * bilinear(j1Y, j2W));
}

double sectional_curvature(const Vec6& x, const Vec6& X, const Vec6& Y) {
  double area2 = bilinear(X, X) * bilinear(Y, Y) - bilinear(X, Y) * bilinear(X, Y);
  return curvature_tensor(x, X, Y, X, Y) / area2;
}

FrameCoeffs frame_decompose(const CVec6& V, const CVec6& xz, const CVec6& xi,
                            double e2sigma) {
  CVec6 xzb = xz.conjugate(), xib = xi.conjugate();
  FrameCoeffs c;
  c.a = 2.0 / e2sigma * bilinear(V, xzb);
  c.b = 2.0 / e2sigma * bilinear(V, xz);
  c.c = bilinear(V, xib);
  c.d = bilinear(V, xi);
  return c;
}

NormalFrame make_normal_frame(const Vec6& x, const Vec6& xu, const Vec6& xv) {
  Vec3 p1 = head3(x), p2 = tail3(x);
  Vec3 t1 = pick_tangent(p1), t2 = pick_tangent(p2);
  // positively oriented orthonormal basis of the tangent space of the product
  std::array<Vec6, 4> b = {
      join(t1, Vec3::Zero()), join(p1.cross(t1), Vec3::Zero()),
      join(Vec3::Zero(), t2), join(Vec3::Zero(), p2.cross(t2))};

  Vec6 uh = xu.normalized();
  Vec6 vh = (xv - xv.dot(uh) * uh).normalized();

  // candidates: the projections of the reference basis onto the normal plane
  std::array<Vec6, 4> c;
  for (int i = 0; i < 4; ++i)
    c[i] = b[i] - b[i].dot(uh) * uh - b[i].dot(vh) * vh;

  int i3 = 0;
  for (int i = 1; i < 4; ++i)
    if (c[i].norm() > c[i3].norm()) i3 = i;
  Vec6 e3 = c[i3].normalized();

  int i4 = -1;
  double best = -1.0;
  for (int i = 0; i < 4; ++i) {
    if (i == i3) continue;
    double r = (c[i] - c[i].dot(e3) * e3).norm();
    if (r > best) {
      best = r;
      i4 = i;
    }
  }
  Vec6 e4 = (c[i4] - c[i4].dot(e3) * e3).normalized();

  // The two orientations of the normal plane give conjugate isotropic
  // directions, and J1 xz, J2 xz each live entirely on one of them. The
  // structure coefficients pair against (e4 - i e3)/sqrt(2), so pick the
  // orientation that puts the data on that component; the conjugate choice
  // would report identically zero coefficients at non-complex points.
  CVec6 xz = 0.5 * (complexify(xu) - kI * complexify(xv));
  CVec6 xi = (complexify(e4) - kI * complexify(e3)) / kSqrt2;
  double keep = std::abs(bilinear(j1(x, xz), xi.conjugate())) +
                std::abs(bilinear(j2(x, xz), xi));
  double flip = std::abs(bilinear(j1(x, xz), xi)) +
                std::abs(bilinear(j2(x, xz), xi.conjugate()));

  NormalFrame nf;
  if (keep + flip > 1e-9 * xz.norm()) {
    nf.swapped = flip > keep;
  } else {
    // both factor tangents are complex, so either orientation carries no
    // data; orient (xu, xv, e3, e4) against the reference basis instead
    Eigen::Matrix4d M;
    std::array<Vec6, 4> f = {uh, vh, e3, e4};
    for (int r = 0; r < 4; ++r)
      for (int col = 0; col < 4; ++col) M(r, col) = f[r].dot(b[col]);
    nf.swapped = M.determinant() < 0.0;
  }
  nf.e3 = nf.swapped ? e4 : e3;
  nf.e4 = nf.swapped ? e3 : e4;
  return nf;
}

PointExtraction extract_at_point(const SecondJet& jet, const CVec6& xi,
                                 const Tolerances& tol) {
  PointExtraction out;
  const cplx i = kI;

  out.xz = 0.5 * (complexify(jet.xu) - i * complexify(jet.xv));
  out.xzz = 0.25 * (complexify(jet.xuu) - complexify(jet.xvv) -
                    2.0 * i * complexify(jet.xuv));
  out.xzzb = 0.25 * (complexify(jet.xuu) + complexify(jet.xvv));

  double eu = jet.xu.squaredNorm(), ev = jet.xv.squaredNorm();
  out.e2sigma = 0.5 * (eu + ev);
  out.conf_defect =
      std::max(std::abs(eu - ev), 2.0 * std::abs(jet.xu.dot(jet.xv))) /
      (2.0 * out.e2sigma);

  FundamentalData& F = out.F;
  F.sigma = 0.5 * std::log(out.e2sigma);
  F.C1 = bilinear(j1(jet.x, jet.xu), jet.xv) / out.e2sigma;
  F.C2 = bilinear(j2(jet.x, jet.xu), jet.xv) / out.e2sigma;

  CVec6 xib = xi.conjugate();
  F.g1 = bilinear(j1(jet.x, out.xz), xib);
  F.g2 = bilinear(j2(jet.x, out.xz), xi);
  F.f1 = bilinear(out.xzz, xib);
  F.f2 = bilinear(out.xzz, xi);
  F.H = 2.0 * kSqrt2 * i / out.e2sigma * bilinear(out.xzzb, xi);

  out.near_complex1 = 1.0 - F.C1 * F.C1 < tol.near_complex;
  out.near_complex2 = 1.0 - F.C2 * F.C2 < tol.near_complex;
  if (out.near_complex1) F.g1 = 0.0;
  if (out.near_complex2) F.g2 = 0.0;
  return out;
}

FrameRhs structure_rhs(const FrameState& s, const FundamentalData& F,
                       cplx sigma_z) {
  const cplx i = kI;
  double e2s = std::exp(2.0 * F.sigma);
  CVec6 xzb = s.xz.conjugate();
  CVec6 xib = s.xi.conjugate();
  CVec6 xc = complexify(s.x);
  CVec6 xh = complexify(hat_point(s.x));

  FrameRhs r;
  r.xzz = 2.0 * sigma_z * s.xz + F.f1 * s.xi + F.f2 * xib -
          0.5 * F.g1 * F.g2 * xh;
  r.xzzb = i * (kSqrt2 / 4.0) * e2s * std::conj(F.H) * s.xi -
           i * (kSqrt2 / 4.0) * e2s * F.H * xib - 0.25 * e2s * xc -
           0.25 * e2s * F.C1 * F.C2 * xh;
  r.xiz = i * (kSqrt2 / 2.0) * F.H * s.xz - 2.0 / e2s * F.f2 * xzb +
          F.rho * s.xi + 0.5 * i * F.C1 * F.g2 * xh;
  r.xizb = -2.0 / e2s * std::conj(F.f1) * s.xz +
           i * (kSqrt2 / 2.0) * F.H * xzb - std::conj(F.rho) * s.xi -
           0.5 * i * F.C2 * std::conj(F.g1) * xh;
  return r;
}

double frame_defect(const FrameState& s) {
  double e2s = 2.0 * s.xz.squaredNorm();
  double es = std::sqrt(e2s);
  CVec6 xzb = s.xz.conjugate();
  CVec6 xib = s.xi.conjugate();

  double d = 0.0;
  auto acc = [&d](double v) { d = std::max(d, std::abs(v)); };

  acc(head3(s.x).norm() - 1.0);
  acc(tail3(s.x).norm() - 1.0);
  acc(std::abs(bilinear(s.xz, s.xz)) / e2s);
  acc(std::abs(bilinear(s.xi, s.xi)));
  acc(std::real(bilinear(s.xi, xib)) - 1.0);
  // per-factor tangency of x_z and xi
  acc(std::abs(head3(s.xz).dot(head3(complexify(s.x)).conjugate())) / es);
  acc(std::abs(tail3(s.xz).dot(tail3(complexify(s.x)).conjugate())) / es);
  acc(std::abs(head3(s.xi).dot(head3(complexify(s.x)).conjugate())));
  acc(std::abs(tail3(s.xi).dot(tail3(complexify(s.x)).conjugate())));
  // normality of xi against the tangent plane
  acc(std::abs(bilinear(s.xi, s.xz)) / es);
  acc(std::abs(bilinear(s.xi, xzb)) / es);
  return d;
}

double hat_relation_defect(const FrameState& s, const FundamentalData& F) {
  const cplx i = kI;
  double e2s = std::exp(2.0 * F.sigma);
  CVec6 xzb = s.xz.conjugate();
  CVec6 xib = s.xi.conjugate();
  CVec6 lhs = hat_point(CVec6(s.xz));
  CVec6 rhs = F.C1 * F.C2 * s.xz + 2.0 / e2s * F.g1 * F.g2 * xzb -
              i * F.C2 * F.g1 * s.xi - i * F.C1 * F.g2 * xib;
  return (lhs - rhs).norm() / std::sqrt(e2s);
}

}  // namespace s2xs2
