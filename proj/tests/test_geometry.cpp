#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "s2xs2/geometry.hpp"

using namespace s2xs2;

namespace {

// point on the clifford torus and its second jet at (u1, u2)
SecondJet clifford_jet(double u1, double u2) {
  SecondJet j;
  j.x << std::cos(u1), std::sin(u1), 0.0, std::cos(u2), std::sin(u2), 0.0;
  j.xu << -std::sin(u1), std::cos(u1), 0.0, 0.0, 0.0, 0.0;
  j.xv << 0.0, 0.0, 0.0, -std::sin(u2), std::cos(u2), 0.0;
  j.xuu << -std::cos(u1), -std::sin(u1), 0.0, 0.0, 0.0, 0.0;
  j.xuv.setZero();
  j.xvv << 0.0, 0.0, 0.0, -std::cos(u2), -std::sin(u2), 0.0;
  return j;
}

Vec6 tangent(const Vec6& x, double a1, double b1, double a2, double b2) {
  // two arbitrary tangent directions per factor at the clifford point
  Vec6 v;
  v << -a1 * x[1], a1 * x[0], b1, -a2 * x[4], a2 * x[3], b2;
  return v;
}

}  // namespace

TEST_CASE("reflection flips the second factor only") {
  Vec6 x;
  x << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
  Vec6 h = hat_point(x);
  CHECK(h[0] == 0.1);
  CHECK(h[2] == 0.3);
  CHECK(h[3] == -0.4);
  CHECK(h[5] == -0.6);
  CHECK((hat_point(h) - x).norm() == 0.0);
}

TEST_CASE("complex structures square to minus one on tangent vectors") {
  SecondJet j = clifford_jet(0.7, -0.4);
  Vec6 v = tangent(j.x, 0.3, -1.1, 0.8, 0.25);
  CHECK((j1(j.x, j1(j.x, v)) + v).norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK((j2(j.x, j2(j.x, v)) + v).norm() == doctest::Approx(0.0).epsilon(1e-14));
  // both are isometries
  CHECK(j1(j.x, v).norm() == doctest::Approx(v.norm()));
  CHECK(j2(j.x, v).norm() == doctest::Approx(v.norm()));
}

TEST_CASE("Kaehler forms are antisymmetric and agree with the pairing") {
  SecondJet j = clifford_jet(1.2, 0.5);
  Vec6 X = tangent(j.x, 0.9, 0.1, -0.3, 0.7);
  Vec6 Y = tangent(j.x, -0.2, 1.3, 0.6, -0.5);
  CHECK(omega1(j.x, X, Y) == doctest::Approx(-omega1(j.x, Y, X)));
  CHECK(omega2(j.x, X, Y) == doctest::Approx(-omega2(j.x, Y, X)));
  CHECK(omega1(j.x, X, Y) == doctest::Approx(j1(j.x, X).dot(Y)));
  CHECK(omega2(j.x, X, Y) == doctest::Approx(j2(j.x, X).dot(Y)));
}

TEST_CASE("curvature tensor: symmetries and sectional values") {
  SecondJet j = clifford_jet(0.3, 2.1);
  Vec6 X = tangent(j.x, 1.0, 0.2, 0.4, -0.6);
  Vec6 Y = tangent(j.x, -0.5, 0.8, 1.1, 0.3);
  Vec6 Z = tangent(j.x, 0.7, -0.9, 0.2, 1.4);
  Vec6 W = tangent(j.x, 0.1, 0.6, -1.2, 0.5);
  double r = curvature_tensor(j.x, X, Y, Z, W);
  CHECK(curvature_tensor(j.x, Y, X, Z, W) == doctest::Approx(-r));
  CHECK(curvature_tensor(j.x, X, Y, W, Z) == doctest::Approx(-r));
  CHECK(curvature_tensor(j.x, Z, W, X, Y) == doctest::Approx(r));
  // first Bianchi identity
  double b = curvature_tensor(j.x, X, Y, Z, W) +
             curvature_tensor(j.x, Y, Z, X, W) +
             curvature_tensor(j.x, Z, X, Y, W);
  CHECK(b == doctest::Approx(0.0).epsilon(1e-12));

  // planes inside one factor are flat-sphere planes, mixed planes are flat
  Vec6 A = tangent(j.x, 1.0, 0.0, 0.0, 0.0);
  Vec6 B = tangent(j.x, 0.0, 1.0, 0.0, 0.0);
  Vec6 C = tangent(j.x, 0.0, 0.0, 1.0, 0.0);
  Vec6 D = tangent(j.x, 0.0, 0.0, 0.0, 1.0);
  CHECK(sectional_curvature(j.x, A, B) == doctest::Approx(1.0));
  CHECK(sectional_curvature(j.x, C, D) == doctest::Approx(1.0));
  CHECK(sectional_curvature(j.x, A, C) == doctest::Approx(0.0));
  CHECK(sectional_curvature(j.x, B, D) == doctest::Approx(0.0));
}

TEST_CASE("normal frame is orthonormal and normal to the surface") {
  SecondJet j = clifford_jet(0.9, 1.7);
  NormalFrame nf = make_normal_frame(j.x, j.xu, j.xv);
  CHECK(nf.e3.norm() == doctest::Approx(1.0));
  CHECK(nf.e4.norm() == doctest::Approx(1.0));
  CHECK(nf.e3.dot(nf.e4) == doctest::Approx(0.0).epsilon(1e-14));
  for (const Vec6* t : {&j.xu, &j.xv}) {
    CHECK(nf.e3.dot(*t) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(nf.e4.dot(*t) == doctest::Approx(0.0).epsilon(1e-14));
  }
  // normal to the product itself: orthogonal to x and hat x
  CHECK(nf.e3.dot(j.x) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(nf.e3.dot(hat_point(j.x)) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("frame decomposition inverts the frame expansion") {
  SecondJet j = clifford_jet(0.4, -1.0);
  NormalFrame nf = make_normal_frame(j.x, j.xu, j.xv);
  CVec6 xz = 0.5 * (complexify(j.xu) - cplx(0, 1) * complexify(j.xv));
  CVec6 xi =
      (complexify(nf.e3) + cplx(0, 1) * complexify(nf.e4)) / std::sqrt(2.0);
  double e2s = 0.5 * (j.xu.squaredNorm() + j.xv.squaredNorm());

  cplx a(0.3, -0.7), b(1.2, 0.4), c(-0.5, 0.9), d(0.8, 0.1);
  CVec6 V = a * xz + b * xz.conjugate() + c * xi + d * xi.conjugate();
  FrameCoeffs fc = frame_decompose(V, xz, xi, e2s);
  CHECK(std::abs(fc.a - a) < 1e-13);
  CHECK(std::abs(fc.b - b) < 1e-13);
  CHECK(std::abs(fc.c - c) < 1e-13);
  CHECK(std::abs(fc.d - d) < 1e-13);
}

TEST_CASE("point extraction on the clifford torus") {
  SecondJet j = clifford_jet(0.6, 2.3);
  NormalFrame nf = make_normal_frame(j.x, j.xu, j.xv);
  CVec6 xi =
      (complexify(nf.e4) - cplx(0, 1) * complexify(nf.e3)) / std::sqrt(2.0);
  PointExtraction pe = extract_at_point(j, xi, Tolerances{});

  CHECK(pe.e2sigma == doctest::Approx(1.0));
  CHECK(pe.conf_defect < 1e-14);
  CHECK(pe.F.sigma == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(pe.F.C1) < 1e-14);
  CHECK(std::abs(pe.F.C2) < 1e-14);
  CHECK(std::abs(pe.F.H) < 1e-14);
  CHECK(std::abs(pe.F.f1) < 1e-14);
  CHECK(std::abs(pe.F.f2) < 1e-14);
  // gamma magnitudes are gauge independent
  CHECK(std::abs(pe.F.g1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(pe.F.g2) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(second_form_norm2(pe.F) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK_FALSE(pe.near_complex1);
  CHECK_FALSE(pe.near_complex2);
}

TEST_CASE("structure equations close on clifford frame data") {
  SecondJet j = clifford_jet(1.5, 0.2);
  NormalFrame nf = make_normal_frame(j.x, j.xu, j.xv);
  FrameState s;
  s.x = j.x;
  s.xz = 0.5 * (complexify(j.xu) - cplx(0, 1) * complexify(j.xv));
  s.xi =
      (complexify(nf.e4) - cplx(0, 1) * complexify(nf.e3)) / std::sqrt(2.0);
  CHECK(frame_defect(s) < 1e-14);

  PointExtraction pe = extract_at_point(j, s.xi, Tolerances{});
  FrameRhs rhs = structure_rhs(s, pe.F, 0.0);
  // xzz and xzzb from the jet directly
  CVec6 xzz = 0.25 * (complexify(j.xuu) - complexify(j.xvv) -
                      cplx(0, 2) * complexify(j.xuv));
  CVec6 xzzb = 0.25 * (complexify(j.xuu) + complexify(j.xvv));
  CHECK((rhs.xzz - xzz).norm() < 1e-13);
  CHECK((rhs.xzzb - xzzb).norm() < 1e-13);
  CHECK(hat_relation_defect(s, pe.F) < 1e-13);
}

TEST_CASE("derived curvature helpers") {
  CHECK(gauss_curvature(2.0, cplx(-0.5, 3.0)) == doctest::Approx(1.0));
  CHECK(normal_curvature(2.0, cplx(0.5, -1.0)) == doctest::Approx(1.0));
  FundamentalData F;
  F.sigma = 0.0;
  F.f1 = cplx(0.25, 0.0);
  F.H = cplx(0.0, 0.5);
  CHECK(second_form_norm2(F) == doctest::Approx(8.0 * 0.0625 + 2.0 * 0.25));
}
