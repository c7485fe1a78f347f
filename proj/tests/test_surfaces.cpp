#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "s2xs2/extraction.hpp"
#include "s2xs2/surfaces.hpp"

using namespace s2xs2;

namespace {

double unit_defect(const SurfaceGrid& g) {
  double worst = 0.0;
  for (const Vec6& x : g.x) {
    worst = std::max(worst, std::abs(head3(x).norm() - 1.0));
    worst = std::max(worst, std::abs(tail3(x).norm() - 1.0));
  }
  return worst;
}

}  // namespace

TEST_CASE("canonical grids: shape, factors, stored data") {
  SurfaceGrid g = build_canonical(CanonicalKind::slice_first, 32, 32, 3.0);
  CHECK(g.construction == "slice-first");
  CHECK(g.spec.periodic1);
  CHECK_FALSE(g.spec.periodic2);
  CHECK(g.spec.m1() == 32);
  CHECK(g.spec.m2() == 33);
  CHECK(g.spec.u1b == doctest::Approx(2.0 * kPi));
  CHECK(g.spec.u2a == doctest::Approx(-3.0));
  CHECK(unit_defect(g) < 1e-14);
  REQUIRE(g.jets.size() == static_cast<size_t>(g.spec.size()));
  // slice data: both Kaehler functions one, second factor constant
  for (int i : {0, 7, 200}) {
    CHECK(g.jets[i].F.C1 == doctest::Approx(1.0));
    CHECK(g.jets[i].F.C2 == doctest::Approx(1.0));
    CHECK(std::abs(g.jets[i].F.H) < 1e-15);
  }
  Vec3 p2 = tail3(g.x[0]);
  for (const Vec6& x : g.x) CHECK((tail3(x) - p2).norm() == 0.0);

  SurfaceGrid cl = build_canonical(CanonicalKind::clifford, 16, 16);
  CHECK(cl.spec.periodic1);
  CHECK(cl.spec.periodic2);
  CHECK(unit_defect(cl) < 1e-14);
  for (const DataJet& d : cl.jets) {
    CHECK(d.F.sigma == 0.0);
    CHECK(std::abs(d.F.g1 - cplx(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(d.F.g2 + cplx(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
  }

  SurfaceGrid di = build_canonical(CanonicalKind::diagonal, 16, 16, 2.0);
  for (const DataJet& d : di.jets) {
    CHECK(d.F.C1 == doctest::Approx(1.0));
    CHECK(std::abs(d.F.C2) < 1e-15);
    CHECK(d.flag1);
    CHECK_FALSE(d.flag2);
  }
}

TEST_CASE("product grids carry the profile data") {
  CurvatureProfile el = CurvatureProfile::elastic(1.0, 0.0, 6.0, 0.002);
  CurvatureProfile ci = CurvatureProfile::constant(1.0);
  double span1 = el.period(), span2 = circle_period(1.0);
  SurfaceGrid g = build_product(el, span1, 64, ci, span2, 24);
  CHECK(g.construction == "product");
  // the curvature is periodic over span1 but the curve has holonomy and
  // does not close, so only the circle direction wraps
  CHECK_FALSE(g.spec.periodic1);
  CHECK(g.spec.periodic2);
  CHECK(unit_defect(g) < 1e-9);
  const double r8 = 4.0 * std::sqrt(2.0);
  for (int i = 0; i < g.spec.m1(); i += 5) {
    double k1 = el.k(g.spec.u1(i));
    const DataJet& d = g.jets[g.spec.idx(i, 3)];
    CHECK(d.F.sigma == 0.0);
    CHECK(std::abs(d.F.f1 - cplx(-1.0, k1) / r8) < 1e-12);
    CHECK(std::abs(d.F.f2 - cplx(-1.0, -k1) / r8) < 1e-12);
    CHECK(std::abs(d.F.H - cplx(k1, 1.0) / 2.0) < 1e-12);
  }
  // conformal up to the differencing error of the position derivatives
  ExtractedData e = extract_fundamental_data(g);
  CHECK(e.max_conf_defect < 1e-3);
}

TEST_CASE("extraction recovers the stored product data") {
  CurvatureProfile el = CurvatureProfile::elastic(1.0, 0.0, 6.0, 0.002);
  CurvatureProfile gr = CurvatureProfile::constant(0.0);
  SurfaceGrid g =
      build_product(el, el.period(), 64, gr, circle_period(0.0), 64);
  ExtractedData e = extract_fundamental_data(g);
  // one-sided stencils near the open ends of the elastic direction carry
  // a larger truncation constant, so compare away from them
  int mg = interior_margin(e.order);
  double worst = 0.0;
  for (int i2 = 0; i2 < g.spec.m2(); ++i2)
    for (int i1 = mg; i1 < g.spec.m1() - mg; ++i1) {
      int at = g.spec.idx(i1, i2);
      const FundamentalData& A = e.F[at];
      const FundamentalData& B = g.jets[at].F;
      worst = std::max(worst, std::abs(A.sigma - B.sigma));
      worst = std::max(worst, std::abs(A.C1 - B.C1));
      worst = std::max(worst, std::abs(A.C2 - B.C2));
      worst = std::max(worst, std::abs(std::abs(A.f1) - std::abs(B.f1)));
      worst = std::max(worst, std::abs(std::abs(A.f2) - std::abs(B.f2)));
      worst = std::max(worst, std::abs(std::abs(A.H) - std::abs(B.H)));
      worst = std::max(worst, std::abs(std::abs(A.g1) - std::abs(B.g1)));
    }
  CHECK(worst < 1e-4);
}

TEST_CASE("family data and constraint") {
  SinhGordonProfile pv{1.0, 0.0};
  XtParams P;
  P.t = 0.0;
  P.v = SolutionField1D::closed_form(pv);
  P.w = SolutionField1D::zero();
  for (double u : {0.0, 0.35, 0.8, 1.3}) {
    DataJet d = xt_data(P, u);
    double vv = pv.v(u);
    CHECK(d.F.C1 == doctest::Approx(std::tanh(vv)));
    CHECK(d.F.C2 == doctest::Approx(std::tanh(vv)));
    CHECK(std::abs(d.F.H) == 0.0);
    // with w = 0 and t = 0 the constraint holds exactly
    CHECK(xt_constraint_residual(P, u) == 0.0);
  }
  P.t = 1.2;
  CHECK(std::abs(xt_constraint_residual(P, 0.4)) > 1e-3);
}

TEST_CASE("family frame integration stays consistent") {
  XtParams P;
  P.t = 0.9;
  P.v = SolutionField1D::closed_form(SinhGordonProfile{1.0, 0.0});
  P.w = SolutionField1D::closed_form(SinhGordonProfile{0.5, 0.0});
  FrameIntegrationReport rep;
  SurfaceGrid g = build_xt(P, 24, 24, 1.6, 1.6, &rep);
  CHECK(g.construction == "xt");
  CHECK(g.params.at("t") == 0.9);
  CHECK_FALSE(g.spec.periodic1);
  CHECK(unit_defect(g) < 1e-8);
  CHECK(rep.max_defect < 1e-7);
  CHECK(rep.max_hat_defect < 1e-7);
  double gap = xt_two_sweep_gap(P, 24, 24, 1.6, 1.6);
  CHECK(gap > 0.0);
  CHECK(gap < 0.1);
}

TEST_CASE("doubly periodic minimal grid") {
  CHECK_THROWS_AS(build_weierstrass(cplx(0.3, 1.0), cplx(0.3, 0.2), 16, 16),
                  std::invalid_argument);
  SurfaceGrid g = build_weierstrass(cplx(0.0, 1.0), cplx(0.3, 0.2), 96, 96);
  CHECK(g.construction == "weierstrass");
  CHECK(g.spec.periodic1);
  CHECK(g.spec.periodic2);
  CHECK(g.jets.empty());
  CHECK(unit_defect(g) < 1e-12);
  ExtractedData e = extract_fundamental_data(g);
  double supH = 0.0;
  for (const FundamentalData& F : e.F)
    supH = std::max(supH, std::abs(F.H));
  CHECK(supH < 1e-2);
}

TEST_CASE("polar construction lands on the sphere product") {
  GaussMapReport rep;
  SurfaceGrid g = build_gauss_map(SinhGordonProfile{1.0, 0.0}, 48, 48, &rep);
  CHECK(g.construction == "gaussmap");
  CHECK(rep.max_unit_defect < 1e-8);
  CHECK(rep.rank3_residual < 1e-8);
  CHECK(unit_defect(g) < 1e-8);
  // second factor is the doubled equator circle
  for (int j = 0; j < g.spec.m2(); j += 7) {
    double u2 = g.spec.u2(j);
    Vec3 c(std::cos(2.0 * u2), std::sin(2.0 * u2), 0.0);
    CHECK((tail3(g.x[g.spec.idx(5, j)]) - c).norm() < 1e-9);
  }
}
