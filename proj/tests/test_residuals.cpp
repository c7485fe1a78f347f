#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "s2xs2/extraction.hpp"
#include "s2xs2/residuals.hpp"
#include "s2xs2/surfaces.hpp"

using namespace s2xs2;

TEST_CASE("all residual fields exist and carry grid-sized data") {
  SurfaceGrid g = build_canonical(CanonicalKind::clifford, 16, 16);
  ResidualFields r = compute_residuals(jets_from_analytic(g));
  for (const char* name :
       {"C1", "C2", "g1", "g2", "f1", "f2", "norm1", "norm2", "gauss",
        "willmore", "wplus", "wminus", "hform", "hform_consistency", "mw"}) {
    REQUIRE(r.fields.count(name) == 1);
    CHECK(r.fields.at(name).size() == static_cast<size_t>(g.spec.size()));
    CHECK(r.sup(name) >= 0.0);
  }
}

TEST_CASE("stored closed-form data satisfies the compatibility relations") {
  CurvatureProfile el = CurvatureProfile::elastic(1.0, 0.0, 6.0, 0.002);
  CurvatureProfile ci = CurvatureProfile::constant(1.0);
  SurfaceGrid g =
      build_product(el, el.period(), 24, ci, circle_period(1.0), 24);
  ResidualFields r = compute_residuals(jets_from_analytic(g));
  for (const char* name :
       {"C1", "C2", "g1", "g2", "f1", "f2", "norm1", "norm2", "gauss"})
    CHECK(r.sup(name) < 1e-12);
  CHECK(r.sup("hform_consistency") < 1e-11);
}

TEST_CASE("circle pair misses criticality by a quarter") {
  CurvatureProfile ci = CurvatureProfile::constant(1.0);
  double span = circle_period(1.0);
  SurfaceGrid g = build_product(ci, span, 16, ci, span, 16);
  ResidualFields r = compute_residuals(jets_from_analytic(g));
  CHECK(r.sup("willmore") == doctest::Approx(0.25).epsilon(1e-12));
  // while an elastic profile by a great circle is critical
  CurvatureProfile el = CurvatureProfile::elastic(0.8, 0.0, 6.0, 0.002);
  CurvatureProfile gr = CurvatureProfile::constant(0.0);
  SurfaceGrid h =
      build_product(el, el.period(), 16, gr, circle_period(0.0), 16);
  CHECK(compute_residuals(jets_from_analytic(h)).sup("willmore") < 1e-9);
}

TEST_CASE("derived fields on the clifford torus") {
  SurfaceGrid g = build_canonical(CanonicalKind::clifford, 16, 16);
  JetField jf = jets_from_analytic(g);
  auto drv = derived_fields(jf);
  for (double v : drv.at("K")) CHECK(std::abs(v) < 1e-13);
  for (double v : drv.at("Kperp")) CHECK(std::abs(v) < 1e-13);
  for (double v : drv.at("hopf_abs")) CHECK(v == doctest::Approx(0.25));
  for (double v : drv.at("area_density")) CHECK(v == doctest::Approx(1.0));
  for (double v : drv.at("Babs")) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("diagonal sphere curvatures") {
  SurfaceGrid g = build_canonical(CanonicalKind::diagonal, 32, 32, 2.5);
  auto drv = derived_fields(jets_from_analytic(g));
  for (double v : drv.at("K")) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  for (double v : drv.at("Kperp"))
    CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("energies of the canonical surfaces") {
  SurfaceGrid cl = build_canonical(CanonicalKind::clifford, 32, 32);
  EnergyReport ec = energies(jets_from_analytic(cl), 0);
  CHECK(ec.area == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
  CHECK(std::abs(ec.W) < 1e-12);
  CHECK(std::abs(ec.intC1) < 1e-12);

  SurfaceGrid sl = build_canonical(CanonicalKind::slice_first, 64, 64, 9.4);
  EnergyReport es = energies(jets_from_analytic(sl), 2);
  // area of the round sphere in the conformal chart, tails below rounding
  CHECK(es.area == doctest::Approx(4.0 * kPi).epsilon(1e-7));
  CHECK(std::abs(es.W) < 1e-6);
  CHECK(es.intC1 == doctest::Approx(es.area).epsilon(1e-12));

  SurfaceGrid di = build_canonical(CanonicalKind::diagonal, 64, 64, 9.4);
  EnergyReport ed = energies(jets_from_analytic(di), 2);
  CHECK(std::abs(ed.W) < 1e-6);
  CHECK(ed.Wplus == doctest::Approx(8.0 * kPi).epsilon(1e-7));
  CHECK(std::abs(ed.intC2) < 1e-12);
}

TEST_CASE("differenced jets agree with the stored ones") {
  CurvatureProfile el = CurvatureProfile::elastic(1.0, 0.0, 6.0, 0.002);
  CurvatureProfile gr = CurvatureProfile::constant(0.0);
  SurfaceGrid g =
      build_product(el, el.period(), 64, gr, circle_period(0.0), 64);
  JetField a = jets_from_analytic(g);
  JetField b = jets_from_fields_fd(g, 4);
  double worst = 0.0;
  for (int at = 0; at < g.spec.size(); ++at) {
    worst = std::max(worst, std::abs(a.jets[at].f1_zb - b.jets[at].f1_zb));
    worst = std::max(worst, std::abs(a.jets[at].H_z - b.jets[at].H_z));
    worst = std::max(worst,
                     std::abs(a.jets[at].sigma_zzb - b.jets[at].sigma_zzb));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("margins: aperiodic edges are excluded from sup norms") {
  XtParams P;
  P.t = 0.4;
  P.v = SolutionField1D::closed_form(SinhGordonProfile{1.0, 0.0});
  P.w = SolutionField1D::zero();
  SurfaceGrid g = build_xt(P, 24, 24, 1.6, 1.6);
  ResidualFields ra = compute_residuals(jets_from_analytic(g));
  CHECK(ra.margin1 == 0);
  CHECK(ra.margin2 == 0);
  ResidualFields rf = compute_residuals(jets_from_fields_fd(g, 4));
  CHECK(rf.margin1 > 0);
  CHECK(rf.margin2 > 0);
}
