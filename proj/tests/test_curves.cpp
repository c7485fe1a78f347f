#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "s2xs2/curves.hpp"

using namespace s2xs2;

TEST_CASE("constant profiles") {
  CurvatureProfile p = CurvatureProfile::constant(1.5);
  CHECK(p.is_constant());
  CHECK(p.k(2.7) == 1.5);
  CHECK(p.kp(2.7) == 0.0);
  CHECK(p.kpp(2.7) == 0.0);
  CHECK(circle_period(0.0) == doctest::Approx(2.0 * kPi));
  CHECK(circle_period(1.0) == doctest::Approx(2.0 * kPi / std::sqrt(2.0)));
}

TEST_CASE("elastic profile solves its generator equation") {
  CurvatureProfile p = CurvatureProfile::elastic(1.0, 0.0, 8.0, 0.002);
  CHECK_FALSE(p.is_constant());
  CHECK(p.k(0.0) == doctest::Approx(1.0));
  CHECK(p.kp(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  // generator second derivative matches the equation by construction;
  // check the table against it by differencing a few interior samples
  double h = p.table_step();
  const std::vector<double>& k = p.table_k();
  for (int i : {100, 500, 1500, 3000}) {
    double kpp = (k[i - 1] - 2.0 * k[i] + k[i + 1]) / (h * h);
    double res = 2.0 * kpp + k[i] * k[i] * k[i] + 2.0 * k[i];
    // truncation of the second difference dominates at this step
    CHECK(std::abs(res) < 1e-5);
  }
  CHECK(p.energy_drift() < 1e-10);
  // conserved quantity along the orbit
  double e0 = p.kp(0.3) * p.kp(0.3) + std::pow(p.k(0.3), 4) / 4.0 +
              p.k(0.3) * p.k(0.3);
  double e1 = p.kp(4.1) * p.kp(4.1) + std::pow(p.k(4.1), 4) / 4.0 +
              p.k(4.1) * p.k(4.1);
  CHECK(e0 == doctest::Approx(e1).epsilon(1e-10));
}

TEST_CASE("elastic periods against recorded values") {
  struct TV {
    double k0, T;
  };
  const TV table[] = {{0.5, 6.0087942528587321},
                      {1.0, 5.366659355191767},
                      {1.5, 4.6477626528786287}};
  for (const TV& tv : table) {
    CurvatureProfile p = CurvatureProfile::elastic(tv.k0, 0.0, 1.0, 0.002);
    CHECK(p.period() == doctest::Approx(tv.T).epsilon(1e-12));
  }
}

TEST_CASE("coupled system residuals") {
  CurvatureProfile c1 = CurvatureProfile::constant(1.0);
  auto [d1, d2] = product_ode_residuals(c1, c1, 0.4, 1.9);
  // constant curvature one on both factors misses criticality by exactly 2
  CHECK(d1 == doctest::Approx(2.0));
  CHECK(d2 == doctest::Approx(2.0));

  CurvatureProfile g = CurvatureProfile::constant(0.0);
  auto [e1, e2] = product_ode_residuals(g, g, 0.0, 0.0);
  CHECK(e1 == 0.0);
  CHECK(e2 == 0.0);

  // an elastic profile against a great circle is critical
  CurvatureProfile el = CurvatureProfile::elastic(0.8, 0.0, 6.0, 0.002);
  auto [r1, r2] = product_ode_residuals(el, g, 1.7, 0.5);
  CHECK(std::abs(r1) < 1e-10);
  CHECK(std::abs(r2) < 1e-12);
}

TEST_CASE("curve reconstruction stays on the sphere at unit speed") {
  CurvatureProfile el = CurvatureProfile::elastic(1.0, 0.0, 6.0, 0.002);
  SphericalCurve c = reconstruct_spherical_curve(el, 5.0, 0.01);
  REQUIRE(c.x.size() == 501);
  for (size_t i = 0; i < c.x.size(); i += 50) {
    CHECK(c.x[i].norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(c.xp[i].norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(c.x[i].dot(c.xp[i])) < 1e-10);
  }
}

TEST_CASE("curvature readback from a reconstructed curve") {
  CurvatureProfile el = CurvatureProfile::elastic(1.2, 0.0, 4.0, 0.002);
  SphericalCurve c = reconstruct_spherical_curve(el, 4.0, 0.01);
  std::vector<double> k = geodesic_curvature(c);
  REQUIRE(k.size() == c.x.size());
  double worst = 0.0;
  for (size_t i = 0; i < k.size(); ++i)
    worst = std::max(worst, std::abs(k[i] - el.k(i * 0.01)));
  CHECK(worst < 1e-6);
}

TEST_CASE("circles close after their period") {
  for (double kc : {0.0, 1.0, 2.0}) {
    CurvatureProfile p = CurvatureProfile::constant(kc);
    double T = circle_period(kc);
    SphericalCurve c = reconstruct_spherical_curve(p, T, T / 4096.0);
    CHECK((c.x.back() - c.x.front()).norm() < 1e-9);
    CHECK((c.xp.back() - c.xp.front()).norm() < 1e-9);
  }
}
