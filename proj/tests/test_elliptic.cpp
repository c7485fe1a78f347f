#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "s2xs2/elliptic.hpp"
#include "s2xs2/linalg.hpp"

using namespace s2xs2;

TEST_CASE("complete elliptic integral against recorded values") {
  // reference values computed once with an independent
  // arbitrary-precision evaluation of the defining integral
  struct KV {
    double m, K;
  };
  const KV table[] = {
      {0.10, 1.6124413487202192}, {0.25, 1.6857503548125961},
      {0.50, 1.8540746773013719}, {0.75, 2.156515647499643},
      {0.90, 2.5780921133481733},
  };
  for (const KV& kv : table)
    CHECK(complete_elliptic_K(kv.m) == doctest::Approx(kv.K).epsilon(1e-14));
  CHECK(complete_elliptic_K(0.0) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("jacobi functions: identities and recorded values") {
  for (double m : {0.0, 0.2, 0.64, 0.9, 1.0}) {
    for (double u : {0.0, 0.4, 1.1, 2.7}) {
      JacobiSCD j = jacobi_elliptic(u, m);
      CHECK(j.sn * j.sn + j.cn * j.cn == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(j.dn * j.dn + m * j.sn * j.sn ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  JacobiSCD j = jacobi_elliptic(1.3, 0.64);
  CHECK(j.sn == doctest::Approx(0.90550265844962141).epsilon(1e-14));
  CHECK(j.cn == doctest::Approx(0.42434058907989025).epsilon(1e-14));
  CHECK(j.dn == doctest::Approx(0.68937766046342674).epsilon(1e-14));
  // degenerate limits
  JacobiSCD t = jacobi_elliptic(0.8, 0.0);
  CHECK(t.sn == doctest::Approx(std::sin(0.8)));
  JacobiSCD h = jacobi_elliptic(0.8, 1.0);
  CHECK(h.sn == doctest::Approx(std::tanh(0.8)));
}

TEST_CASE("imaginary modulus reduction matches the defining arc integral") {
  // forward map u(phi) = int_0^phi (1 + k^2 sin^2)^{-1/2}; the reduction
  // must send u back to sin(phi)
  for (double k : {0.3, 1.0, 2.5}) {
    for (double phi : {0.2, 0.7, 1.3}) {
      int n = 20000;
      double h = phi / n, u = 0.0;
      for (int i = 0; i < n; ++i) {
        double a = std::sin(i * h), b = std::sin((i + 0.5) * h);
        double c = std::sin((i + 1) * h);
        u += h / 6.0 *
             (1.0 / std::sqrt(1.0 + k * k * a * a) +
              4.0 / std::sqrt(1.0 + k * k * b * b) +
              1.0 / std::sqrt(1.0 + k * k * c * c));
      }
      CHECK(jacobi_sn_imag_modulus(u, k) ==
            doctest::Approx(std::sin(phi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("cosh-amplitude profile: generator equation and period") {
  for (double k : {0.3, 1.0, 2.5}) {
    SinhGordonProfile p{k, 0.0};
    double T = p.period();
    CHECK(T > 0.0);
    for (int i = 0; i <= 40; ++i) {
      double u = T * i / 40.0;
      double v = p.v(u);
      CHECK(p.vpp(u) + 2.0 * std::sinh(2.0 * v) ==
            doctest::Approx(0.0).epsilon(1e-10));
      // first integral with v'(0)^2 = 4 k^2
      double fi = p.vp(u) * p.vp(u) + 4.0 * std::sinh(v) * std::sinh(v);
      CHECK(fi == doctest::Approx(4.0 * k * k).epsilon(1e-12));
    }
    CHECK(p.v(0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(p.v(T) - p.v(0.0)) < 1e-10);
  }
  CHECK(SinhGordonProfile{1.0, 0.0}.period() ==
        doctest::Approx(2.6220575542921196).epsilon(1e-13));
  // the phase shift moves the profile without changing it
  SinhGordonProfile a{0.7, 0.0}, b{0.7, 0.31};
  CHECK(b.v(0.0) == doctest::Approx(a.v(0.155)).epsilon(1e-13));
}

TEST_CASE("sech cubed antiderivative") {
  CHECK(sech_cubed_antiderivative(0.0) == 0.0);
  CHECK(sech_cubed_antiderivative(1.0) ==
        doctest::Approx(0.67966191540211585).epsilon(1e-14));
  CHECK(sech_cubed_antiderivative(-1.0) ==
        doctest::Approx(-0.67966191540211585).epsilon(1e-14));
  CHECK(sech_cubed_antiderivative(50.0) ==
        doctest::Approx(kPi / 4.0).epsilon(1e-14));
}

TEST_CASE("weierstrass evaluator on the square lattice") {
  WeierstrassLattice L = WeierstrassLattice::from_tau(cplx(0.0, 1.0));
  CHECK(std::abs(L.g2 - 189.07272012923385) < 1e-10);
  CHECK(std::abs(L.g3) < 1e-12);

  WPEvaluator wp(L);
  WPValue w = wp(cplx(0.3, 0.2));
  CHECK(std::abs(w.P - cplx(3.3721036737358201, -5.9914186004556424)) <
        1e-11);
  CHECK(std::abs(w.Pp - cplx(12.822790453615708, 45.838888178322270)) <
        1e-9);
  CHECK_FALSE(w.pole);
  // half-period value is the real branch point
  CHECK(std::abs(wp(cplx(0.5, 0.0)).P - 6.8751858180203728) < 1e-11);
  // differential equation, relative to the cube of |P|
  for (cplx z : {cplx(0.3, 0.2), cplx(0.11, 0.031), cplx(0.43, 0.49)}) {
    WPValue v = wp(z);
    cplx res =
        v.Pp * v.Pp - (4.0 * v.P * v.P * v.P - L.g2 * v.P - L.g3);
    CHECK(std::abs(res) / (1.0 + std::pow(std::abs(v.P), 3.0)) < 1e-9);
  }
  // periodicity and the pole at the origin
  WPValue s = wp(cplx(0.3, 0.2) + cplx(1.0, 1.0));
  CHECK(std::abs(s.P - w.P) < 1e-9);
  CHECK(wp(cplx(0.0, 0.0)).pole);
  CHECK(weierstrass_p(cplx(0.25, 0.33), L).pole == false);
}

TEST_CASE("lattice ratio must lie in the upper half plane") {
  CHECK_THROWS_AS(WeierstrassLattice::from_tau(cplx(0.3, -1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(WeierstrassLattice::from_tau(cplx(1.0, 0.0)),
                  std::domain_error);
}
