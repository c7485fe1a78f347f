#pragma once

// Elliptic integrals and functions needed by the explicit families:
// complete elliptic integral via the arithmetic-geometric mean, Jacobi
// sn/cn/dn via the descending Landen transformation, the imaginary
// modulus reduction, the arcsinh-sd profile solving v'' + 2 sinh 2v = 0,
// the Weierstrass P function from q-series invariants, and the closed
// antiderivative of sech^3.

#include <complex>
#include <vector>

#include "s2xs2/linalg.hpp"

namespace s2xs2 {

// complete elliptic integral of the first kind, parameter m = k^2 in [0, 1)
double complete_elliptic_K(double m);

struct JacobiSCD {
  double sn, cn, dn;
};

// Jacobi elliptic functions, parameter m in [0, 1]
JacobiSCD jacobi_elliptic(double u, double m);

// sn(u, i k) for purely imaginary modulus i k, real k >= 0, reduced to
// real-modulus functions: sn(u, ik) = kp * sd(u / kp, kappa) with
// kappa = k / sqrt(1 + k^2), kp = 1 / sqrt(1 + k^2)
double jacobi_sn_imag_modulus(double u, double k);

// Periodic solution of v'' + 2 sinh 2v = 0 with amplitude arcsinh(k):
//   sinh v(u) = (k / nu) sd(nu (2u + delta), kappa^2),
//   nu^2 = 1 + k^2, kappa^2 = k^2 / nu^2.
// k = 0 gives the zero solution. The first integral is
// (v')^2 = 4 k^2 - 4 sinh^2 v.
struct SinhGordonProfile {
  double k = 1.0;
  double delta = 0.0;

  double v(double u) const;
  double vp(double u) const;
  double vpp(double u) const;   // via the Jacobi chain, not the ODE
  double vppp(double u) const;  // via the differentiated ODE
  double period() const;        // 2 K(kappa^2) / nu
};

// closed-form profile or a sampled one-dimensional solution
struct ProfileSamples {
  double u0 = 0.0, h = 1.0;
  std::vector<double> v, vp;
};

class SolutionField1D {
 public:
  static SolutionField1D zero();
  static SolutionField1D closed_form(const SinhGordonProfile& p);
  static SolutionField1D sampled(ProfileSamples s);

  double v(double u) const;
  double vp(double u) const;
  double vpp(double u) const;   // sampled path uses the equation itself
  double vppp(double u) const;
  bool is_zero() const { return kind_ == Kind::kZero; }

 private:
  enum class Kind { kZero, kClosedForm, kSampled } kind_ = Kind::kZero;
  SinhGordonProfile prof_;
  ProfileSamples samples_;
  void hermite(double u, double& v, double& vp) const;
};

// Weierstrass data for the lattice Z + tau Z, invariants from the
// Eisenstein q-series (fast for Im tau >= 1/2)
struct WeierstrassLattice {
  cplx tau;
  cplx g2, g3;
  static WeierstrassLattice from_tau(cplx tau);
};

struct WPValue {
  cplx P = 0.0, Pp = 0.0;
  bool pole = false;  // z within 1e-8 of a lattice point
};

// evaluator with cached Laurent coefficients; reduces z to the centred
// cell, sums the series inside a safe disc and doubles back out
class WPEvaluator {
 public:
  explicit WPEvaluator(const WeierstrassLattice& L);
  WPValue operator()(cplx z) const;

 private:
  WeierstrassLattice L_;
  double rad_;
  std::vector<cplx> c_;
};

inline WPValue weierstrass_p(cplx z, const WeierstrassLattice& L) {
  return WPEvaluator(L)(z);
}

// antiderivative of sech^3 vanishing at 0:
// (tanh s sech s + arctan(sinh s)) / 2, limits +-pi/4
double sech_cubed_antiderivative(double s);

}  // namespace s2xs2
