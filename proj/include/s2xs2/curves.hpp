#pragma once

// Curvature profiles and curves on the unit sphere. Profiles drive the
// product-surface builders; the reconstruction integrates the Frenet
// system x'' = -x + k (x cross x') at unit speed and the reader recovers
// k = <x'', x cross x'> by finite differences.

#include <vector>

#include "s2xs2/linalg.hpp"
#include "s2xs2/tolerances.hpp"

namespace s2xs2 {

class CurvatureProfile {
 public:
  // k(u) identically c
  static CurvatureProfile constant(double c);
  // solves 2 k'' + k^3 + 2 k = 0 on [0, span] with k(0) = k0, k'(0) = k0p;
  // step is the sample spacing of the dense table, integration substeps
  // are chosen internally to keep the first integral tight
  static CurvatureProfile elastic(double k0, double k0p, double span,
                                  double step, const Tolerances& tol = {});

  double k(double u) const;
  double kp(double u) const;
  double kpp(double u) const;  // from the generator, not differencing
  bool is_constant() const { return constant_; }

  // conserved quantity (k')^2 + k^4/4 + k^2: worst drift over the table
  double energy_drift() const { return drift_; }
  // least positive period of (k, k'), by quadrature of the first integral;
  // only defined for elastic profiles with k'(0) = 0
  double period() const;

  // dense sample table (empty for constant profiles); lets callers check
  // the defining equation by differencing instead of trusting kpp()
  double table_step() const { return h_; }
  const std::vector<double>& table_k() const { return k_; }

 private:
  bool constant_ = true;
  double c_ = 0.0;
  double k0_ = 0.0, k0p_ = 0.0;
  double u0_ = 0.0, h_ = 0.0;
  double drift_ = 0.0;
  std::vector<double> k_, kp_;
};

CurvatureProfile solve_elastic_profile(double k0, double k0p, double span,
                                       double step,
                                       const Tolerances& tol = {});

// length after which a circle of geodesic curvature c closes
inline double circle_period(double c) {
  return 2.0 * kPi / std::sqrt(1.0 + c * c);
}

// residuals of the coupled profile system
//   2 k1'' + k1 (k1^2 - k2^2) + 2 k1,  2 k2'' + k2 (k2^2 - k1^2) + 2 k2
// evaluated with generator second derivatives
std::pair<double, double> product_ode_residuals(const CurvatureProfile& k1,
                                                const CurvatureProfile& k2,
                                                double u1, double u2);

struct SphericalCurve {
  double step = 0.0;
  std::vector<Vec3> x, xp;  // samples at u_i = i * step, unit speed
};

SphericalCurve reconstruct_spherical_curve(const CurvatureProfile& prof,
                                           double span, double step);

// finite-difference geodesic curvature of a sampled unit-speed curve;
// order-4 stencils, one-sided at the ends
std::vector<double> geodesic_curvature(const SphericalCurve& c,
                                       const Tolerances& tol = {});

}  // namespace s2xs2
