#pragma once

// Surface builders: canonical test surfaces, products of spherical
// curves, the associated family integrated from its invariants, the
// doubly periodic construction from an elliptic function, and the polar
// construction driven by a one-dimensional profile. Builders return a
// sampled grid, and attach closed-form fundamental data with enough
// derivatives for the residual operators whenever it is available.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "s2xs2/curves.hpp"
#include "s2xs2/elliptic.hpp"
#include "s2xs2/geometry.hpp"

namespace s2xs2 {

struct GridSpec {
  int n1 = 0, n2 = 0;  // cell counts per direction
  double u1a = 0.0, u1b = 0.0, u2a = 0.0, u2b = 0.0;
  bool periodic1 = false, periodic2 = false;

  // node counts: periodic directions omit the duplicate seam node
  int m1() const { return periodic1 ? n1 : n1 + 1; }
  int m2() const { return periodic2 ? n2 : n2 + 1; }
  double h1() const { return (u1b - u1a) / n1; }
  double h2() const { return (u2b - u2a) / n2; }
  double u1(int i) const { return u1a + i * h1(); }
  double u2(int j) const { return u2a + j * h2(); }
  int idx(int i1, int i2) const { return i2 * m1() + i1; }
  int size() const { return m1() * m2(); }
};

// closed-form data and derivatives at a node, inputs of the residual ops
struct DataJet {
  FundamentalData F;
  cplx sigma_z = 0.0, sigma_zzb = 0.0;
  cplx rho_z = 0.0, rho_zb = 0.0;
  cplx C1_z = 0.0, C2_z = 0.0;
  cplx g1_zb = 0.0, g2_zb = 0.0;
  cplx f1_zb = 0.0, f2_zb = 0.0;
  cplx f1_zbzb = 0.0, f2_zbzb = 0.0;
  cplx H_z = 0.0, H_zb = 0.0, H_zzb = 0.0;
  bool flag1 = false, flag2 = false;  // factor tangent complex, gamma zeroed
};

struct SurfaceGrid {
  GridSpec spec;
  std::string construction;
  std::map<std::string, double> params;  // scalar build parameters, for IO
  std::vector<Vec6> x;        // row-major, idx = i2 * m1 + i1
  std::vector<DataJet> jets;  // empty when only points are known
  bool has_jets() const { return !jets.empty(); }
};

// ---- canonical surfaces --------------------------------------------------

enum class CanonicalKind { slice_first, slice_second, diagonal, clifford };

// sphere kinds use conformal coordinates on [0, 2pi) x [-vmax, vmax];
// the torus kind covers [0, 2pi)^2 and ignores vmax
SurfaceGrid build_canonical(CanonicalKind kind, int n1, int n2,
                            double vmax = 3.0);

// ---- products of spherical curves ----------------------------------------

// x(u1, u2) = (x1(u1), x2(u2)); a direction becomes periodic when its
// profile is constant and the span matches the closure period
SurfaceGrid build_product(const CurvatureProfile& p1, double span1, int n1,
                          const CurvatureProfile& p2, double span2, int n2);

// ---- associated family from two profiles and an angle ---------------------

struct XtParams {
  double t = 0.0;
  SolutionField1D v, w;
};

struct FrameIntegrationReport {
  double max_defect = 0.0;      // worst algebraic frame violation
  double max_hat_defect = 0.0;  // worst reflection-relation violation
};

// pointwise closed-form data of the family (independent of integration)
DataJet xt_data(const XtParams& P, double u1);

// constraint residual e^{it} cosh^3(q) pbar_z - cosh^3(p) q_z, p = v + w,
// q = v - w; zero iff the member is critical for the constrained problem
cplx xt_constraint_residual(const XtParams& P, double u1);

SurfaceGrid build_xt(const XtParams& P, int n1, int n2, double u1span,
                     double u2span, FrameIntegrationReport* report = nullptr);

// row-major versus column-major full-grid sweeps with a midpoint stepper
// at the grid spacing; sup distance between the two frame fields
double xt_two_sweep_gap(const XtParams& P, int n1, int n2, double u1span,
                        double u2span);

// ---- doubly periodic construction from an elliptic function ---------------

// both factors are rational images of P functions on the lattice Z + tau Z,
// the second shifted by z0; tau must be purely imaginary so that the grid
// coordinates stay conformal
SurfaceGrid build_weierstrass(cplx tau, cplx z0, int n1, int n2);

// ---- polar construction --------------------------------------------------

struct GaussMapReport {
  double max_unit_defect = 0.0;  // sup | |V| - 1 |
  double rank3_residual = 0.0;   // relative moment weight outside the 3-space
};

SurfaceGrid build_gauss_map(const SinhGordonProfile& prof, int n1, int n2,
                            GaussMapReport* report = nullptr);

}  // namespace s2xs2
