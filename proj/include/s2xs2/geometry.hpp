#pragma once

// Pointwise geometry of surfaces in the product of two unit spheres,
// viewed inside R^3 x R^3. Conventions used everywhere:
//
//   * a point is a 6-vector x = (x1, x2) with |x1| = |x2| = 1,
//   * J applies the complex structure of each sphere, J1 = (J, J) and
//     J2 = (J, -J) where at q the map J sends w to q x w,
//   * the reflection x^ = (x1, -x2) spans, together with x, the normal
//     bundle of the product inside R^6,
//   * z = u1 + i u2 is a conformal coordinate, x_z = (x_u1 - i x_u2)/2,
//     and the conformal factor is e^{2 sigma} = (|x_u1|^2 + |x_u2|^2)/2,
//   * xi is the complex unit normal, bilinearly isotropic: <xi, xi> = 0,
//     <xi, conj xi> = 1.
//
// The invariants attached to a conformal immersion are the conformal
// factor, the connection form rho of the normal bundle, the Kaehler
// angles C1, C2, the pairings gamma1, gamma2 of J x_z against the
// normal, the two components f1, f2 of the Hopf-type quadratic
// differentials and the complex mean curvature H.

#include <array>
#include <complex>

#include "s2xs2/linalg.hpp"
#include "s2xs2/tolerances.hpp"

namespace s2xs2 {

inline Vec6 hat_point(const Vec6& x) { return join(head3(x), Vec3(-tail3(x))); }
inline CVec6 hat_point(const CVec6& x) { return join(head3(x), CVec3(-tail3(x))); }

// complex structures of the two factors, applied to (co)tangent vectors at x
Vec6 j1(const Vec6& x, const Vec6& v);
Vec6 j2(const Vec6& x, const Vec6& v);
CVec6 j1(const Vec6& x, const CVec6& v);
CVec6 j2(const Vec6& x, const CVec6& v);

// Kaehler two-forms omega_j(X, Y) = <J_j X, Y> at x
double omega1(const Vec6& x, const Vec6& X, const Vec6& Y);
double omega2(const Vec6& x, const Vec6& X, const Vec6& Y);

// Riemann tensor of the product metric, R(X,Y,Z,W), for tangent vectors
// at x. Sectional curvature of the plane spanned by X, Y is
// R(X,Y,X,Y) / (|X|^2 |Y|^2 - <X,Y>^2).
double curvature_tensor(const Vec6& x, const Vec6& X, const Vec6& Y,
                        const Vec6& Z, const Vec6& W);
double sectional_curvature(const Vec6& x, const Vec6& X, const Vec6& Y);

// invariants of a conformal immersion at a point
struct FundamentalData {
  double sigma = 0.0;  // log conformal factor
  cplx rho = 0.0;      // normal connection form, coefficient of dz
  double C1 = 0.0;     // Kaehler function of J1
  double C2 = 0.0;     // Kaehler function of J2
  cplx g1 = 0.0;       // <J1 x_z, conj xi>
  cplx g2 = 0.0;       // <J2 x_z, xi>
  cplx f1 = 0.0;       // <x_zz, conj xi>
  cplx f2 = 0.0;       // <x_zz, xi>
  cplx H = 0.0;        // complex mean curvature
};

// coefficients of V in the moving frame {x_z, x_zbar, xi, xibar}
struct FrameCoeffs {
  cplx a, b, c, d;
};
FrameCoeffs frame_decompose(const CVec6& V, const CVec6& xz, const CVec6& xi,
                            double e2sigma);

// second-order data of the immersion at one node, real derivatives
struct SecondJet {
  Vec6 x, xu, xv, xuu, xuv, xvv;
};

// deterministic positively oriented orthonormal basis (e3, e4) of the
// normal plane inside the tangent space of the product
struct NormalFrame {
  Vec6 e3, e4;
  bool swapped;  // orientation fix applied
};
NormalFrame make_normal_frame(const Vec6& x, const Vec6& xu, const Vec6& xv);

// everything that can be read off at a single node given xi; rho needs
// neighbours and is filled in by the grid pipeline
struct PointExtraction {
  FundamentalData F;
  CVec6 xz, xzz, xzzb;
  double e2sigma = 0.0;
  double conf_defect = 0.0;  // relative conformality violation
  bool near_complex1 = false, near_complex2 = false;
};
PointExtraction extract_at_point(const SecondJet& jet, const CVec6& xi,
                                 const Tolerances& tol);

// moving frame as integrated state: the reflection x^ is algebraic in x
// and is not carried separately
struct FrameState {
  Vec6 x;
  CVec6 xz;
  CVec6 xi;
};

// z- and zbar-derivatives of the frame state dictated by the invariants
struct FrameRhs {
  CVec6 xzz, xzzb, xiz, xizb;
};
FrameRhs structure_rhs(const FrameState& s, const FundamentalData& F,
                       cplx sigma_z);

// max violation of the algebraic frame constraints (unit factors,
// conformality, isotropy and normalization of xi, tangency, normality)
double frame_defect(const FrameState& s);

// defect of the algebraic relation expressing hat(x)_z in the frame
double hat_relation_defect(const FrameState& s, const FundamentalData& F);

// derived curvature quantities
inline double gauss_curvature(double e2sigma, cplx sigma_zzb) {
  return -4.0 * std::real(sigma_zzb) / e2sigma;
}
inline double normal_curvature(double e2sigma, cplx rho_zb) {
  return 4.0 * std::real(rho_zb) / e2sigma;
}
// squared norm of the second fundamental form
inline double second_form_norm2(const FundamentalData& F) {
  double e4s = std::exp(4.0 * F.sigma);
  return 8.0 / e4s * (std::norm(F.f1) + std::norm(F.f2)) +
         2.0 * std::norm(F.H);
}

}  // namespace s2xs2
