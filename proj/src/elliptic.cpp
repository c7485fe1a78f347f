#include "s2xs2/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace s2xs2 {

namespace {

constexpr int kAgmMax = 32;

struct AgmScale {
  int n = 0;
  double a[kAgmMax], c[kAgmMax];
};

// arithmetic-geometric mean scale for parameter m; a[n] -> AGM(1, sqrt(1-m))
AgmScale agm_scale(double m) {
  AgmScale s;
  double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
  s.a[0] = a;
  s.c[0] = c;
  int n = 0;
  while (std::abs(c) > 1e-16 * a && n + 1 < kAgmMax) {
    double an = 0.5 * (a + b);
    double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    c = cn;
    ++n;
    s.a[n] = a;
    s.c[n] = c;
  }
  s.n = n;
  return s;
}

}  // namespace

double complete_elliptic_K(double m) {
  if (m < 0.0 || m >= 1.0)
    throw std::domain_error("complete_elliptic_K: parameter outside [0,1)");
  AgmScale s = agm_scale(m);
  return kPi / (2.0 * s.a[s.n]);
}

JacobiSCD jacobi_elliptic(double u, double m) {
  if (m < 0.0 || m > 1.0)
    throw std::domain_error("jacobi_elliptic: parameter outside [0,1]");
  if (m < 1e-14) return {std::sin(u), std::cos(u), 1.0};
  if (m > 1.0 - 1e-14) {
    double sh = 1.0 / std::cosh(u);
    return {std::tanh(u), sh, sh};
  }

  // keep the phase recursion well above round-off for large arguments
  double K = complete_elliptic_K(m);
  u = std::fmod(u, 4.0 * K);

  AgmScale s = agm_scale(m);
  // descend the Landen scale: sin(2 phi_{n-1} - phi_n) = (c_n/a_n) sin phi_n
  double phi0 = std::ldexp(1.0, s.n) * s.a[s.n] * u;
  double phi1 = phi0;
  for (int n = s.n; n >= 1; --n) {
    double t = std::clamp(s.c[n] / s.a[n] * std::sin(phi0), -1.0, 1.0);
    double prev = 0.5 * (phi0 + std::asin(t));
    phi1 = phi0;
    phi0 = prev;
  }
  JacobiSCD r;
  r.sn = std::sin(phi0);
  r.cn = std::cos(phi0);
  double c10 = std::cos(phi1 - phi0);
  // the phase ratio degenerates to 0/0 at quarter periods; switch to the
  // defining identity there, safe because dn never changes sign
  r.dn = std::abs(c10) > 1e-4 ? r.cn / c10
                              : std::sqrt(1.0 - m * r.sn * r.sn);
  return r;
}

double jacobi_sn_imag_modulus(double u, double k) {
  if (k == 0.0) return std::sin(u);
  double nu2 = 1.0 + k * k;
  double kp = 1.0 / std::sqrt(nu2);     // complementary modulus
  double m = k * k / nu2;               // kappa^2
  JacobiSCD j = jacobi_elliptic(u / kp, m);
  return kp * j.sn / j.dn;
}

// ---- arcsinh-sd profile -------------------------------------------------

namespace {

struct SdChain {
  double y, yp, ypp, yppp;  // y = sinh v and u-derivatives
};

SdChain sd_chain(double u, double k, double delta) {
  SdChain o{0, 0, 0, 0};
  if (k == 0.0) return o;
  double nu = std::sqrt(1.0 + k * k);
  double m = k * k / (nu * nu);
  double lam = k / nu;
  double w = nu * (2.0 * u + delta);
  JacobiSCD j = jacobi_elliptic(w, m);
  double s = j.sn, c = j.cn, d = j.dn;
  double dw = 2.0 * nu;  // dw/du
  double sd1 = c / (d * d);
  double sd2 = s * (2.0 * m * c * c - d * d) / (d * d * d);
  double sd3 = c * (2.0 * m * c * c - d * d) / (d * d) -
               2.0 * m * s * s * c / (d * d) +
               3.0 * m * s * s * c * (2.0 * m * c * c - d * d) / (d * d * d * d);
  o.y = lam * s / d;
  o.yp = lam * dw * sd1;
  o.ypp = lam * dw * dw * sd2;
  o.yppp = lam * dw * dw * dw * sd3;
  return o;
}

}  // namespace

double SinhGordonProfile::v(double u) const {
  return std::asinh(sd_chain(u, k, delta).y);
}
double SinhGordonProfile::vp(double u) const {
  SdChain c = sd_chain(u, k, delta);
  return c.yp / std::sqrt(1.0 + c.y * c.y);
}
double SinhGordonProfile::vpp(double u) const {
  SdChain c = sd_chain(u, k, delta);
  double r = 1.0 + c.y * c.y;
  return c.ypp / std::sqrt(r) - c.yp * c.yp * c.y / std::pow(r, 1.5);
}
double SinhGordonProfile::vppp(double u) const {
  // differentiate v'' = -2 sinh 2v once
  return -4.0 * std::cosh(2.0 * v(u)) * vp(u);
}
double SinhGordonProfile::period() const {
  if (k == 0.0) return 0.0;
  double nu2 = 1.0 + k * k;
  return 2.0 * complete_elliptic_K(k * k / nu2) / std::sqrt(nu2);
}

// ---- closed form or sampled solution ------------------------------------

SolutionField1D SolutionField1D::zero() { return SolutionField1D(); }

SolutionField1D SolutionField1D::closed_form(const SinhGordonProfile& p) {
  SolutionField1D f;
  f.kind_ = p.k == 0.0 ? Kind::kZero : Kind::kClosedForm;
  f.prof_ = p;
  return f;
}

SolutionField1D SolutionField1D::sampled(ProfileSamples s) {
  if (s.v.size() < 2 || s.v.size() != s.vp.size() || s.h <= 0.0)
    throw std::invalid_argument("SolutionField1D: bad sample table");
  SolutionField1D f;
  f.kind_ = Kind::kSampled;
  f.samples_ = std::move(s);
  return f;
}

void SolutionField1D::hermite(double u, double& v, double& vp) const {
  const ProfileSamples& s = samples_;
  int n = static_cast<int>(s.v.size()) - 1;
  double t = (u - s.u0) / s.h;
  int i = std::clamp(static_cast<int>(std::floor(t)), 0, n - 1);
  double r = t - i;  // in [0,1] inside the table
  double h = s.h;
  double v0 = s.v[i], v1 = s.v[i + 1], d0 = s.vp[i] * h, d1 = s.vp[i + 1] * h;
  double h00 = (1 + 2 * r) * (1 - r) * (1 - r);
  double h10 = r * (1 - r) * (1 - r);
  double h01 = r * r * (3 - 2 * r);
  double h11 = r * r * (r - 1);
  v = h00 * v0 + h10 * d0 + h01 * v1 + h11 * d1;
  double g00 = 6 * r * (r - 1);
  double g10 = (1 - r) * (1 - 3 * r);
  double g01 = -g00;
  double g11 = r * (3 * r - 2);
  vp = (g00 * v0 + g10 * d0 + g01 * v1 + g11 * d1) / h;
}

double SolutionField1D::v(double u) const {
  switch (kind_) {
    case Kind::kZero: return 0.0;
    case Kind::kClosedForm: return prof_.v(u);
    default: {
      double a, b;
      hermite(u, a, b);
      return a;
    }
  }
}
double SolutionField1D::vp(double u) const {
  switch (kind_) {
    case Kind::kZero: return 0.0;
    case Kind::kClosedForm: return prof_.vp(u);
    default: {
      double a, b;
      hermite(u, a, b);
      return b;
    }
  }
}
double SolutionField1D::vpp(double u) const {
  switch (kind_) {
    case Kind::kZero: return 0.0;
    case Kind::kClosedForm: return prof_.vpp(u);
    default: return -2.0 * std::sinh(2.0 * v(u));
  }
}
double SolutionField1D::vppp(double u) const {
  if (kind_ == Kind::kZero) return 0.0;
  return -4.0 * std::cosh(2.0 * v(u)) * vp(u);
}

// ---- Weierstrass ---------------------------------------------------------

WeierstrassLattice WeierstrassLattice::from_tau(cplx tau) {
  if (tau.imag() <= 0.0)
    throw std::domain_error("WeierstrassLattice: Im tau must be positive");
  cplx q = std::exp(cplx(0.0, 2.0 * kPi) * tau);
  cplx e4 = 1.0, e6 = 1.0;
  cplx qn = 1.0;
  for (int n = 1; n <= 48; ++n) {
    qn *= q;
    double s3 = 0.0, s5 = 0.0;
    for (int d = 1; d <= n; ++d) {
      if (n % d) continue;
      s3 += static_cast<double>(d) * d * d;
      s5 += static_cast<double>(d) * d * d * d * d;
    }
    e4 += 240.0 * s3 * qn;
    e6 -= 504.0 * s5 * qn;
  }
  WeierstrassLattice L;
  L.tau = tau;
  double pi4 = kPi * kPi * kPi * kPi;
  L.g2 = 4.0 * pi4 / 3.0 * e4;
  L.g3 = 8.0 * pi4 * kPi * kPi / 27.0 * e6;
  return L;
}

namespace {

constexpr int kSeriesTerms = 30;

}  // namespace

WPEvaluator::WPEvaluator(const WeierstrassLattice& L) : L_(L) {
  double rho = std::min(std::min(std::abs(cplx(1.0, 0.0)), std::abs(L.tau)),
                        std::min(std::abs(1.0 + L.tau), std::abs(1.0 - L.tau)));
  rad_ = 0.45 * rho;
  // Laurent coefficients of P at 0: P = z^-2 + sum_{k>=2} c_k z^{2k-2}
  c_.assign(kSeriesTerms + 1, 0.0);
  c_[2] = L.g2 / 20.0;
  c_[3] = L.g3 / 28.0;
  for (int k = 4; k <= kSeriesTerms; ++k) {
    cplx s = 0.0;
    for (int m = 2; m <= k - 2; ++m) s += c_[m] * c_[k - m];
    c_[k] = 3.0 * s / ((2.0 * k + 1.0) * (k - 3.0));
  }
}

WPValue WPEvaluator::operator()(cplx z) const {
  // reduce z modulo the lattice to the centred cell
  double yim = z.imag() / L_.tau.imag();
  double xre = z.real() - yim * L_.tau.real();
  xre -= std::round(xre);
  yim -= std::round(yim);
  cplx zr = xre + yim * L_.tau;

  if (std::abs(zr) < 1e-8) {
    WPValue p = {cplx(1e16, 0.0), cplx(1e24, 0.0), true};
    return p;
  }

  int halvings = 0;
  cplx w = zr;
  while (std::abs(w) > rad_) {
    w *= 0.5;
    ++halvings;
  }

  cplx z2 = w * w;
  WPValue v;
  v.P = 1.0 / z2;
  v.Pp = -2.0 / (z2 * w);
  cplx pow = z2;  // z^{2k-2} built incrementally from k=2
  for (int k = 2; k <= kSeriesTerms; ++k) {
    v.P += c_[k] * pow;
    v.Pp += (2.0 * k - 2.0) * c_[k] * pow / w;
    pow *= z2;
  }

  for (int i = 0; i < halvings; ++i) {
    cplx P = v.P, Pp = v.Pp;
    cplx Ppp = 6.0 * P * P - 0.5 * L_.g2;
    v.P = -2.0 * P + 0.25 * (Ppp / Pp) * (Ppp / Pp);
    v.Pp = -Pp + 0.25 * Ppp * (12.0 * P * Pp * Pp - Ppp * Ppp) / (Pp * Pp * Pp);
  }
  return v;
}

double sech_cubed_antiderivative(double s) {
  double t = std::clamp(s, -700.0, 700.0);
  double sh = std::sinh(t);
  double sc = 1.0 / std::cosh(t);
  return 0.5 * (std::tanh(t) * sc + std::atan(sh));
}

}  // namespace s2xs2
