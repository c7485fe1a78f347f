#include "s2xs2/curves.hpp"

#include <cmath>
#include <stdexcept>

#include "s2xs2/stencils.hpp"

namespace s2xs2 {

namespace {

double simpson(double (*f)(double, double), double p, double a, double b) {
  double c = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a, p) + 4.0 * f(c, p) + f(b, p));
}

double adaptive(double (*f)(double, double), double p, double a, double b,
                double whole, double tol, int depth) {
  double c = 0.5 * (a + b);
  double left = simpson(f, p, a, c), right = simpson(f, p, c, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(f, p, a, c, left, 0.5 * tol, depth - 1) +
         adaptive(f, p, c, b, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(double (*f)(double, double), double p, double a,
                        double b, double tol) {
  return adaptive(f, p, a, b, simpson(f, p, a, b), tol, 40);
}

double period_integrand(double th, double kmax) {
  double s = std::sin(th);
  return 1.0 / std::sqrt(1.0 + kmax * kmax * (1.0 + s * s) / 4.0);
}

double elastic_acc(double k) { return -0.5 * (k * k * k + 2.0 * k); }

}  // namespace

CurvatureProfile CurvatureProfile::constant(double c) {
  CurvatureProfile p;
  p.constant_ = true;
  p.c_ = c;
  return p;
}

CurvatureProfile CurvatureProfile::elastic(double k0, double k0p, double span,
                                           double step,
                                           const Tolerances& tol) {
  if (span <= 0.0 || step <= 0.0)
    throw std::invalid_argument("elastic profile: span and step must be positive");
  CurvatureProfile p;
  p.constant_ = false;
  p.k0_ = k0;
  p.k0p_ = k0p;
  p.u0_ = 0.0;
  p.h_ = step;

  int nsub = std::max(1, static_cast<int>(std::ceil(step / 0.002)));
  double h = step / nsub;
  int nsteps = static_cast<int>(std::ceil(span / step - 1e-12));

  double k = k0, kp = k0p;
  double e0 = k0p * k0p + 0.25 * k0 * k0 * k0 * k0 + k0 * k0;
  double drift = 0.0;
  p.k_.push_back(k);
  p.kp_.push_back(kp);
  for (int i = 0; i < nsteps; ++i) {
    for (int s = 0; s < nsub; ++s) {
      double a1 = kp, b1 = elastic_acc(k);
      double a2 = kp + 0.5 * h * b1, b2 = elastic_acc(k + 0.5 * h * a1);
      double a3 = kp + 0.5 * h * b2, b3 = elastic_acc(k + 0.5 * h * a2);
      double a4 = kp + h * b3, b4 = elastic_acc(k + h * a3);
      k += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
      kp += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    }
    p.k_.push_back(k);
    p.kp_.push_back(kp);
    double e = kp * kp + 0.25 * k * k * k * k + k * k;
    drift = std::max(drift, std::abs(e - e0));
  }
  p.drift_ = drift;
  if (drift > tol.profile_drift)
    throw std::runtime_error("elastic profile: first-integral drift too large");
  return p;
}

CurvatureProfile solve_elastic_profile(double k0, double k0p, double span,
                                       double step, const Tolerances& tol) {
  return CurvatureProfile::elastic(k0, k0p, span, step, tol);
}

double CurvatureProfile::k(double u) const {
  if (constant_) return c_;
  int n = static_cast<int>(k_.size()) - 1;
  double t = (u - u0_) / h_;
  int i = std::max(0, std::min(static_cast<int>(std::floor(t)), n - 1));
  double r = t - i;
  double v0 = k_[i], v1 = k_[i + 1], d0 = kp_[i] * h_, d1 = kp_[i + 1] * h_;
  double h00 = (1 + 2 * r) * (1 - r) * (1 - r);
  double h10 = r * (1 - r) * (1 - r);
  double h01 = r * r * (3 - 2 * r);
  double h11 = r * r * (r - 1);
  return h00 * v0 + h10 * d0 + h01 * v1 + h11 * d1;
}

double CurvatureProfile::kp(double u) const {
  if (constant_) return 0.0;
  int n = static_cast<int>(k_.size()) - 1;
  double t = (u - u0_) / h_;
  int i = std::max(0, std::min(static_cast<int>(std::floor(t)), n - 1));
  double r = t - i;
  double v0 = k_[i], v1 = k_[i + 1], d0 = kp_[i] * h_, d1 = kp_[i + 1] * h_;
  double g00 = 6 * r * (r - 1);
  double g10 = (1 - r) * (1 - 3 * r);
  double g01 = -g00;
  double g11 = r * (3 * r - 2);
  return (g00 * v0 + g10 * d0 + g01 * v1 + g11 * d1) / h_;
}

double CurvatureProfile::kpp(double u) const {
  if (constant_) return 0.0;
  return elastic_acc(k(u));
}

double CurvatureProfile::period() const {
  if (constant_)
    throw std::domain_error("period: constant profile has no elastic period");
  double e = k0p_ * k0p_ + 0.25 * std::pow(k0_, 4) + k0_ * k0_;
  double kmax = std::sqrt(2.0 * (std::sqrt(1.0 + e) - 1.0));
  return 4.0 * adaptive_simpson(period_integrand, kmax, 0.0, 0.5 * kPi, 1e-13);
}

std::pair<double, double> product_ode_residuals(const CurvatureProfile& k1,
                                                const CurvatureProfile& k2,
                                                double u1, double u2) {
  double a = k1.k(u1), b = k2.k(u2);
  double r1 = 2.0 * k1.kpp(u1) + a * (a * a - b * b) + 2.0 * a;
  double r2 = 2.0 * k2.kpp(u2) + b * (b * b - a * a) + 2.0 * b;
  return {r1, r2};
}

SphericalCurve reconstruct_spherical_curve(const CurvatureProfile& prof,
                                           double span, double step) {
  if (span <= 0.0 || step <= 0.0)
    throw std::invalid_argument("reconstruct: span and step must be positive");
  SphericalCurve c;
  c.step = step;

  Vec3 x(0.0, 0.0, 1.0), xp(1.0, 0.0, 0.0);
  int nsub = std::max(1, static_cast<int>(std::ceil(step / 0.002)));
  double h = step / nsub;
  int nsteps = static_cast<int>(std::ceil(span / step - 1e-12));

  auto acc = [&prof](double u, const Vec3& X, const Vec3& Xp) -> Vec3 {
    return -X + prof.k(u) * X.cross(Xp);
  };

  c.x.push_back(x);
  c.xp.push_back(xp);
  double u = 0.0;
  for (int i = 0; i < nsteps; ++i) {
    for (int s = 0; s < nsub; ++s) {
      Vec3 k1x = xp, k1v = acc(u, x, xp);
      Vec3 k2x = xp + 0.5 * h * k1v, k2v = acc(u + 0.5 * h, x + 0.5 * h * k1x, xp + 0.5 * h * k1v);
      Vec3 k3x = xp + 0.5 * h * k2v, k3v = acc(u + 0.5 * h, x + 0.5 * h * k2x, xp + 0.5 * h * k2v);
      Vec3 k4x = xp + h * k3v, k4v = acc(u + h, x + h * k3x, xp + h * k3v);
      x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      xp += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      u += h;
      // re-impose the exact constraints; the steps above preserve them
      // to truncation error only
      x.normalize();
      xp -= xp.dot(x) * x;
      xp.normalize();
    }
    c.x.push_back(x);
    c.xp.push_back(xp);
  }
  return c;
}

std::vector<double> geodesic_curvature(const SphericalCurve& c,
                                       const Tolerances& tol) {
  int n = static_cast<int>(c.x.size());
  if (n < 6) throw std::invalid_argument("geodesic_curvature: too few samples");
  std::vector<Vec3> xp = derivative_line(c.x, c.step, false, 4, 1);
  std::vector<Vec3> xpp = derivative_line(c.x, c.step, false, 4, 2);
  for (int i = 2; i < n - 2; ++i)
    if (std::abs(xp[i].norm() - 1.0) > tol.unit_speed)
      throw std::runtime_error("geodesic_curvature: curve is not unit speed");
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = xpp[i].dot(c.x[i].cross(xp[i]));
  return k;
}

}  // namespace s2xs2
