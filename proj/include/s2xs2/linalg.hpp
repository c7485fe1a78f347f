#pragma once

// Small fixed-size vector types and the two pairings used throughout:
// the real Euclidean pairing extended bilinearly (no conjugation) to
// complexified vectors, and the Hermitian pairing (conjugate-linear in
// the second slot). Keeping them as named helpers avoids the trap of
// Eigen's dot(), which conjugates its *first* argument.

#include <Eigen/Dense>
#include <complex>

namespace s2xs2 {

using cplx = std::complex<double>;

using Vec3  = Eigen::Vector3d;
using Vec6  = Eigen::Matrix<double, 6, 1>;
using CVec3 = Eigen::Vector3cd;
using CVec6 = Eigen::Matrix<cplx, 6, 1>;

inline constexpr double kPi = 3.14159265358979323846;

// Bilinear pairing <a,b> = sum a_i b_i, no conjugation.
inline cplx bilinear(const CVec6& a, const CVec6& b) {
  return (a.array() * b.array()).sum();
}
inline double bilinear(const Vec6& a, const Vec6& b) { return a.dot(b); }

// Hermitian pairing <a,b>_H = sum a_i conj(b_i), linear in the first slot.
inline cplx hermitian(const CVec6& a, const CVec6& b) {
  return (a.array() * b.array().conjugate()).sum();
}

inline double sqnorm(const CVec6& a) { return a.squaredNorm(); }

inline CVec6 complexify(const Vec6& a) { return a.cast<cplx>(); }

inline Vec6 join(const Vec3& a, const Vec3& b) {
  Vec6 r;
  r << a, b;
  return r;
}
inline CVec6 join(const CVec3& a, const CVec3& b) {
  CVec6 r;
  r << a, b;
  return r;
}

inline Vec3 head3(const Vec6& a) { return a.head<3>(); }
inline Vec3 tail3(const Vec6& a) { return a.tail<3>(); }
inline CVec3 head3(const CVec6& a) { return a.head<3>(); }
inline CVec3 tail3(const CVec6& a) { return a.tail<3>(); }

}  // namespace s2xs2
