#pragma once

// Finite-difference machinery shared by the curve reader and the grid
// extraction pipeline. Weights come from Fornberg's recursion, so
// centred and edge-shifted stencils of any order fall out of one
// routine. Interior nodes always get genuinely centred windows; near
// non-periodic edges the window is shifted and widened to keep the
// requested order.

#include <stdexcept>
#include <vector>

namespace s2xs2 {

// weights w such that f^(m)(z) ~ sum w_j f(xs_j), exact for polynomials
// of degree < xs.size()
inline std::vector<double> fd_weights(double z, const std::vector<double>& xs,
                                      int m) {
  int n = static_cast<int>(xs.size());
  if (n < m + 1) throw std::invalid_argument("fd_weights: window too small");
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0, c4 = xs[0] - z;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0, c5 = c4;
    c4 = xs[i] - z;
    for (int j = 0; j < i; ++j) {
      double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

// one stencil: source offsets relative to the node, and weights
struct Stencil {
  std::vector<int> offs;
  std::vector<double> w;
};

// stencil for node i of a line of npts samples with spacing h;
// m = derivative order (1 or 2), order = accuracy order (2 or 4)
inline Stencil line_stencil(int i, int npts, double h, bool periodic,
                            int order, int m) {
  int r = order / 2;
  Stencil s;
  if (periodic || (i - r >= 0 && i + r <= npts - 1)) {
    std::vector<double> xs(2 * r + 1);
    for (int j = -r; j <= r; ++j) xs[j + r] = j * h;
    s.w = fd_weights(0.0, xs, m);
    for (int j = -r; j <= r; ++j) s.offs.push_back(j);
    return s;
  }
  int width = order + m;
  if (width > npts) throw std::invalid_argument("line_stencil: line too short");
  int start = std::max(0, std::min(i - r, npts - width));
  std::vector<double> xs(width);
  for (int j = 0; j < width; ++j) xs[j] = (start + j - i) * h;
  s.w = fd_weights(0.0, xs, m);
  for (int j = 0; j < width; ++j) s.offs.push_back(start + j - i);
  return s;
}

// derivative of a sampled line; T may be double, complex or a vector type
template <typename T>
std::vector<T> derivative_line(const std::vector<T>& f, double h,
                               bool periodic, int order, int m) {
  int n = static_cast<int>(f.size());
  std::vector<T> out(n);
  auto wrap = [&](int idx) {
    if (periodic) idx = ((idx % n) + n) % n;
    return idx;
  };
  for (int i = 0; i < n; ++i) {
    Stencil s = line_stencil(i, n, h, periodic, order, m);
    T acc = s.w[0] * f[wrap(i + s.offs[0])];
    for (size_t j = 1; j < s.w.size(); ++j)
      acc = acc + s.w[j] * f[wrap(i + s.offs[j])];
    out[i] = acc;
  }
  return out;
}

}  // namespace s2xs2
