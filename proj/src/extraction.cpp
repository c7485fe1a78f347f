#include "s2xs2/extraction.hpp"

#include <cmath>
#include <stdexcept>

namespace s2xs2 {

namespace {

const cplx kI(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);

template <typename T>
std::vector<T> grid_derivative(const GridSpec& spec, const std::vector<T>& f,
                               int dir, int order, int m) {
  std::vector<T> out(f.size());
  if (dir == 1) {
    std::vector<T> line(spec.m1());
    for (int j = 0; j < spec.m2(); ++j) {
      for (int i = 0; i < spec.m1(); ++i) line[i] = f[spec.idx(i, j)];
      std::vector<T> d =
          derivative_line(line, spec.h1(), spec.periodic1, order, m);
      for (int i = 0; i < spec.m1(); ++i) out[spec.idx(i, j)] = d[i];
    }
  } else {
    std::vector<T> line(spec.m2());
    for (int i = 0; i < spec.m1(); ++i) {
      for (int j = 0; j < spec.m2(); ++j) line[j] = f[spec.idx(i, j)];
      std::vector<T> d =
          derivative_line(line, spec.h2(), spec.periodic2, order, m);
      for (int j = 0; j < spec.m2(); ++j) out[spec.idx(i, j)] = d[j];
    }
  }
  return out;
}

// The pointwise frame fixes the normal plane but not its orientation:
// xi and conj(xi) are both unit isotropic sections of it. A continuous
// section exists over the whole grid, so continue whichever of the two
// overlaps the neighbor better, and fail only when the plane itself has
// rotated away between adjacent nodes.
void align_phase(CVec6& cur, const CVec6& prev, double guard) {
  cplx inner = hermitian(cur, prev);
  cplx inner_bar = hermitian(cur.conjugate(), prev);
  if (std::norm(inner) + std::norm(inner_bar) < guard * guard)
    throw std::runtime_error(
        "frame tracking lost: normal planes turn too fast for this grid");
  if (std::abs(inner_bar) > std::abs(inner)) {
    cur = cur.conjugate();
    inner = inner_bar;
  }
  cur *= std::exp(-kI * std::arg(inner));
}

// total phase gathered by the frame around one periodic grid line; a
// plain sum of step phases, so consecutive lines can be compared without
// a branch cut as long as no single step is near pi
double loop_phase(const std::vector<CVec6>& line) {
  int n = static_cast<int>(line.size());
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    s += std::arg(hermitian(line[(i + 1) % n], line[i]));
  return s;
}

// the loop phase is a holonomy and cannot be gauged away; spread it
// uniformly along the line so the stored field has no seam kink
void distribute_loop_phase(const GridSpec& spec, std::vector<CVec6>& xi,
                           int dir) {
  int outer = (dir == 1) ? spec.m2() : spec.m1();
  int inner = (dir == 1) ? spec.m1() : spec.m2();
  double span = (dir == 1) ? (spec.u1b - spec.u1a) : (spec.u2b - spec.u2a);
  double h = (dir == 1) ? spec.h1() : spec.h2();
  double prev = 0.0;
  for (int o = 0; o < outer; ++o) {
    std::vector<CVec6> line(inner);
    for (int k = 0; k < inner; ++k)
      line[k] = xi[dir == 1 ? spec.idx(k, o) : spec.idx(o, k)];
    double phi = loop_phase(line);
    if (o > 0) phi += 2.0 * kPi * std::round((prev - phi) / (2.0 * kPi));
    prev = phi;
    for (int k = 0; k < inner; ++k)
      xi[dir == 1 ? spec.idx(k, o) : spec.idx(o, k)] *=
          std::exp(kI * (phi / span) * (k * h));
  }
}

}  // namespace

ExtractedData extract_fundamental_data(const SurfaceGrid& g,
                                       const ExtractionOptions& opt) {
  if (opt.order != 2 && opt.order != 4)
    throw std::invalid_argument("extract_fundamental_data: order must be 2 or 4");
  const GridSpec& spec = g.spec;
  int m1 = spec.m1(), m2 = spec.m2();

  std::vector<Vec6> xu = grid_derivative(spec, g.x, 1, opt.order, 1);
  std::vector<Vec6> xv = grid_derivative(spec, g.x, 2, opt.order, 1);
  std::vector<Vec6> xuu = grid_derivative(spec, g.x, 1, opt.order, 2);
  std::vector<Vec6> xvv = grid_derivative(spec, g.x, 2, opt.order, 2);
  std::vector<Vec6> xuv = grid_derivative(spec, xu, 2, opt.order, 1);

  std::vector<CVec6> xi(spec.size());
  for (int at = 0; at < spec.size(); ++at) {
    NormalFrame nf = make_normal_frame(g.x[at], xu[at], xv[at]);
    xi[at] = (complexify(nf.e4) - kI * complexify(nf.e3)) / kSqrt2;
  }

  // one smooth phase over the grid: seed the origin, walk the bottom
  // row, then walk every column
  for (int i = 1; i < m1; ++i)
    align_phase(xi[spec.idx(i, 0)], xi[spec.idx(i - 1, 0)],
                opt.tol.frame_tracking);
  for (int i = 0; i < m1; ++i)
    for (int j = 1; j < m2; ++j)
      align_phase(xi[spec.idx(i, j)], xi[spec.idx(i, j - 1)],
                  opt.tol.frame_tracking);

  // tracking settles the orientation only relative to the seed node; if
  // the section as a whole sits on the conjugate side, the coefficients
  // would read zero wherever the surface carries data, so take a grid
  // vote and conjugate everything when the other side wins
  double keep = 0.0, flip = 0.0;
  for (int at = 0; at < spec.size(); ++at) {
    CVec6 xz = 0.5 * (complexify(xu[at]) - kI * complexify(xv[at]));
    CVec6 xib = xi[at].conjugate();
    keep += std::abs(bilinear(j1(g.x[at], xz), xib)) +
            std::abs(bilinear(j2(g.x[at], xz), xi[at]));
    flip += std::abs(bilinear(j1(g.x[at], xz), xi[at])) +
            std::abs(bilinear(j2(g.x[at], xz), xib));
  }
  if (flip > keep)
    for (CVec6& v : xi) v = v.conjugate();
  if (opt.gauge_rotation != 0.0) {
    cplx ph = std::exp(kI * opt.gauge_rotation);
    for (CVec6& v : xi) v *= ph;
  }

  if (spec.periodic1) distribute_loop_phase(spec, xi, 1);
  if (spec.periodic2) distribute_loop_phase(spec, xi, 2);

  std::vector<CVec6> xiu = grid_derivative(spec, xi, 1, opt.order, 1);
  std::vector<CVec6> xiv = grid_derivative(spec, xi, 2, opt.order, 1);

  ExtractedData out;
  out.spec = spec;
  out.order = opt.order;
  out.F.resize(spec.size());
  out.xi = std::move(xi);
  out.flag1.assign(spec.size(), 0);
  out.flag2.assign(spec.size(), 0);
  out.min_e2sigma = 1e300;

  for (int at = 0; at < spec.size(); ++at) {
    SecondJet jet{g.x[at], xu[at], xv[at], xuu[at], xuv[at], xvv[at]};
    PointExtraction pe = extract_at_point(jet, out.xi[at], opt.tol);
    if (pe.e2sigma < opt.tol.degenerate_metric)
      throw std::runtime_error(
          "extract_fundamental_data: degenerate metric on the grid");
    if (pe.conf_defect > opt.tol.conformality)
      throw std::runtime_error(
          "extract_fundamental_data: coordinates are not conformal");
    CVec6 xiz = 0.5 * (xiu[at] - kI * xiv[at]);
    pe.F.rho = bilinear(xiz, CVec6(out.xi[at].conjugate()));
    out.F[at] = pe.F;
    out.flag1[at] = pe.near_complex1 ? 1 : 0;
    out.flag2[at] = pe.near_complex2 ? 1 : 0;
    out.min_e2sigma = std::min(out.min_e2sigma, pe.e2sigma);
    out.max_conf_defect = std::max(out.max_conf_defect, pe.conf_defect);
  }
  return out;
}

JetField jets_from_analytic(const SurfaceGrid& g) {
  if (!g.has_jets())
    throw std::invalid_argument("jets_from_analytic: grid carries no data");
  return {g.spec, g.jets, 0, 0};
}

namespace {

// shared differencing core: field values in, complete jets out
JetField jets_from_fields(const GridSpec& spec,
                          const std::vector<FundamentalData>& F,
                          const std::vector<std::uint8_t>& fl1,
                          const std::vector<std::uint8_t>& fl2, int order) {
  int n = spec.size();
  std::vector<double> sig(n), C1(n), C2(n);
  std::vector<cplx> rho(n), g1(n), g2(n), f1(n), f2(n), H(n);
  for (int at = 0; at < n; ++at) {
    sig[at] = F[at].sigma;
    rho[at] = F[at].rho;
    C1[at] = F[at].C1;
    C2[at] = F[at].C2;
    g1[at] = F[at].g1;
    g2[at] = F[at].g2;
    f1[at] = F[at].f1;
    f2[at] = F[at].f2;
    H[at] = F[at].H;
  }

  auto d1 = [&](const auto& f) { return grid_derivative(spec, f, 1, order, 1); };
  auto d2 = [&](const auto& f) { return grid_derivative(spec, f, 2, order, 1); };
  auto d11 = [&](const auto& f) { return grid_derivative(spec, f, 1, order, 2); };
  auto d22 = [&](const auto& f) { return grid_derivative(spec, f, 2, order, 2); };

  auto sig1 = d1(sig), sig2 = d2(sig), sig11 = d11(sig), sig22 = d22(sig);
  auto rho1 = d1(rho), rho2 = d2(rho);
  auto C1u = d1(C1), C1v = d2(C1), C2u = d1(C2), C2v = d2(C2);
  auto g1u = d1(g1), g1v = d2(g1), g2u = d1(g2), g2v = d2(g2);
  auto f1u = d1(f1), f1v = d2(f1), f2u = d1(f2), f2v = d2(f2);
  auto f1uu = d11(f1), f1vv = d22(f1), f1uv = d1(d2(f1));
  auto f2uu = d11(f2), f2vv = d22(f2), f2uv = d1(d2(f2));
  auto Hu = d1(H), Hv = d2(H), Huu = d11(H), Hvv = d22(H);

  JetField jf;
  jf.spec = spec;
  jf.margin1 = spec.periodic1 ? 0 : interior_margin(order);
  jf.margin2 = spec.periodic2 ? 0 : interior_margin(order);
  jf.jets.resize(n);
  for (int at = 0; at < n; ++at) {
    DataJet& d = jf.jets[at];
    d.F = F[at];
    d.sigma_z = 0.5 * cplx(sig1[at], -sig2[at]);
    d.sigma_zzb = 0.25 * (sig11[at] + sig22[at]);
    d.rho_z = 0.5 * (rho1[at] - kI * rho2[at]);
    d.rho_zb = 0.5 * (rho1[at] + kI * rho2[at]);
    d.C1_z = 0.5 * cplx(C1u[at], -C1v[at]);
    d.C2_z = 0.5 * cplx(C2u[at], -C2v[at]);
    d.g1_zb = 0.5 * (g1u[at] + kI * g1v[at]);
    d.g2_zb = 0.5 * (g2u[at] + kI * g2v[at]);
    d.f1_zb = 0.5 * (f1u[at] + kI * f1v[at]);
    d.f2_zb = 0.5 * (f2u[at] + kI * f2v[at]);
    d.f1_zbzb = 0.25 * (f1uu[at] - f1vv[at] + 2.0 * kI * f1uv[at]);
    d.f2_zbzb = 0.25 * (f2uu[at] - f2vv[at] + 2.0 * kI * f2uv[at]);
    d.H_z = 0.5 * (Hu[at] - kI * Hv[at]);
    d.H_zb = 0.5 * (Hu[at] + kI * Hv[at]);
    d.H_zzb = 0.25 * (Huu[at] + Hvv[at]);
    d.flag1 = fl1[at] != 0;
    d.flag2 = fl2[at] != 0;
  }
  return jf;
}

}  // namespace

JetField jets_from_fields_fd(const SurfaceGrid& g, int order) {
  if (!g.has_jets())
    throw std::invalid_argument("jets_from_fields_fd: grid carries no data");
  int n = g.spec.size();
  std::vector<FundamentalData> F(n);
  std::vector<std::uint8_t> fl1(n), fl2(n);
  for (int at = 0; at < n; ++at) {
    F[at] = g.jets[at].F;
    fl1[at] = g.jets[at].flag1 ? 1 : 0;
    fl2[at] = g.jets[at].flag2 ? 1 : 0;
  }
  return jets_from_fields(g.spec, F, fl1, fl2, order);
}

JetField jets_from_extracted(const ExtractedData& e) {
  return jets_from_fields(e.spec, e.F, e.flag1, e.flag2, e.order);
}

}  // namespace s2xs2
