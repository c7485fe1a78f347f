#include "s2xs2/residuals.hpp"

#include <cmath>
#include <stdexcept>

namespace s2xs2 {

namespace {

const cplx kI(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);

struct NodeResiduals {
  double C1, C2, g1, g2, f1, f2;
  double norm1, norm2, gauss;
  double willmore, wplus, wminus;
  double hform, hform_consistency;
  double mw;
};

NodeResiduals node_residuals(const DataJet& d) {
  const FundamentalData& F = d.F;
  double e2s = std::exp(2.0 * F.sigma);
  double e4s = e2s * e2s;
  cplx rb = std::conj(F.rho);
  cplx sb_z = std::conj(d.sigma_z);
  cplx Hb = std::conj(F.H);
  cplx Hb_z = std::conj(d.H_zb);  // z-derivative of conj H
  double af1 = std::norm(F.f1), af2 = std::norm(F.f2);
  double K = gauss_curvature(e2s, d.sigma_zzb);
  double Kp = normal_curvature(e2s, d.rho_zb);

  NodeResiduals r;
  r.C1 = std::abs(d.C1_z - 2.0 * kI / e2s * F.f1 * std::conj(F.g1) +
                  (kSqrt2 / 2.0) * F.g1 * F.H);
  r.C2 = std::abs(d.C2_z - 2.0 * kI / e2s * F.f2 * std::conj(F.g2) -
                  (kSqrt2 / 2.0) * F.g2 * Hb);
  r.g1 = std::abs(d.g1_zb - rb * F.g1 - (kSqrt2 / 2.0) * e2s * F.C1 * Hb);
  r.g2 = std::abs(d.g2_zb + rb * F.g2 + (kSqrt2 / 2.0) * e2s * F.C2 * F.H);
  r.f1 = std::abs(d.f1_zb - rb * F.f1 -
                  kI * kSqrt2 * e2s / 4.0 * (Hb_z + F.rho * Hb) -
                  0.25 * kI * e2s * F.C1 * F.g1);
  r.f2 = std::abs(d.f2_zb + rb * F.f2 +
                  kI * kSqrt2 * e2s / 4.0 * (d.H_z - F.rho * F.H) -
                  0.25 * kI * e2s * F.C2 * F.g2);

  r.norm1 = std::abs(af1 - e4s / 8.0 *
                               (std::norm(F.H) + F.C1 * F.C1 - K - Kp));
  r.norm2 = std::abs(af2 - e4s / 8.0 *
                               (std::norm(F.H) + F.C2 * F.C2 - K + Kp));
  r.gauss = std::abs(K - (0.5 * (F.C1 * F.C1 + F.C2 * F.C2) +
                          std::norm(F.H) - 4.0 / e4s * (af1 + af2)));

  cplx bracket1 = d.f1_zbzb - 2.0 * (sb_z + rb) * d.f1_zb +
                  (rb * rb + 2.0 * sb_z * rb - std::conj(d.rho_z)) * F.f1;
  cplx bracket2 = std::conj(d.f2_zbzb) -
                  2.0 * (d.sigma_z - F.rho) * std::conj(d.f2_zb) +
                  (F.rho * F.rho - 2.0 * d.sigma_z * F.rho + d.rho_z) *
                      std::conj(F.f2);
  cplx wp = 2.0 * bracket1 + F.g1 * F.g1 * std::conj(F.f1) -
            kI * kSqrt2 *
                (F.H * std::conj(F.f2) * F.f1 - Hb * af1);
  cplx wm = 2.0 * bracket2 + std::conj(F.g2) * std::conj(F.g2) * F.f2 -
            kI * kSqrt2 *
                (F.H * F.f1 * std::conj(F.f2) - Hb * af2);
  cplx w = wp + wm;
  r.willmore = std::abs(w);
  r.wplus = std::abs(wp);
  r.wminus = std::abs(wm);

  cplx hf = 2.0 * std::conj(d.H_zzb) +
            2.0 * (F.rho * std::conj(d.H_z) - rb * std::conj(d.H_zb)) +
            (0.75 * e2s * (F.C1 * F.C1 + F.C2 * F.C2 - 2.0 / 3.0) -
             2.0 * std::norm(F.rho) + d.rho_zb - std::conj(d.rho_z) +
             2.0 / e2s * (af1 + af2)) *
                Hb -
            4.0 / e2s * F.f1 * std::conj(F.f2) * F.H -
            2.0 * kSqrt2 * kI / e2s *
                (std::conj(F.f1) * F.g1 * F.g1 +
                 F.f2 * std::conj(F.g2) * std::conj(F.g2));
  r.hform = std::abs(hf);
  r.hform_consistency = std::abs(hf + kSqrt2 * kI / e2s * w);

  r.mw = std::abs(F.f1 * std::conj(F.g1) * std::conj(F.g1) +
                  std::conj(F.f2) * F.g2 * F.g2);
  return r;
}

}  // namespace

double ResidualFields::sup(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end())
    throw std::invalid_argument("ResidualFields::sup: unknown field " + name);
  int i0 = spec.periodic1 ? 0 : margin1;
  int i1 = spec.periodic1 ? spec.m1() - 1 : spec.m1() - 1 - margin1;
  int j0 = spec.periodic2 ? 0 : margin2;
  int j1 = spec.periodic2 ? spec.m2() - 1 : spec.m2() - 1 - margin2;
  double s = 0.0;
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i)
      s = std::max(s, it->second[spec.idx(i, j)]);
  return s;
}

ResidualFields compute_residuals(const JetField& jf) {
  ResidualFields out;
  out.spec = jf.spec;
  out.margin1 = jf.margin1;
  out.margin2 = jf.margin2;
  const char* names[] = {"C1",     "C2",     "g1",    "g2",
                         "f1",     "f2",     "norm1", "norm2",
                         "gauss",  "willmore", "wplus", "wminus",
                         "hform",  "hform_consistency", "mw"};
  for (const char* n : names) out.fields[n].resize(jf.spec.size());
  for (int at = 0; at < jf.spec.size(); ++at) {
    NodeResiduals r = node_residuals(jf.jets[at]);
    out.fields["C1"][at] = r.C1;
    out.fields["C2"][at] = r.C2;
    out.fields["g1"][at] = r.g1;
    out.fields["g2"][at] = r.g2;
    out.fields["f1"][at] = r.f1;
    out.fields["f2"][at] = r.f2;
    out.fields["norm1"][at] = r.norm1;
    out.fields["norm2"][at] = r.norm2;
    out.fields["gauss"][at] = r.gauss;
    out.fields["willmore"][at] = r.willmore;
    out.fields["wplus"][at] = r.wplus;
    out.fields["wminus"][at] = r.wminus;
    out.fields["hform"][at] = r.hform;
    out.fields["hform_consistency"][at] = r.hform_consistency;
    out.fields["mw"][at] = r.mw;
  }
  return out;
}

std::map<std::string, std::vector<double>> derived_fields(const JetField& jf) {
  std::map<std::string, std::vector<double>> out;
  const char* names[] = {"K", "Kperp", "Babs", "Habs", "hopf_abs",
                         "area_density"};
  for (const char* n : names) out[n].resize(jf.spec.size());
  for (int at = 0; at < jf.spec.size(); ++at) {
    const DataJet& d = jf.jets[at];
    double e2s = std::exp(2.0 * d.F.sigma);
    out["K"][at] = gauss_curvature(e2s, d.sigma_zzb);
    out["Kperp"][at] = normal_curvature(e2s, d.rho_zb);
    out["Babs"][at] = std::sqrt(second_form_norm2(d.F));
    out["Habs"][at] = std::abs(d.F.H);
    out["hopf_abs"][at] = 0.5 * std::abs(d.F.g1 * d.F.g2);
    out["area_density"][at] = e2s;
  }
  return out;
}

EnergyReport energies(const JetField& jf, int chi) {
  const GridSpec& spec = jf.spec;
  auto weight = [](int k, int m, bool periodic, double h) {
    if (periodic) return h;
    return (k == 0 || k == m - 1) ? 0.5 * h : h;
  };
  EnergyReport r;
  for (int j = 0; j < spec.m2(); ++j) {
    double w2 = weight(j, spec.m2(), spec.periodic2, spec.h2());
    for (int i = 0; i < spec.m1(); ++i) {
      double w1 = weight(i, spec.m1(), spec.periodic1, spec.h1());
      const FundamentalData& F = jf.jets[spec.idx(i, j)].F;
      double dA = std::exp(2.0 * F.sigma) * w1 * w2;
      double h2 = std::norm(F.H);
      r.area += dA;
      r.intH2 += h2 * dA;
      r.intC1 += F.C1 * dA;
      r.intC2 += F.C2 * dA;
      r.Wplus += (h2 + F.C1 * F.C1) * dA;
      r.Wminus += (h2 + F.C2 * F.C2) * dA;
    }
  }
  r.W = r.Wplus + r.Wminus - 4.0 * kPi * chi;
  return r;
}

}  // namespace s2xs2
