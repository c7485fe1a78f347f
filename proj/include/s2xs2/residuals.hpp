#pragma once

// Pointwise residuals of the first-order compatibility relations, the
// curvature identities and the fourth-order variational equations, all
// evaluated from a jet field. Residual magnitudes are invariant under
// the phase freedom of the normal frame, so fields from different
// gauges can be compared directly.

#include <map>
#include <string>

#include "s2xs2/extraction.hpp"

namespace s2xs2 {

struct ResidualFields {
  GridSpec spec;
  int margin1 = 0, margin2 = 0;
  std::map<std::string, std::vector<double>> fields;

  // sup over nodes at least margin1/margin2 away from non-periodic edges
  double sup(const std::string& name) const;
};

// names: C1, C2, g1, g2, f1, f2 (first-order relations), norm1, norm2,
// gauss (curvature identities), willmore, wplus, wminus (fourth-order
// system and its split), hform (mean-curvature form), hform_consistency
// (proportionality between the two forms), mw (residual of the minimal
// members)
ResidualFields compute_residuals(const JetField& jf);

// pointwise derived quantities for export: K, Kperp, Babs, Habs,
// hopf_abs, area_density
std::map<std::string, std::vector<double>> derived_fields(const JetField& jf);

struct EnergyReport {
  double area = 0.0;
  double W = 0.0;       // total energy against the Euler characteristic
  double Wplus = 0.0;   // integral of |H|^2 + C1^2
  double Wminus = 0.0;  // integral of |H|^2 + C2^2
  double intC1 = 0.0, intC2 = 0.0, intH2 = 0.0;
};

// quadrature: full weight on periodic directions, trapezoid on the rest
EnergyReport energies(const JetField& jf, int chi);

}  // namespace s2xs2
