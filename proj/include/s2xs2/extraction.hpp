#pragma once

// Grid pipeline: finite differences of the position field, a smooth
// normal frame, and the fundamental data read off at every node. Jets
// for the residual operators come from one of three sources: trusted
// builder data, differencing of builder field values, or differencing
// of an extraction.

#include <cstdint>

#include "s2xs2/stencils.hpp"
#include "s2xs2/surfaces.hpp"

namespace s2xs2 {

struct ExtractionOptions {
  int order = 4;                // stencil accuracy, 2 or 4
  double gauge_rotation = 0.0;  // extra phase on the frame at the origin
  Tolerances tol;
};

struct ExtractedData {
  GridSpec spec;
  int order = 4;
  std::vector<FundamentalData> F;
  std::vector<CVec6> xi;
  std::vector<std::uint8_t> flag1, flag2;  // near-complex nodes, gamma zeroed
  double min_e2sigma = 0.0;
  double max_conf_defect = 0.0;
};

// fails loudly on degenerate metric, broken conformality or a normal
// frame that turns faster than the tracking can follow
ExtractedData extract_fundamental_data(const SurfaceGrid& g,
                                       const ExtractionOptions& opt = {});

// nodes excluded from interior sup norms along each non-periodic edge:
// differencing twice near an edge stacks shifted windows, so reported
// sups keep three stencil radii clear of it
inline int interior_margin(int order) { return 3 * (order / 2); }

struct JetField {
  GridSpec spec;
  std::vector<DataJet> jets;
  int margin1 = 0, margin2 = 0;  // interior exclusion per direction
};

// jets exactly as the builder attached them
JetField jets_from_analytic(const SurfaceGrid& g);

// keep the builder's field values but recompute every derivative entry
// by differencing; isolates the truncation error of the stencils
JetField jets_from_fields_fd(const SurfaceGrid& g, int order);

// fields and derivatives from an extraction, differencing at its order
JetField jets_from_extracted(const ExtractedData& e);

}  // namespace s2xs2
