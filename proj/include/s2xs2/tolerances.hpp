#pragma once

namespace s2xs2 {

// Numerical guard rails used across extraction, construction and the
// verification suites. Values are part of the contract: tests pin them.
struct Tolerances {
  // metric degeneracy floor: conformal factor below this aborts extraction
  double degenerate_metric = 1e-8;
  // 1 - C_j^2 below this marks a factor as complex-tangent; the gamma_j
  // phase is then meaningless and the field is zeroed and flagged
  double near_complex = 1e-10;
  // conformality defect (relative) above this aborts extraction
  double conformality = 1e-3;
  // frame-invariant drift allowed during frame integration before error
  double frame_drift = 1e-3;
  // energy drift allowed in curvature-profile integration before error
  double profile_drift = 1e-3;
  // unit-speed violation tolerated by the geodesic-curvature reader
  double unit_speed = 1e-6;
  // phase-tracking loses the frame if adjacent normal planes decorrelate
  double frame_tracking = 0.1;
};

}  // namespace s2xs2
