#pragma once

#include "bohmsim/optics.hpp"
#include "bohmsim/weakmeas.hpp"

namespace bohmsim::optics {

// Self-calibration of the coupling strength: weak measurement and strong
// post-selection on the same variable, then the slope of the extracted
// birefringent phase against the known observable value. For
// TransverseMomentum this recovers cfg.zeta; for EffectivePosition it
// returns the effective strength zeta * |position_coupling_scale(y)| in
// rad/m, which falls off with plane distance as the magnification dictates.
double simulated_zeta_calibration(const weakmeas::CalciteConfig& cfg, const SlitScene& scene,
                                  double y = 0.70, const LensSystem& sys = {});

}  // namespace bohmsim::optics
