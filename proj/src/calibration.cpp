#include "bohmsim/calibration.hpp"

#include "bohmsim/numerics.hpp"
#include "bohmsim/wavepacket.hpp"

#include <cmath>

namespace bohmsim::optics {

double simulated_zeta_calibration(const weakmeas::CalciteConfig& cfg, const SlitScene& scene,
                                  double y, const LensSystem& sys) {
  if (cfg.zeta == 0.0) return 0.0;
  scene.validate();
  const double k = scene.wavenumber();
  const double phi0 = cfg.phi0_list.empty() ? 0.0 : cfg.phi0_list.front();

  weakmeas::CalciteConfig run = cfg;
  run.phi0_list = {phi0};

  WavefieldGrid field;
  double expected_scale = 1.0;  // observable value per unit of the axis coordinate
  if (cfg.coupled_observable == weakmeas::CoupledObservable::TransverseMomentum) {
    // Weak and strong measurement both on the angle: couple spectrally, then
    // read out in the angle representation.
    field = wavepacket::momentum_rep(wavepacket::build_two_slit(scene), k);
  } else {
    // Weak and strong measurement both on the effective-plane position: the
    // camera images plane y, and the calcite between the telescope lenses
    // sees local angle position_coupling_scale(y) * x.
    field = wavepacket::evolve_analytic(scene, y);
    if (run.position_theta_scale == 0.0)
      run.position_theta_scale = position_coupling_scale(y, sys);
    expected_scale = run.position_theta_scale;
  }

  const weakmeas::PolarizedField coupled =
      weakmeas::apply_calcite_exact(weakmeas::prepare_diagonal(field), run, phi0, k);
  const weakmeas::ChannelIntensities ch = weakmeas::readout_circular(coupled);

  // Post-selecting on the coupled variable itself makes every point an
  // eigenstate: contrast = sin(zeta * v + phi0) exactly. Fit the unwrapped
  // birefringent phase against the observable value over the monotone branch
  // of the arcsine, weighting by intensity.
  std::vector<double> obs, phase, weight;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double total = ch.i_r[i] + ch.i_l[i];
    if (total <= 0.0) continue;
    const bool momentum_mode =
        cfg.coupled_observable == weakmeas::CoupledObservable::TransverseMomentum;
    const double v = momentum_mode ? field.axis_at(i) : expected_scale * field.axis_at(i);
    if (std::abs(cfg.zeta * v + phi0) > 1.2) continue;  // stay inside the principal branch
    const double contrast = (ch.i_r[i] - ch.i_l[i]) / total;
    obs.push_back(field.axis_at(i));
    phase.push_back(std::asin(std::clamp(contrast, -1.0, 1.0)) - phi0);
    weight.push_back(total);
  }
  if (obs.size() < 2) throw NumericalError("zeta calibration: too few usable points");
  const LineFit fit = fit_line(obs, phase, weight);
  // Slope is zeta for angle coupling, zeta * scale for position coupling;
  // report the magnitude (the sign of the lever arm is a bench convention).
  return std::abs(fit.slope);
}

}  // namespace bohmsim::optics
