#include "bohmsim/weakmeas.hpp"

#include "bohmsim/fft.hpp"
#include "bohmsim/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace bohmsim::weakmeas {

void CalciteConfig::validate() const {
  if (zeta < 0.0) throw ConfigError("calcite: zeta must be >= 0");
  if (phi0_list.empty()) throw ConfigError("calcite: phi0 list must be non-empty");
  if (coupled_observable == CoupledObservable::EffectivePosition && position_theta_scale == 0.0)
    throw ConfigError("calcite: effective-position coupling needs position_theta_scale");
}

double PolarizedField::norm() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double w = (i == 0 || i + 1 == size()) ? 0.5 : 1.0;
    acc += w * (std::norm(amp_h[i]) + std::norm(amp_v[i]));
  }
  return std::sqrt(acc * axis_step);
}

PolarizedField prepare_diagonal(const WavefieldGrid& field) {
  PolarizedField pol;
  pol.representation = field.representation;
  pol.axis_min = field.axis_min;
  pol.axis_step = field.axis_step;
  pol.plane = field.plane;
  pol.amp_h.resize(field.size());
  pol.amp_v.resize(field.size());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < field.size(); ++i) {
    pol.amp_h[i] = field.amplitudes[i] * inv_sqrt2;
    pol.amp_v[i] = field.amplitudes[i] * inv_sqrt2;
  }
  return pol;
}

namespace {

WavefieldGrid component_as_field(const PolarizedField& pol, bool horizontal) {
  WavefieldGrid f;
  f.representation = pol.representation;
  f.axis_min = pol.axis_min;
  f.axis_step = pol.axis_step;
  f.plane = pol.plane;
  f.amplitudes = horizontal ? pol.amp_h : pol.amp_v;
  return f;
}

PolarizedField from_components(WavefieldGrid h, WavefieldGrid v) {
  PolarizedField pol;
  pol.representation = h.representation;
  pol.axis_min = h.axis_min;
  pol.axis_step = h.axis_step;
  pol.plane = h.plane;
  pol.amp_h = std::move(h.amplitudes);
  pol.amp_v = std::move(v.amplitudes);
  return pol;
}

// Multiply amp_h by exp(-i phase/2) and amp_v by exp(+i phase/2) per point.
void birefringent_phase(PolarizedField& pol, const std::vector<double>& phase) {
  for (std::size_t i = 0; i < pol.size(); ++i) {
    const cplx rot(std::cos(0.5 * phase[i]), -std::sin(0.5 * phase[i]));
    pol.amp_h[i] *= rot;
    pol.amp_v[i] *= std::conj(rot);
  }
}

}  // namespace

PolarizedField apply_calcite_exact(const PolarizedField& pol, const CalciteConfig& cfg,
                                   double phi0, double wavenumber) {
  cfg.validate();
  if (cfg.coupled_observable == CoupledObservable::EffectivePosition) {
    if (pol.representation != Representation::Position)
      throw RepresentationError("calcite: position coupling needs a position-representation field");
    PolarizedField out = pol;
    std::vector<double> phase(pol.size());
    for (std::size_t i = 0; i < pol.size(); ++i)
      phase[i] = cfg.zeta * cfg.position_theta_scale * pol.axis_at(i) + phi0;
    birefringent_phase(out, phase);
    return out;
  }

  // Transverse-momentum coupling: diagonal in the angle representation, so a
  // position-representation field makes a spectral round trip.
  if (pol.representation == Representation::Momentum) {
    PolarizedField out = pol;
    std::vector<double> phase(pol.size());
    for (std::size_t i = 0; i < pol.size(); ++i) phase[i] = cfg.zeta * pol.axis_at(i) + phi0;
    birefringent_phase(out, phase);
    return out;
  }
  WavefieldGrid h = to_momentum(component_as_field(pol, true), wavenumber);
  WavefieldGrid v = to_momentum(component_as_field(pol, false), wavenumber);
  PolarizedField spec = from_components(std::move(h), std::move(v));
  std::vector<double> phase(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) phase[i] = cfg.zeta * spec.axis_at(i) + phi0;
  birefringent_phase(spec, phase);
  WavefieldGrid hh = to_position(component_as_field(spec, true), wavenumber, pol.axis_min,
                                 pol.axis_step);
  WavefieldGrid vv = to_position(component_as_field(spec, false), wavenumber, pol.axis_min,
                                 pol.axis_step);
  return from_components(std::move(hh), std::move(vv));
}

ChannelIntensities readout_circular(const PolarizedField& pol) {
  ChannelIntensities ch;
  ch.i_r.resize(pol.size());
  ch.i_l.resize(pol.size());
  for (std::size_t i = 0; i < pol.size(); ++i) {
    const cplx r = (pol.amp_h[i] - cplx(0.0, 1.0) * pol.amp_v[i]) / std::sqrt(2.0);
    const cplx l = (pol.amp_h[i] + cplx(0.0, 1.0) * pol.amp_v[i]) / std::sqrt(2.0);
    ch.i_r[i] = std::norm(r);
    ch.i_l[i] = std::norm(l);
  }
  return ch;
}

ChannelIntensities inject_noise(const ChannelIntensities& channels, const NoiseModel& noise) {
  ChannelIntensities out = channels;
  if (noise.background_fraction < 0.0 || noise.shot_scale < 0.0)
    throw ConfigError("noise: background and shot scale must be >= 0");
  if (noise.background_fraction == 0.0 && noise.shot_scale == 0.0) return out;

  double peak = 0.0;
  for (std::size_t i = 0; i < channels.i_r.size(); ++i)
    peak = std::max(peak, channels.i_r[i] + channels.i_l[i]);
  const double bg = noise.background_fraction * peak;
  for (auto& v : out.i_r) v += bg;
  for (auto& v : out.i_l) v += bg;

  if (noise.shot_scale > 0.0 && peak > 0.0) {
    std::mt19937_64 rng(noise.rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < out.i_r.size(); ++i) {
      out.i_r[i] = std::max(0.0, out.i_r[i] + noise.shot_scale * std::sqrt(out.i_r[i] * peak) * gauss(rng));
      out.i_l[i] = std::max(0.0, out.i_l[i] + noise.shot_scale * std::sqrt(out.i_l[i] * peak) * gauss(rng));
    }
  }
  return out;
}

Extraction extract_weak_value(std::span<const double> i_r, std::span<const double> i_l,
                              double zeta, double phi0) {
  if (i_r.size() != i_l.size()) throw NumericalError("extract: channel size mismatch");
  if (zeta <= 0.0) throw ConfigError("extract: zeta must be positive");
  Extraction ex;
  ex.value.resize(i_r.size());
  ex.undefined.assign(i_r.size(), false);
  for (std::size_t i = 0; i < i_r.size(); ++i) {
    const double total = i_r[i] + i_l[i];
    if (total <= 0.0) {
      ex.value[i] = std::numeric_limits<double>::quiet_NaN();
      ex.undefined[i] = true;
      continue;
    }
    double contrast = (i_r[i] - i_l[i]) / total;
    if (contrast > 1.0 || contrast < -1.0) {
      contrast = std::clamp(contrast, -1.0, 1.0);
      ++ex.clamp_events;
    }
    ex.value[i] = (std::asin(contrast) - phi0) / zeta;
  }
  return ex;
}

WeakValueProfile tilt_average(const std::vector<double>& axis,
                              const std::vector<Extraction>& per_tilt,
                              const std::vector<double>& counts) {
  if (per_tilt.empty()) throw NumericalError("tilt_average: no extractions");
  const std::size_t n = axis.size();
  WeakValueProfile prof;
  prof.axis = axis;
  prof.value.assign(n, 0.0);
  prof.spread.assign(n, 0.0);
  prof.counts = counts;
  prof.flagged.assign(n, false);
  const double m = static_cast<double>(per_tilt.size());
  for (const auto& ex : per_tilt) prof.clamp_events += ex.clamp_events;

  for (std::size_t i = 0; i < n; ++i) {
    double mean = 0.0;
    bool any_undefined = false;
    for (const auto& ex : per_tilt) {
      any_undefined = any_undefined || ex.undefined[i];
      mean += ex.value[i];
    }
    mean /= m;
    double var = 0.0;
    for (const auto& ex : per_tilt) {
      const double d = ex.value[i] - mean;
      var += d * d;
    }
    prof.value[i] = mean;
    prof.spread[i] = std::sqrt(var / m);  // population deviation across tilts
    prof.flagged[i] = any_undefined;
  }
  return prof;
}

namespace {

void finalize_profile(WeakValueProfile& prof, double zeta) {
  double counts_peak = 0.0;
  for (double c : prof.counts) counts_peak = std::max(counts_peak, c);
  const double counts_floor = 1e-12 * counts_peak;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < prof.value.size(); ++i) {
    if (prof.counts[i] < counts_floor) prof.flagged[i] = true;
    if (!prof.flagged[i] && std::isfinite(prof.value[i]))
      max_abs = std::max(max_abs, std::abs(prof.value[i]));
  }
  prof.weak_limit_warning = zeta * max_abs > kWeakLimitBound;
}

}  // namespace

WeakValueProfile simulate_xbohm_pipeline(const SlitScene& scene, double z,
                                         const CalciteConfig& cfg, const NoiseModel& noise) {
  if (z < 0.0) throw ConfigError("pipeline: z must be >= 0");
  if (cfg.coupled_observable != CoupledObservable::TransverseMomentum)
    throw ConfigError("xbohm pipeline couples to the transverse momentum");
  cfg.validate();
  scene.validate();
  const double k = scene.wavenumber();

  const WavefieldGrid initial = wavepacket::build_two_slit(scene);
  const PolarizedField prepared = prepare_diagonal(initial);
  // Coupling and free propagation are both diagonal in the angle
  // representation, so do one spectral round trip for the whole chain.
  WavefieldGrid h = to_momentum(component_as_field(prepared, true), k);
  WavefieldGrid v = to_momentum(component_as_field(prepared, false), k);
  PolarizedField spec = from_components(std::move(h), std::move(v));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double theta = spec.axis_at(i);
    const double kick = -0.5 * k * theta * theta * z;  // free kernel
    const cplx evolve(std::cos(kick), std::sin(kick));
    spec.amp_h[i] *= evolve;
    spec.amp_v[i] *= evolve;
  }

  std::vector<Extraction> per_tilt;
  std::vector<double> counts;
  std::vector<double> axis(spec.size());
  std::uint64_t tilt_index = 0;
  for (double phi0 : cfg.phi0_list) {
    PolarizedField coupled = spec;
    std::vector<double> phase(coupled.size());
    for (std::size_t i = 0; i < coupled.size(); ++i)
      phase[i] = cfg.zeta * coupled.axis_at(i) + phi0;
    birefringent_phase(coupled, phase);

    WavefieldGrid hh =
        to_position(component_as_field(coupled, true), k, initial.axis_min, initial.axis_step);
    WavefieldGrid vv =
        to_position(component_as_field(coupled, false), k, initial.axis_min, initial.axis_step);
    const PolarizedField at_camera = from_components(std::move(hh), std::move(vv));

    ChannelIntensities ch = readout_circular(at_camera);
    NoiseModel tilt_noise = noise;
    tilt_noise.rng_seed = noise.rng_seed + tilt_index;  // independent draws per tilt
    ch = inject_noise(ch, tilt_noise);
    per_tilt.push_back(extract_weak_value(ch.i_r, ch.i_l, cfg.zeta, phi0));
    if (counts.empty()) {
      counts.resize(ch.i_r.size());
      for (std::size_t i = 0; i < ch.i_r.size(); ++i) counts[i] = ch.i_r[i] + ch.i_l[i];
      for (std::size_t i = 0; i < at_camera.size(); ++i) axis[i] = at_camera.axis_at(i);
    }
    ++tilt_index;
  }

  WeakValueProfile prof = tilt_average(axis, per_tilt, counts);
  finalize_profile(prof, cfg.zeta);
  return prof;
}

WeakValueProfile simulate_pbohm_pipeline(const SlitScene& scene, double z,
                                         const CalciteConfig& cfg, const NoiseModel& noise,
                                         const optics::LensSystem& sys) {
  if (z < 0.0) throw ConfigError("pipeline: z must be >= 0");
  scene.validate();
  const double k = scene.wavenumber();

  CalciteConfig eff = cfg;
  eff.coupled_observable = CoupledObservable::EffectivePosition;
  if (eff.position_theta_scale == 0.0)
    eff.position_theta_scale = optics::position_coupling_scale(z, sys);
  eff.validate();
  const double scale = eff.position_theta_scale;

  // Field at the effective plane; the calcite between the telescope lenses
  // sees local angle scale*x, and the bench then projects the far field onto
  // the camera, i.e. post-selects on theta.
  const WavefieldGrid at_plane = wavepacket::evolve_analytic(scene, z);
  const PolarizedField prepared = prepare_diagonal(at_plane);

  std::vector<Extraction> per_tilt;
  std::vector<double> counts;
  std::vector<double> axis;
  std::uint64_t tilt_index = 0;
  for (double phi0 : eff.phi0_list) {
    const PolarizedField coupled = apply_calcite_exact(prepared, eff, phi0, k);
    WavefieldGrid h = to_momentum(component_as_field(coupled, true), k);
    WavefieldGrid v = to_momentum(component_as_field(coupled, false), k);
    const PolarizedField at_camera = from_components(std::move(h), std::move(v));

    ChannelIntensities ch = readout_circular(at_camera);
    NoiseModel tilt_noise = noise;
    tilt_noise.rng_seed = noise.rng_seed + tilt_index;
    ch = inject_noise(ch, tilt_noise);
    Extraction ex = extract_weak_value(ch.i_r, ch.i_l, eff.zeta, phi0);
    // The extraction returns the local angle weak value scale * x_w; report
    // meters at the effective plane.
    for (auto& val : ex.value) val /= scale;
    per_tilt.push_back(std::move(ex));
    if (counts.empty()) {
      counts.resize(ch.i_r.size());
      for (std::size_t i = 0; i < ch.i_r.size(); ++i) counts[i] = ch.i_r[i] + ch.i_l[i];
      axis.resize(at_camera.size());
      for (std::size_t i = 0; i < at_camera.size(); ++i) axis[i] = at_camera.axis_at(i);
    }
    ++tilt_index;
  }

  WeakValueProfile prof = tilt_average(axis, per_tilt, counts);
  finalize_profile(prof, eff.zeta * std::abs(scale));
  return prof;
}

}  // namespace bohmsim::weakmeas
