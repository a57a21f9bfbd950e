#pragma once

#include "bohmsim/optics.hpp"
#include "bohmsim/types.hpp"

#include <cstdint>
#include <span>

namespace bohmsim::weakmeas {

/// Transverse field with a polarization pointer: one complex amplitude per
/// point for each of |H> and |V>. Norm of (amp_h, amp_v) combined is 1.
struct PolarizedField {
  Representation representation = Representation::Position;
  double axis_min = 0.0, axis_step = 0.0;
  double plane = 0.0;
  std::vector<cplx> amp_h, amp_v;

  std::size_t size() const { return amp_h.size(); }
  double axis_at(std::size_t i) const { return axis_min + axis_step * static_cast<double>(i); }
  double norm() const;
};

enum class CoupledObservable { TransverseMomentum, EffectivePosition };

/// Calcite pointer coupling. `zeta` is the polarization rotation per radian
/// of transverse angle (dimensionless); for EffectivePosition the observable
/// per point is position_theta_scale * x, the local angle the lens relay
/// presents to the calcite (see optics::position_coupling_scale).
struct CalciteConfig {
  double zeta = 134.49;
  std::vector<double> phi0_list = {0.0};
  CoupledObservable coupled_observable = CoupledObservable::TransverseMomentum;
  double position_theta_scale = 0.0;  // rad/m; required for EffectivePosition

  void validate() const;
};

/// Additive uniform background per readout channel as a fraction of the peak
/// combined intensity, plus optional sqrt-scaled multiplicative jitter.
/// Deterministic for a fixed rng_seed.
struct NoiseModel {
  double background_fraction = 0.0;
  double shot_scale = 0.0;
  std::uint64_t rng_seed = 0;
};

struct ChannelIntensities {
  std::vector<double> i_r, i_l;
};

struct Extraction {
  std::vector<double> value;
  std::vector<bool> undefined;    // zero total intensity at the point
  std::size_t clamp_events = 0;   // contrasts clamped into [-1, 1]
};

// |psi> tensor |D>: both polarization amplitudes equal to field/sqrt(2).
PolarizedField prepare_diagonal(const WavefieldGrid& field);

// Exact calcite unitary: in the eigenbasis of the coupled observable with
// per-point value v, amp_h *= exp(-i(zeta*v + phi0)/2) and
// amp_v *= exp(+i(zeta*v + phi0)/2). Momentum coupling on a position-
// representation field is applied spectrally; position coupling requires the
// position representation (RepresentationError otherwise).
PolarizedField apply_calcite_exact(const PolarizedField& pol, const CalciteConfig& cfg,
                                   double phi0, double wavenumber);

// Right/left circular intensities: I_R = |(amp_h - i amp_v)/sqrt(2)|^2,
// I_L = |(amp_h + i amp_v)/sqrt(2)|^2; the signs make the post-calcite
// contrast equal sin(zeta*v + phi0) on an eigenstate.
ChannelIntensities readout_circular(const PolarizedField& pol);

ChannelIntensities inject_noise(const ChannelIntensities& channels, const NoiseModel& noise);

// Inversion of the readout: value = (asin((I_R-I_L)/(I_R+I_L)) - phi0)/zeta.
// Contrasts outside [-1, 1] are clamped and counted; zero-intensity points
// are flagged undefined.
Extraction extract_weak_value(std::span<const double> i_r, std::span<const double> i_l,
                              double zeta, double phi0);

// Per-point mean and standard deviation across tilt extractions.
WeakValueProfile tilt_average(const std::vector<double>& axis,
                              const std::vector<Extraction>& per_tilt,
                              const std::vector<double>& counts);

/// Weak-approximation advisory bound: pipelines set weak_limit_warning when
/// zeta * max|extracted value| exceeds this.
inline constexpr double kWeakLimitBound = 0.3;

// End-to-end weak transverse-momentum measurement with position
// post-selection at plane z: prepare |D>, couple the calcite to the angle
// spectrally, free-propagate both polarization components to z, read out the
// circular intensities per position, extract per tilt, tilt-average.
// Noiseless output matches the direct guidance profile within the weak-
// approximation error.
WeakValueProfile simulate_xbohm_pipeline(const SlitScene& scene, double z,
                                         const CalciteConfig& cfg, const NoiseModel& noise);

// End-to-end weak position measurement with momentum post-selection: the
// calcite sits between Lens 2 and Lens 3 where the local angle is
// position_coupling_scale(z) times the effective-plane position, so the
// coupling is applied as a position-diagonal phase at plane z before the
// transform to the angle representation (the telescope places the far field
// on the camera). Extracted values are converted back to meters.
WeakValueProfile simulate_pbohm_pipeline(const SlitScene& scene, double z,
                                         const CalciteConfig& cfg, const NoiseModel& noise,
                                         const optics::LensSystem& sys = {});

}  // namespace bohmsim::weakmeas
