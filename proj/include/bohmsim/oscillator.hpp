#pragma once

#include "bohmsim/ontology_x.hpp"
#include "bohmsim/types.hpp"

namespace bohmsim::oscillator {

/// Rotated-quadrature frame of the harmonic oscillator, natural units
/// (hbar = m = 1). theta = 0 is the ordinary position quadrature; theta =
/// pi/2 swaps the roles of the quadrature pair.
struct ThetaFrame {
  double theta = 0.0;  // rad
  double omega = 1.0;  // angular frequency

  void validate() const;
};

struct OscillatorState {
  enum class Kind { Fock, Coherent } kind = Kind::Fock;
  int n = 0;          // Fock index, 0..20
  cplx alpha{0, 0};   // coherent amplitude, |alpha| <= 5

  static OscillatorState fock(int n);
  static OscillatorState coherent(cplx alpha);
  void validate() const;
};

// Wavefunction in the rotated quadrature x_theta at time t. Fock states are
// Hermite-Gaussian with the e^{-i E_n t} phase; coherent states are displaced
// Gaussians whose center follows the classical motion. The frame rotation
// acts as alpha -> alpha e^{-i theta} (a global phase on Fock states).
// `plane` of the result holds t.
WavefieldGrid xtheta_wavefunction(const OscillatorState& state, const ThetaFrame& frame,
                                  double t, std::size_t grid_points = 1u << 12);

// Guidance velocity dx_theta/dt = dS/dx_theta, computed spectrally from the
// wavefunction (unit mass).
ontology_x::VelocityField guidance_velocity(const OscillatorState& state,
                                            const ThetaFrame& frame, double t);

// Weak value of the conjugate quadrature p_theta conditioned on x_theta:
// Re[<x_theta|p_op|psi>/<x_theta|psi>]. Numerically equal to the guidance
// velocity for unit mass; kept as its own surface because it is the quantity
// a weak measurement would report.
WeakValueProfile weak_conjugate_quadrature(const OscillatorState& state,
                                           const ThetaFrame& frame, double t);

// Ontic quadrature trajectories: seeds at Born quantiles at t = 0, RK4
// through `times` against the closed-form guidance field. Derived paths
// carry the conjugate-quadrature weak value along each path.
TrajectoryBundle quadrature_trajectories(const OscillatorState& state, const ThetaFrame& frame,
                                         const std::vector<double>& times, int n_seeds);

// Classical velocity of the coherent-state packet center (zero for Fock
// states); the guidance field is spatially uniform and equals this.
double packet_center_velocity(const OscillatorState& state, const ThetaFrame& frame, double t);
double packet_center(const OscillatorState& state, const ThetaFrame& frame, double t);

}  // namespace bohmsim::oscillator
