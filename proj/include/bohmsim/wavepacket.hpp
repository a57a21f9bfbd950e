#pragma once

#include "bohmsim/types.hpp"

namespace bohmsim::wavepacket {

/// Distance quoted for the near-to-far-field transition of the default scene
/// in the source experiment (m). Kept as metadata next to
/// near_far_transition(), which evaluates the underlying formula; the two do
/// not agree for the default parameters and both are reported.
inline constexpr double kQuotedNearFarTransition = 0.77;

// Normalized two-slit state at z = 0 (position representation):
// u(x) ~ amp_plus * exp(-(x-s/2)^2/w0^2) + amp_minus * exp(-(x+s/2)^2/w0^2).
WavefieldGrid build_two_slit(const SlitScene& scene);

// Free propagation of the two-slit state to plane z by the closed-form
// Gaussian-beam solution of i du/dz = -(1/2k) d^2u/dx^2. Each slit term is
// evolved exactly; the superposition keeps the z = 0 normalization constant
// (free evolution is unitary, no renormalization step).
WavefieldGrid evolve_analytic(const SlitScene& scene, double z);

// Same propagation by symmetric split-step spectral stepping (independent
// numerical route; with zero potential every step is an exact spectral
// kernel). Throws AliasingError if amplitude above 1e-6 of peak reaches the
// grid edge.
WavefieldGrid evolve_split_step(const SlitScene& scene, double z, int steps);

// Unitary transform of a position-representation field to the transverse
// angle (momentum) representation.
WavefieldGrid momentum_rep(const WavefieldGrid& field, double wavenumber);
WavefieldGrid momentum_rep(const SlitScene& scene, const WavefieldGrid& field);

// (s/2) / (lambda / (pi w0)) with w0 the amplitude 1/e^2 radius: the distance
// at which the slit separation equals the diffraction spreading. Advisory
// only; compare kQuotedNearFarTransition.
double near_far_transition(const SlitScene& scene);

// Complex amplitude of the (unnormalized) evolved two-slit state at an
// arbitrary point, evaluated in log space so extreme tails neither underflow
// nor overflow. `derivative` receives d(ln u)/dx when non-null.
cplx two_slit_amplitude(const SlitScene& scene, double x, double z, cplx* log_derivative = nullptr);

}  // namespace bohmsim::wavepacket
