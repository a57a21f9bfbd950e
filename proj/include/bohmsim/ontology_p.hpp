#pragma once

#include "bohmsim/types.hpp"

namespace bohmsim::ontology_p {

enum class Potential { Free, Linear, Quadratic };

/// Probability current in momentum space. For free particles it vanishes
/// identically; the momentum density is a constant of the motion.
struct MomentumCurrent {
  double plane = 0.0;
  std::vector<double> axis;  // theta (rad)
  std::vector<double> j_p;
};

// Momentum-space current for the given potential. Only Potential::Free is
// implemented (j_p = 0 exactly); other potentials throw UnsupportedFeature
// rather than approximating the derivative-operator potential term.
MomentumCurrent momentum_current(const WavefieldGrid& momentum_field, Potential potential);

// Weak value of position conditioned on transverse angle:
// x_p(theta, z) = Re[<theta|x_op|u(z)> / <theta|u(z)>], evaluated spectrally
// (x_op acts as i d/dk_x in the momentum representation; numerator and
// denominator are computed as the transforms of x*u and u). For the
// symmetric free scene this equals theta * z.
WeakValueProfile weak_position_profile(const SlitScene& scene, double z);

// Point evaluation of the same ratio at an arbitrary angle by direct
// quadrature of the transform sums (no grid interpolation).
double weak_position_at(const WavefieldGrid& position_field, double wavenumber, double theta);

// Momentum-ontology bundle: n seeds at quantiles of |u~(theta)|^2, ontic
// paths exactly constant in theta, derived paths x_p(theta_i, z) per plane.
TrajectoryBundle p_trajectories(const SlitScene& scene, const std::vector<double>& planes, int n);

}  // namespace bohmsim::ontology_p
