#pragma once

#include "bohmsim/types.hpp"

namespace bohmsim::ontology_x {

/// Relative density floor: points with |u|^2 below this fraction of the peak
/// density keep their computed velocity but are flagged.
inline constexpr double kDensityFloor = 1e-12;

/// Guidance field at one plane: v = dx/dz in radians of transverse angle.
struct VelocityField {
  double plane = 0.0;
  double axis_min = 0.0, axis_step = 0.0;
  std::vector<double> v;
  std::vector<double> density;
  std::vector<bool> below_floor;

  double axis_at(std::size_t i) const { return axis_min + axis_step * static_cast<double>(i); }
};

// v(x) = Re[<x|k_op|u> / <x|u>] / k by spectral differentiation. Agrees with
// the probability-current form j/(k|u|^2) (velocity_current_route) wherever
// the density is above floor. Throws NumericalError on an all-zero field,
// RepresentationError unless the field is in position representation.
VelocityField velocity_field(const WavefieldGrid& field, double wavenumber);

// Same velocity through the current density j = Im(u* du/dx)/k, kept as a
// separate arithmetic route for consistency checks.
std::vector<double> velocity_current_route(const WavefieldGrid& field, double wavenumber);

// Guidance angle of the analytically evolved two-slit state at an arbitrary
// point. Stable at any (x, z) within the free-propagation model.
double analytic_velocity(const SlitScene& scene, double x, double z);

// The velocity field relabeled as the weak value of transverse momentum:
// in these units p/(m c) = theta = v, so the numbers are identical.
WeakValueProfile weak_momentum_profile(const WavefieldGrid& field, double wavenumber);

// n seeds at the quantiles q_i = (i - 1/2)/n of |u|^2 (cumulative trapezoid
// with linear-interpolated inverse).
std::vector<Seed> seed_from_density(const WavefieldGrid& field, int n);

struct IntegratorOptions {
  double step = 5e-4;        // RK4 step in z (m)
  double lattice_dz = 5e-3;  // plane spacing of the precomputed velocity lattice (m)
  bool parallel = true;
};

/// Velocity samples on a dense (x, z) lattice with bicubic interpolation,
/// precomputed once so that many trajectories can be integrated against the
/// same immutable field data.
class VelocityLattice {
 public:
  VelocityLattice(const SlitScene& scene, double z_lo, double z_hi, double dz);

  double sample(double x, double z) const;
  double z_lo() const { return z_lo_; }
  double z_hi() const { return z_hi_; }
  double x_lo() const { return axis_min_; }
  double x_hi() const { return axis_min_ + axis_step_ * static_cast<double>(nx_ - 1); }

 private:
  double axis_min_, axis_step_;
  double z_lo_, dz_;
  double z_hi_;
  std::size_t nx_, nz_;
  std::vector<double> v_;  // nz * nx, plane-major
};

// Classical RK4 streamline integration of dx/dz = v(x, z) from planes.front()
// through every listed plane. Derived paths carry the weak momentum value
// along each ontic path. A path that reaches the lattice edge is frozen there
// and flagged truncated.
TrajectoryBundle integrate_trajectories(const SlitScene& scene, const std::vector<Seed>& seeds,
                                        const std::vector<double>& planes,
                                        const IntegratorOptions& opts = {});

// Variant over a caller-supplied velocity sampler (used by tests to drive the
// integrator with fields other than the two-slit scene).
TrajectoryBundle integrate_over_lattice(const VelocityLattice& lattice,
                                        const std::vector<Seed>& seeds,
                                        const std::vector<double>& planes,
                                        const IntegratorOptions& opts = {});

// Per-path |theta - (x - sgn(x) s/2)/z| at the final plane, the deviation
// from single-slit ballistic flow. NaN for paths that end inside
// |x| <= s/2 + 2*beam_diameter, where the two slit waves still overlap.
std::vector<double> asymptote_deviation(const TrajectoryBundle& bundle, const SlitScene& scene);

}  // namespace bohmsim::ontology_x
