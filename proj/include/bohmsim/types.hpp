#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bohmsim {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Error raised for invalid scene/config parameters. The CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when significant amplitude reaches the grid edge during propagation.
struct AliasingError : std::runtime_error {
  explicit AliasingError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation receives a field in the wrong representation.
struct RepresentationError : std::runtime_error {
  explicit RepresentationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for declared-but-unimplemented physics (e.g. nonzero potentials).
struct UnsupportedFeature : std::runtime_error {
  explicit UnsupportedFeature(const std::string& what) : std::runtime_error(what) {}
};

// Raised for numerically meaningless inputs (all-zero field, empty grid, ...).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

enum class Representation { Position, Momentum };

enum class Theory { XBohm, PBohm };

/// Physical and numerical parameters of the two-slit source.
///
/// The beam from each slit is Gaussian with amplitude profile
/// exp(-(x - x_slit)^2 / w0^2), where w0 = beam_diameter / 2 is the 1/e^2
/// *intensity* radius (beam_diameter is the conventional 1/e^2 intensity
/// diameter). All lengths in meters.
struct SlitScene {
  double wavelength = 915e-9;       // vacuum wavelength (m)
  double slit_separation = 2e-3;    // center-to-center distance s (m)
  double beam_diameter = 0.55e-3;   // 1/e^2 intensity diameter of each beam (m)
  double amp_plus = 1.0;            // relative amplitude of the slit at +s/2
  double amp_minus = 1.0;           // relative amplitude of the slit at -s/2
  double grid_extent = 25e-3;       // half-width of the transverse grid (m)
  std::size_t grid_points = 1u << 14;

  double wavenumber() const { return 2.0 * kPi / wavelength; }
  double waist() const { return beam_diameter / 2.0; }  // amplitude 1/e^2 radius w0
  double rayleigh_range() const { return 0.5 * wavenumber() * waist() * waist(); }
  double grid_step() const { return 2.0 * grid_extent / static_cast<double>(grid_points); }

  // Throws ConfigError on invalid parameters, including insufficient grid
  // coverage (the grid must reach s/2 + 4*beam_diameter so the initial
  // amplitude at the boundary is below 1e-8 of peak).
  void validate() const;
};

/// Complex amplitude samples on a uniform transverse axis at one plane.
///
/// Position representation: axis in meters. Momentum representation: axis is
/// the transverse angle theta = k_x/|k| in radians. `plane` is the effective
/// propagation distance z in meters; the oscillator module reuses the type
/// with `plane` holding time in its natural units.
struct WavefieldGrid {
  Representation representation = Representation::Position;
  double axis_min = 0.0;
  double axis_step = 0.0;
  double plane = 0.0;
  std::vector<cplx> amplitudes;

  std::size_t size() const { return amplitudes.size(); }
  double axis_at(std::size_t i) const { return axis_min + axis_step * static_cast<double>(i); }
  std::vector<double> axis() const;
  std::vector<double> density() const;  // |amplitude|^2 per point

  // Discrete L2 norm by the trapezoid rule.
  double norm() const;
  void normalize();
};

/// Estimated real weak values against the post-selection coordinate.
/// `spread` is the standard deviation across calcite tilts (zero for ideal
/// profiles); `counts` is the post-selected intensity at each point.
struct WeakValueProfile {
  std::vector<double> axis;
  std::vector<double> value;
  std::vector<double> spread;
  std::vector<double> counts;
  std::vector<bool> flagged;     // true where counts are below floor or clamped
  bool weak_limit_warning = false;   // coupling * max|value| exceeded the weak bound
  std::size_t clamp_events = 0;      // contrasts pushed outside [-1,1] by noise
};

/// Initial ontic value plus the Born-density quantile it was drawn from.
struct Seed {
  double value = 0.0;
  double quantile = 0.0;
};

/// Family of (plane, ontic value, derived value) polylines.
///
/// For Theory::XBohm the ontic paths are positions (m) and the derived paths
/// transverse angles (rad); for Theory::PBohm the roles are swapped.
struct TrajectoryBundle {
  Theory theory = Theory::XBohm;
  std::vector<Seed> seeds;
  std::vector<double> planes;
  std::vector<std::vector<double>> ontic;    // [seed][plane]
  std::vector<std::vector<double>> derived;  // [seed][plane]
  std::vector<bool> truncated;               // path left the grid before the last plane
};

}  // namespace bohmsim
