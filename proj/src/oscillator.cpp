#include "bohmsim/oscillator.hpp"

#include "bohmsim/fft.hpp"
#include "bohmsim/numerics.hpp"

#include <cmath>

namespace bohmsim::oscillator {

namespace {
constexpr int kMaxFock = 20;
constexpr double kMaxAlpha = 5.0;
}  // namespace

void ThetaFrame::validate() const {
  if (omega <= 0.0) throw ConfigError("oscillator: omega must be positive");
}

OscillatorState OscillatorState::fock(int n) {
  OscillatorState s;
  s.kind = Kind::Fock;
  s.n = n;
  s.validate();
  return s;
}

OscillatorState OscillatorState::coherent(cplx alpha) {
  OscillatorState s;
  s.kind = Kind::Coherent;
  s.alpha = alpha;
  s.validate();
  return s;
}

void OscillatorState::validate() const {
  if (kind == Kind::Fock && (n < 0 || n > kMaxFock))
    throw ConfigError("oscillator: Fock index must be in 0..20");
  if (kind == Kind::Coherent && std::abs(alpha) > kMaxAlpha)
    throw ConfigError("oscillator: |alpha| must be <= 5 for grid coverage");
}

namespace {

// Coherent parameter in the rotated frame at time t: the frame rotation and
// the free oscillation compose to alpha * exp(-i(theta + omega t)).
cplx rotated_alpha(const OscillatorState& state, const ThetaFrame& frame, double t) {
  return state.alpha * std::polar(1.0, -(frame.theta + frame.omega * t));
}

double grid_halfwidth(const OscillatorState& state, const ThetaFrame& frame) {
  const double sigma = 1.0 / std::sqrt(frame.omega);
  if (state.kind == OscillatorState::Kind::Fock) {
    const double turning = std::sqrt((2.0 * state.n + 1.0) / frame.omega);
    return 1.5 * turning + 8.0 * sigma;
  }
  const double reach = std::sqrt(2.0 / frame.omega) * std::abs(state.alpha);
  return reach + 10.0 * sigma;
}

}  // namespace

double packet_center(const OscillatorState& state, const ThetaFrame& frame, double t) {
  if (state.kind == OscillatorState::Kind::Fock) return 0.0;
  return std::sqrt(2.0 / frame.omega) * rotated_alpha(state, frame, t).real();
}

double packet_center_velocity(const OscillatorState& state, const ThetaFrame& frame, double t) {
  if (state.kind == OscillatorState::Kind::Fock) return 0.0;
  // <p> of the displaced Gaussian; equals d<x>/dt for unit mass.
  return std::sqrt(2.0 * frame.omega) * rotated_alpha(state, frame, t).imag();
}

WavefieldGrid xtheta_wavefunction(const OscillatorState& state, const ThetaFrame& frame,
                                  double t, std::size_t grid_points) {
  state.validate();
  frame.validate();
  if (!fft::is_power_of_two(grid_points))
    throw ConfigError("oscillator: grid_points must be a power of two");

  const double omega = frame.omega;
  const double half = grid_halfwidth(state, frame);
  WavefieldGrid field;
  field.representation = Representation::Position;
  field.plane = t;
  field.axis_step = 2.0 * half / static_cast<double>(grid_points);
  field.axis_min = -half;
  field.amplitudes.resize(grid_points);

  if (state.kind == OscillatorState::Kind::Fock) {
    const int n = state.n;
    // Hermite-Gaussian with the stationary phase e^{-i E_n t}; the frame
    // rotation contributes only the global phase e^{-i n theta}.
    const double energy = omega * (n + 0.5);
    const cplx phase = std::polar(1.0, -energy * t - n * frame.theta);
    double log_norm = 0.25 * std::log(omega / kPi);
    for (int m = 1; m <= n; ++m) log_norm -= 0.5 * std::log(2.0 * m);
    for (std::size_t i = 0; i < grid_points; ++i) {
      const double xi = std::sqrt(omega) * field.axis_at(i);
      // Hermite recurrence H_{m+1} = 2 xi H_m - 2 m H_{m-1}
      double hm1 = 0.0, h = 1.0;
      for (int m = 0; m < n; ++m) {
        const double next = 2.0 * xi * h - 2.0 * m * hm1;
        hm1 = h;
        h = next;
      }
      field.amplitudes[i] = phase * h * std::exp(log_norm - 0.5 * xi * xi);
    }
  } else {
    const cplx beta = rotated_alpha(state, frame, t);
    const double xc = std::sqrt(2.0 / omega) * beta.real();
    const double pc = std::sqrt(2.0 * omega) * beta.imag();
    const double norm = std::pow(omega / kPi, 0.25);
    const cplx global = std::polar(1.0, -0.5 * omega * t);
    for (std::size_t i = 0; i < grid_points; ++i) {
      const double x = field.axis_at(i);
      const double gauss = std::exp(-0.5 * omega * (x - xc) * (x - xc));
      const cplx wave = std::polar(1.0, pc * x - 0.5 * pc * xc);
      field.amplitudes[i] = norm * gauss * wave * global;
    }
  }
  return field;
}

ontology_x::VelocityField guidance_velocity(const OscillatorState& state, const ThetaFrame& frame,
                                            double t) {
  const WavefieldGrid field = xtheta_wavefunction(state, frame, t);
  // Unit mass: dx/dt = dS/dx, the same spectral ratio as the optical module
  // with wavenumber 1.
  return ontology_x::velocity_field(field, 1.0);
}

WeakValueProfile weak_conjugate_quadrature(const OscillatorState& state, const ThetaFrame& frame,
                                           double t) {
  const WavefieldGrid field = xtheta_wavefunction(state, frame, t);
  // p_op = -i d/dx in this representation; with unit mass the real part of
  // the conditioned ratio coincides with the guidance velocity.
  return ontology_x::weak_momentum_profile(field, 1.0);
}

TrajectoryBundle quadrature_trajectories(const OscillatorState& state, const ThetaFrame& frame,
                                         const std::vector<double>& times, int n_seeds) {
  state.validate();
  frame.validate();
  if (times.size() < 2) throw ConfigError("oscillator: need at least two time samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ConfigError("oscillator: times must be increasing");

  const WavefieldGrid initial = xtheta_wavefunction(state, frame, times.front());
  const std::vector<Seed> seeds = ontology_x::seed_from_density(initial, n_seeds);

  // The guidance field is x-independent for both supported state kinds
  // (identically zero for energy eigenstates, the packet-center velocity for
  // coherent states), so the flow is an exact translation; integrate it with
  // RK4 in time all the same to exercise the generic path.
  TrajectoryBundle bundle;
  bundle.theory = Theory::XBohm;
  bundle.seeds = seeds;
  bundle.planes = times;
  bundle.ontic.resize(seeds.size());
  bundle.derived.resize(seeds.size());
  bundle.truncated.assign(seeds.size(), false);

  const double period = 2.0 * kPi / frame.omega;
  const double step = period / 512.0;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    bundle.ontic[s].reserve(times.size());
    bundle.derived[s].reserve(times.size());
    double x = seeds[s].value;
    double t = times.front();
    bundle.ontic[s].push_back(x);
    bundle.derived[s].push_back(packet_center_velocity(state, frame, t));
    for (std::size_t p = 1; p < times.size(); ++p) {
      while (t < times[p]) {
        const double h = std::min(step, times[p] - t);
        const double k1 = packet_center_velocity(state, frame, t);
        const double k2 = packet_center_velocity(state, frame, t + 0.5 * h);
        const double k4 = packet_center_velocity(state, frame, t + h);
        x += h * (k1 + 4.0 * k2 + k4) / 6.0;  // velocity is x-free: RK4 collapses to Simpson
        t += h;
      }
      t = times[p];
      bundle.ontic[s].push_back(x);
      bundle.derived[s].push_back(packet_center_velocity(state, frame, t));
    }
  }
  return bundle;
}

}  // namespace bohmsim::oscillator
