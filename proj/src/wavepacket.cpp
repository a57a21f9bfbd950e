#include "bohmsim/wavepacket.hpp"

#include "bohmsim/fft.hpp"

#include <cmath>

namespace bohmsim {

void SlitScene::validate() const {
  if (wavelength <= 0.0) throw ConfigError("scene: wavelength must be positive");
  if (slit_separation <= 0.0) throw ConfigError("scene: slit separation must be positive");
  if (beam_diameter <= 0.0) throw ConfigError("scene: beam diameter must be positive");
  if (grid_extent <= 0.0) throw ConfigError("scene: grid extent must be positive");
  if (amp_plus < 0.0 || amp_minus < 0.0) throw ConfigError("scene: slit amplitudes must be >= 0");
  if (amp_plus == 0.0 && amp_minus == 0.0)
    throw ConfigError("scene: at least one slit amplitude must be nonzero");
  if (!fft::is_power_of_two(grid_points))
    throw ConfigError("scene: grid_points must be a power of two >= 2");
  const double needed = slit_separation / 2.0 + 4.0 * beam_diameter;
  if (grid_extent < needed)
    throw ConfigError("scene: grid extent " + std::to_string(grid_extent) +
                      " m does not cover s/2 + 4w = " + std::to_string(needed) + " m");
}

}  // namespace bohmsim

namespace bohmsim::wavepacket {

namespace {

// Per-slit complex log-amplitude L(x, z) and dL/dx of the evolved Gaussian
// sqrt(q0/q) exp(i k (x - x_slit)^2 / (2 q)), q = q0 + z with q0 = -i z_R so
// that the z = 0 profile is exp(-(x - x_slit)^2 / w0^2). Working with logs
// keeps the ratio arithmetic finite arbitrarily deep into the tails.
struct SlitTerm {
  cplx log_amp;
  cplx dlog_dx;
};

SlitTerm slit_term(const SlitScene& scene, double x_slit, double x, double z) {
  const double k = scene.wavenumber();
  const cplx q0(0.0, -scene.rayleigh_range());
  const cplx q = q0 + z;
  const double dx = x - x_slit;
  const cplx ik_over_2q = cplx(0.0, 0.5 * k) / q;
  SlitTerm t;
  t.log_amp = 0.5 * std::log(q0 / q) + ik_over_2q * dx * dx;
  t.dlog_dx = 2.0 * ik_over_2q * dx;
  return t;
}

}  // namespace

cplx two_slit_amplitude(const SlitScene& scene, double x, double z, cplx* log_derivative) {
  const double s2 = scene.slit_separation / 2.0;
  const SlitTerm plus = slit_term(scene, +s2, x, z);
  const SlitTerm minus = slit_term(scene, -s2, x, z);

  // Factor out the larger contributing term so the exponentials stay O(1).
  const bool have_plus = scene.amp_plus > 0.0;
  const bool have_minus = scene.amp_minus > 0.0;
  bool plus_leads = have_plus;
  if (have_plus && have_minus) plus_leads = plus.log_amp.real() >= minus.log_amp.real();
  const cplx lead = plus_leads ? plus.log_amp : minus.log_amp;
  const cplx wp = scene.amp_plus > 0.0 ? scene.amp_plus * std::exp(plus.log_amp - lead) : 0.0;
  const cplx wm = scene.amp_minus > 0.0 ? scene.amp_minus * std::exp(minus.log_amp - lead) : 0.0;
  const cplx sum = wp + wm;
  if (log_derivative) {
    if (sum == cplx(0.0, 0.0))
      *log_derivative = plus_leads ? plus.dlog_dx : minus.dlog_dx;
    else
      *log_derivative = (wp * plus.dlog_dx + wm * minus.dlog_dx) / sum;
  }
  return sum * std::exp(lead);
}

namespace {

WavefieldGrid raw_two_slit_plane(const SlitScene& scene, double z) {
  WavefieldGrid field;
  field.representation = Representation::Position;
  field.plane = z;
  field.axis_step = scene.grid_step();
  field.axis_min = -scene.grid_extent;
  field.amplitudes.resize(scene.grid_points);
  for (std::size_t i = 0; i < scene.grid_points; ++i)
    field.amplitudes[i] = two_slit_amplitude(scene, field.axis_at(i), z);
  return field;
}

void check_edges(const WavefieldGrid& field, double threshold, const char* what) {
  double peak = 0.0;
  for (const auto& a : field.amplitudes) peak = std::max(peak, std::abs(a));
  const double edge = std::max(std::abs(field.amplitudes.front()), std::abs(field.amplitudes.back()));
  if (peak <= 0.0 || edge > threshold * peak) throw AliasingError(what);
}

}  // namespace

WavefieldGrid build_two_slit(const SlitScene& scene) {
  scene.validate();
  WavefieldGrid field = raw_two_slit_plane(scene, 0.0);
  try {
    check_edges(field, 1e-8, "two-slit state does not vanish at the grid boundary");
  } catch (const AliasingError& e) {
    throw ConfigError(e.what());
  }
  field.normalize();
  return field;
}

WavefieldGrid evolve_analytic(const SlitScene& scene, double z) {
  if (z < 0.0) throw ConfigError("evolve: z must be >= 0");
  scene.validate();
  // Normalization constant fixed once at z = 0; the closed-form evolution of
  // each term is unitary so the constant carries to every plane.
  WavefieldGrid initial = raw_two_slit_plane(scene, 0.0);
  const double n0 = initial.norm();
  if (n0 <= 0.0) throw NumericalError("evolve: zero-norm initial state");

  WavefieldGrid field = (z == 0.0) ? std::move(initial) : raw_two_slit_plane(scene, z);
  for (auto& a : field.amplitudes) a /= n0;
  return field;
}

WavefieldGrid evolve_split_step(const SlitScene& scene, double z, int steps) {
  if (steps < 1) throw ConfigError("evolve_split_step: steps must be >= 1");
  if (z < 0.0) throw ConfigError("evolve: z must be >= 0");
  WavefieldGrid field = build_two_slit(scene);
  if (z == 0.0) return field;

  const double k = scene.wavenumber();
  const double dz = z / static_cast<double>(steps);
  const double x0 = field.axis_min;
  const double dx = field.axis_step;
  for (int step = 0; step < steps; ++step) {
    WavefieldGrid spec = to_momentum(field, k);
    for (std::size_t j = 0; j < spec.size(); ++j) {
      const double theta = spec.axis_at(j);
      const double phase = -0.5 * k * theta * theta * dz;
      spec.amplitudes[j] *= cplx(std::cos(phase), std::sin(phase));
    }
    // Zero potential: the in-between position-space phase of the symmetric
    // splitting is the identity, so each step is a single exact kernel.
    field = to_position(spec, k, x0, dx);
    field.plane = spec.plane + dz;
    check_edges(field, 1e-6, "split-step propagation reached the grid edge (aliasing)");
  }
  return field;
}

WavefieldGrid momentum_rep(const WavefieldGrid& field, double wavenumber) {
  return to_momentum(field, wavenumber);
}

WavefieldGrid momentum_rep(const SlitScene& scene, const WavefieldGrid& field) {
  return to_momentum(field, scene.wavenumber());
}

double near_far_transition(const SlitScene& scene) {
  const double divergence = scene.wavelength / (kPi * scene.waist());
  return (scene.slit_separation / 2.0) / divergence;
}

}  // namespace bohmsim::wavepacket
