#include "bohmsim/optics.hpp"

#include "bohmsim/fft.hpp"

#include <algorithm>
#include <cmath>

namespace bohmsim::optics {

RayMatrix prop(double distance) { return {1.0, distance, 0.0, 1.0}; }

RayMatrix lens(double focal_length) {
  if (focal_length == 0.0) throw ConfigError("lens: focal length must be nonzero");
  return {1.0, 0.0, -1.0 / focal_length, 1.0};
}

RayMatrix compose(std::initializer_list<RayMatrix> beam_order) {
  RayMatrix acc;  // identity
  for (const RayMatrix& m : beam_order) {
    // Arguments are written left-to-right as a matrix product, so the
    // rightmost factor acts on the ray first; accumulate from the left.
    acc = acc * m;
  }
  return acc;
}

double effective_plane_offset(double y, double f1) {
  if (f1 <= 0.0) throw ConfigError("effective_plane_offset: f1 must be positive");
  if (y < 0.0) throw ConfigError("effective_plane_offset: y must be >= 0");
  return f1 / (1.0 + y / f1);
}

double magnification(double y, double f1) { return f1 / (f1 + y); }

double offset_to_distance(double d, double f1) {
  if (d <= 0.0 || f1 <= 0.0) throw ConfigError("offset_to_distance: d and f1 must be positive");
  return f1 * (f1 - d) / d;
}

namespace {

// Bench layout shared by both configurations: Lens 2 sits one focal length
// past the plane d behind Lens 1 selected by the imaging condition; the
// camera closes the bench at sys.total_length.
struct Bench {
  double d;        // Lens-2 focus offset behind Lens 1
  double s2;       // Lens 1 -> Lens 2
  double gap;      // Lens 2 -> Lens 3
  double q;        // Lens 3 -> camera
};

Bench xbohm_bench(double y, const LensSystem& sys) {
  Bench b;
  b.d = effective_plane_offset(y, sys.f1);
  b.s2 = sys.f1 - b.d + sys.f2;
  b.q = sys.f3;
  b.gap = sys.total_length - b.q - b.s2;
  if (b.gap <= 0.0) throw ConfigError("xbohm_system: bench too short for this plane");
  return b;
}

Bench pbohm_bench(double y, const LensSystem& sys) {
  Bench b;
  b.d = effective_plane_offset(y, sys.f1);
  b.s2 = sys.f1 - b.d + sys.f2;
  b.gap = sys.f2 + sys.f3;  // focal telescope, translated as a unit
  b.q = sys.total_length - b.s2 - b.gap;
  if (b.q <= 0.0) throw ConfigError("pbohm_system: bench too short for this plane");
  return b;
}

}  // namespace

RayMatrix xbohm_system(double y, const LensSystem& sys) {
  const Bench b = xbohm_bench(y, sys);
  return compose({prop(b.q), lens(sys.f3), prop(b.gap), lens(sys.f2), prop(b.s2), lens(sys.f1),
                  prop(-y)});
}

RayMatrix pbohm_system(double y, const LensSystem& sys) {
  const Bench b = pbohm_bench(y, sys);
  return compose({prop(b.q), lens(sys.f3), prop(b.gap), lens(sys.f2), prop(b.s2), lens(sys.f1),
                  prop(-y)});
}

RayMatrix effective_to_lens2_exit(double y, double d2, const LensSystem& sys) {
  const double d = effective_plane_offset(y, sys.f1);
  return compose({prop(d2), lens(sys.f2), prop(sys.f2), prop(sys.f1 - d), lens(sys.f1), prop(-y)});
}

double position_coupling_scale(double y, const LensSystem& sys) {
  return -sys.f1 / (sys.f2 * (sys.f1 + y));
}

WavefieldGrid apply_ray_matrix(const WavefieldGrid& field, const RayMatrix& m, double wavenumber) {
  if (field.representation != Representation::Position)
    throw RepresentationError("apply_ray_matrix: position representation required");
  if (std::abs(m.det() - 1.0) > 1e-9)
    throw ConfigError("apply_ray_matrix: matrix determinant must be 1");

  const std::size_t n = field.size();
  WavefieldGrid out;
  out.representation = Representation::Position;
  out.plane = field.plane;
  out.amplitudes.resize(n);

  // Sub-picometer b is an imaging configuration up to roundoff; the Fourier
  // branch would divide by it and chirp at an unresolvable rate.
  if (std::abs(m.b) < 1e-12) {
    // Pure imaging: u_out(x) = u(x/a)/sqrt(|a|) * exp(i k c x^2 / (2a)).
    // Samples map node-to-node under x -> a x; a < 0 flips the axis.
    const double a = m.a;
    std::vector<cplx> vals = field.amplitudes;
    double x0 = field.axis_min * a;
    double dx = field.axis_step * a;
    if (a < 0.0) {
      std::reverse(vals.begin(), vals.end());
      x0 = (field.axis_min + field.axis_step * static_cast<double>(n - 1)) * a;
      dx = -dx;
    }
    out.axis_min = x0;
    out.axis_step = dx;
    const double amp = 1.0 / std::sqrt(std::abs(a));
    for (std::size_t i = 0; i < n; ++i) {
      const double x = out.axis_at(i);
      const double chirp = 0.5 * wavenumber * m.c * x * x / a;
      out.amplitudes[i] = vals[i] * amp * cplx(std::cos(chirp), std::sin(chirp));
    }
    return out;
  }

  // General case as chirp -> Fourier -> chirp:
  //   u_out(x2) = sqrt(k/(2 pi i b)) e^{i k d x2^2/(2b)}
  //               Integral e^{-i k x1 x2 / b} [e^{i k a x1^2/(2b)} u(x1)] dx1.
  WavefieldGrid chirped = field;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = field.axis_at(i);
    const double phase = 0.5 * wavenumber * m.a * x * x / m.b;
    chirped.amplitudes[i] *= cplx(std::cos(phase), std::sin(phase));
  }
  WavefieldGrid spec = to_momentum(chirped, wavenumber);  // axis kappa/k, kernel e^{-i k theta x}

  // e^{-i k x1 x2 / b} matches the transform kernel at x2 = theta * b; the
  // output grid is the transform grid scaled by b (flipped if b < 0).
  const double b = m.b;
  std::vector<cplx> vals = std::move(spec.amplitudes);
  double x0 = spec.axis_min * b;
  double dx = spec.axis_step * b;
  if (b < 0.0) {
    std::reverse(vals.begin(), vals.end());
    x0 = (spec.axis_min + spec.axis_step * static_cast<double>(n - 1)) * b;
    dx = -dx;
  }
  out.axis_min = x0;
  out.axis_step = dx;

  // Collins prefactor sqrt(k/(2 pi i b)) combined with the sqrt(2 pi / k) of
  // the unitary transform convention leaves 1/sqrt(i b); principal branch
  // sets the (physically irrelevant) global phase.
  const cplx front = std::sqrt(cplx(0.0, b));
  for (std::size_t i = 0; i < n; ++i) {
    const double x = out.axis_at(i);
    const double phase = 0.5 * wavenumber * m.d * x * x / b;
    out.amplitudes[i] = vals[i] / front * cplx(std::cos(phase), std::sin(phase));
  }
  return out;
}

}  // namespace bohmsim::optics
