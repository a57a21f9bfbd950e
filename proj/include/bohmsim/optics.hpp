#pragma once

#include "bohmsim/types.hpp"

#include <initializer_list>

namespace bohmsim::optics {

/// 2x2 ray transfer matrix acting on (position; angle) column vectors.
/// b carries meters, c carries 1/meters; det = ad - bc = 1 for any lossless
/// paraxial element.
struct RayMatrix {
  double a = 1.0, b = 0.0;
  double c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
  friend RayMatrix operator*(const RayMatrix& lhs, const RayMatrix& rhs) {
    return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
            lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
  }
};

RayMatrix prop(double distance);  // free propagation over `distance` (m)
RayMatrix lens(double focal_length);

// Product of the listed matrices, multiplying right-to-left in beam order:
// the rightmost argument acts on the ray first.
RayMatrix compose(std::initializer_list<RayMatrix> beam_order);

/// Three-lens relay: Lens 1 fixed at the input, Lens 2 translatable, Lens 3
/// in front of the imaging plane. Defaults follow the bench that motivated
/// this module: f1 = 15 cm, f2 = f3 = 10 cm, 55 cm from Lens 1 to the camera.
struct LensSystem {
  double f1 = 0.15;
  double f2 = 0.10;
  double f3 = 0.10;
  double total_length = 0.55;
};

// Offset d of the Lens-2 focus behind Lens 1 that images the virtual plane a
// distance y downstream of the slits: d = f1 / (1 + y/f1).
double effective_plane_offset(double y, double f1);

// Transverse scaling from the effective plane to the imaged plane, f1/(f1+y).
double magnification(double y, double f1);

// Inverse of effective_plane_offset: y = f1 (f1 - d) / d.
double offset_to_distance(double d, double f1);

// Back propagation over y, then Lens 1 and the relay configured to image the
// effective plane onto the camera (b-element of the result vanishes).
RayMatrix xbohm_system(double y, const LensSystem& sys = {});

// Same bench with Lens 2/Lens 3 forming a telescope at separation f2 + f3:
// the camera then reads the transverse angle, independent of f2 when the
// telescope is one-to-one. Equals {{0, -f1}, {1/f1, -(f1+y)/f1}}.
RayMatrix pbohm_system(double y, const LensSystem& sys = {});

// Stage matrix from the effective plane to a plane `d2` past Lens 2 (Lens 2
// focus placed per effective_plane_offset). Its d-element vanishes: the local
// angle there is proportional to effective-plane position alone.
RayMatrix effective_to_lens2_exit(double y, double d2, const LensSystem& sys = {});

// Local angle per unit effective-plane position between Lens 2 and Lens 3
// (the c-element above): -f1 / (f2 (f1 + y)), in rad/m. This is the lever arm
// that turns a momentum coupling at the calcite into an effective position
// coupling at plane y.
double position_coupling_scale(double y, const LensSystem& sys = {});

// Wave-optics action of a ray matrix on a field (the canonical-transform
// integral associated with the matrix), realized as chirp -> Fourier ->
// chirp stages for b != 0 and as a pure scaling with a phase chirp for
// b = 0. Unitary; the output axis is the matrix image of the input axis.
// Global phase follows the principal branch and is not otherwise pinned.
WavefieldGrid apply_ray_matrix(const WavefieldGrid& field, const RayMatrix& m, double wavenumber);

}  // namespace bohmsim::optics
