#pragma once

#include "bohmsim/types.hpp"

#include <span>

namespace bohmsim::fft {

bool is_power_of_two(std::size_t n);

// In-place radix-2 DFT. Forward: X_j = sum_n x_n exp(-2*pi*i*j*n/N).
// Inverse applies the conjugate kernel and the 1/N factor. N must be a
// power of two.
void transform(std::vector<cplx>& data, bool inverse);

// d/dx by spectral differentiation on a uniform grid of step dx, treating the
// samples as one period. The Nyquist bin is zeroed (odd derivative).
std::vector<cplx> derivative(const std::vector<cplx>& samples, double dx);

}  // namespace bohmsim::fft

namespace bohmsim {

// Unitary map between the position field u(x) and the transverse-angle field
// u~(theta), theta = k_x/|k|:
//   u~(theta) = sqrt(k/(2 pi)) * Integral u(x) exp(-i k theta x) dx.
// Discretized with the plain-sum quadrature that makes Parseval exact.
// `wavenumber` is |k| = 2 pi / lambda.
WavefieldGrid to_momentum(const WavefieldGrid& field, double wavenumber);
WavefieldGrid to_position(const WavefieldGrid& field, double wavenumber,
                          double axis_min, double axis_step);

}  // namespace bohmsim
