#include "bohmsim/fft.hpp"

#include <cmath>

namespace bohmsim::fft {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

void transform(std::vector<cplx>& data, bool inverse) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw NumericalError("fft: length must be a power of two >= 2");

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = data[i + j];
        const cplx v = data[i + j + len / 2] * w;
        data[i + j] = u + v;
        data[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : data) c *= scale;
  }
}

std::vector<cplx> derivative(const std::vector<cplx>& samples, double dx) {
  const std::size_t n = samples.size();
  std::vector<cplx> work = samples;
  transform(work, false);
  const double dk = 2.0 * kPi / (static_cast<double>(n) * dx);
  for (std::size_t j = 0; j < n; ++j) {
    double k;
    if (j < n / 2)
      k = dk * static_cast<double>(j);
    else if (j == n / 2)
      k = 0.0;  // drop the unmatched Nyquist component of an odd derivative
    else
      k = dk * (static_cast<double>(j) - static_cast<double>(n));
    work[j] *= cplx(0.0, k);
  }
  transform(work, true);
  return work;
}

}  // namespace bohmsim::fft

namespace bohmsim {

WavefieldGrid to_momentum(const WavefieldGrid& field, double wavenumber) {
  if (field.representation != Representation::Position)
    throw RepresentationError("to_momentum: field already in momentum representation");
  const std::size_t n = field.size();
  if (!fft::is_power_of_two(n)) throw NumericalError("to_momentum: grid must be a power of two");

  const double dx = field.axis_step;
  const double dk = 2.0 * kPi / (static_cast<double>(n) * dx);
  const double half = static_cast<double>(n) / 2.0;

  // Center the spectrum: multiplying by (-1)^n shifts DFT bin j to j - N/2.
  std::vector<cplx> work(n);
  for (std::size_t i = 0; i < n; ++i)
    work[i] = (i % 2 == 0) ? field.amplitudes[i] : -field.amplitudes[i];
  fft::transform(work, false);

  WavefieldGrid out;
  out.representation = Representation::Momentum;
  out.plane = field.plane;
  out.axis_step = dk / wavenumber;
  out.axis_min = -half * dk / wavenumber;
  out.amplitudes.resize(n);
  // Unitary continuum scaling: u~(theta) = sqrt(k/2pi) * dx * sum u e^{-i k theta x}.
  const double scale = dx * std::sqrt(wavenumber / (2.0 * kPi));
  for (std::size_t j = 0; j < n; ++j) {
    const double kj = (static_cast<double>(j) - half) * dk;
    const cplx phase(std::cos(kj * field.axis_min), -std::sin(kj * field.axis_min));
    out.amplitudes[j] = work[j] * phase * scale;
  }
  return out;
}

WavefieldGrid to_position(const WavefieldGrid& field, double wavenumber, double axis_min,
                          double axis_step) {
  if (field.representation != Representation::Momentum)
    throw RepresentationError("to_position: field already in position representation");
  const std::size_t n = field.size();
  const double dk = field.axis_step * wavenumber;
  const double half = static_cast<double>(n) / 2.0;

  std::vector<cplx> work(n);
  const double scale = dk / std::sqrt(2.0 * kPi * wavenumber);
  for (std::size_t j = 0; j < n; ++j) {
    const double kj = (static_cast<double>(j) - half) * dk;
    const cplx phase(std::cos(kj * axis_min), std::sin(kj * axis_min));
    work[j] = field.amplitudes[j] * phase * scale;
  }
  fft::transform(work, true);

  WavefieldGrid out;
  out.representation = Representation::Position;
  out.plane = field.plane;
  out.axis_min = axis_min;
  out.axis_step = axis_step;
  out.amplitudes.resize(n);
  const double norm_fix = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx v = (i % 2 == 0) ? work[i] : -work[i];
    out.amplitudes[i] = v * norm_fix;
  }
  return out;
}

std::vector<double> WavefieldGrid::axis() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = axis_at(i);
  return out;
}

std::vector<double> WavefieldGrid::density() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(amplitudes[i]);
  return out;
}

double WavefieldGrid::norm() const {
  if (amplitudes.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double w = (i == 0 || i + 1 == size()) ? 0.5 : 1.0;
    acc += w * std::norm(amplitudes[i]);
  }
  return std::sqrt(acc * axis_step);
}

void WavefieldGrid::normalize() {
  const double n = norm();
  if (n <= 0.0) throw NumericalError("normalize: field has zero norm");
  for (auto& a : amplitudes) a /= n;
}

}  // namespace bohmsim
