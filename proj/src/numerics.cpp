#include "bohmsim/numerics.hpp"

#include "bohmsim/types.hpp"

#include <algorithm>
#include <cmath>

namespace bohmsim {

double cubic_interp(const std::vector<double>& values, double grid_coord) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
  if (n == 0) throw NumericalError("cubic_interp: empty table");
  if (n == 1) return values[0];

  double g = std::clamp(grid_coord, 0.0, static_cast<double>(n - 1));
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(std::floor(g));
  if (i > n - 2) i = n - 2;
  const double t = g - static_cast<double>(i);

  const auto at = [&](std::ptrdiff_t j) { return values[std::clamp<std::ptrdiff_t>(j, 0, n - 1)]; };
  const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  // Catmull-Rom basis
  return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                        t * (3.0 * (p1 - p2) + p3 - p0)));
}

DensityCdf::DensityCdf(double axis_min, double axis_step, const std::vector<double>& density)
    : axis_min_(axis_min), axis_step_(axis_step) {
  const std::size_t n = density.size();
  if (n < 2) throw NumericalError("DensityCdf: need at least two samples");
  cum_.resize(n);
  cum_[0] = 0.0;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double cell = 0.5 * (density[i - 1] + density[i]) * axis_step_;
    cum_[i] = cum_[i - 1] + cell;
    const double xm = axis_min_ + axis_step_ * (static_cast<double>(i) - 0.5);
    m1 += cell * xm;
    m2 += cell * xm * xm;
  }
  total_ = cum_.back();
  if (total_ <= 0.0) throw NumericalError("DensityCdf: zero total mass");
  for (auto& c : cum_) c /= total_;
  m1 /= total_;
  m2 /= total_;
  mean_ = m1;
  stddev_ = std::sqrt(std::max(0.0, m2 - m1 * m1));
}

double DensityCdf::quantile_of(double x) const {
  const double g = (x - axis_min_) / axis_step_;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cum_.size());
  if (g <= 0.0) return 0.0;
  if (g >= static_cast<double>(n - 1)) return 1.0;
  const std::ptrdiff_t i = static_cast<std::ptrdiff_t>(std::floor(g));
  const double t = g - static_cast<double>(i);
  return cum_[i] + t * (cum_[i + 1] - cum_[i]);
}

double DensityCdf::value_at(double q) const {
  q = std::clamp(q, 0.0, 1.0);
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), q);
  if (it == cum_.begin()) return axis_min_;
  if (it == cum_.end()) return axis_min_ + axis_step_ * static_cast<double>(cum_.size() - 1);
  const std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  const double lo = cum_[i - 1], hi = cum_[i];
  const double t = (hi > lo) ? (q - lo) / (hi - lo) : 0.0;
  return axis_min_ + axis_step_ * (static_cast<double>(i - 1) + t);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w) {
  LineFit fit;
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    sw += wi;
    sx += wi * x[i];
    sy += wi * y[i];
    sxx += wi * x[i] * x[i];
    sxy += wi * x[i] * y[i];
  }
  const double den = sw * sxx - sx * sx;
  if (sw <= 0.0 || den == 0.0) return fit;
  fit.slope = (sw * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / sw;
  return fit;
}

double fit_slope_through_origin(const std::vector<double>& x, const std::vector<double>& y,
                                const std::vector<double>& w) {
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    sxy += wi * x[i] * y[i];
    sxx += wi * x[i] * x[i];
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  return out;
}

}  // namespace bohmsim
