#pragma once

#include <cstddef>
#include <vector>

namespace bohmsim {

// Catmull-Rom interpolation of uniformly sampled values; edge nodes are
// clamped. `x` in grid units relative to x_min (i.e. (x - x_min)/step).
double cubic_interp(const std::vector<double>& values, double grid_coord);

// Trapezoid cumulative of a nonnegative density on a uniform axis, with the
// piecewise-linear inverse used for quantile seeding.
class DensityCdf {
 public:
  DensityCdf(double axis_min, double axis_step, const std::vector<double>& density);

  double quantile_of(double x) const;  // CDF(x) in [0, 1]
  double value_at(double q) const;     // inverse CDF
  double mean() const { return mean_; }
  double stddev() const { return stddev_; }
  double total_mass() const { return total_; }

 private:
  double axis_min_, axis_step_;
  std::vector<double> cum_;  // normalized cumulative at the grid nodes
  double total_ = 0.0, mean_ = 0.0, stddev_ = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Weighted least squares y ~ slope*x + intercept. Empty or degenerate input
// yields a zero fit.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w = {});

// Least-squares slope of y ~ slope*x through the origin.
double fit_slope_through_origin(const std::vector<double>& x, const std::vector<double>& y,
                                const std::vector<double>& w = {});

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace bohmsim
