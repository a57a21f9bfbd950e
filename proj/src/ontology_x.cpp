#include "bohmsim/ontology_x.hpp"

#include "bohmsim/fft.hpp"
#include "bohmsim/numerics.hpp"
#include "bohmsim/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

namespace bohmsim::ontology_x {

namespace {

double peak_density(const WavefieldGrid& field) {
  double peak = 0.0;
  for (const auto& a : field.amplitudes) peak = std::max(peak, std::norm(a));
  return peak;
}

}  // namespace

VelocityField velocity_field(const WavefieldGrid& field, double wavenumber) {
  if (field.representation != Representation::Position)
    throw RepresentationError("velocity_field: position representation required");
  const double peak = peak_density(field);
  if (peak <= 0.0) throw NumericalError("velocity_field: field is identically zero");

  const std::vector<cplx> du = fft::derivative(field.amplitudes, field.axis_step);
  const double floor = kDensityFloor * peak;

  VelocityField out;
  out.plane = field.plane;
  out.axis_min = field.axis_min;
  out.axis_step = field.axis_step;
  out.v.resize(field.size());
  out.density.resize(field.size());
  out.below_floor.resize(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double rho = std::norm(field.amplitudes[i]);
    out.density[i] = rho;
    out.below_floor[i] = rho < floor;
    // Re[<x|k_op|u>/<x|u>]/k with <x|k_op|u> = -i u'(x).
    const cplx ratio = (cplx(0.0, -1.0) * du[i]) / field.amplitudes[i];
    out.v[i] = std::isfinite(ratio.real()) ? ratio.real() / wavenumber : 0.0;
  }
  return out;
}

std::vector<double> velocity_current_route(const WavefieldGrid& field, double wavenumber) {
  if (field.representation != Representation::Position)
    throw RepresentationError("velocity_current_route: position representation required");
  const std::vector<cplx> du = fft::derivative(field.amplitudes, field.axis_step);
  std::vector<double> v(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    // j = Im(u* u')/k divided by |u|^2.
    const double rho = std::norm(field.amplitudes[i]);
    const double j = (std::conj(field.amplitudes[i]) * du[i]).imag() / wavenumber;
    v[i] = rho > 0.0 ? j / rho : 0.0;
  }
  return v;
}

double analytic_velocity(const SlitScene& scene, double x, double z) {
  cplx dlog;
  wavepacket::two_slit_amplitude(scene, x, z, &dlog);
  return dlog.imag() / scene.wavenumber();
}

WeakValueProfile weak_momentum_profile(const WavefieldGrid& field, double wavenumber) {
  // Identical numbers to the guidance field: in these units the momentum
  // assigned at x is p/(m c) = theta = v.
  const VelocityField vf = velocity_field(field, wavenumber);
  WeakValueProfile prof;
  prof.axis.resize(vf.v.size());
  for (std::size_t i = 0; i < vf.v.size(); ++i) prof.axis[i] = vf.axis_at(i);
  prof.value = vf.v;
  prof.spread.assign(vf.v.size(), 0.0);
  prof.counts = vf.density;
  prof.flagged.assign(vf.below_floor.begin(), vf.below_floor.end());
  return prof;
}

std::vector<Seed> seed_from_density(const WavefieldGrid& field, int n) {
  if (n < 1) throw ConfigError("seed_from_density: need n >= 1");
  DensityCdf cdf(field.axis_min, field.axis_step, field.density());
  std::vector<Seed> seeds(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    seeds[static_cast<std::size_t>(i)] = Seed{cdf.value_at(q), q};
  }
  return seeds;
}

VelocityLattice::VelocityLattice(const SlitScene& scene, double z_lo, double z_hi, double dz)
    : axis_min_(-scene.grid_extent),
      axis_step_(scene.grid_step()),
      z_lo_(z_lo),
      dz_(dz),
      nx_(scene.grid_points) {
  if (!(z_hi >= z_lo) || dz <= 0.0) throw ConfigError("VelocityLattice: bad z range");
  nz_ = static_cast<std::size_t>(std::ceil((z_hi - z_lo) / dz)) + 1;
  if (nz_ < 4) nz_ = 4;
  z_hi_ = z_lo_ + dz_ * static_cast<double>(nz_ - 1);
  v_.resize(nz_ * nx_);

  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = (nz_ + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(nz_, lo + chunk);
    if (lo >= hi) break;
    jobs.push_back(std::async(std::launch::async, [this, &scene, lo, hi] {
      for (std::size_t iz = lo; iz < hi; ++iz) {
        const double z = z_lo_ + dz_ * static_cast<double>(iz);
        double* row = v_.data() + iz * nx_;
        for (std::size_t ix = 0; ix < nx_; ++ix)
          row[ix] = analytic_velocity(scene, axis_min_ + axis_step_ * static_cast<double>(ix), z);
      }
    }));
  }
  for (auto& j : jobs) j.get();
}

double VelocityLattice::sample(double x, double z) const {
  // Separable Catmull-Rom in x and z with clamped edge stencils.
  const double gz = std::clamp((z - z_lo_) / dz_, 0.0, static_cast<double>(nz_ - 1));
  const double gx = std::clamp((x - axis_min_) / axis_step_, 0.0, static_cast<double>(nx_ - 1));
  std::ptrdiff_t iz = static_cast<std::ptrdiff_t>(std::floor(gz));
  if (iz > static_cast<std::ptrdiff_t>(nz_) - 2) iz = static_cast<std::ptrdiff_t>(nz_) - 2;
  const double tz = gz - static_cast<double>(iz);

  std::ptrdiff_t ix = static_cast<std::ptrdiff_t>(std::floor(gx));
  if (ix > static_cast<std::ptrdiff_t>(nx_) - 2) ix = static_cast<std::ptrdiff_t>(nx_) - 2;
  const double tx = gx - static_cast<double>(ix);

  const auto plane_value = [&](std::ptrdiff_t jz) -> double {
    jz = std::clamp<std::ptrdiff_t>(jz, 0, static_cast<std::ptrdiff_t>(nz_) - 1);
    const double* row = v_.data() + static_cast<std::size_t>(jz) * nx_;
    const auto at = [&](std::ptrdiff_t jx) {
      return row[std::clamp<std::ptrdiff_t>(jx, 0, static_cast<std::ptrdiff_t>(nx_) - 1)];
    };
    const double p0 = at(ix - 1), p1 = at(ix), p2 = at(ix + 1), p3 = at(ix + 2);
    return p1 + 0.5 * tx * (p2 - p0 + tx * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                            tx * (3.0 * (p1 - p2) + p3 - p0)));
  };
  const double q0 = plane_value(iz - 1), q1 = plane_value(iz), q2 = plane_value(iz + 1),
               q3 = plane_value(iz + 2);
  return q1 + 0.5 * tz * (q2 - q0 + tz * (2.0 * q0 - 5.0 * q1 + 4.0 * q2 - q3 +
                                          tz * (3.0 * (q1 - q2) + q3 - q0)));
}

namespace {

struct PathResult {
  std::vector<double> ontic, derived;
  bool truncated = false;
};

PathResult integrate_one(const VelocityLattice& lat, double x0, const std::vector<double>& planes,
                         double step) {
  PathResult res;
  res.ontic.reserve(planes.size());
  res.derived.reserve(planes.size());

  const double x_lo = lat.x_lo(), x_hi = lat.x_hi();
  double x = x0;
  double z = planes.front();
  res.ontic.push_back(x);
  res.derived.push_back(lat.sample(x, z));

  for (std::size_t p = 1; p < planes.size(); ++p) {
    const double target = planes[p];
    while (z < target && !res.truncated) {
      const double h = std::min(step, target - z);
      const double k1 = lat.sample(x, z);
      const double k2 = lat.sample(x + 0.5 * h * k1, z + 0.5 * h);
      const double k3 = lat.sample(x + 0.5 * h * k2, z + 0.5 * h);
      const double k4 = lat.sample(x + h * k3, z + h);
      x += h * (k1 + 2.0 * (k2 + k3) + k4) / 6.0;
      z += h;
      if (x <= x_lo || x >= x_hi) {
        x = std::clamp(x, x_lo, x_hi);
        res.truncated = true;
      }
    }
    z = target;  // guard accumulated rounding in z
    res.ontic.push_back(x);
    res.derived.push_back(lat.sample(x, z));
  }
  return res;
}

}  // namespace

TrajectoryBundle integrate_over_lattice(const VelocityLattice& lattice,
                                        const std::vector<Seed>& seeds,
                                        const std::vector<double>& planes,
                                        const IntegratorOptions& opts) {
  if (planes.size() < 2) throw ConfigError("integrate: need at least two planes");
  for (std::size_t i = 1; i < planes.size(); ++i)
    if (!(planes[i] > planes[i - 1])) throw ConfigError("integrate: planes must be increasing");
  if (opts.step <= 0.0) throw ConfigError("integrate: step must be positive");

  TrajectoryBundle bundle;
  bundle.theory = Theory::XBohm;
  bundle.seeds = seeds;
  bundle.planes = planes;
  bundle.ontic.resize(seeds.size());
  bundle.derived.resize(seeds.size());
  bundle.truncated.assign(seeds.size(), false);

  const auto run = [&](std::size_t i) {
    PathResult r = integrate_one(lattice, seeds[i].value, planes, opts.step);
    bundle.ontic[i] = std::move(r.ontic);
    bundle.derived[i] = std::move(r.derived);
    bundle.truncated[i] = r.truncated;
  };

  if (opts.parallel && seeds.size() > 1) {
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (seeds.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(seeds.size(), lo + chunk);
      if (lo >= hi) break;
      jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) run(i);
      }));
    }
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t i = 0; i < seeds.size(); ++i) run(i);
  }
  return bundle;
}

TrajectoryBundle integrate_trajectories(const SlitScene& scene, const std::vector<Seed>& seeds,
                                        const std::vector<double>& planes,
                                        const IntegratorOptions& opts) {
  scene.validate();
  if (planes.empty()) throw ConfigError("integrate: empty plane list");
  const VelocityLattice lattice(scene, planes.front(), planes.back(), opts.lattice_dz);
  return integrate_over_lattice(lattice, seeds, planes, opts);
}

std::vector<double> asymptote_deviation(const TrajectoryBundle& bundle, const SlitScene& scene) {
  if (bundle.planes.empty()) throw ConfigError("asymptote_deviation: empty bundle");
  const double z = bundle.planes.back();
  const double s2 = scene.slit_separation / 2.0;
  const double inner = s2 + 2.0 * scene.beam_diameter;
  std::vector<double> dev(bundle.seeds.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < bundle.seeds.size(); ++i) {
    const double x = bundle.ontic[i].back();
    if (std::abs(x) <= inner) continue;
    const double ballistic = (x - (x > 0.0 ? s2 : -s2)) / z;
    dev[i] = std::abs(bundle.derived[i].back() - ballistic);
  }
  return dev;
}

}  // namespace bohmsim::ontology_x
