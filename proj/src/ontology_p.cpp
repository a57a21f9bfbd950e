#include "bohmsim/ontology_p.hpp"

#include "bohmsim/fft.hpp"
#include "bohmsim/numerics.hpp"
#include "bohmsim/ontology_x.hpp"
#include "bohmsim/wavepacket.hpp"

#include <algorithm>
#include <cmath>

namespace bohmsim::ontology_p {

MomentumCurrent momentum_current(const WavefieldGrid& momentum_field, Potential potential) {
  if (momentum_field.representation != Representation::Momentum)
    throw RepresentationError("momentum_current: momentum representation required");
  if (potential != Potential::Free)
    throw UnsupportedFeature(
        "momentum_current: only the free particle is supported; the potential term acts as a "
        "derivative operator in this representation and is not approximated");
  MomentumCurrent out;
  out.plane = momentum_field.plane;
  out.axis = momentum_field.axis();
  // Zero potential makes the momentum density a constant of the motion, so
  // the current vanishes identically (and with it the guidance velocity).
  out.j_p.assign(momentum_field.size(), 0.0);
  return out;
}

namespace {

// <theta|x_op|u> and <theta|u> as the momentum-representation transforms of
// x*u(x) and u(x); the weak value is the real part of their ratio.
struct SpectralPair {
  WavefieldGrid numerator;    // transform of x * u
  WavefieldGrid denominator;  // transform of u
};

SpectralPair weak_position_pair(const WavefieldGrid& field, double wavenumber) {
  if (field.representation != Representation::Position)
    throw RepresentationError("weak_position: position representation required");
  WavefieldGrid weighted = field;
  for (std::size_t i = 0; i < weighted.size(); ++i)
    weighted.amplitudes[i] *= weighted.axis_at(i);
  SpectralPair pair;
  pair.numerator = to_momentum(weighted, wavenumber);
  pair.denominator = to_momentum(field, wavenumber);
  return pair;
}

}  // namespace

WeakValueProfile weak_position_profile(const SlitScene& scene, double z) {
  if (z < 0.0) throw ConfigError("weak_position_profile: z must be >= 0");
  const WavefieldGrid field = wavepacket::evolve_analytic(scene, z);
  const SpectralPair pair = weak_position_pair(field, scene.wavenumber());

  double peak = 0.0;
  for (const auto& a : pair.denominator.amplitudes) peak = std::max(peak, std::norm(a));
  const double floor = ontology_x::kDensityFloor * peak;

  WeakValueProfile prof;
  const std::size_t n = pair.denominator.size();
  prof.axis.resize(n);
  prof.value.resize(n);
  prof.spread.assign(n, 0.0);
  prof.counts.resize(n);
  prof.flagged.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    prof.axis[j] = pair.denominator.axis_at(j);
    const double rho = std::norm(pair.denominator.amplitudes[j]);
    prof.counts[j] = rho;
    prof.flagged[j] = rho < floor;
    const cplx ratio = pair.numerator.amplitudes[j] / pair.denominator.amplitudes[j];
    prof.value[j] = std::isfinite(ratio.real()) ? ratio.real() : 0.0;
  }
  return prof;
}

double weak_position_at(const WavefieldGrid& position_field, double wavenumber, double theta) {
  if (position_field.representation != Representation::Position)
    throw RepresentationError("weak_position_at: position representation required");
  // Direct quadrature of both transform sums at the requested angle; this is
  // the trigonometric interpolant of the gridded spectrum, so there is no
  // interpolation error on top of the quadrature itself.
  const double kt = wavenumber * theta;
  cplx num(0.0, 0.0), den(0.0, 0.0);
  for (std::size_t i = 0; i < position_field.size(); ++i) {
    const double x = position_field.axis_at(i);
    const cplx phase(std::cos(kt * x), -std::sin(kt * x));
    const cplx term = position_field.amplitudes[i] * phase;
    den += term;
    num += term * x;
  }
  return (num / den).real();
}

TrajectoryBundle p_trajectories(const SlitScene& scene, const std::vector<double>& planes, int n) {
  scene.validate();
  if (planes.empty()) throw ConfigError("p_trajectories: empty plane list");
  for (std::size_t i = 1; i < planes.size(); ++i)
    if (!(planes[i] > planes[i - 1])) throw ConfigError("p_trajectories: planes must be increasing");

  // The momentum density is a constant of the motion, so seeding may use any
  // plane; z = 0 is cheapest.
  const WavefieldGrid initial = wavepacket::build_two_slit(scene);
  const WavefieldGrid spectrum = wavepacket::momentum_rep(initial, scene.wavenumber());
  const std::vector<Seed> seeds = ontology_x::seed_from_density(spectrum, n);

  TrajectoryBundle bundle;
  bundle.theory = Theory::PBohm;
  bundle.seeds = seeds;
  bundle.planes = planes;
  bundle.ontic.resize(seeds.size());
  bundle.derived.resize(seeds.size());
  bundle.truncated.assign(seeds.size(), false);
  for (auto& path : bundle.ontic) path.resize(planes.size());
  for (auto& path : bundle.derived) path.resize(planes.size());

  for (std::size_t p = 0; p < planes.size(); ++p) {
    const WavefieldGrid field = wavepacket::evolve_analytic(scene, planes[p]);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      bundle.ontic[i][p] = seeds[i].value;  // conservation: exactly the seed value
      bundle.derived[i][p] = weak_position_at(field, scene.wavenumber(), seeds[i].value);
    }
  }
  return bundle;
}

}  // namespace bohmsim::ontology_p
