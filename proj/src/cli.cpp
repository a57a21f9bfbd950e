#include "bohmsim/cli.hpp"

#include "bohmsim/calibration.hpp"
#include "bohmsim/io.hpp"
#include "bohmsim/numerics.hpp"
#include "bohmsim/ontology_p.hpp"
#include "bohmsim/ontology_x.hpp"
#include "bohmsim/oscillator.hpp"
#include "bohmsim/svg.hpp"
#include "bohmsim/wavepacket.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace bohmsim::cli {

namespace {

std::vector<double> default_planes() { return linspace(0.66, 3.5, 20); }

// Beam extent against the grid: the pipelines run spectrally and would wrap
// silently, so refuse planes whose field cannot fit. 4.5 spread radii keep
// the edge amplitude near 2e-9 of peak, well under the 1e-6 aliasing guard.
void check_plane_safe(const SlitScene& scene, double z) {
  const double w = scene.waist() * std::sqrt(1.0 + std::pow(z / scene.rayleigh_range(), 2));
  const double needed = scene.slit_separation / 2.0 + 4.5 * w;
  if (needed > scene.grid_extent)
    throw AliasingError("plane z=" + std::to_string(z) +
                        " m needs grid extent >= " + std::to_string(needed) + " m");
}

std::vector<std::string> split_list(const std::string& text, char delim) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, delim))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number '" + v + "' for " + key);
  }
}

long to_long(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const long out = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer '" + v + "' for " + key);
  }
}

std::vector<double> to_double_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(v, ',')) out.push_back(to_double(trim(item), key));
  if (out.empty()) throw ConfigError("config: empty list for " + key);
  return out;
}

}  // namespace

void RunConfig::validate() const {
  scene.validate();
  calcite.validate();
  if (planes.empty()) throw ConfigError("config: plane list is empty");
  for (std::size_t i = 1; i < planes.size(); ++i)
    if (!(planes[i] > planes[i - 1])) throw ConfigError("config: planes must be increasing");
  if (planes.front() < 0.0) throw ConfigError("config: planes must be >= 0");
  for (double z : planes) check_plane_safe(scene, z);
  check_plane_safe(scene, snapshot_z);
  if (snapshot_z <= 0.0) throw ConfigError("config: snapshot z must be positive");
  if (seeds < 1) throw ConfigError("config: seeds must be >= 1");
  if (osc_samples < 2) throw ConfigError("config: oscillator samples must be >= 2");
  if (osc_seeds < 1) throw ConfigError("config: oscillator seeds must be >= 1");
  if (osc_periods <= 0.0) throw ConfigError("config: oscillator periods must be positive");
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in.good()) throw ConfigError("config: cannot open " + path.string());
  RunConfig cfg = std::move(base);

  // sweep parameters build a linear plane list after the whole file is read,
  // so their order relative to each other does not matter
  long sweep_count = -1;
  double sweep_lo = 0.66, sweep_hi = 3.5;

  std::string section = "run";
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find_first_of("#;"); hash != std::string::npos)
      line.erase(hash);  // inline comments
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key=value at line " + std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section + "." + key;

    if (full == "scene.wavelength") cfg.scene.wavelength = to_double(value, full);
    else if (full == "scene.slit_separation") cfg.scene.slit_separation = to_double(value, full);
    else if (full == "scene.beam_diameter") cfg.scene.beam_diameter = to_double(value, full);
    else if (full == "scene.amp_plus") cfg.scene.amp_plus = to_double(value, full);
    else if (full == "scene.amp_minus") cfg.scene.amp_minus = to_double(value, full);
    else if (full == "scene.grid_extent") cfg.scene.grid_extent = to_double(value, full);
    else if (full == "scene.grid_points")
      cfg.scene.grid_points = static_cast<std::size_t>(to_long(value, full));
    else if (full == "planes.list") cfg.planes = to_double_list(value, full);
    else if (full == "planes.count") sweep_count = to_long(value, full);
    else if (full == "planes.z_min") sweep_lo = to_double(value, full);
    else if (full == "planes.z_max") sweep_hi = to_double(value, full);
    else if (full == "weakmeas.zeta") cfg.calcite.zeta = to_double(value, full);
    else if (full == "weakmeas.phi0_list") cfg.calcite.phi0_list = to_double_list(value, full);
    else if (full == "noise.background") cfg.noise.background_fraction = to_double(value, full);
    else if (full == "noise.shot") cfg.noise.shot_scale = to_double(value, full);
    else if (full == "noise.seed")
      cfg.noise.rng_seed = static_cast<std::uint64_t>(to_long(value, full));
    else if (full == "run.out_dir") cfg.out_dir = value;
    else if (full == "run.theory") {
      if (value == "x") cfg.theory = TheorySelect::X;
      else if (value == "p") cfg.theory = TheorySelect::P;
      else if (value == "both") cfg.theory = TheorySelect::Both;
      else throw ConfigError("config: theory must be x, p, or both");
    } else if (full == "run.formats") {
      cfg.formats.clear();
      for (const auto& f : split_list(value, ',')) {
        const std::string t = trim(f);
        if (t == "csv") cfg.formats.insert(Format::Csv);
        else if (t == "json") cfg.formats.insert(Format::Json);
        else if (t == "svg") cfg.formats.insert(Format::Svg);
        else throw ConfigError("config: unknown format " + t);
      }
    } else if (full == "run.seeds") cfg.seeds = static_cast<int>(to_long(value, full));
    else if (full == "run.highlight") cfg.highlight = static_cast<int>(to_long(value, full));
    else if (full == "run.snapshot_z") cfg.snapshot_z = to_double(value, full);
    else if (full == "oscillator.thetas") cfg.osc_thetas = to_double_list(value, full);
    else if (full == "oscillator.omega") cfg.osc_omega = to_double(value, full);
    else if (full == "oscillator.alpha") cfg.osc_alpha = to_double(value, full);
    else if (full == "oscillator.fock_n") cfg.osc_fock_n = static_cast<int>(to_long(value, full));
    else if (full == "oscillator.periods") cfg.osc_periods = to_double(value, full);
    else if (full == "oscillator.samples") cfg.osc_samples = static_cast<int>(to_long(value, full));
    else if (full == "oscillator.seeds") cfg.osc_seeds = static_cast<int>(to_long(value, full));
    else throw ConfigError("config: unknown key " + full + " at line " + std::to_string(line_no));
  }
  if (sweep_count > 0)
    cfg.planes = linspace(sweep_lo, sweep_hi, static_cast<std::size_t>(sweep_count));
  if (cfg.planes.empty()) cfg.planes = default_planes();
  return cfg;
}

namespace {

struct CommandContext {
  RunConfig cfg;
  std::filesystem::path out;
  bool guard_fired = false;  // clamping or other recoverable numerical guards

  bool wants(Format f) const { return cfg.formats.count(f) > 0; }
  std::filesystem::path file(const std::string& name) const { return out / name; }
};

std::string z_tag(double z) {
  std::string t = io::format_double(z);
  return "z" + t;
}

std::vector<std::size_t> plot_stride(std::size_t n, std::size_t target = 1200) {
  std::vector<std::size_t> idx;
  const std::size_t stride = std::max<std::size_t>(1, n / target);
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.empty() || idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

void write_xy_csv(const std::filesystem::path& path, const std::string& header,
                  const std::vector<std::vector<double>>& columns) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw ConfigError("cannot open " + path.string());
  out << header << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << io::format_double(columns[c][r]);
    out << "\n";
  }
}

int cmd_snapshot(CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const double z = cfg.snapshot_z;
  const SlitScene& scene = cfg.scene;
  const std::string tag = z_tag(z);

  const WavefieldGrid field = wavepacket::evolve_analytic(scene, z);
  const std::vector<double> xs = field.axis();
  const std::vector<double> intensity = field.density();

  if (ctx.wants(Format::Csv))
    write_xy_csv(ctx.file("snapshot_intensity_" + tag + ".csv"), "x_m,intensity",
                 {xs, intensity});
  if (ctx.wants(Format::Json))
    std::ofstream(ctx.file("snapshot_field_" + tag + ".json"), std::ios::binary)
        << io::wavefield_json(field);
  if (ctx.wants(Format::Svg)) {
    svg::LineChart chart("Intensity profile, effective plane " + io::format_double(z) + " m",
                         "x (m)", "|u|^2");
    std::vector<double> px, py;
    for (std::size_t i : plot_stride(xs.size())) {
      px.push_back(xs[i]);
      py.push_back(intensity[i]);
    }
    chart.add_series("intensity", px, py);
    chart.write(ctx.file("snapshot_intensity_" + tag + ".svg"));
  }

  // Ideal ontological snapshots in the (x, theta) plane under both readings.
  const WeakValueProfile ideal_x =
      ontology_x::weak_momentum_profile(field, scene.wavenumber());
  const WeakValueProfile ideal_p = ontology_p::weak_position_profile(scene, z);
  if (ctx.wants(Format::Csv)) {
    std::ofstream out(ctx.file("snapshot_phase_space_" + tag + ".csv"), std::ios::binary);
    out << "theory,x_m,theta_rad\n";
    for (std::size_t i = 0; i < ideal_x.axis.size(); ++i)
      if (!ideal_x.flagged[i])
        out << "xBohm," << io::format_double(ideal_x.axis[i]) << ','
            << io::format_double(ideal_x.value[i]) << '\n';
    for (std::size_t i = 0; i < ideal_p.axis.size(); ++i)
      if (!ideal_p.flagged[i])
        out << "pBohm," << io::format_double(ideal_p.value[i]) << ','
            << io::format_double(ideal_p.axis[i]) << '\n';
  }
  if (ctx.wants(Format::Svg)) {
    svg::LineChart chart("Position-momentum snapshot, " + io::format_double(z) + " m", "x (m)",
                         "theta (rad)");
    std::vector<double> xx, xv, pxv, pth;
    for (std::size_t i : plot_stride(ideal_x.axis.size()))
      if (!ideal_x.flagged[i]) {
        xx.push_back(ideal_x.axis[i]);
        xv.push_back(ideal_x.value[i]);
      }
    for (std::size_t i : plot_stride(ideal_p.axis.size()))
      if (!ideal_p.flagged[i]) {
        pxv.push_back(ideal_p.value[i]);
        pth.push_back(ideal_p.axis[i]);
      }
    chart.add_series("x-Bohm p(x)", xx, xv, "#c03030");
    chart.add_series("p-Bohm x(p)", pxv, pth, "#3050c0");
    chart.write(ctx.file("snapshot_phase_space_" + tag + ".svg"));
  }

  // Simulated weak-measurement pipelines, tilt averaged.
  if (cfg.theory != TheorySelect::P) {
    const WeakValueProfile prof = weakmeas::simulate_xbohm_pipeline(scene, z, cfg.calcite, cfg.noise);
    if (prof.clamp_events > 0) ctx.guard_fired = true;
    if (prof.weak_limit_warning)
      std::cerr << "warning: weak-coupling bound exceeded in x-ontology pipeline at z=" << z
                << "\n";
    if (ctx.wants(Format::Csv))
      io::write_profile_csv(ctx.file("snapshot_xbohm_weak_" + tag + ".csv"), prof,
                            {"x_m", "theta_w_rad", "spread_rad"});
    if (ctx.wants(Format::Svg)) {
      svg::LineChart chart("Weak transverse momentum vs position, " + io::format_double(z) + " m",
                           "x (m)", "theta_w (rad)");
      std::vector<double> px, pv, ps;
      for (std::size_t i : plot_stride(prof.axis.size()))
        if (!prof.flagged[i]) {
          px.push_back(prof.axis[i]);
          pv.push_back(prof.value[i]);
          ps.push_back(prof.spread[i]);
        }
      chart.add_error_bars(px, pv, ps);
      chart.add_series("pipeline", px, pv, "#c03030");
      std::vector<double> ix, iv;
      for (std::size_t i : plot_stride(ideal_x.axis.size()))
        if (!ideal_x.flagged[i]) {
          ix.push_back(ideal_x.axis[i]);
          iv.push_back(ideal_x.value[i]);
        }
      chart.add_series("ideal", ix, iv, "#208050");
      chart.write(ctx.file("snapshot_xbohm_weak_" + tag + ".svg"));
    }
  }
  if (cfg.theory != TheorySelect::X) {
    const WeakValueProfile prof = weakmeas::simulate_pbohm_pipeline(scene, z, cfg.calcite, cfg.noise);
    if (prof.clamp_events > 0) ctx.guard_fired = true;
    if (prof.weak_limit_warning)
      std::cerr << "warning: weak-coupling bound exceeded in p-ontology pipeline at z=" << z
                << "\n";
    if (ctx.wants(Format::Csv))
      io::write_profile_csv(ctx.file("snapshot_pbohm_weak_" + tag + ".csv"), prof,
                            {"theta_rad", "x_w_m", "spread_m"});
    if (ctx.wants(Format::Svg)) {
      svg::LineChart chart("Weak position vs transverse momentum, " + io::format_double(z) + " m",
                           "theta (rad)", "x_w (m)");
      std::vector<double> px, pv, ps;
      for (std::size_t i : plot_stride(prof.axis.size()))
        if (!prof.flagged[i]) {
          px.push_back(prof.axis[i]);
          pv.push_back(prof.value[i]);
          ps.push_back(prof.spread[i]);
        }
      chart.add_error_bars(px, pv, ps);
      chart.add_series("pipeline", px, pv, "#3050c0");
      chart.write(ctx.file("snapshot_pbohm_weak_" + tag + ".svg"));
    }
  }
  return ctx.guard_fired ? kExitNumericalGuard : kExitOk;
}

int cmd_trajectories(CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const SlitScene& scene = cfg.scene;

  // Trajectories are drawn from the slits: prepend z = 0 and densify between
  // the configured planes so the polylines resolve the fringe crossings.
  std::vector<double> planes = linspace(0.0, cfg.planes.back(), 141);
  planes.insert(planes.end(), cfg.planes.begin(), cfg.planes.end());
  std::sort(planes.begin(), planes.end());
  planes.erase(std::unique(planes.begin(), planes.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               planes.end());

  TrajectoryBundle xb, pb;
  if (cfg.theory != TheorySelect::P) {
    const WavefieldGrid initial = wavepacket::build_two_slit(scene);
    const std::vector<Seed> seeds = ontology_x::seed_from_density(initial, cfg.seeds);
    xb = ontology_x::integrate_trajectories(scene, seeds, planes);
    if (ctx.wants(Format::Csv)) io::write_bundle_csv(ctx.file("trajectories_xbohm.csv"), xb);
    if (ctx.wants(Format::Json))
      std::ofstream(ctx.file("trajectories_xbohm.json"), std::ios::binary) << io::bundle_json(xb);
  }
  if (cfg.theory != TheorySelect::X) {
    pb = ontology_p::p_trajectories(scene, planes, cfg.seeds);
    if (ctx.wants(Format::Csv)) io::write_bundle_csv(ctx.file("trajectories_pbohm.csv"), pb);
    if (ctx.wants(Format::Json))
      std::ofstream(ctx.file("trajectories_pbohm.json"), std::ios::binary) << io::bundle_json(pb);
  }

  if (ctx.wants(Format::Svg)) {
    svg::LineChart pos("Position trajectories", "z (m)", "x (m)");
    svg::LineChart mom("Momentum trajectories", "z (m)", "theta (rad)");
    std::size_t highlight_pos = static_cast<std::size_t>(-1);
    std::size_t highlight_mom = static_cast<std::size_t>(-1);
    if (cfg.theory != TheorySelect::P) {
      for (std::size_t s = 0; s < xb.seeds.size(); ++s) {
        if (cfg.highlight >= 0 && static_cast<std::size_t>(cfg.highlight) == s) {
          highlight_pos = s;
          highlight_mom = s;
        }
        pos.add_series(s == 0 ? "x-Bohm (ontic x)" : "", xb.planes, xb.ontic[s], "#c03030", 0.8);
        mom.add_series(s == 0 ? "x-Bohm (derived theta)" : "", xb.planes, xb.derived[s],
                       "#c03030", 0.8);
      }
    }
    if (cfg.theory != TheorySelect::X) {
      for (std::size_t s = 0; s < pb.seeds.size(); ++s) {
        pos.add_series(s == 0 ? "p-Bohm (derived x)" : "", pb.planes, pb.derived[s], "#3050c0",
                       0.8);
        mom.add_series(s == 0 ? "p-Bohm (ontic theta)" : "", pb.planes, pb.ontic[s], "#3050c0",
                       0.8);
      }
    }
    if (highlight_pos != static_cast<std::size_t>(-1)) {
      pos.highlight(highlight_pos);
      mom.highlight(highlight_mom);
    }
    pos.write(ctx.file("trajectories_position.svg"));
    mom.write(ctx.file("trajectories_momentum.svg"));
  }
  return kExitOk;
}

int cmd_lens_calibration(CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const optics::LensSystem sys{};

  // Lens-2 displacement against the effective plane distance it images.
  const std::vector<double> ys = linspace(0.40, 3.6, 161);
  std::vector<double> disp, dist;
  for (double y : ys) {
    disp.push_back(optics::effective_plane_offset(y, sys.f1));
    dist.push_back(y);
  }
  if (ctx.wants(Format::Csv))
    write_xy_csv(ctx.file("lens_calibration.csv"), "lens2_displacement_m,effective_distance_m",
                 {disp, dist});
  if (ctx.wants(Format::Svg)) {
    svg::LineChart chart("Lens 2 displacement vs effective plane distance",
                         "lens 2 displacement d (m)", "effective distance y (m)");
    chart.add_series("calibration curve", disp, dist);
    // d -> 0 is the far-field point: the camera then reads the angle.
    chart.add_series("far-field origin (d=0)", {0.0, 0.0}, {dist.front(), dist.back()},
                     "#999999", 0.6);
    chart.write(ctx.file("lens_calibration.svg"));
  }

  // Effective position-coupling strength against plane distance.
  std::vector<double> strength;
  weakmeas::CalciteConfig pos_cfg = cfg.calcite;
  pos_cfg.coupled_observable = weakmeas::CoupledObservable::EffectivePosition;
  pos_cfg.position_theta_scale = 0.0;  // let the calibration derive it per plane
  for (double y : cfg.planes) {
    weakmeas::CalciteConfig per_plane = pos_cfg;
    per_plane.position_theta_scale = optics::position_coupling_scale(y, sys);
    strength.push_back(optics::simulated_zeta_calibration(per_plane, cfg.scene, y, sys));
  }
  if (ctx.wants(Format::Csv))
    write_xy_csv(ctx.file("weak_position_strength.csv"),
                 "effective_distance_m,strength_rad_per_m", {cfg.planes, strength});
  if (ctx.wants(Format::Svg)) {
    svg::LineChart chart("Weak position measurement strength vs plane", "effective distance y (m)",
                         "strength (rad/m)");
    chart.add_series("zeta_eff", cfg.planes, strength);
    chart.write(ctx.file("weak_position_strength.svg"));
  }
  return kExitOk;
}

int cmd_oscillator(CommandContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const oscillator::OscillatorState state =
      cfg.osc_alpha != 0.0 ? oscillator::OscillatorState::coherent(cfg.osc_alpha)
                           : oscillator::OscillatorState::fock(cfg.osc_fock_n);

  for (std::size_t t = 0; t < cfg.osc_thetas.size(); ++t) {
    const oscillator::ThetaFrame frame{cfg.osc_thetas[t], cfg.osc_omega};
    const double period = 2.0 * kPi / frame.omega;
    const std::vector<double> times =
        linspace(0.0, cfg.osc_periods * period, static_cast<std::size_t>(cfg.osc_samples));
    const std::string tag = "theta" + std::to_string(t);

    const TrajectoryBundle bundle =
        oscillator::quadrature_trajectories(state, frame, times, cfg.osc_seeds);
    if (ctx.wants(Format::Csv))
      io::write_bundle_csv(ctx.file("oscillator_" + tag + "_trajectories.csv"), bundle,
                           io::BundleLabels{"t", "x_theta", "p_theta"});
    if (ctx.wants(Format::Json))
      std::ofstream(ctx.file("oscillator_" + tag + "_trajectories.json"), std::ios::binary)
          << io::bundle_json(bundle);

    const WeakValueProfile prof = oscillator::weak_conjugate_quadrature(state, frame, 0.0);
    if (ctx.wants(Format::Csv))
      io::write_profile_csv(ctx.file("oscillator_" + tag + "_weak.csv"), prof,
                            {"x_theta", "p_theta_w", "spread"});

    if (ctx.wants(Format::Svg)) {
      svg::LineChart traj("Quadrature trajectories, frame angle " +
                              io::format_double(frame.theta),
                          "t", "x_theta");
      for (std::size_t s = 0; s < bundle.seeds.size(); ++s)
        traj.add_series(s == 0 ? "ontic x_theta" : "", bundle.planes, bundle.ontic[s], "#703090",
                        0.8);
      if (cfg.highlight >= 0) traj.highlight(static_cast<std::size_t>(cfg.highlight));
      traj.write(ctx.file("oscillator_" + tag + "_trajectories.svg"));

      svg::LineChart weak("Conjugate-quadrature weak value, frame angle " +
                              io::format_double(frame.theta),
                          "x_theta", "p_theta_w");
      std::vector<double> px, pv;
      for (std::size_t i : plot_stride(prof.axis.size()))
        if (!prof.flagged[i]) {
          px.push_back(prof.axis[i]);
          pv.push_back(prof.value[i]);
        }
      weak.add_series("weak value", px, pv, "#208050");
      weak.write(ctx.file("oscillator_" + tag + "_weak.svg"));
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Two-slit pilot-wave trajectory simulator: position and momentum ontologies, "
               "weak-measurement readout, lens-system math"};
  app.require_subcommand(1);

  std::string config_path, out_dir, formats_arg, theory_arg;
  long seed_arg = -1;

  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--out", out_dir, "output directory (default $BOHMSIM_OUT or ./out)");
  app.add_option("--seed", seed_arg, "noise RNG seed");
  app.add_option("--format", formats_arg, "comma list of csv,json,svg");

  auto* snap = app.add_subcommand("snapshot", "intensity and weak-value profiles at one plane");
  double z_arg = std::numeric_limits<double>::quiet_NaN();
  snap->add_option("--z", z_arg, "effective plane distance (m)");

  auto* traj = app.add_subcommand("trajectories", "trajectory bundles under both ontologies");
  long seeds_arg = -1, highlight_arg = -2;
  traj->add_option("--theory", theory_arg, "x, p, or both");
  traj->add_option("--seeds", seeds_arg, "number of trajectories");
  traj->add_option("--highlight", highlight_arg, "index of a path to emphasize");

  auto* lens = app.add_subcommand("lens-calibration", "lens displacement and coupling curves");

  auto* osc = app.add_subcommand("oscillator", "rotated-quadrature oscillator outputs");
  std::string thetas_arg;
  double omega_arg = -1.0, alpha_arg = std::numeric_limits<double>::quiet_NaN();
  long fock_arg = -1;
  osc->add_option("--theta", thetas_arg, "comma list of frame angles (rad)");
  osc->add_option("--omega", omega_arg, "oscillator angular frequency");
  osc->add_option("--alpha", alpha_arg, "coherent amplitude (0 selects a Fock state)");
  osc->add_option("--fock", fock_arg, "Fock index when alpha=0");

  std::vector<const char*> argv_store;
  std::vector<std::string> argv_copy = args;
  argv_store.push_back("bohmsim");
  for (const auto& a : argv_copy) argv_store.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv_store.size()), argv_store.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg;
    cfg.planes = default_planes();
    if (!config_path.empty()) cfg = load_config_file(config_path, std::move(cfg));

    if (seed_arg >= 0) cfg.noise.rng_seed = static_cast<std::uint64_t>(seed_arg);
    if (!formats_arg.empty()) {
      cfg.formats.clear();
      for (const auto& f : split_list(formats_arg, ',')) {
        if (f == "csv") cfg.formats.insert(Format::Csv);
        else if (f == "json") cfg.formats.insert(Format::Json);
        else if (f == "svg") cfg.formats.insert(Format::Svg);
        else throw ConfigError("unknown format " + f);
      }
    }
    if (!theory_arg.empty()) {
      if (theory_arg == "x") cfg.theory = TheorySelect::X;
      else if (theory_arg == "p") cfg.theory = TheorySelect::P;
      else if (theory_arg == "both") cfg.theory = TheorySelect::Both;
      else throw ConfigError("theory must be x, p, or both");
    }
    if (!std::isnan(z_arg)) {
      if (z_arg <= 0.0) throw ConfigError("snapshot: z must be positive");
      cfg.snapshot_z = z_arg;
    }
    if (seeds_arg >= 0) cfg.seeds = static_cast<int>(seeds_arg);
    if (highlight_arg >= -1) cfg.highlight = static_cast<int>(highlight_arg);
    if (!thetas_arg.empty()) cfg.osc_thetas = to_double_list(thetas_arg, "--theta");
    if (omega_arg > 0.0) cfg.osc_omega = omega_arg;
    if (!std::isnan(alpha_arg)) cfg.osc_alpha = alpha_arg;
    if (fock_arg >= 0) cfg.osc_fock_n = static_cast<int>(fock_arg);

    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.out_dir.empty()) {
      const char* env = std::getenv(kOutputDirEnv);
      cfg.out_dir = env && *env ? env : "out";
    }

    cfg.validate();

    CommandContext ctx;
    ctx.cfg = std::move(cfg);
    ctx.out = ctx.cfg.out_dir;
    std::filesystem::create_directories(ctx.out);

    if (snap->parsed()) return cmd_snapshot(ctx);
    if (traj->parsed()) return cmd_trajectories(ctx);
    if (lens->parsed()) return cmd_lens_calibration(ctx);
    if (osc->parsed()) return cmd_oscillator(ctx);
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AliasingError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitNumericalGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace bohmsim::cli
