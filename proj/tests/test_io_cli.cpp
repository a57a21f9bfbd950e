#include "bohmsim/cli.hpp"
#include "bohmsim/io.hpp"
#include "bohmsim/numerics.hpp"
#include "bohmsim/ontology_p.hpp"
#include "bohmsim/wavepacket.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace bohmsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("bohmsim_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("double formatting round-trips and is stable") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-12, 12);
  for (int i = 0; i < 2000; ++i) {
    const double v = mant(rng) * std::pow(10.0, expo(rng));
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
    CHECK(io::format_double(v) == s);
  }
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(0.77) == "0.77");
}

TEST_CASE("wavefield serialization round-trips") {
  SlitScene scene;
  scene.grid_points = 1u << 10;
  scene.grid_extent = 6e-3;
  const WavefieldGrid field = wavepacket::build_two_slit(scene);
  const fs::path dir = temp_dir("wavefield");

  SUBCASE("csv") {
    const fs::path p = dir / "field.csv";
    io::write_wavefield_csv(p, field);
    const WavefieldGrid back = io::read_wavefield_csv(p);
    CHECK(back.representation == field.representation);
    CHECK(back.plane == field.plane);
    CHECK(back.axis_min == field.axis_min);
    REQUIRE(back.size() == field.size());
    for (std::size_t i = 0; i < field.size(); i += 37)
      CHECK(back.amplitudes[i] == field.amplitudes[i]);
    // writing the parsed copy reproduces the bytes
    const fs::path q = dir / "field2.csv";
    io::write_wavefield_csv(q, back);
    CHECK(slurp(p) == slurp(q));
  }

  SUBCASE("json") {
    const WavefieldGrid back = io::wavefield_from_json(io::wavefield_json(field));
    REQUIRE(back.size() == field.size());
    for (std::size_t i = 0; i < field.size(); i += 53)
      CHECK(back.amplitudes[i] == field.amplitudes[i]);
  }
}

TEST_CASE("bundle serialization round-trips") {
  SlitScene scene;
  scene.grid_points = 1u << 11;
  scene.grid_extent = 8e-3;
  const auto planes = linspace(0.0, 1.0, 5);
  const TrajectoryBundle bundle = ontology_p::p_trajectories(scene, planes, 7);
  const fs::path dir = temp_dir("bundle");
  const fs::path p = dir / "bundle.csv";
  io::write_bundle_csv(p, bundle);
  const TrajectoryBundle back = io::read_bundle_csv(p);
  CHECK(back.theory == Theory::PBohm);
  REQUIRE(back.seeds.size() == bundle.seeds.size());
  REQUIRE(back.planes.size() == bundle.planes.size());
  for (std::size_t s = 0; s < bundle.seeds.size(); ++s)
    for (std::size_t pl = 0; pl < planes.size(); ++pl) {
      CHECK(back.ontic[s][pl] == bundle.ontic[s][pl]);
      CHECK(back.derived[s][pl] == bundle.derived[s][pl]);
    }
}

TEST_CASE("profile serialization round-trips") {
  WeakValueProfile prof;
  prof.axis = {-1.0, 0.0, 1.0};
  prof.value = {0.25, -0.5, 1e-7};
  prof.spread = {0.0, 0.1, 0.2};
  prof.counts = {1.0, 2.0, 0.5};
  prof.flagged = {false, false, true};
  const fs::path dir = temp_dir("profile");
  const fs::path p = dir / "prof.csv";
  io::write_profile_csv(p, prof, {"x_m", "theta_w_rad", "spread_rad"});
  const WeakValueProfile back = io::read_profile_csv(p);
  CHECK(back.axis == prof.axis);
  CHECK(back.value == prof.value);
  CHECK(back.spread == prof.spread);
  CHECK(back.counts == prof.counts);
  CHECK(back.flagged == prof.flagged);
}

TEST_CASE("config file parsing") {
  const fs::path dir = temp_dir("config");
  const fs::path p = dir / "run.conf";

  SUBCASE("sections, overrides, and lists") {
    std::ofstream(p) << "# comment\n"
                        "[scene]\n"
                        "wavelength = 800e-9\n"
                        "grid_points = 4096\n"
                        "[weakmeas]\n"
                        "zeta = 50\n"
                        "phi0_list = -0.1, 0.1\n"
                        "[noise]\n"
                        "background = 1e-3\n"
                        "seed = 42\n"
                        "[run]\n"
                        "theory = x\n"
                        "seeds = 11\n"
                        "formats = csv\n";
    const cli::RunConfig cfg = cli::load_config_file(p);
    CHECK(cfg.scene.wavelength == 800e-9);
    CHECK(cfg.scene.grid_points == 4096);
    CHECK(cfg.calcite.zeta == 50.0);
    REQUIRE(cfg.calcite.phi0_list.size() == 2);
    CHECK(cfg.noise.background_fraction == 1e-3);
    CHECK(cfg.noise.rng_seed == 42);
    CHECK(cfg.theory == cli::TheorySelect::X);
    CHECK(cfg.seeds == 11);
    CHECK(cfg.formats == std::set<cli::Format>{cli::Format::Csv});
  }

  SUBCASE("unknown keys are rejected") {
    std::ofstream(p) << "[scene]\nwavelenght = 1e-6\n";
    CHECK_THROWS_AS(cli::load_config_file(p), ConfigError);
  }

  SUBCASE("malformed numbers are rejected") {
    std::ofstream(p) << "[scene]\nwavelength = abc\n";
    CHECK_THROWS_AS(cli::load_config_file(p), ConfigError);
  }
}

TEST_CASE("cli commands write deterministic outputs and exit codes") {
  const fs::path dir_a = temp_dir("cli_a");
  const fs::path dir_b = temp_dir("cli_b");

  // small scene via config file to keep runtime down
  const fs::path conf = temp_dir("cli_conf") / "small.conf";
  std::ofstream(conf) << "[scene]\n"
                         "grid_points = 8192\n"
                         "[planes]\n"
                         "list = 0.66, 1.5, 3.5\n"
                         "[noise]\n"
                         "background = 1e-3\n"
                         "[run]\n"
                         "seeds = 9\n";

  SUBCASE("snapshot runs twice byte-identically") {
    for (const fs::path& dir : {dir_a, dir_b}) {
      const int rc = cli::run_cli({"--config", conf.string(), "--out", dir.string(), "--seed",
                                   "7", "snapshot", "--z", "0.7"});
      CHECK(rc == cli::kExitOk);
    }
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(dir_a)) {
      const fs::path twin = dir_b / entry.path().filename();
      REQUIRE(fs::exists(twin));
      CHECK(slurp(entry.path()) == slurp(twin));
      ++compared;
    }
    CHECK(compared >= 6);
  }

  SUBCASE("trajectories and oscillator outputs exist") {
    const int rc = cli::run_cli({"--config", conf.string(), "--out", dir_a.string(),
                                 "trajectories", "--theory", "both", "--seeds", "7"});
    CHECK(rc == cli::kExitOk);
    CHECK(fs::exists(dir_a / "trajectories_xbohm.csv"));
    CHECK(fs::exists(dir_a / "trajectories_pbohm.csv"));
    CHECK(fs::exists(dir_a / "trajectories_position.svg"));

    const int rc2 = cli::run_cli({"--out", dir_b.string(), "oscillator", "--theta", "0,0.785"});
    CHECK(rc2 == cli::kExitOk);
    CHECK(fs::exists(dir_b / "oscillator_theta0_trajectories.csv"));
    CHECK(fs::exists(dir_b / "oscillator_theta1_weak.csv"));
  }

  SUBCASE("lens calibration emits the displacement curve") {
    const int rc = cli::run_cli({"--out", dir_a.string(), "lens-calibration"});
    CHECK(rc == cli::kExitOk);
    CHECK(fs::exists(dir_a / "lens_calibration.csv"));
    CHECK(fs::exists(dir_a / "weak_position_strength.csv"));
    const std::string first = slurp(dir_a / "lens_calibration.csv");
    CHECK(first.rfind("lens2_displacement_m,effective_distance_m", 0) == 0);
  }

  SUBCASE("output directory falls back to the environment") {
    const fs::path env_dir = temp_dir("cli_env");
    ::setenv(cli::kOutputDirEnv, env_dir.string().c_str(), 1);
    const int rc = cli::run_cli({"lens-calibration"});
    ::unsetenv(cli::kOutputDirEnv);
    CHECK(rc == cli::kExitOk);
    CHECK(fs::exists(env_dir / "lens_calibration.csv"));
  }

  SUBCASE("usage errors exit with code 2") {
    CHECK(cli::run_cli({"snapshot", "--z", "-1"}) == cli::kExitUsage);
    CHECK(cli::run_cli({"definitely-not-a-command"}) == cli::kExitUsage);
    CHECK(cli::run_cli({"trajectories", "--theory", "q"}) == cli::kExitUsage);
  }

  SUBCASE("aliasing-unsafe planes exit with code 3") {
    const fs::path conf2 = temp_dir("cli_conf2") / "tight.conf";
    std::ofstream(conf2) << "[scene]\ngrid_points = 4096\ngrid_extent = 6e-3\n"
                            "[planes]\nlist = 0.66, 3.5\n";
    CHECK(cli::run_cli({"--config", conf2.string(), "--out", dir_b.string(), "snapshot", "--z",
                        "3.5"}) == cli::kExitNumericalGuard);
  }
}
