#pragma once

#include "bohmsim/types.hpp"
#include "bohmsim/weakmeas.hpp"

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace bohmsim::cli {

/// Environment variable consulted for the default output directory.
inline constexpr const char* kOutputDirEnv = "BOHMSIM_OUT";

enum class TheorySelect { X, P, Both };
enum class Format { Csv, Json, Svg };

/// Everything a command needs, assembled from defaults, an optional config
/// file, and command-line overrides (in that order of precedence).
struct RunConfig {
  SlitScene scene;
  std::vector<double> planes;  // defaults to a 20-plane sweep over 0.66..3.5 m
  TheorySelect theory = TheorySelect::Both;
  weakmeas::CalciteConfig calcite;
  weakmeas::NoiseModel noise;
  std::string out_dir;
  std::set<Format> formats = {Format::Csv, Format::Svg};
  int seeds = 41;
  int highlight = -1;          // trajectory index to emphasize in plots
  double snapshot_z = 0.70;    // m

  // Oscillator command parameters (natural units).
  std::vector<double> osc_thetas = {0.0};
  double osc_omega = 1.0;
  double osc_alpha = 2.0;      // real coherent amplitude; 0 selects a Fock state
  int osc_fock_n = 0;
  double osc_periods = 3.0;
  int osc_samples = 121;
  int osc_seeds = 9;

  void validate() const;
};

// Flat sectioned key=value config file ("[scene]\nwavelength = 915e-9" ...).
// Unknown keys are errors so typos do not silently fall back to defaults.
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

// Exit codes: 0 success, 2 usage or configuration error, 3 a numerical guard
// fired (aliasing or contrast clamping) with partial outputs retained.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumericalGuard = 3;

int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace bohmsim::cli
