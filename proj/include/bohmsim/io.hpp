#pragma once

#include "bohmsim/types.hpp"

#include <filesystem>
#include <string>

namespace bohmsim::io {

// Shortest round-trip decimal form of a double (printf %.17g trimmed), so
// emitted files are byte-stable and parse back to the identical value.
std::string format_double(double v);

struct ProfileLabels {
  std::string axis;    // e.g. "x_m" or "theta_rad"
  std::string value;   // e.g. "theta_w_rad" or "x_w_m"
  std::string spread;  // e.g. "spread_rad"
};

// Wavefield CSV: metadata comment, then header "axis_<unit>,re,im".
void write_wavefield_csv(const std::filesystem::path& path, const WavefieldGrid& field);
WavefieldGrid read_wavefield_csv(const std::filesystem::path& path);

std::string wavefield_json(const WavefieldGrid& field);
WavefieldGrid wavefield_from_json(const std::string& text);

// Profile CSV columns: axis, value, spread, counts (header names the units).
void write_profile_csv(const std::filesystem::path& path, const WeakValueProfile& profile,
                       const ProfileLabels& labels);
WeakValueProfile read_profile_csv(const std::filesystem::path& path);

struct BundleLabels {
  std::string plane;    // e.g. "z_m" or "t"
  std::string ontic;    // e.g. "x_m" or "x_theta"
  std::string derived;  // e.g. "theta_rad" or "p_theta"
};

// Bundle CSV: one row per (seed, plane). Position ontology columns are
// seed_id,quantile,z_m,x_m,theta_rad; momentum ontology swaps the last two.
// Custom labels override the defaults (used for the quadrature bundles).
void write_bundle_csv(const std::filesystem::path& path, const TrajectoryBundle& bundle);
void write_bundle_csv(const std::filesystem::path& path, const TrajectoryBundle& bundle,
                      const BundleLabels& labels);
TrajectoryBundle read_bundle_csv(const std::filesystem::path& path);

std::string bundle_json(const TrajectoryBundle& bundle);

}  // namespace bohmsim::io
