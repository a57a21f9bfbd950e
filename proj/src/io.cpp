#include "bohmsim/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bohmsim::io {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("io: " + what);
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open " + path.string() + " for writing");
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin < end && *begin == ' ') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  require(ec == std::errc(), "bad number '" + text + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  // %.17g always round-trips; drop digits while the value still parses back
  // exactly so output stays compact as well as byte-stable.
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

void write_wavefield_csv(const std::filesystem::path& path, const WavefieldGrid& field) {
  std::ofstream out = open_out(path);
  const bool pos = field.representation == Representation::Position;
  out << "# wavefield representation=" << (pos ? "position" : "momentum")
      << " plane=" << format_double(field.plane) << "\n";
  out << (pos ? "x_m" : "theta_rad") << ",re,im\n";
  for (std::size_t i = 0; i < field.size(); ++i) {
    out << format_double(field.axis_at(i)) << ',' << format_double(field.amplitudes[i].real())
        << ',' << format_double(field.amplitudes[i].imag()) << '\n';
  }
}

WavefieldGrid read_wavefield_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path.string());
  WavefieldGrid field;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty file " + path.string());
  require(line.rfind("# wavefield", 0) == 0, "missing wavefield header in " + path.string());
  field.representation = line.find("representation=position") != std::string::npos
                             ? Representation::Position
                             : Representation::Momentum;
  const auto at = line.find("plane=");
  require(at != std::string::npos, "missing plane metadata");
  field.plane = parse_double(line.substr(at + 6));
  require(static_cast<bool>(std::getline(in, line)), "missing column header");

  std::vector<double> axis;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    require(cells.size() == 3, "expected 3 columns");
    axis.push_back(parse_double(cells[0]));
    field.amplitudes.emplace_back(parse_double(cells[1]), parse_double(cells[2]));
  }
  require(axis.size() >= 2, "too few samples");
  field.axis_min = axis.front();
  field.axis_step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  return field;
}

std::string wavefield_json(const WavefieldGrid& field) {
  nlohmann::json j;
  j["representation"] =
      field.representation == Representation::Position ? "position" : "momentum";
  j["plane"] = field.plane;
  j["axis_min"] = field.axis_min;
  j["axis_step"] = field.axis_step;
  auto& re = j["re"] = nlohmann::json::array();
  auto& im = j["im"] = nlohmann::json::array();
  for (const auto& a : field.amplitudes) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return j.dump();
}

WavefieldGrid wavefield_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  WavefieldGrid field;
  field.representation = j.at("representation").get<std::string>() == "position"
                             ? Representation::Position
                             : Representation::Momentum;
  field.plane = j.at("plane").get<double>();
  field.axis_min = j.at("axis_min").get<double>();
  field.axis_step = j.at("axis_step").get<double>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  require(re.size() == im.size(), "re/im length mismatch");
  field.amplitudes.reserve(re.size());
  for (std::size_t i = 0; i < re.size(); ++i)
    field.amplitudes.emplace_back(re[i].get<double>(), im[i].get<double>());
  return field;
}

void write_profile_csv(const std::filesystem::path& path, const WeakValueProfile& profile,
                       const ProfileLabels& labels) {
  std::ofstream out = open_out(path);
  out << "# weak_value_profile clamp_events=" << profile.clamp_events
      << " weak_limit_warning=" << (profile.weak_limit_warning ? 1 : 0) << "\n";
  out << labels.axis << ',' << labels.value << ',' << labels.spread << ",counts,flagged\n";
  for (std::size_t i = 0; i < profile.axis.size(); ++i) {
    out << format_double(profile.axis[i]) << ',' << format_double(profile.value[i]) << ','
        << format_double(profile.spread[i]) << ',' << format_double(profile.counts[i]) << ','
        << (profile.flagged.empty() ? 0 : (profile.flagged[i] ? 1 : 0)) << '\n';
  }
}

WeakValueProfile read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path.string());
  WeakValueProfile prof;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty file");
  require(line.rfind("# weak_value_profile", 0) == 0, "missing profile header");
  require(static_cast<bool>(std::getline(in, line)), "missing column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    require(cells.size() == 5, "expected 5 columns");
    prof.axis.push_back(parse_double(cells[0]));
    prof.value.push_back(parse_double(cells[1]));
    prof.spread.push_back(parse_double(cells[2]));
    prof.counts.push_back(parse_double(cells[3]));
    prof.flagged.push_back(cells[4] == "1");
  }
  return prof;
}

void write_bundle_csv(const std::filesystem::path& path, const TrajectoryBundle& bundle) {
  const bool xb = bundle.theory == Theory::XBohm;
  write_bundle_csv(path, bundle,
                   xb ? BundleLabels{"z_m", "x_m", "theta_rad"}
                      : BundleLabels{"z_m", "theta_rad", "x_m"});
}

void write_bundle_csv(const std::filesystem::path& path, const TrajectoryBundle& bundle,
                      const BundleLabels& labels) {
  std::ofstream out = open_out(path);
  const bool xb = bundle.theory == Theory::XBohm;
  out << "# trajectory_bundle theory=" << (xb ? "xBohm" : "pBohm") << "\n";
  out << "seed_id,quantile," << labels.plane << ',' << labels.ontic << ',' << labels.derived
      << "\n";
  for (std::size_t s = 0; s < bundle.seeds.size(); ++s) {
    for (std::size_t p = 0; p < bundle.planes.size(); ++p) {
      out << s << ',' << format_double(bundle.seeds[s].quantile) << ','
          << format_double(bundle.planes[p]) << ',' << format_double(bundle.ontic[s][p]) << ','
          << format_double(bundle.derived[s][p]) << '\n';
    }
  }
}

TrajectoryBundle read_bundle_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path.string());
  TrajectoryBundle bundle;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty file");
  require(line.rfind("# trajectory_bundle", 0) == 0, "missing bundle header");
  bundle.theory = line.find("theory=xBohm") != std::string::npos ? Theory::XBohm : Theory::PBohm;
  require(static_cast<bool>(std::getline(in, line)), "missing column header");

  std::size_t current = static_cast<std::size_t>(-1);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    require(cells.size() == 5, "expected 5 columns");
    const std::size_t id = static_cast<std::size_t>(parse_double(cells[0]));
    if (id != current) {
      require(id == bundle.seeds.size(), "seed ids must be contiguous");
      bundle.seeds.push_back(Seed{0.0, parse_double(cells[1])});
      bundle.ontic.emplace_back();
      bundle.derived.emplace_back();
      bundle.truncated.push_back(false);
      current = id;
    }
    const double z = parse_double(cells[2]);
    if (current == 0) bundle.planes.push_back(z);
    bundle.ontic[current].push_back(parse_double(cells[3]));
    bundle.derived[current].push_back(parse_double(cells[4]));
  }
  for (auto& s : bundle.seeds) s.value = 0.0;
  for (std::size_t i = 0; i < bundle.seeds.size(); ++i)
    if (!bundle.ontic[i].empty()) bundle.seeds[i].value = bundle.ontic[i].front();
  return bundle;
}

std::string bundle_json(const TrajectoryBundle& bundle) {
  nlohmann::json j;
  j["theory"] = bundle.theory == Theory::XBohm ? "xBohm" : "pBohm";
  j["planes"] = bundle.planes;
  auto& seeds = j["seeds"] = nlohmann::json::array();
  for (const auto& s : bundle.seeds)
    seeds.push_back({{"value", s.value}, {"quantile", s.quantile}});
  j["ontic"] = bundle.ontic;
  j["derived"] = bundle.derived;
  auto& trunc = j["truncated"] = nlohmann::json::array();
  for (bool t : bundle.truncated) trunc.push_back(t);
  return j.dump();
}

}  // namespace bohmsim::io
