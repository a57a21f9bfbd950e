#include "bohmsim/svg.hpp"

#include "bohmsim/io.hpp"
#include "bohmsim/types.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace bohmsim::svg {

namespace {

constexpr double kWidth = 840, kHeight = 520;
constexpr double kLeft = 84, kRight = 24, kTop = 48, kBottom = 64;

const char* kPalette[] = {"#c03030", "#3050c0", "#208050", "#806020", "#703090", "#404040"};

std::string fmt(double v) {
  // fixed short form for coordinates; charts do not need full precision
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

LineChart::LineChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void LineChart::add_series(std::string name, std::vector<double> x, std::vector<double> y,
                           std::string color, double stroke_width) {
  if (x.size() != y.size()) throw NumericalError("svg: series length mismatch");
  Series s;
  s.name = std::move(name);
  s.color = color.empty() ? kPalette[series_.size() % 6] : std::move(color);
  s.x = std::move(x);
  s.y = std::move(y);
  s.stroke_width = stroke_width;
  series_.push_back(std::move(s));
}

void LineChart::add_error_bars(std::vector<double> x, std::vector<double> y,
                               std::vector<double> half_span, std::string color) {
  if (x.size() != y.size() || x.size() != half_span.size())
    throw NumericalError("svg: error bar length mismatch");
  bars_.push_back(ErrorBars{std::move(color), std::move(x), std::move(y), std::move(half_span)});
}

void LineChart::highlight(std::size_t series_index) {
  if (series_index < series_.size()) series_[series_index].highlighted = true;
}

std::string LineChart::render() const {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  const auto scan = [&](const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>* span) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
      x_lo = std::min(x_lo, xs[i]);
      x_hi = std::max(x_hi, xs[i]);
      const double pad = span ? (*span)[i] : 0.0;
      y_lo = std::min(y_lo, ys[i] - pad);
      y_hi = std::max(y_hi, ys[i] + pad);
    }
  };
  for (const auto& s : series_) scan(s.x, s.y, nullptr);
  for (const auto& b : bars_) scan(b.x, b.y, &b.half_span);
  if (!std::isfinite(x_lo) || x_hi <= x_lo) {
    x_lo = 0.0;
    x_hi = 1.0;
  }
  if (!std::isfinite(y_lo) || y_hi <= y_lo) {
    y_lo -= 0.5;
    y_hi = y_lo + 1.0;
  }
  const double x_pad = 0.03 * (x_hi - x_lo), y_pad = 0.06 * (y_hi - y_lo);
  x_lo -= x_pad;
  x_hi += x_pad;
  y_lo -= y_pad;
  y_hi += y_pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">"
      << title_ << "</text>\n";

  // frame + ticks
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"#222222\"/>\n";
  constexpr int kTicks = 6;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / kTicks;
    const double fy = y_lo + (y_hi - y_lo) * i / kTicks;
    out << "<line x1=\"" << fmt(px(fx)) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << fmt(px(fx))
        << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"#222222\"/>\n";
    out << "<text x=\"" << fmt(px(fx)) << "\" y=\"" << kTop + plot_h + 20
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(fx)
        << "</text>\n";
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py(fy)) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fmt(py(fy)) << "\" stroke=\"#222222\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py(fy) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(fy)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 18
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << x_label_
      << "</text>\n";
  out << "<text x=\"20\" y=\"" << kTop + plot_h / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 20 "
      << kTop + plot_h / 2 << ")\">" << y_label_ << "</text>\n";

  for (const auto& b : bars_) {
    out << "<g stroke=\"" << b.color << "\" stroke-width=\"1\">\n";
    for (std::size_t i = 0; i < b.x.size(); ++i) {
      if (!std::isfinite(b.y[i]) || !std::isfinite(b.half_span[i])) continue;
      out << "<line x1=\"" << fmt(px(b.x[i])) << "\" y1=\"" << fmt(py(b.y[i] - b.half_span[i]))
          << "\" x2=\"" << fmt(px(b.x[i])) << "\" y2=\"" << fmt(py(b.y[i] + b.half_span[i]))
          << "\"/>\n";
    }
    out << "</g>\n";
  }

  const auto draw = [&](const Series& s) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
        << (s.highlighted ? 3.0 * s.stroke_width : s.stroke_width) << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    }
    out << "\"/>\n";
  };
  for (const auto& s : series_)
    if (!s.highlighted) draw(s);
  for (const auto& s : series_)
    if (s.highlighted) draw(s);

  // legend: first occurrence of each distinct series name
  double ly = kTop + 14;
  std::vector<std::string> seen;
  for (const auto& s : series_) {
    if (s.name.empty() || std::find(seen.begin(), seen.end(), s.name) != seen.end()) continue;
    seen.push_back(s.name);
    out << "<line x1=\"" << kLeft + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + 34
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + 40 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
  return out.str();
}

void LineChart::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw ConfigError("svg: cannot open " + path.string());
  out << render();
}

}  // namespace bohmsim::svg
