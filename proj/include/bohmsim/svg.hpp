#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bohmsim::svg {

/// Minimal deterministic SVG line chart: polyline series, optional vertical
/// error bars, axis ticks and labels. No display server involved; CSV stays
/// the authoritative output and these charts are best-effort companions.
class LineChart {
 public:
  LineChart(std::string title, std::string x_label, std::string y_label);

  void add_series(std::string name, std::vector<double> x, std::vector<double> y,
                  std::string color = "", double stroke_width = 1.2);
  void add_error_bars(std::vector<double> x, std::vector<double> y, std::vector<double> half_span,
                      std::string color = "#888888");
  // Highlight an existing series by index (thicker stroke, drawn last).
  void highlight(std::size_t series_index);

  std::string render() const;
  void write(const std::filesystem::path& path) const;

 private:
  struct Series {
    std::string name, color;
    std::vector<double> x, y;
    double stroke_width;
    bool highlighted = false;
  };
  struct ErrorBars {
    std::string color;
    std::vector<double> x, y, half_span;
  };

  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  std::vector<ErrorBars> bars_;
};

}  // namespace bohmsim::svg
