#pragma once

#include <string>
#include <vector>

namespace rpcd {

struct PlotSeries {
  std::string label;
  std::vector<double> x, mean, lo, hi;  // lo/hi may be empty (no band)
};

// Standalone SVG line chart; log10 y-axis when log_y. Non-positive values are clamped to
// the smallest positive value on a log axis.
std::string svg_line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                          const std::vector<PlotSeries>& series, bool log_y = true);

// Writes the file, creating parent directories. Throws std::runtime_error with the OS message.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace rpcd
