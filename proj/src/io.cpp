#include "rpcd/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rpcd {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2f", v);
  return b;
}

std::string tick_label(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%g", v);
  return b;
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                          const std::vector<PlotSeries>& series, bool log_y) {
  const double W = 720, H = 480, L = 80, R = 160, T = 40, B = 60;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin, ypos = xmin;
  auto see_y = [&](double y) {
    if (!std::isfinite(y)) return;
    if (y > 0) ypos = std::min(ypos, y);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& s : series) {
    for (double x : s.x) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
    }
    for (double y : s.mean) see_y(y);
    for (double y : s.lo) see_y(y);
    for (double y : s.hi) see_y(y);
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  auto ty = [&](double y) { return log_y ? std::log10(std::max(y, ypos)) : y; };
  double y0, y1;
  if (log_y) {
    if (!std::isfinite(ypos)) ypos = 1;
    y0 = std::floor(std::log10(ypos));
    y1 = std::ceil(std::log10(std::max(ymax, ypos)));
  } else {
    y0 = std::isfinite(ymin) ? ymin : 0;
    y1 = std::isfinite(ymax) ? ymax : 1;
  }
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << esc(title) << "</text>\n";
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  // y ticks
  if (log_y) {
    int step = std::max(1, static_cast<int>((y1 - y0) / 8));
    for (int e = static_cast<int>(y0); e <= static_cast<int>(y1); e += step) {
      double yy = H - B - (e - y0) / (y1 - y0) * (H - T - B);
      o << "<line x1=\"" << L << "\" x2=\"" << W - R << "\" y1=\"" << fmt(yy) << "\" y2=\"" << fmt(yy)
        << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << L - 6 << "\" y=\"" << fmt(yy + 4) << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      double v = y0 + (y1 - y0) * i / 5.0;
      double yy = H - B - (v - y0) / (y1 - y0) * (H - T - B);
      o << "<line x1=\"" << L << "\" x2=\"" << W - R << "\" y1=\"" << fmt(yy) << "\" y2=\"" << fmt(yy)
        << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << L - 6 << "\" y=\"" << fmt(yy + 4) << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
    }
  }
  for (int i = 0; i <= 5; ++i) {
    double v = xmin + (xmax - xmin) * i / 5.0;
    o << "<text x=\"" << fmt(px(v)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << tick_label(v)
      << "</text>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << esc(xlabel) << "</text>\n";
  o << "<text transform=\"translate(18," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << esc(ylabel)
    << "</text>\n";

  for (size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    if (s.lo.size() == s.x.size() && s.hi.size() == s.x.size() && !s.x.empty()) {
      o << "<polygon fill=\"" << col << "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
      for (size_t i = 0; i < s.x.size(); ++i) o << fmt(px(s.x[i])) << "," << fmt(py(s.hi[i])) << " ";
      for (size_t i = s.x.size(); i-- > 0;) o << fmt(px(s.x[i])) << "," << fmt(py(s.lo[i])) << " ";
      o << "\"/>\n";
    }
    o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.6\" points=\"";
    for (size_t i = 0; i < s.x.size() && i < s.mean.size(); ++i) o << fmt(px(s.x[i])) << "," << fmt(py(s.mean[i])) << " ";
    o << "\"/>\n";
    double ly = T + 16 + 18.0 * k;
    o << "<line x1=\"" << W - R + 10 << "\" x2=\"" << W - R + 30 << "\" y1=\"" << ly << "\" y2=\"" << ly
      << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << W - R + 36 << "\" y=\"" << ly + 4 << "\">" << esc(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw std::runtime_error(p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path + ": " + std::strerror(errno));
  f << contents;
  if (!f) throw std::runtime_error(path + ": " + std::strerror(errno));
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path + ": " + std::strerror(errno));
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace rpcd
