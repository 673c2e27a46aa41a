#include "chainlab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chainlab/serialize.hpp"
#include "chainlab/vec.hpp"

namespace chainlab {

namespace {

constexpr double kWidth = 720.0, kHeight = 440.0;
constexpr double kLeft = 80.0, kRight = 190.0, kTop = 40.0, kBottom = 60.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;

  double map(double v) const { return log ? std::log10(v) : v; }
  double frac(double v) const { return (map(v) - lo) / (hi - lo); }
};

Axis make_axis(const std::vector<double>& values, bool log) {
  Axis ax;
  ax.log = log;
  double lo = kInf, hi = -kInf;
  for (double v : values) {
    lo = std::min(lo, ax.map(v));
    hi = std::max(hi, ax.map(v));
  }
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
    if (hi == lo) hi = lo + 1.0;
  } else {
    const double pad = hi > lo ? 0.05 * (hi - lo) : std::max(1.0, std::abs(lo) * 0.1);
    lo -= pad;
    hi += pad;
  }
  ax.lo = lo;
  ax.hi = hi;
  return ax;
}

std::vector<double> ticks(const Axis& ax, const std::vector<double>& data) {
  std::vector<double> out;
  if (ax.log) {
    for (double e = ax.lo; e <= ax.hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
    return out;
  }
  std::vector<double> uniq = data;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (!uniq.empty() && uniq.size() <= 8) return uniq;
  for (int i = 0; i <= 4; ++i) out.push_back(ax.lo + (ax.hi - ax.lo) * i / 4.0);
  return out;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  std::vector<double> xs, ys;
  std::vector<std::vector<std::pair<double, double>>> pts;
  for (const auto& s : spec.series) {
    require(s.x.size() == s.y.size(), "plot: series \"" + s.name + "\" has mismatched x and y");
    std::vector<std::pair<double, double>> keep;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((spec.log_y && y <= 0.0) || (spec.log_x && x <= 0.0)) continue;
      keep.emplace_back(x, y);
      xs.push_back(x);
      ys.push_back(y);
    }
    pts.push_back(std::move(keep));
  }
  const Axis ax = make_axis(xs, spec.log_x);
  const Axis ay = make_axis(ys, spec.log_y);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + ax.frac(x) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - ay.frac(y)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(spec.title)
    << "</text>\n";
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(ax, xs)) {
    const double x = px(t);
    o << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x) << "\" y2=\"" << num(kTop + ph + 5)
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 19) << "\" text-anchor=\"middle\">" << format_6g(t)
      << "</text>\n";
  }
  for (double t : ticks(ay, ys)) {
    const double y = py(t);
    o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\"" << num(y)
      << "\" stroke=\"#dddddd\"/>\n";
    o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << format_6g(t)
      << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16) << "\" text-anchor=\"middle\">"
    << escape(spec.x_label) << "</text>\n";
  o << "<text transform=\"translate(18 " << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(spec.y_label + (spec.log_y ? " (log scale)" : "")) << "</text>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    const auto& p = pts[s];
    if (p.size() > 1) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < p.size(); ++i) o << (i ? " " : "") << num(px(p[i].first)) << ',' << num(py(p[i].second));
      o << "\"/>\n";
    }
    for (const auto& [x, y] : p)
      o << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3.5\" fill=\"" << color << "\"><title>"
        << escape(spec.series[s].name) << ": " << format_6g(x) << ", " << format_6g(y) << "</title></circle>\n";
    const double ly = kTop + 14 + 20.0 * static_cast<double>(s);
    const double lx = kLeft + pw + 16;
    o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24) << "\" y2=\"" << num(ly)
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\">" << escape(spec.series[s].name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void emit_plot(const PlotSpec& spec, const std::string& path) {
  require(!spec.series.empty(), "emit_plot: nothing to plot");
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "emit_plot: cannot write " + path);
  out << render_svg(spec);
  require(static_cast<bool>(out), "emit_plot: write failed for " + path);
}

}  // namespace chainlab
