#include "cantorifs/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace cantorifs {

namespace {

constexpr double kSize = 800.0;
constexpr double kPad = 40.0;
constexpr double kSpan = kSize - 2 * kPad;
constexpr int kSamples = 800;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double px(double x) { return kPad + kSpan * x; }
double py(double y) { return kSize - kPad - kSpan * y; }

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

void band(std::ostringstream& os, const Interval& j, const std::string& cls, const std::string& fill,
          double opacity) {
  os << "<rect class=\"" << cls << "\" x=\"" << num(px(j.lo)) << "\" y=\"" << num(kPad) << "\" width=\""
     << num(kSpan * j.length()) << "\" height=\"" << num(kSpan) << "\" fill=\"" << fill << "\" fill-opacity=\""
     << num(opacity) << "\"/>\n";
}

void ticks(std::ostringstream& os, const std::vector<IndexedPart>& parts, double y, const std::string& cls,
           const std::string& color) {
  for (const auto& q : parts) {
    os << "<rect class=\"" << cls << "\" x=\"" << num(px(q.part.lo)) << "\" y=\"" << num(y) << "\" width=\""
       << num(std::max(kSpan * q.part.length(), 0.5)) << "\" height=\"6.000000\" fill=\"" << color << "\"/>\n";
  }
}

void graph(std::ostringstream& os, const MapSpec& m, const std::string& cls, const std::string& color) {
  std::vector<double> xs;
  for (int i = 0; i <= kSamples; ++i) xs.push_back(static_cast<double>(i) / kSamples);
  for (double b : m.breakpoints()) xs.push_back(b);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ' ';
    os << num(px(xs[i])) << ',' << num(py(m.eval(xs[i])));
  }
  os << "\"/>\n";
}

std::string header(double w, double h) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace

std::string plot_pair_svg(const IFSPair& p, const PlotLayers& layers) {
  std::ostringstream os;
  os << header(kSize, kSize);
  if (!layers.title.empty()) {
    os << "<text x=\"" << num(kPad) << "\" y=\"24.000000\" font-family=\"sans-serif\" font-size=\"14\">"
       << escape(layers.title) << "</text>\n";
  }
  band(os, fundamental_domain(p, Which::F, 1), "F1", "#3b6fb6", 0.08);
  band(os, fundamental_domain(p, Which::G, 1), "G1", "#b6483b", 0.08);
  band(os, p.overlap(), "W", "#7a3bb6", 0.25);
  if (layers.hole) {
    band(os, layers.hole->h_f, "Hf", "#2a9d3a", 0.35);
    band(os, layers.hole->h_g, "Hg", "#2a9d3a", 0.35);
  }
  for (const auto& b : layers.blocks) {
    os << "<rect class=\"block\" x=\"" << num(px(b.lo)) << "\" y=\"" << num(py(b.hi)) << "\" width=\""
       << num(kSpan * b.length()) << "\" height=\"" << num(kSpan * b.length())
       << "\" fill=\"none\" stroke=\"#555555\" stroke-dasharray=\"4 3\"/>\n";
  }
  os << "<rect class=\"frame\" x=\"" << num(kPad) << "\" y=\"" << num(kPad) << "\" width=\"" << num(kSpan)
     << "\" height=\"" << num(kSpan) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<line class=\"diagonal\" x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(1))
     << "\" y2=\"" << num(py(1)) << "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
  if (layers.regions) {
    ticks(os, layers.regions->f_parts, kSize - kPad + 4, "Rf", "#3b6fb6");
    ticks(os, layers.regions->g_parts, kSize - kPad + 12, "Rg", "#b6483b");
  }
  graph(os, p.f(), "f", "#1f4e99");
  graph(os, p.g(), "g", "#99261f");
  os << "</svg>\n";
  return os.str();
}

std::string plot_strip_svg(const IntervalSet& s, const std::string& title) {
  constexpr double kHeight = 80.0;
  std::ostringstream os;
  os << header(kSize, kHeight);
  if (!title.empty()) {
    os << "<text x=\"" << num(kPad) << "\" y=\"16.000000\" font-family=\"sans-serif\" font-size=\"12\">"
       << escape(title) << "</text>\n";
  }
  os << "<line x1=\"" << num(px(0)) << "\" y1=\"50.000000\" x2=\"" << num(px(1))
     << "\" y2=\"50.000000\" stroke=\"#bbbbbb\"/>\n";
  for (const auto& q : s.parts()) {
    os << "<rect class=\"part\" x=\"" << num(px(q.lo)) << "\" y=\"36.000000\" width=\""
       << num(std::max(kSpan * q.length(), 0.2)) << "\" height=\"28.000000\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cantorifs
