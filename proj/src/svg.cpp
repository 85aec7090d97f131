#include "confplan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace confplan::svg {

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 40.0;
constexpr std::size_t kColorBands = 64;

std::string color_at(double t) {
  const int r = static_cast<int>(std::lround(40 + 200 * t));
  const int b = static_cast<int>(std::lround(240 - 200 * t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x30%02x", r, b);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;  // data window

  double sx(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kSize - 2 * kMargin); }
  double sy(double y) const { return kSize - kMargin - (y - y0) / (y1 - y0) * (kSize - 2 * kMargin); }
};

Frame fit(const io::SampledPath& s) {
  double lo0 = std::numeric_limits<double>::infinity(), hi0 = -lo0, lo1 = lo0, hi1 = -lo0;
  for (const auto& row : s.points)
    for (const auto& p : row) {
      lo0 = std::min(lo0, p[0]);
      hi0 = std::max(hi0, p[0]);
      lo1 = std::min(lo1, p[1]);
      hi1 = std::max(hi1, p[1]);
    }
  if (!std::isfinite(lo0)) lo0 = hi0 = lo1 = hi1 = 0.0;
  if (s.surface == Surface::Annulus) {
    const double pad = std::max(0.5, 0.05 * (hi1 - lo1));
    return {0.0, 1.0, lo1 - pad, hi1 + pad};
  }
  const double cx = 0.5 * (lo0 + hi0), cy = 0.5 * (lo1 + hi1);
  const double half = 0.55 * std::max({hi0 - lo0, hi1 - lo1, 1.0});
  return {cx - half, cx + half, cy - half, cy + half};
}

}  // namespace

std::string render(const io::SampledPath& s, const std::string& title) {
  const Frame f = fit(s);
  const bool annulus = s.surface == Surface::Annulus;
  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
    << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) o << "<text x=\"" << kMargin << "\" y=\"24\" font-size=\"14\" font-family=\"sans-serif\">" << title << "</text>\n";

  const double left = f.sx(f.x0), right = f.sx(f.x1), top = f.sy(f.y1), bottom = f.sy(f.y0);
  if (annulus) {
    o << "<defs><clipPath id=\"strip\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
      << "\" height=\"" << bottom - top << "\"/></clipPath></defs>\n";
    o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << right << "\" y2=\"" << top
      << "\" stroke=\"#888\"/>\n";
    o << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\"" << bottom
      << "\" stroke=\"#888\"/>\n";
    for (double x : {left, right})
      o << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << bottom
        << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
    o << "<text x=\"" << left << "\" y=\"" << bottom + 16 << "\" font-size=\"11\" font-family=\"sans-serif\">theta=0 ~ theta=1</text>\n";
  } else {
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\"" << bottom - top
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  }

  const std::size_t samples = s.points.size();
  const std::size_t tracks = samples ? s.points.front().size() : 0;
  o << "<g fill=\"none\" stroke-width=\"2\"" << (annulus ? " clip-path=\"url(#strip)\"" : "") << ">\n";
  for (std::size_t k = 0; k < tracks; ++k) {
    // One polyline per color band. Annulus bands are unwrapped and drawn at
    // shifts of -1, 0, +1 turn; the clip keeps the parts inside the strip.
    std::size_t begin = 0;
    while (begin + 1 < samples) {
      std::size_t end = begin + 1;
      const std::size_t band = begin * kColorBands / samples;
      while (end + 1 < samples && (end * kColorBands / samples) == band) ++end;
      const std::string color = color_at(s.times[begin]);
      const int reach = annulus ? 1 : 0;
      for (int shift = -reach; shift <= reach; ++shift) {
        o << "<polyline stroke=\"" << color << "\" points=\"";
        double unwrap = 0.0;
        double prev = s.points[begin][k][0];
        for (std::size_t i = begin; i <= end; ++i) {
          double x = s.points[i][k][0];
          if (annulus) {
            const double d = x - prev;
            if (d > 0.5) unwrap -= 1.0;
            if (d < -0.5) unwrap += 1.0;
            prev = x;
            x += unwrap + shift;
          }
          o << f.sx(x) << ',' << f.sy(s.points[i][k][1]) << ' ';
        }
        o << "\"/>\n";
      }
      begin = end;
    }
  }
  o << "</g>\n";

  if (samples) {
    for (const auto& p : s.points.front())
      o << "<circle cx=\"" << f.sx(p[0]) << "\" cy=\"" << f.sy(p[1]) << "\" r=\"4\" fill=\"" << color_at(0.0) << "\"/>\n";
    for (const auto& p : s.points.back())
      o << "<rect x=\"" << f.sx(p[0]) - 4 << "\" y=\"" << f.sy(p[1]) - 4 << "\" width=\"8\" height=\"8\" fill=\""
        << color_at(1.0) << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace confplan::svg
