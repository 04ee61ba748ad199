// Deterministic PPM (P6) and SVG writers for region images with polyline and
// point overlays.
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include "mpp/raster.hpp"

namespace mpp {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

/// Fixed legend: MP-property white, the three failing regions in saturated
/// red/green/blue, boundary band black.
inline Rgb region_color(RegionCode c) {
  switch (c) {
    case RegionCode::MpProperty: return {255, 255, 255};
    case RegionCode::FailsRegion1: return {220, 50, 47};
    case RegionCode::FailsRegion2: return {35, 160, 60};
    case RegionCode::FailsRegion3: return {58, 82, 222};
    default: return {0, 0, 0};
  }
}

struct Overlays {
  std::vector<Polyline> polylines;
  std::vector<PlanePointd> marked_points;
};

enum class ImageFormat { Ppm, Svg };

namespace detail {

inline Rgb overlay_line_color() { return {30, 30, 30}; }
inline Rgb overlay_point_color() { return {0, 0, 0}; }

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

/// Liang-Barsky clip of segment [a, b] to the window; false when fully outside.
inline bool clip_segment(const GridSpec& g, PlanePointd& a, PlanePointd& b) {
  double t0 = 0, t1 = 1;
  const double dx = b.x() - a.x(), dy = b.y() - a.y();
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x() - g.x_min, g.x_max - a.x(), a.y() - g.y_min, g.y_max - a.y()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0) {
      if (q[i] < 0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0) {
      if (r > t1) return false;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
  }
  const PlanePointd base = a;
  a = base + t0 * PlanePointd(dx, dy);
  b = base + t1 * PlanePointd(dx, dy);
  return true;
}

inline void stamp(std::vector<Rgb>& px, const GridSpec& g, int i, int j, Rgb color) {
  if (i < 0 || j < 0 || i >= g.width || j >= g.height) return;
  px[static_cast<std::size_t>(j) * g.width + i] = color;
}

inline void stamp_world(std::vector<Rgb>& px, const GridSpec& g, const PlanePointd& p, Rgb color) {
  const int i = static_cast<int>(std::lround((p.x() - g.x_min) / g.dx() - 0.5));
  const int j = static_cast<int>(std::lround((g.y_max - p.y()) / g.dy() - 0.5));
  stamp(px, g, i, j, color);
}

inline void rasterize_overlays(std::vector<Rgb>& px, const GridSpec& g, const Overlays& ov) {
  const double step = 0.5 * std::min(g.dx(), g.dy());
  for (const auto& line : ov.polylines) {
    const std::size_t n = line.points.size();
    if (n == 0) continue;
    const std::size_t segs = line.closed ? n : n - 1;
    for (std::size_t s = 0; s < segs; ++s) {
      PlanePointd a = line.points[s];
      PlanePointd b = line.points[(s + 1) % n];
      if (!clip_segment(g, a, b)) continue;
      const double len = (b - a).norm();
      const long steps = std::max(1L, std::lround(len / step));
      for (long q = 0; q <= steps; ++q)
        stamp_world(px, g, a + (static_cast<double>(q) / steps) * (b - a), overlay_line_color());
    }
  }
  for (const auto& p : ov.marked_points) {
    const int ci = static_cast<int>(std::lround((p.x() - g.x_min) / g.dx() - 0.5));
    const int cj = static_cast<int>(std::lround((g.y_max - p.y()) / g.dy() - 0.5));
    for (int dj = -3; dj <= 3; ++dj)
      for (int di = -3; di <= 3; ++di)
        if (di * di + dj * dj <= 9) stamp(px, g, ci + di, cj + dj, overlay_point_color());
  }
}

}  // namespace detail

/// Binary portable pixmap: header "P6\n<w> <h>\n255\n" followed by RGB
/// triplets row-major from the top-left. Byte-identical for identical inputs.
inline void write_ppm(const RegionImage& img, const Overlays& overlays, const std::string& path) {
  const GridSpec& g = img.grid;
  std::vector<Rgb> px(img.pixels.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) px[i] = region_color(img.pixels[i]);
  detail::rasterize_overlays(px, g, overlays);

  std::string payload = "P6\n" + std::to_string(g.width) + " " + std::to_string(g.height) + "\n255\n";
  payload.reserve(payload.size() + px.size() * 3);
  for (const Rgb& c : px) {
    payload.push_back(static_cast<char>(c.r));
    payload.push_back(static_cast<char>(c.g));
    payload.push_back(static_cast<char>(c.b));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoFailure("short write to " + path);
}

/// Standalone SVG 1.1 document. The viewBox equals the world window with the
/// y axis flipped (world point (x, y) is emitted at (x, -y)). Non-white
/// region pixels are merged into per-row run rectangles; each overlay
/// polyline becomes one path element and each marked point a circle element.
inline void write_svg(const RegionImage& img, const Overlays& overlays, const std::string& path) {
  using detail::format_number;
  const GridSpec& g = img.grid;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
         format_number(g.x_min) + " " + format_number(-g.y_max) + " " +
         format_number(g.x_max - g.x_min) + " " + format_number(g.y_max - g.y_min) + "\">\n";
  svg += "<desc>legend: mp_property=#ffffff fails_region_1=#dc322f fails_region_2=#23a03c "
         "fails_region_3=#3a52de boundary_band=#000000 contours=#1e1e1e vertices=#000000"
         "</desc>\n";
  svg += "<rect x=\"" + format_number(g.x_min) + "\" y=\"" + format_number(-g.y_max) +
         "\" width=\"" + format_number(g.x_max - g.x_min) + "\" height=\"" +
         format_number(g.y_max - g.y_min) + "\" fill=\"#ffffff\"/>\n";

  auto fill_of = [](RegionCode c) {
    switch (c) {
      case RegionCode::FailsRegion1: return "#dc322f";
      case RegionCode::FailsRegion2: return "#23a03c";
      case RegionCode::FailsRegion3: return "#3a52de";
      default: return "#000000";
    }
  };
  for (int j = 0; j < g.height; ++j) {
    int i = 0;
    while (i < g.width) {
      const RegionCode c = img.at(i, j);
      if (c == RegionCode::MpProperty) {
        ++i;
        continue;
      }
      int end = i + 1;
      while (end < g.width && img.at(end, j) == c) ++end;
      const double x = g.x_min + i * g.dx();
      const double y_top = g.y_max - j * g.dy();
      svg += "<rect x=\"" + format_number(x) + "\" y=\"" + format_number(-y_top) + "\" width=\"" +
             format_number((end - i) * g.dx()) + "\" height=\"" + format_number(g.dy()) +
             "\" fill=\"" + fill_of(c) + "\"/>\n";
      i = end;
    }
  }

  const double stroke = 0.75 * std::min(g.dx(), g.dy());
  for (const auto& line : overlays.polylines) {
    if (line.points.empty()) continue;
    std::string d;
    for (std::size_t s = 0; s < line.points.size(); ++s) {
      d += (s == 0 ? "M" : " L");
      d += format_number(line.points[s].x()) + " " + format_number(-line.points[s].y());
    }
    if (line.closed) d += " Z";
    svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"#1e1e1e\" stroke-width=\"" +
           format_number(stroke) + "\"/>\n";
  }
  for (const auto& p : overlays.marked_points)
    svg += "<circle cx=\"" + format_number(p.x()) + "\" cy=\"" + format_number(-p.y()) +
           "\" r=\"" + format_number(2.5 * stroke) + "\" fill=\"#000000\"/>\n";
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
  if (!out) throw IoFailure("short write to " + path);
}

inline void write_image(const RegionImage& img, const Overlays& overlays, const std::string& path,
                        ImageFormat format) {
  if (format == ImageFormat::Ppm)
    write_ppm(img, overlays, path);
  else
    write_svg(img, overlays, path);
}

}  // namespace mpp
