// Sign-region rasterization, zero-contour extraction (marching squares), and
// projected great-circle images.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

#include "mpp/classify.hpp"

namespace mpp {

/// Pixel grid over a world window.
///
/// Column i in [0, width) runs left to right, row j in [0, height) runs top
/// to bottom. Pixel (i, j) is classified at the center of its cell:
///   x = x_min + (i + 0.5) * (x_max - x_min) / width
///   y = y_max - (j + 0.5) * (y_max - y_min) / height
struct GridSpec {
  double x_min = -1, x_max = 1, y_min = -1, y_max = 1;
  int width = 2, height = 2;

  void validate() const {
    if (!(x_min < x_max) || !(y_min < y_max))
      throw std::invalid_argument("grid window must have positive extent");
    if (width < 2 || height < 2)
      throw std::invalid_argument("grid must be at least 2x2 pixels");
  }

  double dx() const { return (x_max - x_min) / width; }
  double dy() const { return (y_max - y_min) / height; }
  double world_x(int i) const { return x_min + (i + 0.5) * dx(); }
  double world_y(int j) const { return y_max - (j + 0.5) * dy(); }
};

enum class RegionCode : std::uint8_t {
  MpProperty = 0,
  FailsRegion1 = 1,
  FailsRegion2 = 2,
  FailsRegion3 = 3,
  BoundaryBand = 4,
};

inline const char* to_string(RegionCode c) {
  switch (c) {
    case RegionCode::MpProperty: return "mp_property";
    case RegionCode::FailsRegion1: return "fails_region_1";
    case RegionCode::FailsRegion2: return "fails_region_2";
    case RegionCode::FailsRegion3: return "fails_region_3";
    default: return "boundary_band";
  }
}

struct RegionImage {
  GridSpec grid;
  std::vector<RegionCode> pixels;  // row-major from the top-left

  RegionCode at(int i, int j) const { return pixels[static_cast<std::size_t>(j) * grid.width + i]; }

  std::array<std::size_t, 5> counts() const {
    std::array<std::size_t, 5> n{};
    for (RegionCode c : pixels) ++n[static_cast<std::size_t>(c)];
    return n;
  }
};

/// Default rendering window: the vertex bounding box grown by 75% of its
/// larger extent on every side.
template <typename Scalar>
GridSpec default_window(const TriangleT<Scalar>& t, int width, int height) {
  PlanePoint<Scalar> lo, hi;
  bounding_box(t, lo, hi);
  const double m = 0.75 * std::max(hi.x() - lo.x(), hi.y() - lo.y());
  GridSpec g{lo.x() - m, hi.x() + m, lo.y() - m, hi.y() + m, width, height};
  g.validate();
  return g;
}

/// Classifies every pixel center with classify_direct. Fails maps to the
/// code of its (unique) failing factor, Degenerate to the boundary band.
inline RegionImage render_sign_map(const Triangle& t, const GridSpec& g, double tol) {
  g.validate();
  RegionImage img;
  img.grid = g;
  img.pixels.resize(static_cast<std::size_t>(g.width) * g.height);
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      const auto d = distance_triple(t, PlanePointd(g.world_x(i), g.world_y(j)));
      const Classification c = classify_direct(d, tol);
      RegionCode code = RegionCode::MpProperty;
      if (c.verdict == Verdict::Fails)
        code = static_cast<RegionCode>(c.failing_or_zero_factors.front());
      else if (c.verdict == Verdict::Degenerate)
        code = RegionCode::BoundaryBand;
      img.pixels[static_cast<std::size_t>(j) * g.width + i] = code;
    }
  }
  return img;
}

struct Polyline {
  std::vector<PlanePointd> points;
  bool closed = false;
};

/// Contour level used by factor_contours; see there.
inline double contour_level(const Triangle& t, const GridSpec& g) {
  const double h_rel = 1.0 / std::min(g.width, g.height);
  return (t.a + t.b + t.c) * std::max(1e-9, 4 * h_rel * h_rel);
}

namespace detail {

// A contour vertex lives on an edge of the pixel-center lattice; edges are
// keyed globally so neighboring cells share vertices exactly.
struct EdgeKey {
  int i, j;
  bool vertical;
  friend bool operator<(const EdgeKey& a, const EdgeKey& b) {
    return std::tie(a.vertical, a.j, a.i) < std::tie(b.vertical, b.j, b.i);
  }
};

/// Zero crossing on the segment [p0, p1] with field values f0, f1 of opposite
/// sign: linear interpolation followed by a few bisection steps, which keeps
/// the vertex on the edge while pushing |field| well below the contract bound.
inline PlanePointd edge_crossing(const std::function<double(double, double)>& field,
                                 PlanePointd p0, PlanePointd p1, double f0, double f1) {
  double t0 = 0, t1 = 1;
  double t = f0 / (f0 - f1);
  for (int iter = 0; iter < 20; ++iter) {
    const PlanePointd p = p0 + t * (p1 - p0);
    const double f = field(p.x(), p.y());
    if (f == 0) break;
    if ((f > 0) == (f0 > 0)) {
      t0 = t;
    } else {
      t1 = t;
    }
    t = 0.5 * (t0 + t1);
  }
  return p0 + t * (p1 - p0);
}

}  // namespace detail

/// Marching-squares zero contours of `field` over the grid's pixel-center
/// lattice, chained into polylines (closed where the contour loops).
/// Saddle cells are disambiguated by the field sign at the cell center.
inline std::vector<Polyline> zero_contour(const std::function<double(double, double)>& field,
                                          const GridSpec& g) {
  g.validate();
  const int W = g.width, H = g.height;
  std::vector<double> f(static_cast<std::size_t>(W) * H);
  for (int j = 0; j < H; ++j)
    for (int i = 0; i < W; ++i) f[static_cast<std::size_t>(j) * W + i] = field(g.world_x(i), g.world_y(j));

  auto value = [&](int i, int j) { return f[static_cast<std::size_t>(j) * W + i]; };
  auto positive = [&](int i, int j) { return value(i, j) > 0; };
  auto node = [&](int i, int j) { return PlanePointd(g.world_x(i), g.world_y(j)); };

  std::map<detail::EdgeKey, PlanePointd> vertex;
  auto crossing = [&](detail::EdgeKey key) {
    auto it = vertex.find(key);
    if (it != vertex.end()) return it->first;
    const int i2 = key.vertical ? key.i : key.i + 1;
    const int j2 = key.vertical ? key.j + 1 : key.j;
    vertex.emplace(key, detail::edge_crossing(field, node(key.i, key.j), node(i2, j2),
                                              value(key.i, key.j), value(i2, j2)));
    return key;
  };

  std::vector<std::pair<detail::EdgeKey, detail::EdgeKey>> segments;
  for (int j = 0; j + 1 < H; ++j) {
    for (int i = 0; i + 1 < W; ++i) {
      // corner sign pattern: bit 0 = (i,j), 1 = (i+1,j), 2 = (i+1,j+1), 3 = (i,j+1)
      const int code = (positive(i, j) ? 1 : 0) | (positive(i + 1, j) ? 2 : 0) |
                       (positive(i + 1, j + 1) ? 4 : 0) | (positive(i, j + 1) ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const detail::EdgeKey top{i, j, false}, bottom{i, j + 1, false};
      const detail::EdgeKey left{i, j, true}, right{i + 1, j, true};
      auto emit = [&](detail::EdgeKey a, detail::EdgeKey b) {
        segments.emplace_back(crossing(a), crossing(b));
      };
      switch (code) {
        case 1: case 14: emit(top, left); break;
        case 2: case 13: emit(top, right); break;
        case 4: case 11: emit(right, bottom); break;
        case 8: case 7: emit(left, bottom); break;
        case 3: case 12: emit(left, right); break;
        case 6: case 9: emit(top, bottom); break;
        case 5: case 10: {
          const PlanePointd center = 0.5 * (node(i, j) + node(i + 1, j + 1));
          const bool center_positive = field(center.x(), center.y()) > 0;
          // pair the crossings so same-sign corners stay connected
          if ((code == 5) == center_positive) {
            emit(top, right);
            emit(left, bottom);
          } else {
            emit(top, left);
            emit(right, bottom);
          }
          break;
        }
      }
    }
  }

  // chain segments into polylines via edge-key adjacency
  std::map<detail::EdgeKey, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].first].push_back(s);
    incident[segments[s].second].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> out;
  auto walk = [&](std::size_t start, bool require_endpoint) {
    detail::EdgeKey head = segments[start].first;
    if (require_endpoint && incident[segments[start].second].size() == 1)
      head = segments[start].second;
    Polyline line;
    detail::EdgeKey cur = head;
    std::size_t seg = start;
    line.points.push_back(vertex.at(cur));
    while (true) {
      used[seg] = true;
      const auto& [a, b] = segments[seg];
      cur = (cur < a || a < cur) ? a : b;  // the other endpoint
      line.points.push_back(vertex.at(cur));
      std::size_t next = segments.size();
      for (std::size_t cand : incident[cur])
        if (!used[cand]) next = cand;
      if (next == segments.size()) break;
      seg = next;
    }
    line.closed = !(head < cur) && !(cur < head) && line.points.size() > 2;
    if (line.closed) line.points.pop_back();  // first point already closes it
    out.push_back(std::move(line));
  };
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    const bool open_chain = incident[segments[s].first].size() == 1 ||
                            incident[segments[s].second].size() == 1;
    if (open_chain) walk(s, true);
  }
  for (std::size_t s = 0; s < segments.size(); ++s)
    if (!used[s]) walk(s, false);  // remaining loops
  return out;
}

/// Zero contours of one factor field over the grid. Degenerate
/// configurations (equilateral and chordally equidistant triangles) have
/// tangential zero sets that sign-based contouring cannot see: the field is
/// nonnegative and only dips to ~(cell size)^2 at the nodes nearest the
/// curve. The extraction therefore runs a hair above zero, at a level
/// proportional to the squared relative cell size, which brackets tangential
/// arcs within about a cell while shifting transversal contours by far less
/// than a pixel.
inline std::vector<Polyline> factor_contours(const Triangle& t, const GridSpec& g, int which) {
  const double level = contour_level(t, g);
  return zero_contour(
      [&](double x, double y) { return factor_value(t, PlanePointd(x, y), which) - level; }, g);
}

/// Planar image, under inverse stereographic projection, of the great circle
/// through the sphere points p and q. Samples within 1e-9 of the north pole
/// are skipped (their images run to infinity).
inline Polyline great_circle_image(const SpherePointd& p, const SpherePointd& q, int samples) {
  if ((p + q).norm() < 1e-9)
    throw AntipodalPoints("great circle through antipodal points is not unique");
  if (samples < 3) throw std::invalid_argument("need at least 3 samples");
  const SpherePointd u = p.normalized();
  SpherePointd w = q - q.dot(u) * u;
  if (w.norm() < 1e-12)
    throw std::invalid_argument("great circle requires two distinct directions");
  w.normalize();
  Polyline line;
  bool skipped = false;
  for (int k = 0; k < samples; ++k) {
    const double t = 2 * std::numbers::pi * k / samples;
    const SpherePointd s = std::cos(t) * u + std::sin(t) * w;
    if (s.z() > 1 - 1e-9) {
      skipped = true;
      continue;
    }
    line.points.push_back(inverse_stereographic(s));
  }
  line.closed = !skipped && line.points.size() > 2;
  return line;
}

}  // namespace mpp
