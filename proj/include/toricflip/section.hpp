#pragma once

// Plot-ready slice of a rank-3 secondary fan with the plane x1 + x2 + x3 = 1,
// projected to (x1, x2).

#include <array>
#include <string>
#include <vector>

#include "toricflip/divisor.hpp"

namespace toricflip {

using Point2 = std::array<Rat, 2>;

struct SectionPolygon {
  std::string label;
  std::vector<Point2> vertices;  // counterclockwise, starting at the lex-least vertex
};

struct SectionPoint {
  std::string label;
  Point2 coords;
};

struct SectionData {
  std::string plane = "sum=1";
  std::vector<SectionPolygon> polygons;
  std::vector<SectionPoint> points;
};

inline Point2 slice_point(const QVector& v) {
  Rat s = v[0] + v[1] + v[2];
  if (s <= 0) throw Error(ErrorCode::unsupported, "the plane x1+x2+x3=1 does not meet this ray");
  return {v[0] / s, v[1] / s};
}

inline SectionPolygon slice_cone(const std::string& label, const Cone& c) {
  if (!c.is_pointed()) throw Error(ErrorCode::unsupported, "cannot slice a cone containing a line");
  std::vector<Point2> pts;
  for (const auto& r : c.rays()) pts.push_back(slice_point(to_rational(r)));
  auto lex = [](const Point2& a, const Point2& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  };
  std::sort(pts.begin(), pts.end(), lex);
  if (pts.size() > 2) {
    const Point2 p0 = pts.front();
    auto cross = [&](const Point2& a, const Point2& b) -> Rat {
      return (a[0] - p0[0]) * (b[1] - p0[1]) - (a[1] - p0[1]) * (b[0] - p0[0]);
    };
    std::sort(pts.begin() + 1, pts.end(),
              [&](const Point2& a, const Point2& b) { return cross(a, b) > 0; });
  }
  return {label, std::move(pts)};
}

inline SectionData emit_section(const WeightMatrix& W, const SecondaryFan& sf) {
  if (W.rank() != 3) throw Error(ErrorCode::unsupported, "sections are only produced for rank 3");
  SectionData out;
  for (std::size_t i = 0; i < sf.chambers.size(); ++i)
    out.polygons.push_back(slice_cone("chamber " + std::to_string(i + 1), sf.chambers[i].cone));
  out.polygons.push_back(slice_cone("Mov", sf.mov));
  out.polygons.push_back(slice_cone("Eff", effective_cone(W)));
  out.points.push_back({"anticanonical", slice_point(anticanonical_class(W))});
  return out;
}

}  // namespace toricflip
