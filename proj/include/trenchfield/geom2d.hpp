#pragma once

#include <cmath>
#include <complex>

namespace trenchfield {

using Complex = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }

  Complex as_complex() const { return {x, y}; }
  static Vec2 from_complex(Complex z) { return {z.real(), z.imag()}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// symmetric 2x2 matrix (hessians, field jacobians)
struct Mat2 {
  double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;

  Vec2 operator*(Vec2 v) const { return {xx * v.x + xy * v.y, yx * v.x + yy * v.y}; }
  double det() const { return xx * yy - xy * yx; }
  double trace() const { return xx + yy; }
};

struct BBox {
  Vec2 lo{1e300, 1e300};
  Vec2 hi{-1e300, -1e300};

  void expand(Vec2 p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  void expand(const BBox& o) {
    expand(o.lo);
    expand(o.hi);
  }
  bool contains(Vec2 p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  Vec2 center() const { return {(lo.x + hi.x) / 2, (lo.y + hi.y) / 2}; }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  BBox inflated(double factor) const {
    Vec2 c = center();
    Vec2 half{width() / 2 * factor, height() / 2 * factor};
    return {{c.x - half.x, c.y - half.y}, {c.x + half.x, c.y + half.y}};
  }
};

// axis-aligned solid conductor body (trench wall, wafer slab)
struct Rect {
  double x0, x1, y0, y1;

  bool contains(Vec2 p) const {
    return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
  }
  bool contains(Vec2 p, double margin) const {
    return p.x > x0 - margin && p.x < x1 + margin && p.y > y0 - margin && p.y < y1 + margin;
  }
};

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = d.squared_norm();
  if (len2 == 0.0) return (p - a).norm();
  double t = (p - a).dot(d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + d * t)).norm();
}

// proper intersection of segment (a,b) with segment (c,d), endpoints included
inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
    const double v = (q - p).cross(r - p);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  const auto on = [](Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  if (o1 == 0 && on(a, b, c)) return true;
  if (o2 == 0 && on(a, b, d)) return true;
  if (o3 == 0 && on(c, d, a)) return true;
  if (o4 == 0 && on(c, d, b)) return true;
  return false;
}

}  // namespace trenchfield
