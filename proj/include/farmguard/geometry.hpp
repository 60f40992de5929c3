#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace farmguard {

// Planar coordinates in meters; x points east, y points north.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point2D&, const Point2D&) = default;
};

constexpr Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.y}; }

constexpr double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }

inline double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

class Segment2D {
 public:
  Segment2D(Point2D a, Point2D b) : a_(a), b_(b) {
    if (a == b) throw std::invalid_argument("zero-length segment");
  }

  Point2D a() const { return a_; }
  Point2D b() const { return b_; }
  double length() const { return distance(a_, b_); }

 private:
  Point2D a_;
  Point2D b_;
};

struct Circle {
  Point2D center;
  double radius = 0.0;
};

// Axis-aligned rectangle.
struct Rect {
  Point2D min;
  Point2D max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  bool contains(Point2D p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

class Obstacle {
 public:
  using Shape = std::variant<Circle, Rect>;

  Obstacle(Circle c) : shape_(c) {  // NOLINT(google-explicit-constructor)
    if (!(c.radius > 0.0) || !std::isfinite(c.radius))
      throw std::invalid_argument("circle radius must be positive");
  }
  Obstacle(Rect r) : shape_(r) {  // NOLINT(google-explicit-constructor)
    if (!(r.min.x < r.max.x) || !(r.min.y < r.max.y))
      throw std::invalid_argument("rectangle min corner must be below max corner");
  }

  const Shape& shape() const { return shape_; }
  bool is_circle() const { return std::holds_alternative<Circle>(shape_); }

 private:
  Shape shape_;
};

/// Unsigned heading change, in degrees, when flying h -> i -> j.
/// 0 means straight continuation and 180 an exact reversal.
inline double turn_angle_deg(Point2D h, Point2D i, Point2D j) {
  if (h == i || i == j) throw std::invalid_argument("turn angle of a degenerate triple");
  const Point2D u = i - h;
  const Point2D v = j - i;
  return std::atan2(std::abs(cross(u, v)), dot(u, v)) * (180.0 / std::numbers::pi);
}

namespace detail {

inline double point_segment_distance(Point2D p, Point2D a, Point2D b) {
  const Point2D ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

inline double point_rect_distance(Point2D p, const Rect& r) {
  const double dx = std::max({r.min.x - p.x, 0.0, p.x - r.max.x});
  const double dy = std::max({r.min.y - p.y, 0.0, p.y - r.max.y});
  return std::hypot(dx, dy);
}

// Liang-Barsky clip of segment ab against a closed rectangle.
inline bool segment_hits_rect(Point2D a, Point2D b, const Rect& r) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Point2D d = b - a;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - r.min.x, r.max.x - a.x, a.y - r.min.y, r.max.y - a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
      continue;
    }
    const double t = q[k] / p[k];
    if (p[k] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

inline int orientation(Point2D a, Point2D b, Point2D c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

inline bool on_segment(Point2D a, Point2D b, Point2D p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace detail

/// Distance from a point to an obstacle; 0 when the point is on or inside it.
inline double point_clearance(Point2D p, const Obstacle& obs) {
  if (const auto* c = std::get_if<Circle>(&obs.shape())) {
    return std::max(0.0, distance(p, c->center) - c->radius);
  }
  return detail::point_rect_distance(p, std::get<Rect>(obs.shape()));
}

/// Smallest distance between any point of the segment and the obstacle
/// (boundary or interior). 0 when the segment touches or enters it.
inline double min_clearance(const Segment2D& seg, const Obstacle& obs) {
  const Point2D a = seg.a();
  const Point2D b = seg.b();
  if (const auto* c = std::get_if<Circle>(&obs.shape())) {
    return std::max(0.0, detail::point_segment_distance(c->center, a, b) - c->radius);
  }
  const Rect& r = std::get<Rect>(obs.shape());
  if (detail::segment_hits_rect(a, b, r)) return 0.0;
  // Disjoint convex sets: the gap is realised at a vertex of one of them.
  double best = std::min(detail::point_rect_distance(a, r), detail::point_rect_distance(b, r));
  const Point2D corners[4] = {r.min, {r.max.x, r.min.y}, r.max, {r.min.x, r.max.y}};
  for (const Point2D& corner : corners) {
    best = std::min(best, detail::point_segment_distance(corner, a, b));
  }
  return best;
}

/// True when the two closed segments share at least one point.
inline bool segments_intersect(const Segment2D& s, const Segment2D& t) {
  using detail::on_segment;
  using detail::orientation;
  const int o1 = orientation(s.a(), s.b(), t.a());
  const int o2 = orientation(s.a(), s.b(), t.b());
  const int o3 = orientation(t.a(), t.b(), s.a());
  const int o4 = orientation(t.a(), t.b(), s.b());
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(s.a(), s.b(), t.a())) return true;
  if (o2 == 0 && on_segment(s.a(), s.b(), t.b())) return true;
  if (o3 == 0 && on_segment(t.a(), t.b(), s.a())) return true;
  if (o4 == 0 && on_segment(t.a(), t.b(), s.b())) return true;
  return false;
}

}  // namespace farmguard
