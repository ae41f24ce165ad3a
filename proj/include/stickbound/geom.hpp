#pragma once

// Exact rational geometry: binding-point placement, orientation predicates,
// segment/segment and segment/triangle intersection, polygon embeddedness.
// No tolerances anywhere; every predicate is decided over Q.

#include "stickbound/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace stickbound {

struct Point2 {
  Rational x, y;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point2& a, const Point2& b) {
    return std::tie(a.x, a.y) < std::tie(b.x, b.y);
  }
};

struct Point3 {
  Rational x, y, z;

  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator<(const Point3& a, const Point3& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
  }
};

inline std::ostream& operator<<(std::ostream& os, const Point2& p) {
  return os << '(' << to_string(p.x) << ", " << to_string(p.y) << ')';
}
inline std::ostream& operator<<(std::ostream& os, const Point3& p) {
  return os << '(' << to_string(p.x) << ", " << to_string(p.y) << ", " << to_string(p.z) << ')';
}

// Points double as vectors.
inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator*(const Rational& s, const Point2& a) { return {s * a.x, s * a.y}; }

inline Point3 operator-(const Point3& a, const Point3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Point3 operator+(const Point3& a, const Point3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Point3 operator*(const Rational& s, const Point3& a) { return {s * a.x, s * a.y, s * a.z}; }

inline Rational dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline bool is_zero(const Point3& v) { return v.x == 0 && v.y == 0 && v.z == 0; }

inline Point3 lift(const Point2& p, const Rational& z) { return {p.x, p.y, z}; }
inline Point2 drop_z(const Point3& p) { return {p.x, p.y}; }

// Point at parameter s along a -> b.
inline Point3 lerp(const Point3& a, const Point3& b, const Rational& s) { return a + s * (b - a); }
inline Point2 lerp(const Point2& a, const Point2& b, const Rational& s) { return a + s * (b - a); }

struct Segment3 {
  Point3 a, b;
};

struct Triangle3 {
  Point3 a, b, c;

  Point3 normal() const { return cross(b - a, c - a); }
  bool degenerate() const { return is_zero(normal()); }
};

/// Point on the unit circle for the rational parameter t (tan of half the angle).
inline Point2 circle_point(const Rational& t) {
  Rational t2 = t * t;
  Rational den = 1 + t2;
  return {Rational((1 - t2) / den), Rational(2 * t / den)};
}

/// Base parameters t_k = k - (n+1)/2 for k = 1..n.
inline std::vector<Rational> binding_parameters(std::size_t n) {
  std::vector<Rational> t(n);
  Rational mid(static_cast<long>(n) + 1, 2);
  mid.canonicalize();
  for (std::size_t k = 1; k <= n; ++k) t[k - 1] = Rational(static_cast<long>(k)) - mid;
  return t;
}

/// n rational points on the unit circle in strictly increasing angular order.
inline std::vector<Point2> binding_points(std::size_t n) {
  if (n < 2) throw std::invalid_argument("binding_points: need n >= 2");
  std::vector<Point2> pts;
  pts.reserve(n);
  for (const auto& t : binding_parameters(n)) pts.push_back(circle_point(t));
  return pts;
}

inline int orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return sign(cross(b - a, c - a));
}

inline int orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return sign(dot(cross(b - a, c - a), d - a));
}

/// Intersection of two closed 2D segments when they cross at a single point
/// that is interior to both; returns the parameters along each.
struct ProperCrossing2 {
  Rational s, t;
  Point2 point;
};

inline std::optional<ProperCrossing2> proper_crossing(const Point2& a, const Point2& b,
                                                      const Point2& c, const Point2& d) {
  Point2 r = b - a, q = d - c;
  Rational den = cross(r, q);
  if (den == 0) return std::nullopt;
  Point2 ac = c - a;
  Rational s = cross(ac, q) / den;
  Rational t = cross(ac, r) / den;
  if (s <= 0 || s >= 1 || t <= 0 || t >= 1) return std::nullopt;
  return ProperCrossing2{s, t, lerp(a, b, s)};
}

enum class SegRelation { disjoint, shared_endpoint, improper };

inline const char* to_string(SegRelation r) {
  switch (r) {
    case SegRelation::disjoint: return "disjoint";
    case SegRelation::shared_endpoint: return "shared-endpoint";
    case SegRelation::improper: return "improper";
  }
  return "?";
}

inline SegRelation seg3_relation(const Segment3& s1, const Segment3& s2) {
  const Point3 d1 = s1.b - s1.a, d2 = s2.b - s2.a;
  const Point3 w = s2.a - s1.a;
  const Point3 n = cross(d1, d2);

  auto is_end1 = [](const Rational& s) { return s == 0 || s == 1; };

  if (!is_zero(n)) {
    if (dot(w, n) != 0) return SegRelation::disjoint;  // skew lines
    Rational nn = dot(n, n);
    Rational s = dot(cross(w, d2), n) / nn;
    Rational t = dot(cross(w, d1), n) / nn;
    if (s < 0 || s > 1 || t < 0 || t > 1) return SegRelation::disjoint;
    return is_end1(s) && is_end1(t) ? SegRelation::shared_endpoint : SegRelation::improper;
  }

  if (!is_zero(cross(w, d1))) return SegRelation::disjoint;  // parallel, distinct lines

  // Collinear: compare parameter intervals along s1.
  Rational dd = dot(d1, d1);
  Rational u0 = dot(s2.a - s1.a, d1) / dd;
  Rational u1 = dot(s2.b - s1.a, d1) / dd;
  if (u0 > u1) std::swap(u0, u1);
  Rational lo = std::max(u0, Rational(0)), hi = std::min(u1, Rational(1));
  if (lo > hi) return SegRelation::disjoint;
  if (lo == hi) return SegRelation::shared_endpoint;  // touching at a common endpoint
  return SegRelation::improper;
}

/// Whether the coplanar point x lies in the closed triangle t.
inline bool point_in_triangle(const Triangle3& t, const Point3& x) {
  Point3 n = t.normal();
  return sign(dot(n, cross(t.b - t.a, x - t.a))) >= 0 &&
         sign(dot(n, cross(t.c - t.b, x - t.b))) >= 0 &&
         sign(dot(n, cross(t.a - t.c, x - t.c))) >= 0;
}

/// Intersection of a closed segment with a closed triangle: empty, a point, or
/// a sub-segment given by parameters [lo, hi] along s.
struct SegTriangleHit {
  bool empty = true;
  Rational lo, hi;
};

inline SegTriangleHit segment_triangle_hit(const Triangle3& t, const Segment3& s) {
  const Point3 n = t.normal();
  if (is_zero(n)) throw std::invalid_argument("segment_triangle_hit: degenerate triangle");
  Rational da = dot(n, s.a - t.a), db = dot(n, s.b - t.a);
  SegTriangleHit hit;
  if ((da > 0 && db > 0) || (da < 0 && db < 0)) return hit;

  if (da != 0 || db != 0) {
    Rational u = da / (da - db);
    if (point_in_triangle(t, lerp(s.a, s.b, u))) {
      hit.empty = false;
      hit.lo = hit.hi = u;
    }
    return hit;
  }

  // Coplanar: clip [0,1] against the three inward half-planes.
  Rational lo = 0, hi = 1;
  const Point3* v[3] = {&t.a, &t.b, &t.c};
  for (int e = 0; e < 3; ++e) {
    const Point3& p = *v[e];
    const Point3& q = *v[(e + 1) % 3];
    Rational f0 = dot(n, cross(q - p, s.a - p));
    Rational f1 = dot(n, cross(q - p, s.b - p));
    // f(u) = f0 + u (f1 - f0) >= 0
    Rational slope = f1 - f0;
    if (slope == 0) {
      if (f0 < 0) return hit;
    } else if (slope > 0) {
      lo = std::max(lo, Rational(-f0 / slope));
    } else {
      hi = std::min(hi, Rational(-f0 / slope));
    }
    if (lo > hi) return hit;
  }
  hit.empty = false;
  hit.lo = lo;
  hit.hi = hi;
  return hit;
}

/// True iff s meets the closed triangle t at some point outside `ignore`.
inline bool triangle_pierced(const Triangle3& t, const Segment3& s, std::span<const Point3> ignore) {
  if (t.degenerate()) throw std::invalid_argument("triangle_pierced: degenerate triangle");
  SegTriangleHit hit = segment_triangle_hit(t, s);
  if (hit.empty) return false;
  if (hit.lo != hit.hi) return true;
  Point3 x = lerp(s.a, s.b, hit.lo);
  return std::find(ignore.begin(), ignore.end(), x) == ignore.end();
}

struct EmbeddingVerdict {
  bool ok = true;
  // 1-based edge indices of the first offending pair; edge k joins vertex k to k+1.
  std::size_t edge1 = 0, edge2 = 0;
  std::string reason;

  explicit operator bool() const { return ok; }
};

inline EmbeddingVerdict polygon_embedded(std::span<const Point3> v) {
  const std::size_t m = v.size();
  if (m < 3) throw std::invalid_argument("polygon_embedded: need at least 3 vertices");
  for (std::size_t i = 0; i < m; ++i)
    if (v[i] == v[(i + 1) % m])
      throw std::invalid_argument("polygon_embedded: repeated consecutive vertex " +
                                  std::to_string(i + 1));

  auto edge = [&](std::size_t i) { return Segment3{v[i], v[(i + 1) % m]}; };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
      SegRelation r = seg3_relation(edge(i), edge(j));
      bool bad = adjacent ? r != SegRelation::shared_endpoint : r != SegRelation::disjoint;
      if (bad) {
        EmbeddingVerdict out;
        out.ok = false;
        out.edge1 = i + 1;
        out.edge2 = j + 1;
        out.reason = std::string(adjacent ? "adjacent" : "non-adjacent") + " edges " +
                     std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are " +
                     to_string(r);
        return out;
      }
    }
  }
  return {};
}

}  // namespace stickbound
