#pragma once

// Planar knot diagrams built from a closed planar curve with a height along
// every edge. Both arc presentations (constant height per chord) and projected
// stick knots (linearly varying depth) go through the same builder.

#include "stickbound/geom.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stickbound {

struct Crossing {
  std::size_t over = 0;   // strand index of the upper edge
  std::size_t under = 0;  // strand index of the lower edge
  int sign = 0;           // +1 / -1
  Point2 point;
};

struct GaussVisit {
  std::size_t crossing = 0;
  bool over = false;

  friend bool operator==(const GaussVisit&, const GaussVisit&) = default;
};

struct Diagram {
  std::vector<Crossing> crossings;
  std::vector<GaussVisit> gauss;   // cyclic, in traversal order
  std::vector<std::size_t> arcs;   // over-arc id of each gauss position

  std::size_t crossing_count() const { return crossings.size(); }
};

/// Closed planar curve: edge k runs from vertices[k] to vertices[k+1 mod m],
/// with height heights[k].first at its start and heights[k].second at its end.
struct PlanarCurve {
  std::vector<Point2> vertices;
  std::vector<std::pair<Rational, Rational>> heights;
  std::vector<std::size_t> strand;
};

class NonGenericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenericityReport {
  bool ok = true;
  std::string failure;
  std::vector<std::string> checks_passed;
};

namespace detail {

struct EdgeHit {
  std::size_t edge;
  Rational param;
  std::size_t crossing;
  bool over;
};

struct CurveScan {
  GenericityReport report;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (over edge, under edge)
  std::vector<Rational> param_over, param_under;
  std::vector<Point2> points;
};

inline CurveScan scan_curve(const PlanarCurve& c) {
  CurveScan out;
  const std::size_t m = c.vertices.size();
  auto fail = [&](std::string why) {
    out.report.ok = false;
    out.report.failure = std::move(why);
    return out;
  };
  if (m < 3) return fail("curve has fewer than 3 edges");
  if (c.heights.size() != m || c.strand.size() != m)
    throw std::invalid_argument("PlanarCurve: heights/strand size mismatch");

  auto a = [&](std::size_t k) -> const Point2& { return c.vertices[k]; };
  auto b = [&](std::size_t k) -> const Point2& { return c.vertices[(k + 1) % m]; };

  for (std::size_t k = 0; k < m; ++k)
    if (a(k) == b(k)) return fail("edge " + std::to_string(k) + " projects to a point");
  out.report.checks_passed.emplace_back("no edge parallel to the projection direction");

  for (std::size_t k = 0; k < m; ++k) {
    std::size_t l = (k + 1) % m;
    Point2 r = b(k) - a(k), q = b(l) - a(l);
    Rational rq = r.x * q.x + r.y * q.y;
    if (cross(r, q) == 0 && rq < 0)
      return fail("adjacent edges " + std::to_string(k) + " and " + std::to_string(l) +
                  " fold back onto each other");
  }
  out.report.checks_passed.emplace_back("adjacent edges meet only at their joint");

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      const Point2 r = b(i) - a(i), q = b(j) - a(j);
      const Point2 w = a(j) - a(i);
      Rational den = cross(r, q);
      std::string pair = std::to_string(i) + "," + std::to_string(j);
      if (den == 0) {
        if (cross(w, r) != 0) continue;  // parallel lines
        Rational rr = r.x * r.x + r.y * r.y;
        Rational u0 = (w.x * r.x + w.y * r.y) / rr;
        Point2 w2 = b(j) - a(i);
        Rational u1 = (w2.x * r.x + w2.y * r.y) / rr;
        if (u0 > u1) std::swap(u0, u1);
        if (u1 < 0 || u0 > 1) continue;
        return fail("edges " + pair + " overlap collinearly");
      }
      Rational s = cross(w, q) / den;
      Rational t = cross(w, r) / den;
      if (s < 0 || s > 1 || t < 0 || t > 1) continue;
      if (s == 0 || s == 1 || t == 0 || t == 1)
        return fail("a vertex lies on edge pair " + pair);
      Rational zi = c.heights[i].first + s * (c.heights[i].second - c.heights[i].first);
      Rational zj = c.heights[j].first + t * (c.heights[j].second - c.heights[j].first);
      if (zi == zj) return fail("edges " + pair + " meet at equal depth");
      if (zi > zj) {
        out.pairs.emplace_back(i, j);
        out.param_over.push_back(s);
        out.param_under.push_back(t);
      } else {
        out.pairs.emplace_back(j, i);
        out.param_over.push_back(t);
        out.param_under.push_back(s);
      }
      out.points.push_back(lerp(a(i), b(i), s));
    }
  }
  out.report.checks_passed.emplace_back("no vertex on a non-incident edge");
  out.report.checks_passed.emplace_back("no collinear overlaps");
  out.report.checks_passed.emplace_back("all crossings transversal with distinct depths");

  std::vector<Point2> sorted = out.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return fail("triple point");
  out.report.checks_passed.emplace_back("no triple points");
  return out;
}

}  // namespace detail

inline GenericityReport check_generic(const PlanarCurve& c) { return detail::scan_curve(c).report; }

inline Diagram build_diagram(const PlanarCurve& c) {
  detail::CurveScan scan = detail::scan_curve(c);
  if (!scan.report.ok) throw NonGenericError("non-generic curve: " + scan.report.failure);

  const std::size_t m = c.vertices.size();
  auto dir = [&](std::size_t k) { return c.vertices[(k + 1) % m] - c.vertices[k]; };

  Diagram d;
  std::vector<detail::EdgeHit> hits;
  for (std::size_t x = 0; x < scan.pairs.size(); ++x) {
    auto [eo, eu] = scan.pairs[x];
    Crossing cr;
    cr.over = c.strand[eo];
    cr.under = c.strand[eu];
    cr.sign = sign(cross(dir(eo), dir(eu)));
    cr.point = scan.points[x];
    d.crossings.push_back(std::move(cr));
    hits.push_back({eo, scan.param_over[x], x, true});
    hits.push_back({eu, scan.param_under[x], x, false});
  }
  std::sort(hits.begin(), hits.end(), [](const detail::EdgeHit& l, const detail::EdgeHit& r) {
    if (l.edge != r.edge) return l.edge < r.edge;
    return l.param < r.param;
  });
  for (const auto& h : hits) d.gauss.push_back({h.crossing, h.over});

  // Arc k starts just after the k-th under-visit; positions before the first
  // under-visit belong to the arc that wraps around.
  const std::size_t g = d.gauss.size();
  d.arcs.assign(g, 0);
  std::size_t unders = 0;
  for (const auto& v : d.gauss) unders += v.over ? 0 : 1;
  if (unders > 0) {
    std::size_t current = unders - 1;
    std::size_t seen = 0;
    for (std::size_t p = 0; p < g; ++p) {
      d.arcs[p] = current;
      if (!d.gauss[p].over) current = seen++;
    }
  }
  return d;
}

}  // namespace stickbound
