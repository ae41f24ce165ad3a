#pragma once

// Stick knot construction from an arc presentation with n chords:
//
//   K1  2n sticks: chord i lifted to height i, joined by verticals at the
//       binding points.
//   K2  same combinatorics with heights re-chosen so that each type-II/III
//       chord spans an empty vertical triangle with the vertical below it.
//   ..  each such triangle (chords 2..n-1) is collapsed to its hypotenuse.
//   K3  the top chord and its two verticals are traded for a connector
//       between the collinear extensions of their neighbouring sticks.
//
// Every step is checked with exact predicates; a failed check throws
// VerificationError. When the top move cannot be certified it is skipped and
// the certificate says so.

#include "stickbound/arcpres.hpp"
#include "stickbound/errors.hpp"
#include "stickbound/geom.hpp"
#include "stickbound/invariants.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stickbound {

enum class EdgeRole { horizontal, vertical, hypotenuse, extension, connector };

inline const char* to_string(EdgeRole r) {
  switch (r) {
    case EdgeRole::horizontal: return "horizontal";
    case EdgeRole::vertical: return "vertical";
    case EdgeRole::hypotenuse: return "hypotenuse";
    case EdgeRole::extension: return "extension";
    case EdgeRole::connector: return "connector";
  }
  return "?";
}

/// Closed polygon; roles[k] describes the edge vertices[k] -> vertices[k+1].
struct StickKnot {
  std::vector<Point3> vertices;
  std::vector<EdgeRole> roles;

  std::size_t size() const { return vertices.size(); }
  Segment3 edge(std::size_t k) const { return {vertices[k], vertices[(k + 1) % size()]}; }
};

/// Number of maximal collinear runs of consecutive edges.
inline std::size_t stick_count(std::span<const Point3> v) {
  const std::size_t m = v.size();
  std::size_t corners = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const Point3& prev = v[(k + m - 1) % m];
    const Point3& next = v[(k + 1) % m];
    Point3 in = v[k] - prev, out = next - v[k];
    if (!is_zero(cross(in, out)) || dot(in, out) < 0) ++corners;
  }
  return corners;
}

inline std::size_t stick_count(const StickKnot& k) { return stick_count(k.vertices); }

// ---------------------------------------------------------------------------
// K1 / K2

/// Lifts chord c of `ap` to height z[c]; vertices follow the knot cycle.
inline StickKnot build_lifted(const ArcPresentation& ap, const Layout& lay,
                              const std::vector<Rational>& z) {
  StickKnot k;
  for (const auto& step : traversal(ap)) {
    k.vertices.push_back(lift(lay.points[step.from - 1], z[step.chord]));
    k.vertices.push_back(lift(lay.points[step.to - 1], z[step.chord]));
    k.roles.push_back(EdgeRole::horizontal);
    k.roles.push_back(EdgeRole::vertical);
  }
  return k;
}

inline StickKnot build_k1(const ArcPresentation& ap, const Layout& lay) {
  if (ap.n() < 2) throw std::invalid_argument("build_k1: need n >= 2");
  std::vector<Rational> z;
  for (std::size_t i = 0; i < ap.n(); ++i) z.emplace_back(static_cast<long>(i) + 1);
  return build_lifted(ap, lay, z);
}

inline StickKnot build_k1(const ArcPresentation& ap) { return build_k1(ap, layout(ap)); }

/// Chord k < i crossing chord i at fraction t measured from the apex.
struct CrossingConstraint {
  std::size_t chord;
  Rational t;
};

struct ChordHeight {
  ChordType type = ChordType::I;
  std::optional<std::size_t> anchor;  // lower chord sharing the apex (types II, III)
  int apex = 0;                       // binding-point label of the reducible triangle's vertical
  int far = 0;                        // the chord's other label
  std::vector<CrossingConstraint> constraints;
};

struct HeightAssignment {
  std::vector<Rational> z;
  std::vector<ChordHeight> chords;
};

/// Integer heights making every type-II/III triangle empty of lower chords.
inline HeightAssignment assign_heights(const ArcPresentation& ap, const Layout& lay) {
  if (ap.n() < 3) throw std::invalid_argument("assign_heights: need n >= 3");
  const Classification cls = classify(ap);
  const std::size_t n = ap.n();
  HeightAssignment h;
  h.z.assign(n, Rational(0));
  h.chords.resize(n);
  h.z[0] = 1;

  for (std::size_t i = 0; i < n; ++i) {
    ChordHeight& info = h.chords[i];
    info.type = cls.types[i];
    if (info.type == ChordType::I) {
      if (i > 0) h.z[i] = h.z[i - 1] + 1;
      continue;
    }
    auto [u, w] = cls.neighbors[i];
    std::size_t j = info.type == ChordType::II ? std::min(u, w) : std::max(u, w);
    info.anchor = j;
    const Chord& c = ap.chords[i];
    info.apex = ap.chords[j].has(c.a) ? c.a : c.b;
    info.far = c.other(info.apex);
    const Point2& P = lay.points[info.apex - 1];
    const Point2& Q = lay.points[info.far - 1];

    Rational z = h.z[i - 1] + 1;
    for (std::size_t k = 0; k < i; ++k) {
      if (!chords_cross(c, ap.chords[k])) continue;
      const Chord& d = ap.chords[k];
      auto x = proper_crossing(P, Q, lay.points[d.a - 1], lay.points[d.b - 1]);
      if (!x) throw NonGenericError("assign_heights: crossing chords without a proper crossing");
      info.constraints.push_back({k, x->s});
      if (h.z[k] > h.z[j]) {
        Rational bound = h.z[j] + (h.z[k] - h.z[j]) / x->s;
        Rational candidate(floor_of(bound) + 1);
        if (candidate > z) z = candidate;
      }
    }
    h.z[i] = i == 1 ? Rational(2) : z;
  }
  return h;
}

inline StickKnot build_k2(const ArcPresentation& ap, const Layout& lay, const HeightAssignment& h) {
  return build_lifted(ap, lay, h.z);
}

// ---------------------------------------------------------------------------
// Elementary triangle moves on a closed polygon

namespace detail {

inline std::size_t index_of(const std::vector<Point3>& v, const Point3& p) {
  auto it = std::find(v.begin(), v.end(), p);
  if (it == v.end()) throw std::logic_error("polygon vertex not found");
  return static_cast<std::size_t>(it - v.begin());
}

/// First edge (other than `skip`) meeting the closed triangle outside the
/// points in `keep` it is attached to; nullopt when the triangle is clean.
inline std::optional<std::size_t> first_obstruction(const std::vector<Point3>& v,
                                                    const Triangle3& tri,
                                                    std::span<const std::size_t> skip,
                                                    std::span<const Point3> keep) {
  const std::size_t m = v.size();
  for (std::size_t e = 0; e < m; ++e) {
    if (std::find(skip.begin(), skip.end(), e) != skip.end()) continue;
    Segment3 s{v[e], v[(e + 1) % m]};
    std::vector<Point3> ignore;
    for (const auto& p : keep)
      if (p == s.a || p == s.b) ignore.push_back(p);
    if (triangle_pierced(tri, s, ignore)) return e;
  }
  return std::nullopt;
}

/// Removes vertex p when the triangle (prev, p, next) is clean.
inline bool try_remove(std::vector<Point3>& v, const Point3& p) {
  const std::size_t m = v.size();
  if (m <= 3) return false;
  std::size_t b = index_of(v, p);
  std::size_t a = (b + m - 1) % m, c = (b + 1) % m;
  Triangle3 tri{v[a], v[b], v[c]};
  if (tri.degenerate()) return false;
  std::size_t skip[] = {a, b};
  Point3 keep[] = {v[a], v[c]};
  if (first_obstruction(v, tri, skip, keep)) return false;
  v.erase(v.begin() + static_cast<long>(b));
  return true;
}

/// Inserts y on the edge p -> q (either orientation) when triangle (p, y, q) is clean.
inline bool try_insert(std::vector<Point3>& v, const Point3& p, const Point3& q, const Point3& y) {
  const std::size_t m = v.size();
  std::size_t a = index_of(v, p), c = index_of(v, q);
  std::size_t e;
  if ((a + 1) % m == c) {
    e = a;
  } else if ((c + 1) % m == a) {
    e = c;
  } else {
    throw std::logic_error("try_insert: vertices are not adjacent");
  }
  Triangle3 tri{p, y, q};
  if (tri.degenerate()) return false;
  std::size_t skip[] = {e};
  Point3 keep[] = {p, q};
  if (first_obstruction(v, tri, skip, keep)) return false;
  v.insert(v.begin() + static_cast<long>(e + 1), y);
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Triangle reductions

struct ReductionStep {
  std::size_t chord;
  std::size_t anchor;
  int apex;
};

struct ReductionResult {
  StickKnot knot;
  std::vector<ReductionStep> trace;
};

/// Collapses the reducible triangle of every type-II/III chord 2..n-1
/// (1-based), lowest first.
inline ReductionResult triangle_reductions(const ArcPresentation& ap, const StickKnot& k2,
                                           const HeightAssignment& h, const Layout& lay) {
  ReductionResult out{k2, {}};
  auto& v = out.knot.vertices;
  auto& roles = out.knot.roles;
  const std::size_t n = ap.n();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const ChordHeight& info = h.chords[i];
    if (info.type == ChordType::I) continue;
    const std::size_t j = *info.anchor;
    const Point2& P = lay.points[info.apex - 1];
    const Point2& Q = lay.points[info.far - 1];
    Point3 A = lift(P, h.z[j]), B = lift(P, h.z[i]), C = lift(Q, h.z[i]);

    const std::size_t m = v.size();
    std::size_t b = detail::index_of(v, B);
    std::size_t before = (b + m - 1) % m, after = (b + 1) % m;
    bool shape = (v[before] == A && v[after] == C) || (v[before] == C && v[after] == A);
    if (!shape)
      throw VerificationError("triangle_reductions: chord " + std::to_string(i + 1) +
                              " is not attached to its anchor vertical");
    Triangle3 tri{A, B, C};
    std::size_t skip[] = {before, b};
    Point3 keep[] = {A, C};
    if (auto e = detail::first_obstruction(v, tri, skip, keep))
      throw VerificationError("triangle_reductions: triangle of chord " + std::to_string(i + 1) +
                              " is pierced by edge " + std::to_string(*e + 1));
    roles[before] = EdgeRole::hypotenuse;
    roles.erase(roles.begin() + static_cast<long>(b));
    v.erase(v.begin() + static_cast<long>(b));
    out.trace.push_back({i, j, info.apex});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Top reduction

inline constexpr long kDefaultMaxExtension = 1L << 16;

struct TopReductionStatus {
  bool applied = false;
  std::string reason;   // why it was skipped
  long extension = 0;   // L that worked
  std::string surface;  // spanning surface that certified it
};

struct TopReductionResult {
  StickKnot knot;
  TopReductionStatus status;
};

namespace detail {

struct TopFrame {
  Point3 s_i, j_i, v_i, v_j, j_j, s_j;
  Point3 u_i, u_j;  // extension directions, unit horizontal Chebyshev length
};

inline Point3 horizontal_unit(const Point3& d) {
  Rational m = std::max(abs(d.x), abs(d.y));
  if (m == 0) throw VerificationError("top_reduction: neighbouring stick is vertical");
  return Rational(1 / m) * d;
}

using MoveScript = bool (*)(std::vector<Point3>&, const TopFrame&, const Point3&, const Point3&,
                            const Point3&);

// Cone from an apex high above the disk centre; the new arc is swept in from
// the i side or from the j side.
inline bool cone_from_i(std::vector<Point3>& v, const TopFrame& f, const Point3& a,
                        const Point3& t_i, const Point3& t_j) {
  return try_insert(v, f.j_i, f.v_i, a) && try_remove(v, f.v_i) && try_remove(v, f.v_j) &&
         try_insert(v, a, f.j_j, t_j) && try_insert(v, a, t_j, t_i) && try_remove(v, a);
}

inline bool cone_from_j(std::vector<Point3>& v, const TopFrame& f, const Point3& a,
                        const Point3& t_i, const Point3& t_j) {
  return try_insert(v, f.j_i, f.v_i, a) && try_remove(v, f.v_i) && try_remove(v, f.v_j) &&
         try_insert(v, f.j_i, a, t_i) && try_insert(v, t_i, a, t_j) && try_remove(v, a);
}

// Box: translate each vertical out along its extension ray, then fold the
// top and front faces.
inline bool box(std::vector<Point3>& v, const TopFrame& f, const Point3&, const Point3& t_i,
                const Point3& t_j) {
  Point3 w_i = t_i + (f.v_i - f.j_i);
  Point3 w_j = t_j + (f.v_j - f.j_j);
  return try_insert(v, f.j_i, f.v_i, w_i) && try_insert(v, f.j_i, w_i, t_i) &&
         try_insert(v, f.v_j, f.j_j, w_j) && try_insert(v, w_j, f.j_j, t_j) &&
         try_remove(v, f.v_i) && try_remove(v, f.v_j) && try_remove(v, w_i) &&
         try_remove(v, w_j);
}

}  // namespace detail

/// Replaces e_i + vertical + top chord + vertical + e_j by extension,
/// connector, extension. `top` is the 0-based top chord.
inline TopReductionResult top_reduction(const StickKnot& k, const ArcPresentation& ap,
                                        const HeightAssignment& h, const Layout& lay,
                                        long max_extension = kDefaultMaxExtension) {
  TopReductionResult out{k, {}};
  const std::size_t top = ap.n() - 1;
  const Chord& c = ap.chords[top];
  Point3 v1 = lift(lay.points[c.a - 1], h.z[top]);
  Point3 v2 = lift(lay.points[c.b - 1], h.z[top]);

  // Rotate so the path reads s_i, j_i, v_i, v_j, j_j, s_j from index 0.
  std::vector<Point3> ring = k.vertices;
  const std::size_t m = ring.size();
  if (m < 5) {
    out.status.reason = "polygon too small";
    return out;
  }
  std::size_t a = detail::index_of(ring, v1);
  if (ring[(a + 1) % m] != v2) {
    std::reverse(ring.begin(), ring.end());
    a = detail::index_of(ring, v1);
    if (ring[(a + 1) % m] != v2) throw VerificationError("top_reduction: top chord not found");
  }
  std::rotate(ring.begin(), ring.begin() + static_cast<long>((a + m - 2) % m), ring.end());

  detail::TopFrame f{ring[0], ring[1], ring[2], ring[3], ring[4], ring[5 % m], {}, {}};
  if (f.j_i.x != f.v_i.x || f.j_i.y != f.v_i.y || f.j_j.x != f.v_j.x || f.j_j.y != f.v_j.y)
    throw VerificationError("top_reduction: top chord is not flanked by verticals");
  f.u_i = detail::horizontal_unit(f.j_i - f.s_i);
  f.u_j = detail::horizontal_unit(f.j_j - f.s_j);

  std::map<std::pair<Point3, Point3>, EdgeRole> old_roles;
  for (std::size_t e = 0; e < k.size(); ++e) {
    auto [p, q] = std::minmax(k.vertices[e], k.vertices[(e + 1) % k.size()]);
    old_roles[{p, q}] = k.roles[e];
  }

  const Rational z_top = h.z[top];
  const std::pair<const char*, detail::MoveScript> scripts[] = {
      {"cone-i", &detail::cone_from_i}, {"cone-j", &detail::cone_from_j}, {"box", &detail::box}};

  for (long L = 4; L <= max_extension; L *= 2) {
    Point3 t_i = f.j_i + Rational(L) * f.u_i;
    Point3 t_j = f.j_j + Rational(L) * f.u_j;
    Point3 apex{Rational(0), Rational(0), Rational(z_top * (1 + L))};
    for (const auto& [name, script] : scripts) {
      std::vector<Point3> v = ring;
      if (!script(v, f, apex, t_i, t_j)) continue;
      // j_i and j_j are now interior points of straight runs.
      v.erase(v.begin() + static_cast<long>(detail::index_of(v, f.j_i)));
      v.erase(v.begin() + static_cast<long>(detail::index_of(v, f.j_j)));
      if (v.size() < 3 || !polygon_embedded(v)) continue;

      StickKnot result;
      result.vertices = v;
      for (std::size_t e = 0; e < v.size(); ++e) {
        const Point3& p = v[e];
        const Point3& q = v[(e + 1) % v.size()];
        auto key = std::minmax(p, q);
        auto it = old_roles.find({key.first, key.second});
        if (it != old_roles.end()) {
          result.roles.push_back(it->second);
        } else if ((p == t_i && q == t_j) || (p == t_j && q == t_i)) {
          result.roles.push_back(EdgeRole::connector);
        } else {
          result.roles.push_back(EdgeRole::extension);
        }
      }
      out.knot = std::move(result);
      out.status = {true, {}, L, name};
      return out;
    }
  }
  out.status.reason = "no certified connector up to L=" + std::to_string(max_extension);
  return out;
}

// ---------------------------------------------------------------------------
// Full pipeline

struct BuildOptions {
  bool top_reduction = true;
  long max_extension = kDefaultMaxExtension;
};

struct Certificate {
  std::size_t n = 0;
  BetaCounts beta;  // of the normalized presentation
  std::size_t shift = 0;
  std::size_t layout_perturbations = 0;
  std::size_t sticks_k1 = 0, sticks_k2 = 0, sticks_reduced = 0, sticks_k3 = 0;
  std::vector<ReductionStep> reductions;
  TopReductionStatus top;
  Rational bound;  // 3(n-1)/2
  bool bound_satisfied = false;
  bool k1_embedded = false, k2_embedded = false, k3_embedded = false;
  // Consistency of knot type (necessary condition only): determinant and
  // Alexander polynomial of the input diagram vs the projected output.
  bool invariants_match = false;
  Integer determinant = 0;
  LaurentPoly alexander;
  std::size_t projection_attempt = 0;

  std::string top_reduction_label() const {
    return top.applied ? "applied" : "skipped:" + top.reason;
  }
};

struct BuildResult {
  StickKnot knot;
  Certificate cert;
  ArcPresentation normalized;
  HeightAssignment heights;
};

inline Rational theorem_bound(std::size_t n) {
  Rational b(3 * (static_cast<long>(n) - 1), 2);
  b.canonicalize();
  return b;
}

inline void require_embedded(const StickKnot& k, const char* stage) {
  EmbeddingVerdict ev = polygon_embedded(k.vertices);
  if (!ev) throw VerificationError(std::string(stage) + " is not embedded: " + ev.reason);
}

inline BuildResult build_full(const ArcPresentation& input, const BuildOptions& opt = {}) {
  if (input.n() < 3) throw std::invalid_argument("build_full: need n >= 3");
  require_valid(input, "build_full");

  BuildResult r;
  Certificate& cert = r.cert;
  cert.n = input.n();

  Normalized norm = normalize(input);
  r.normalized = norm.ap;
  cert.shift = norm.shift;
  cert.beta = norm.beta;
  const ArcPresentation& ap = norm.ap;
  const Layout lay = layout(ap);
  cert.layout_perturbations = lay.perturbations;

  StickKnot k1 = build_k1(ap, lay);
  require_embedded(k1, "K1");
  cert.k1_embedded = true;
  cert.sticks_k1 = stick_count(k1);

  r.heights = assign_heights(ap, lay);
  StickKnot k2 = build_k2(ap, lay, r.heights);
  require_embedded(k2, "K2");
  cert.k2_embedded = true;
  cert.sticks_k2 = stick_count(k2);

  ReductionResult red = triangle_reductions(ap, k2, r.heights, lay);
  require_embedded(red.knot, "reduced K2");
  cert.reductions = red.trace;
  cert.sticks_reduced = stick_count(red.knot);

  if (opt.top_reduction) {
    TopReductionResult top = top_reduction(red.knot, ap, r.heights, lay, opt.max_extension);
    r.knot = std::move(top.knot);
    cert.top = top.status;
  } else {
    r.knot = std::move(red.knot);
    cert.top.reason = "disabled";
  }
  require_embedded(r.knot, "K3");
  cert.k3_embedded = true;
  cert.sticks_k3 = stick_count(r.knot);

  cert.bound = theorem_bound(cert.n);
  cert.bound_satisfied = Rational(static_cast<long>(cert.sticks_k3)) <= cert.bound;

  ProjectedDiagram pd = project(r.knot.vertices);
  cert.projection_attempt = pd.attempt;
  MatchReport mr = match(diagram(input), pd.diagram);
  cert.invariants_match = mr.consistent;
  cert.determinant = mr.det2;
  cert.alexander = mr.alex2;
  return r;
}

}  // namespace stickbound
