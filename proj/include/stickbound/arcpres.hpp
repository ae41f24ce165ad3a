#pragma once

// Arc presentations: n chords in the unit disk whose endpoints ("binding
// points", labelled 1..n in circular order) are each shared by exactly two
// chords. Chord index doubles as height: chord 0 lies under everything.
//
// Chord indices are 0-based positions in `chords`; binding-point labels are
// 1-based, matching the .arc text format.

#include "stickbound/diagram.hpp"
#include "stickbound/geom.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stickbound {

struct Chord {
  int a = 0, b = 0;

  bool has(int label) const { return a == label || b == label; }
  int other(int label) const { return label == a ? b : a; }

  friend bool operator==(const Chord&, const Chord&) = default;
};

struct ArcPresentation {
  std::vector<Chord> chords;

  std::size_t n() const { return chords.size(); }

  friend bool operator==(const ArcPresentation&, const ArcPresentation&) = default;
};

struct Validation {
  std::vector<std::string> errors;

  bool ok() const { return errors.empty(); }
  explicit operator bool() const { return ok(); }
};

inline Validation validate(const ArcPresentation& ap) {
  Validation v;
  const int n = static_cast<int>(ap.n());
  if (n == 0) {
    v.errors.emplace_back("presentation has no chords");
    return v;
  }
  std::vector<int> uses(n + 1, 0);
  bool labels_ok = true;
  for (int i = 0; i < n; ++i) {
    const Chord& c = ap.chords[i];
    std::string tag = "chord " + std::to_string(i + 1);
    bool in_range = true;
    for (int l : {c.a, c.b}) {
      if (l < 1 || l > n) {
        v.errors.push_back(tag + ": label " + std::to_string(l) + " out of range 1.." +
                           std::to_string(n));
        in_range = false;
        labels_ok = false;
      }
    }
    if (c.a == c.b) {
      v.errors.push_back(tag + " is degenerate {" + std::to_string(c.a) + "," +
                         std::to_string(c.b) + "}");
      labels_ok = false;
    }
    if (!in_range) continue;
    ++uses[c.a];
    if (c.b != c.a) ++uses[c.b];
  }
  for (int l = 1; l <= n; ++l) {
    if (uses[l] != 2) {
      v.errors.push_back("label " + std::to_string(l) + " used by " + std::to_string(uses[l]) +
                         " chord(s), expected 2");
      labels_ok = false;
    }
  }
  if (!labels_ok) return v;

  // Every chord now has degree two in the adjacency graph; one cycle iff connected.
  std::vector<std::array<int, 2>> owners(n + 1, {-1, -1});
  for (int i = 0; i < n; ++i)
    for (int l : {ap.chords[i].a, ap.chords[i].b}) owners[l][owners[l][0] < 0 ? 0 : 1] = i;
  std::vector<bool> seen(n, false);
  int chord = 0, at = ap.chords[0].b, count = 0;
  while (!seen[chord]) {
    seen[chord] = true;
    ++count;
    int next = owners[at][0] == chord ? owners[at][1] : owners[at][0];
    at = ap.chords[next].other(at);
    chord = next;
  }
  if (count != n)
    v.errors.push_back("chords form more than one cycle (component through chord 1 has " +
                       std::to_string(count) + " of " + std::to_string(n) + " chords)");
  return v;
}

inline void require_valid(const ArcPresentation& ap, const char* where) {
  Validation v = validate(ap);
  if (!v.ok()) throw std::invalid_argument(std::string(where) + ": " + v.errors.front());
}

/// The two chords meeting at each label (index 0 unused).
inline std::vector<std::array<std::size_t, 2>> label_owners(const ArcPresentation& ap) {
  std::vector<std::array<std::size_t, 2>> owners(ap.n() + 1);
  std::vector<int> fill(ap.n() + 1, 0);
  for (std::size_t i = 0; i < ap.n(); ++i)
    for (int l : {ap.chords[i].a, ap.chords[i].b}) owners[l][fill[l]++] = i;
  return owners;
}

inline std::size_t neighbor_at(const std::vector<std::array<std::size_t, 2>>& owners,
                               std::size_t chord, int label) {
  return owners[label][0] == chord ? owners[label][1] : owners[label][0];
}

/// One oriented chord of the knot cycle.
struct TraversalStep {
  std::size_t chord;
  int from, to;
};

/// Walks the knot starting along chord 0 from its first label to its second.
inline std::vector<TraversalStep> traversal(const ArcPresentation& ap) {
  require_valid(ap, "traversal");
  auto owners = label_owners(ap);
  std::vector<TraversalStep> steps;
  std::size_t chord = 0;
  int from = ap.chords[0].a;
  do {
    int to = ap.chords[chord].other(from);
    steps.push_back({chord, from, to});
    chord = neighbor_at(owners, chord, to);
    from = to;
  } while (steps.size() < ap.n());
  return steps;
}

/// Interleaving test for chords on a circle with labels in cyclic order.
inline bool chords_cross(const Chord& c, const Chord& d) {
  if (c.has(d.a) || c.has(d.b)) return false;
  int lo = std::min(c.a, c.b), hi = std::max(c.a, c.b);
  bool a_in = d.a > lo && d.a < hi;
  bool b_in = d.b > lo && d.b < hi;
  return a_in != b_in;
}

inline std::vector<std::pair<std::size_t, std::size_t>> crossing_pairs(const ArcPresentation& ap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < ap.n(); ++i)
    for (std::size_t j = i + 1; j < ap.n(); ++j)
      if (chords_cross(ap.chords[i], ap.chords[j])) out.emplace_back(i, j);
  return out;
}

enum class ChordType { I, II, III };

inline const char* to_string(ChordType t) {
  switch (t) {
    case ChordType::I: return "I";
    case ChordType::II: return "II";
    case ChordType::III: return "III";
  }
  return "?";
}

struct BetaCounts {
  std::size_t beta1 = 0, beta2 = 0, beta3 = 0;

  friend bool operator==(const BetaCounts&, const BetaCounts&) = default;
};

struct Classification {
  std::vector<ChordType> types;
  BetaCounts beta;
  // Neighbouring chords through labels a and b of each chord.
  std::vector<std::array<std::size_t, 2>> neighbors;
};

inline Classification classify(const ArcPresentation& ap) {
  if (ap.n() < 3) throw std::invalid_argument("classify: need n >= 3");
  require_valid(ap, "classify");
  auto owners = label_owners(ap);
  Classification c;
  for (std::size_t i = 0; i < ap.n(); ++i) {
    std::size_t u = neighbor_at(owners, i, ap.chords[i].a);
    std::size_t w = neighbor_at(owners, i, ap.chords[i].b);
    c.neighbors.push_back({u, w});
    ChordType t = (u > i && w > i) ? ChordType::I : (u < i && w < i) ? ChordType::III : ChordType::II;
    c.types.push_back(t);
    switch (t) {
      case ChordType::I: ++c.beta.beta1; break;
      case ChordType::II: ++c.beta.beta2; break;
      case ChordType::III: ++c.beta.beta3; break;
    }
  }
  return c;
}

/// Rotates heights: old chord (k mod n) becomes chord 0. Labels are untouched.
inline ArcPresentation cyclic_shift(const ArcPresentation& ap, long k) {
  const long n = static_cast<long>(ap.n());
  ArcPresentation out;
  if (n == 0) return out;
  long r = ((k % n) + n) % n;
  out.chords.reserve(ap.n());
  for (long i = 0; i < n; ++i) out.chords.push_back(ap.chords[(i + r) % n]);
  return out;
}

struct Normalized {
  ArcPresentation ap;
  std::size_t shift = 0;
  BetaCounts beta;
};

/// Cyclic shift with the fewest type-I chords (smallest shift on ties).
inline Normalized normalize(const ArcPresentation& ap) {
  Normalized best;
  bool have = false;
  for (std::size_t k = 0; k < ap.n(); ++k) {
    ArcPresentation s = cyclic_shift(ap, static_cast<long>(k));
    BetaCounts b = classify(s).beta;
    if (!have || b.beta1 < best.beta.beta1) {
      best = {std::move(s), k, b};
      have = true;
    }
  }
  return best;
}

/// Merges the top chord with a type-II chord just below it, dropping their
/// shared binding point. Empty when the move does not apply.
inline std::optional<ArcPresentation> destabilize_top(const ArcPresentation& ap) {
  const std::size_t n = ap.n();
  if (n < 3 || !validate(ap).ok()) return std::nullopt;
  Classification c = classify(ap);
  if (c.types[n - 2] != ChordType::II) return std::nullopt;
  const Chord& low = ap.chords[n - 2];
  const Chord& top = ap.chords[n - 1];
  int s = top.has(low.a) ? low.a : low.b;
  if (!top.has(s)) return std::nullopt;
  int p = low.other(s), q = top.other(s);
  if (p == q) return std::nullopt;
  auto relabel = [s](int l) { return l > s ? l - 1 : l; };
  ArcPresentation out;
  for (std::size_t i = 0; i + 2 < n; ++i)
    out.chords.push_back({relabel(ap.chords[i].a), relabel(ap.chords[i].b)});
  out.chords.push_back({relabel(p), relabel(q)});
  return out;
}

/// Binding points for a presentation, nudged until no three chords are concurrent.
struct Layout {
  std::vector<Point2> points;  // points[label - 1]
  std::size_t perturbations = 0;
};

inline bool chords_generic(const ArcPresentation& ap, const std::vector<Point2>& pts) {
  std::vector<Point2> hits;
  for (auto [i, j] : crossing_pairs(ap)) {
    const Chord& c = ap.chords[i];
    const Chord& d = ap.chords[j];
    auto x = proper_crossing(pts[c.a - 1], pts[c.b - 1], pts[d.a - 1], pts[d.b - 1]);
    if (!x) return false;
    hits.push_back(x->point);
  }
  std::sort(hits.begin(), hits.end());
  return std::adjacent_find(hits.begin(), hits.end()) == hits.end();
}

inline constexpr std::size_t kMaxLayoutRetries = 64;

inline Layout layout(const ArcPresentation& ap) {
  std::vector<Rational> t = binding_parameters(ap.n());
  for (std::size_t m = 0; m <= kMaxLayoutRetries; ++m) {
    std::vector<Point2> pts;
    pts.reserve(t.size());
    for (const auto& tk : t) pts.push_back(circle_point(tk));
    if (chords_generic(ap, pts)) return {std::move(pts), m};
    // A common shift of every t_k is a projective map of the circle and keeps
    // concurrent chords concurrent, so the nudge grows with k.
    for (std::size_t k = 0; k < t.size(); ++k) {
      long kk = static_cast<long>(k + 1);
      t[k] += make_rational(kk * kk, static_cast<long>(100 + m));
    }
  }
  throw NonGenericError("layout: could not remove concurrent chords");
}

inline Diagram diagram(const ArcPresentation& ap, const Layout& lay) {
  require_valid(ap, "diagram");
  if (ap.n() == 2) return {};  // doubled chord: planar unknot, nothing crosses
  PlanarCurve curve;
  for (const auto& step : traversal(ap)) {
    curve.vertices.push_back(lay.points[step.from - 1]);
    Rational h(static_cast<long>(step.chord) + 1);
    curve.heights.emplace_back(h, h);
    curve.strand.push_back(step.chord);
  }
  return build_diagram(curve);
}

inline Diagram diagram(const ArcPresentation& ap) { return diagram(ap, layout(ap)); }

namespace detail {

// Uniform draw in [0, bound) from the raw engine; the standard distributions
// are not reproducible across library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = gen();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace detail

/// Rejection sampler: random pairing of the 2n endpoint slots, kept when it
/// forms a single knot cycle.
inline ArcPresentation random_presentation(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_presentation: need n >= 2");
  std::mt19937_64 gen(seed);
  std::vector<int> slots(2 * n);
  for (;;) {
    for (std::size_t i = 0; i < 2 * n; ++i) slots[i] = static_cast<int>(i / 2 + 1);
    for (std::size_t i = 2 * n - 1; i > 0; --i)
      std::swap(slots[i], slots[detail::uniform_below(gen, i + 1)]);
    ArcPresentation ap;
    for (std::size_t c = 0; c < n; ++c) ap.chords.push_back({slots[2 * c], slots[2 * c + 1]});
    if (validate(ap).ok()) return ap;
  }
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + ", line " + std::to_string(line)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the .arc format: '#' comment lines, a line with n, then n "a b" lines.
inline ArcPresentation parse_arc(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::size_t lineno = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    std::string line(raw);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    lines.emplace_back(lineno, std::move(tokens));
  }

  auto to_int = [](const std::string& tok, std::size_t line) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char ch) {
          return std::isdigit(ch) || ch == '-' || ch == '+';
        }))
      throw ParseError("malformed integer '" + tok + "'", line);
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw ParseError("malformed integer '" + tok + "'", line);
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("malformed integer '" + tok + "'", line);
    }
  };

  if (lines.empty()) throw ParseError("missing chord count", lineno + 1);
  const auto& [head_line, head] = lines.front();
  if (head.size() != 1) throw ParseError("expected a single chord count", head_line);
  long n = to_int(head[0], head_line);
  if (n < 1) throw ParseError("chord count must be positive", head_line);

  ArcPresentation ap;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [ln, toks] = lines[k];
    if (static_cast<long>(ap.n()) == n)
      throw ParseError("unexpected data after " + std::to_string(n) + " chords", ln);
    if (toks.size() != 2) throw ParseError("expected two labels 'a b'", ln);
    long a = to_int(toks[0], ln), b = to_int(toks[1], ln);
    for (long l : {a, b})
      if (l < 1 || l > n)
        throw ParseError("label " + std::to_string(l) + " out of range 1.." + std::to_string(n), ln);
    ap.chords.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  if (static_cast<long>(ap.n()) != n) {
    throw ParseError("expected " + std::to_string(n) + " chords, got " + std::to_string(ap.n()),
                     lineno + 1);
  }
  return ap;
}

inline std::string serialize_arc(const ArcPresentation& ap) {
  std::ostringstream out;
  out << ap.n() << '\n';
  for (const auto& c : ap.chords) out << c.a << ' ' << c.b << '\n';
  return out.str();
}

}  // namespace stickbound
