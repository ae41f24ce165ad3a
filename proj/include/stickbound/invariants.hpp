#pragma once

// Knot-type checks: Alexander polynomial and determinant from the Alexander
// matrix of a diagram, plus diagram extraction from a stick knot by exact
// oblique projection. Matching invariants is a necessary condition for
// equivalence only.

#include "stickbound/diagram.hpp"
#include "stickbound/errors.hpp"
#include "stickbound/geom.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stickbound {

/// Dense integer polynomial, coeffs[k] multiplies t^k.
using Coeffs = std::vector<Integer>;

namespace poly {

inline void trim(Coeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, int sb = 1) {
  Coeffs r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sb * b[i];
  trim(r);
  return r;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

/// a / b when b divides a exactly in Z[t].
inline Coeffs exact_div(Coeffs a, const Coeffs& b) {
  if (b.empty()) throw std::domain_error("poly::exact_div by zero");
  trim(a);
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::domain_error("poly::exact_div: not divisible");
  Coeffs q(a.size() - b.size() + 1);
  const Integer& lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer num = a[k + b.size() - 1];
    if (num == 0) continue;
    if (!mpz_divisible_p(num.get_mpz_t(), lead.get_mpz_t()))
      throw std::domain_error("poly::exact_div: not divisible");
    q[k] = num / lead;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  trim(a);
  if (!a.empty()) throw std::domain_error("poly::exact_div: nonzero remainder");
  trim(q);
  return q;
}

inline Integer eval(const Coeffs& p, long t) {
  Integer acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

}  // namespace poly

/// Integer Laurent polynomial sum_k coeffs[k] t^(low + k).
struct LaurentPoly {
  long low = 0;
  Coeffs coeffs;

  /// Representative of the class modulo units +-t^k: lowest exponent 0 and
  /// positive lowest coefficient.
  LaurentPoly normalized() const {
    LaurentPoly out;
    std::size_t first = 0;
    while (first < coeffs.size() && coeffs[first] == 0) ++first;
    out.coeffs.assign(coeffs.begin() + static_cast<long>(first), coeffs.end());
    poly::trim(out.coeffs);
    if (!out.coeffs.empty() && out.coeffs.front() < 0)
      for (auto& c : out.coeffs) c = -c;
    return out;
  }

  LaurentPoly reversed() const {
    LaurentPoly out;
    out.coeffs.assign(coeffs.rbegin(), coeffs.rend());
    out.low = -(low + static_cast<long>(coeffs.size()) - 1);
    return out;
  }

  /// Value at t = 1 or t = -1 (the only points where a Laurent polynomial stays integral).
  Integer eval_unit(int t) const {
    if (t != 1 && t != -1) throw std::domain_error("LaurentPoly::eval_unit: t must be +-1");
    Integer v = poly::eval(coeffs, t);
    if (t == -1 && low % 2 != 0) v = -v;
    return v;
  }

  bool palindromic() const {
    LaurentPoly n = normalized();
    return std::equal(n.coeffs.begin(), n.coeffs.end(), n.coeffs.rbegin());
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low == b.low && a.coeffs == b.coeffs;
  }

  std::string str() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      const Integer& c = coeffs[k];
      if (c == 0) continue;
      long e = low + static_cast<long>(k);
      Integer mag = abs(c);
      if (first) {
        if (c < 0) out << '-';
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      if (mag != 1 || e == 0) out << mag.get_str();
      if (e != 0) {
        out << 't';
        if (e != 1) out << '^' << e;
      }
      first = false;
    }
    if (first) out << '0';
    return out.str();
  }
};

/// Same knot-polynomial class: equal up to units and t <-> 1/t.
inline bool equivalent_up_to_units(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly na = a.normalized(), nb = b.normalized();
  return na == nb || na == b.reversed().normalized();
}

/// Square Alexander matrix, one row per crossing and one column per arc.
/// Row for crossing with over-arc o, incoming under-arc a, outgoing under-arc b:
/// sign +1 -> (1-t) o + t a - b;  sign -1 -> (1-t) o - a + t b.
inline std::vector<std::vector<Coeffs>> alexander_matrix(const Diagram& d) {
  const std::size_t c = d.crossing_count();
  const std::size_t g = d.gauss.size();
  if (g != 2 * c || d.arcs.size() != g)
    throw std::invalid_argument("alexander: gauss code does not visit every crossing twice");
  std::vector<int> over_seen(c, 0), under_seen(c, 0);
  for (const auto& v : d.gauss) {
    if (v.crossing >= c) throw std::invalid_argument("alexander: bad crossing id in gauss code");
    ++(v.over ? over_seen : under_seen)[v.crossing];
  }
  for (std::size_t x = 0; x < c; ++x)
    if (over_seen[x] != 1 || under_seen[x] != 1)
      throw std::invalid_argument("alexander: multi-component or malformed gauss code");

  std::vector<std::size_t> over_arc(c), in_arc(c), out_arc(c);
  std::size_t ordinal = 0;
  for (std::size_t p = 0; p < g; ++p) {
    const auto& v = d.gauss[p];
    if (v.over) {
      over_arc[v.crossing] = d.arcs[p];
    } else {
      in_arc[v.crossing] = d.arcs[p];
      out_arc[v.crossing] = ordinal++;
    }
  }

  std::vector<std::vector<Coeffs>> m(c, std::vector<Coeffs>(c));
  auto bump = [](Coeffs& e, long c0, long c1) {
    e = poly::add(e, Coeffs{Integer(c0), Integer(c1)});
  };
  for (std::size_t x = 0; x < c; ++x) {
    auto& row = m[x];
    bump(row[over_arc[x]], 1, -1);
    if (d.crossings[x].sign > 0) {
      bump(row[in_arc[x]], 0, 1);
      bump(row[out_arc[x]], -1, 0);
    } else {
      bump(row[in_arc[x]], -1, 0);
      bump(row[out_arc[x]], 0, 1);
    }
  }
  return m;
}

/// Fraction-free (Bareiss) determinant over Z[t].
inline Coeffs bareiss_det(std::vector<std::vector<Coeffs>> m) {
  const std::size_t n = m.size();
  if (n == 0) return {Integer(1)};
  int flips = 0;
  Coeffs prev{Integer(1)};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // lowest-degree nonzero pivot keeps the intermediate entries small
    std::size_t piv = n;
    for (std::size_t r = k; r < n; ++r)
      if (!m[r][k].empty() && (piv == n || m[r][k].size() < m[piv][k].size())) piv = r;
    if (piv == n) return {};
    if (piv != k) {
      std::swap(m[piv], m[k]);
      ++flips;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Coeffs num = poly::add(poly::mul(m[i][j], m[k][k]), poly::mul(m[i][k], m[k][j]), -1);
        m[i][j] = poly::exact_div(std::move(num), prev);
      }
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  Coeffs det = m[n - 1][n - 1];
  if (flips % 2) for (auto& c : det) c = -c;
  return det;
}

/// Fraction-free (Bareiss) determinant over Z.
inline Integer bareiss_det(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int flips = 0;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      ++flips;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return flips % 2 ? Integer(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

namespace detail {

template <class T>
std::vector<std::vector<T>> drop_last_row_col(std::vector<std::vector<T>> m) {
  if (m.empty()) return m;
  m.pop_back();
  for (auto& row : m) row.pop_back();
  return m;
}

}  // namespace detail

/// Normalized Alexander polynomial, with the classical identities checked.
inline LaurentPoly alexander(const Diagram& d) {
  LaurentPoly out;
  if (d.crossing_count() == 0) {
    if (!d.gauss.empty()) throw std::invalid_argument("alexander: malformed gauss code");
    out.coeffs = {Integer(1)};
    return out;
  }
  out.coeffs = bareiss_det(detail::drop_last_row_col(alexander_matrix(d)));
  out = out.normalized();
  if (out.coeffs.empty()) throw VerificationError("alexander: vanishing determinant");
  Integer at_one = poly::eval(out.coeffs, 1);
  if (at_one != 1 && at_one != -1)
    throw VerificationError("alexander: Delta(1) = " + at_one.get_str() + ", expected +-1");
  if (!out.palindromic()) throw VerificationError("alexander: " + out.str() + " is not symmetric");
  if (mpz_even_p(Integer(poly::eval(out.coeffs, -1)).get_mpz_t()))
    throw VerificationError("alexander: Delta(-1) is even");
  return out;
}

/// |Delta(-1)| computed from the integer matrix at t = -1.
inline Integer determinant(const Diagram& d) {
  if (d.crossing_count() == 0) {
    if (!d.gauss.empty()) throw std::invalid_argument("determinant: malformed gauss code");
    return 1;
  }
  auto m = detail::drop_last_row_col(alexander_matrix(d));
  std::vector<std::vector<Integer>> num(m.size(), std::vector<Integer>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) num[i][j] = poly::eval(m[i][j], -1);
  Integer det = abs(bareiss_det(std::move(num)));
  return det;
}

struct ProjectedDiagram {
  Diagram diagram;
  Point3 direction;
  std::size_t attempt = 0;
  std::vector<std::string> checks;
};

inline constexpr std::size_t kProjectionAttempts = 65;

inline Point3 projection_direction(std::size_t m) {
  long mm = static_cast<long>(m);
  return {make_rational(1, 7 + mm), make_rational(1, 11 + 2 * mm), Rational(1)};
}

/// Oblique projection along `dir` (dir.z = 1) to the xy-plane. Depth is z.
inline PlanarCurve project_curve(std::span<const Point3> vertices, const Point3& dir) {
  PlanarCurve c;
  const std::size_t m = vertices.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Point3& p = vertices[k];
    c.vertices.push_back({Rational(p.x - p.z * dir.x), Rational(p.y - p.z * dir.y)});
    c.heights.emplace_back(p.z, vertices[(k + 1) % m].z);
    c.strand.push_back(k);
  }
  return c;
}

/// Diagram along candidate direction m, or the failed genericity check.
inline std::pair<std::optional<ProjectedDiagram>, std::string> project_along(
    std::span<const Point3> vertices, std::size_t m) {
  Point3 dir = projection_direction(m);
  PlanarCurve curve = project_curve(vertices, dir);
  GenericityReport rep = check_generic(curve);
  if (!rep.ok) return {std::nullopt, rep.failure};
  ProjectedDiagram pd{build_diagram(curve), dir, m, rep.checks_passed};
  return {std::move(pd), {}};
}

inline ProjectedDiagram project(std::span<const Point3> vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("project: need at least 3 vertices");
  std::string last;
  for (std::size_t m = 0; m < kProjectionAttempts; ++m) {
    auto [pd, why] = project_along(vertices, m);
    if (pd) return std::move(*pd);
    last = why;
  }
  throw VerificationError("project: no generic direction among candidates; last failure: " + last);
}

struct MatchReport {
  bool consistent = false;
  Integer det1, det2;
  LaurentPoly alex1, alex2;
};

/// Necessary condition for equivalence: equal determinants and Alexander polynomials.
inline MatchReport match(const Diagram& d1, const Diagram& d2) {
  MatchReport r;
  r.det1 = determinant(d1);
  r.det2 = determinant(d2);
  r.alex1 = alexander(d1);
  r.alex2 = alexander(d2);
  r.consistent = r.det1 == r.det2 && equivalent_up_to_units(r.alex1, r.alex2);
  return r;
}

}  // namespace stickbound
