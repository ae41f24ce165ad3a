#include "stickbound/arcpres.hpp"
#include "stickbound/construct.hpp"
#include "stickbound/invariants.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace stickbound;

namespace {

const ArcPresentation kAP3{{{1, 2}, {2, 3}, {3, 1}}};
const ArcPresentation kAP5{{{1, 3}, {2, 4}, {3, 5}, {1, 4}, {2, 5}}};
const ArcPresentation kFigureEight{{{5, 2}, {4, 6}, {3, 5}, {1, 4}, {2, 6}, {1, 3}}};

LaurentPoly lp(std::vector<long> c, long low = 0) {
  LaurentPoly p;
  p.low = low;
  for (long x : c) p.coeffs.emplace_back(x);
  return p;
}

// Permutation expansion, independent of elimination.
template <class T, class Mul, class Add>
T leibniz(const std::vector<std::vector<T>>& m, T one, Mul mul, Add add) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total{};
  bool first = true;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    T term = one;
    for (std::size_t i = 0; i < n; ++i) term = mul(term, m[i][perm[i]]);
    total = first ? add(T{}, term, inv % 2 ? -1 : 1) : add(total, term, inv % 2 ? -1 : 1);
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Coeffs leibniz_poly(const std::vector<std::vector<Coeffs>>& m) {
  return leibniz<Coeffs>(
      m, Coeffs{Integer(1)}, [](const Coeffs& a, const Coeffs& b) { return poly::mul(a, b); },
      [](const Coeffs& a, const Coeffs& b, int s) { return poly::add(a, b, s); });
}

Integer leibniz_int(const std::vector<std::vector<Integer>>& m) {
  return leibniz<Integer>(
      m, Integer(1), [](const Integer& a, const Integer& b) { return Integer(a * b); },
      [](const Integer& a, const Integer& b, int s) { return s > 0 ? Integer(a + b) : Integer(a - b); });
}

}  // namespace

TEST(Poly, Arithmetic) {
  Coeffs a{Integer(1), Integer(-1)};  // 1 - t
  Coeffs b{Integer(1), Integer(1)};   // 1 + t
  EXPECT_EQ(poly::mul(a, b), (Coeffs{Integer(1), Integer(0), Integer(-1)}));
  EXPECT_EQ(poly::add(a, a, -1), Coeffs{});
  EXPECT_EQ(poly::exact_div(poly::mul(a, b), b), a);
  EXPECT_EQ(poly::eval(b, -1), 0);
}

TEST(LaurentPoly, NormalizationAndPrinting) {
  LaurentPoly p = lp({-1, 1, -1}, -1);  // -t^-1 + 1 - t
  EXPECT_EQ(p.normalized(), lp({1, -1, 1}));
  EXPECT_EQ(p.normalized().str(), "t^2 - t + 1");
  EXPECT_EQ(lp({1}).str(), "1");
  EXPECT_EQ(lp({1, -3, 1}).str(), "t^2 - 3t + 1");
  EXPECT_TRUE(p.palindromic());
  EXPECT_FALSE(lp({1, 2}).palindromic());
  EXPECT_EQ(p.eval_unit(1), -1);
  EXPECT_EQ(p.eval_unit(-1), 3);
  EXPECT_THROW(p.eval_unit(2), std::domain_error);
  EXPECT_TRUE(equivalent_up_to_units(lp({1, 2}), lp({2, 1}, 5)));
  EXPECT_FALSE(equivalent_up_to_units(lp({1, 2}), lp({1, 3})));
}

TEST(Bareiss, MatchesLeibnizOnRandomIntegerMatrices) {
  std::mt19937 gen(3);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 1 + it % 6;
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (auto& row : m)
      for (auto& x : row) x = it % 5 == 0 && c(gen) > 0 ? 0 : c(gen);
    EXPECT_EQ(bareiss_det(m), leibniz_int(m));
  }
}

TEST(Bareiss, MatchesLeibnizOnRandomPolynomialMatrices) {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> c(-3, 3), deg(0, 2);
  for (int it = 0; it < 120; ++it) {
    std::size_t n = 1 + it % 5;
    std::vector<std::vector<Coeffs>> m(n, std::vector<Coeffs>(n));
    for (auto& row : m)
      for (auto& x : row) {
        int d = deg(gen);
        for (int k = 0; k <= d; ++k) x.emplace_back(c(gen));
        poly::trim(x);
      }
    EXPECT_EQ(bareiss_det(m), leibniz_poly(m));
  }
}

TEST(Bareiss, AlexanderMatricesOfSmallDiagrams) {
  for (const auto& ap : {kAP5, kFigureEight}) {
    auto m = detail::drop_last_row_col(alexander_matrix(diagram(ap)));
    EXPECT_EQ(bareiss_det(m), leibniz_poly(m));
  }
}

TEST(Alexander, KnownKnots) {
  EXPECT_EQ(alexander(diagram(kAP3)), lp({1}));
  EXPECT_EQ(alexander(diagram(kAP5)), lp({1, -1, 1}));
  EXPECT_EQ(alexander(diagram(kFigureEight)), lp({1, -3, 1}));
  EXPECT_EQ(determinant(diagram(kAP3)), 1);
  EXPECT_EQ(determinant(diagram(kAP5)), 3);
  EXPECT_EQ(determinant(diagram(kFigureEight)), 5);
}

TEST(Alexander, TrefoilMatrixByHand) {
  // Standard 3-crossing trefoil: each row (1-t) on the over-arc, t and -1 on
  // the under-arcs. Deleting a row and column leaves 1 - t + t^2.
  std::vector<std::vector<Coeffs>> m = {
      {Coeffs{Integer(1), Integer(-1)}, Coeffs{Integer(0), Integer(1)}},
      {Coeffs{Integer(-1)}, Coeffs{Integer(1), Integer(-1)}}};
  EXPECT_EQ(bareiss_det(m), (Coeffs{Integer(1), Integer(-1), Integer(1)}));
}

TEST(Alexander, MirrorImageHasSamePolynomial) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    ArcPresentation ap = random_presentation(5 + s % 6, s);
    ArcPresentation mirror = ap;
    std::reverse(mirror.chords.begin(), mirror.chords.end());
    EXPECT_TRUE(match(diagram(ap), diagram(mirror)).consistent);
  }
}

TEST(Alexander, RejectsMalformedGaussCode) {
  Diagram d;
  d.crossings.push_back({0, 1, 1, Point2{0, 0}});
  d.gauss = {{0, true}, {0, true}};
  d.arcs = {0, 0};
  EXPECT_THROW(alexander(d), std::invalid_argument);
  Diagram empty_but_visits;
  empty_but_visits.gauss = {{0, true}};
  EXPECT_THROW(determinant(empty_but_visits), std::invalid_argument);
}

TEST(Alexander, SelfChecksOnRandomDiagrams) {
  for (std::uint64_t s = 0; s < 120; ++s) {
    Diagram d = diagram(random_presentation(3 + s % 10, s));
    LaurentPoly a = alexander(d);
    Integer at1 = a.eval_unit(1);
    EXPECT_TRUE(at1 == 1 || at1 == -1);
    EXPECT_TRUE(a.palindromic());
    Integer det = determinant(d);
    EXPECT_EQ(det, abs(a.eval_unit(-1)));
    EXPECT_TRUE(mpz_odd_p(det.get_mpz_t()));
  }
}

TEST(Match, Examples) {
  EXPECT_FALSE(match(diagram(kAP3), diagram(kAP5)).consistent);
  MatchReport self = match(diagram(kAP5), diagram(kAP5));
  EXPECT_TRUE(self.consistent);
  EXPECT_EQ(self.det1, 3);
  BuildResult r = build_full(kAP5);
  EXPECT_TRUE(match(diagram(kAP5), project(r.knot.vertices).diagram).consistent);
}

TEST(Project, PlanarTriangleHasNoCrossings) {
  std::vector<Point3> tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  ProjectedDiagram pd = project(tri);
  EXPECT_EQ(pd.diagram.crossing_count(), 0u);
  EXPECT_EQ(pd.attempt, 0u);
  EXPECT_FALSE(pd.checks.empty());
  EXPECT_EQ(determinant(pd.diagram), 1);
}

TEST(Project, SkipsNonGenericDirections) {
  // The first edge is parallel to the first candidate direction (1/7, 1/11, 1).
  std::vector<Point3> v{{0, 0, 0}, {make_rational(1, 7), make_rational(1, 11), 1}, {5, 0, 0}};
  auto [pd, why] = project_along(v, 0);
  EXPECT_FALSE(pd.has_value());
  EXPECT_FALSE(why.empty());
  ProjectedDiagram ok = project(v);
  EXPECT_EQ(ok.attempt, 1u);
  EXPECT_EQ(ok.direction, projection_direction(1));
}

TEST(Project, K1OfTrefoil) {
  ProjectedDiagram pd = project(build_k1(kAP5).vertices);
  EXPECT_GE(pd.diagram.crossing_count(), 5u);
  EXPECT_EQ(determinant(pd.diagram), 3);
}

TEST(Project, Deterministic) {
  auto v = build_full(kFigureEight).knot.vertices;
  ProjectedDiagram a = project(v), b = project(v);
  EXPECT_EQ(a.attempt, b.attempt);
  EXPECT_EQ(a.diagram.gauss, b.diagram.gauss);
  EXPECT_EQ(a.diagram.arcs, b.diagram.arcs);
}

TEST(Project, StableAcrossDirections) {
  for (std::uint64_t s = 0; s < 25; ++s) {
    ArcPresentation ap = random_presentation(5 + s % 4, s);
    auto v = build_full(ap).knot.vertices;
    Diagram ref = diagram(ap);
    int generic = 0;
    for (std::size_t m = 0; m < 6; ++m) {
      auto [pd, why] = project_along(v, m);
      if (!pd) continue;
      ++generic;
      EXPECT_TRUE(match(ref, pd->diagram).consistent) << "seed " << s << " direction " << m;
    }
    EXPECT_GE(generic, 2);
  }
}

TEST(Projection, DirectionsAreCanonical) {
  for (std::size_t m = 0; m < kProjectionAttempts; ++m) {
    Point3 d = projection_direction(m);
    EXPECT_EQ(d.x, make_rational(1, 7 + static_cast<long>(m)));
    EXPECT_EQ(d.y, make_rational(1, 11 + 2 * static_cast<long>(m)));
    EXPECT_EQ(d.z, 1);
  }
}
