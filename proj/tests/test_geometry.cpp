#include <doctest.h>

#include <random>

#include "slopelab/geometry.hpp"
#include "test_support.hpp"

using namespace slopelab;
using slopelab::testsupport::frac;
using slopelab::testsupport::roof_green;
using slopelab::testsupport::unit_interval;
using slopelab::testsupport::unit_simplex;

namespace {

QVec qv(int x) { return {Rational(x)}; }
QVec qv(int x, int y) { return {Rational(x), Rational(y)}; }
QVec qv(const Rational& x, const Rational& y) { return {x, y}; }

// Oracle for 1D sup-convolution at a query point: the optimum splits at a
// kink of either factor, so the candidate set is finite and exact.
Rational oracle_convolve_1d(const ConcavePLFunction& g1, const ConcavePLFunction& g2,
                            const Rational& m) {
  std::vector<Rational> candidates;
  for (const QVec& v : g1.subdivision_vertices()) candidates.push_back(v[0]);
  for (const QVec& v : g2.subdivision_vertices()) candidates.push_back(m - v[0]);
  bool have = false;
  Rational best;
  for (const Rational& x1 : candidates) {
    const Rational x2 = m - x1;
    if (!g1.domain().contains({x1}) || !g2.domain().contains({x2})) continue;
    const Rational val = g1.value({x1}) + g2.value({x2});
    if (!have || val > best) {
      best = val;
      have = true;
    }
  }
  REQUIRE(have);
  return best;
}

// Oracle for 2D sup-convolution: per piece pair, maximize the affine
// objective over the clipped feasible polygon (vertex enumeration).
Rational oracle_convolve_2d(const ConcavePLFunction& g1, const ConcavePLFunction& g2,
                            const QVec& m) {
  bool have = false;
  Rational best;
  // feasible x1: x1 in P1 and m - x1 in P2
  std::vector<QVec> feasible = g1.domain().vertices();
  for (const auto& f : g2.domain().facets()) {
    // f.normal . (m - x1) <= f.offset  <=>  -f.normal . x1 <= f.offset - f.normal . m
    QVec neg = {-f.normal[0], -f.normal[1]};
    const Rational rhs = f.offset - (f.normal[0] * m[0] + f.normal[1] * m[1]);
    feasible = clip_polygon(feasible, neg, rhs);
  }
  for (const QVec& x1 : feasible) {
    const QVec x2 = {m[0] - x1[0], m[1] - x1[1]};
    const Rational val = g1.value(x1) + g2.value(x2);
    if (!have || val > best) {
      best = val;
      have = true;
    }
  }
  // the maximum of a PL-concave objective over the feasible polygon is
  // attained at a vertex of the activity refinement; sample those too
  for (const QVec& k1 : g1.subdivision_vertices()) {
    const QVec x2 = {m[0] - k1[0], m[1] - k1[1]};
    if (!g2.domain().contains(x2)) continue;
    const Rational val = g1.value(k1) + g2.value(x2);
    if (!have || val > best) {
      best = val;
      have = true;
    }
  }
  for (const QVec& k2 : g2.subdivision_vertices()) {
    const QVec x1 = {m[0] - k2[0], m[1] - k2[1]};
    if (!g1.domain().contains(x1)) continue;
    const Rational val = g1.value(x1) + g2.value(k2);
    if (!have || val > best) {
      best = val;
      have = true;
    }
  }
  REQUIRE(have);
  return best;
}

}  // namespace

TEST_CASE("convex hull 2d basics") {
  auto hull = convex_hull_2d({qv(0, 0), qv(2, 0), qv(2, 2), qv(0, 2), qv(1, 1), qv(2, 1)});
  REQUIRE(hull.size() == 4);
  CHECK(hull[0] == qv(0, 0));  // lexicographically smallest first
  CHECK(polygon_double_area(hull) == 8);

  SUBCASE("collinear points collapse") {
    auto segment = convex_hull_2d({qv(0, 0), qv(1, 1), qv(2, 2)});
    CHECK(segment.size() == 2);
  }
  SUBCASE("point in polygon") {
    CHECK(point_in_convex_polygon(hull, qv(1, 1)));
    CHECK(point_in_convex_polygon(hull, qv(0, 0)));
    CHECK_FALSE(point_in_convex_polygon(hull, qv(3, 1)));
  }
}

TEST_CASE("polytope construction and canonical form") {
  const LatticePolytope p = unit_simplex();
  CHECK(p.vertices().size() == 3);
  CHECK(p.volume() == Rational(1, 2));
  CHECK(p.contains(qv(Rational(1, 3), Rational(1, 3))));
  CHECK_FALSE(p.contains(qv(1, 1)));

  CHECK_THROWS_AS(LatticePolytope(2, {qv(0, 0), qv(1, 1)}), input_error);  // segment
  const LatticePolytope point(2, {qv(3, 4)});
  CHECK(point.is_point());
  CHECK(point.contains(qv(3, 4)));
  CHECK_FALSE(point.contains(qv(3, 5)));
  CHECK(point.volume() == 0);
}

TEST_CASE("lattice point enumeration") {
  SUBCASE("interval multiples") {
    const auto pts = unit_interval().lattice_points(4);
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == ZPoint{0});
    CHECK(pts.back() == ZPoint{4});
  }
  SUBCASE("simplex multiples count (n+1)(n+2)/2") {
    CHECK(unit_simplex().lattice_points(2).size() == 6);
    CHECK(unit_simplex().lattice_points(5).size() == 21);
  }
  SUBCASE("point polytope") {
    const LatticePolytope p(1, {qv(2)});
    const auto pts = p.lattice_points(3);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == ZPoint{6});
  }
  SUBCASE("zeroth multiple is the origin") {
    CHECK(unit_simplex().lattice_points(0) == std::vector<ZPoint>{{0, 0}});
  }
  SUBCASE("rational vertices respect facets") {
    const LatticePolytope p(1, {{Rational(1, 3)}, {Rational(3, 2)}});
    const auto pts = p.lattice_points(2);  // [2/3, 3]
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == ZPoint{1});
    CHECK(pts[2] == ZPoint{3});
  }
}

TEST_CASE("minkowski sums") {
  const LatticePolytope sum = minkowski_sum(unit_interval(), LatticePolytope(1, {qv(0), qv(2)}));
  CHECK(sum.vertices() == std::vector<QVec>{qv(0), qv(3)});
  const LatticePolytope shifted = minkowski_sum(unit_simplex(), LatticePolytope(2, {qv(5, 5)}));
  CHECK(shifted.vertices()[0] == qv(5, 5));
  CHECK(shifted.volume() == Rational(1, 2));
}

TEST_CASE("concave PL function evaluation and canonicalization") {
  const ConcavePLFunction g = roof_green();
  CHECK(g.value({Rational(1, 3)}) == Rational(1, 3));
  CHECK(g.value({Rational(1, 2)}) == Rational(1, 2));
  CHECK(g.min_value() == 0);
  CHECK(g.max_value() == Rational(1, 2));
  CHECK_THROWS_AS(g.value({Rational(2)}), input_error);

  SUBCASE("single constant piece") {
    const ConcavePLFunction c(unit_interval(), {{{Rational(0)}, Rational(7)}});
    CHECK(c.value({Rational(1, 2)}) == 7);
  }
  SUBCASE("kink value from piece equality") {
    // pieces x and 1-x cross at 1/2 with value 1/2
    CHECK(roof_green().value({Rational(1, 2)}) == Rational(1, 2));
  }
  SUBCASE("redundant pieces are dropped") {
    const ConcavePLFunction g2(unit_interval(), {{{Rational(1)}, Rational(0)},
                                                 {{Rational(-1)}, Rational(1)},
                                                 {{Rational(0)}, Rational(10)}});
    CHECK(g2.pieces().size() == 2);
  }
}

TEST_CASE("exact integration of PL functions") {
  SUBCASE("constant on the interval") {
    const ConcavePLFunction one(unit_interval(), {{{Rational(0)}, Rational(1)}});
    CHECK(one.integral() == 1);
  }
  SUBCASE("roof integrates to 1/4") { CHECK(roof_green().integral() == Rational(1, 4)); }
  SUBCASE("1 - x - y over the simplex integrates to 1/6") {
    const ConcavePLFunction g(unit_simplex(),
                              {{{Rational(-1), Rational(-1)}, Rational(1)}});
    CHECK(g.integral() == Rational(1, 6));
  }
  SUBCASE("additive under subdivision") {
    // split [0,1] at 2/5 and the simplex along x = y; integrals add exactly
    const ConcavePLFunction g = roof_green();
    const ConcavePLFunction left(LatticePolytope(1, {qv(0), {Rational(2, 5)}}), g.pieces());
    const ConcavePLFunction right(LatticePolytope(1, {{Rational(2, 5)}, qv(1)}), g.pieces());
    CHECK(left.integral() + right.integral() == g.integral());

    const ConcavePLFunction s(unit_simplex(), {{{Rational(-1), Rational(-1)}, Rational(1)},
                                               {{Rational(1), Rational(0)}, Rational(1, 2)}});
    const LatticePolytope lower(2, {qv(0, 0), qv(1, 0), qv(Rational(1, 2), Rational(1, 2))});
    const LatticePolytope upper(2, {qv(0, 0), qv(Rational(1, 2), Rational(1, 2)), qv(0, 1)});
    const ConcavePLFunction s_lower(lower, s.pieces());
    const ConcavePLFunction s_upper(upper, s.pieces());
    CHECK(s_lower.integral() + s_upper.integral() == s.integral());
  }
}

TEST_CASE("integral above a level") {
  const ConcavePLFunction g = roof_green();
  SUBCASE("level below the minimum is the plain integral shift") {
    CHECK(g.integral_above(Rational(-1)) == g.integral() + 1);
    CHECK(g.integral_above(Rational(0)) == g.integral());
  }
  SUBCASE("level inside the range truncates exactly") {
    // { min(x,1-x) >= 1/4 } = [1/4, 3/4]; integral of (g - 1/4) there = 1/16
    CHECK(g.integral_above(Rational(1, 4)) == Rational(1, 16));
  }
  SUBCASE("level above the maximum gives zero") {
    CHECK(g.integral_above(Rational(1)) == 0);
  }
  SUBCASE("2d truncation") {
    const ConcavePLFunction s(unit_simplex(),
                              {{{Rational(-1), Rational(-1)}, Rational(1)}});
    // { 1-x-y >= 1/2 } is the half-size corner simplex; integral of the
    // shifted cone = (1/2)^3 * 1/6
    CHECK(s.integral_above(Rational(1, 2)) == Rational(1, 48));
  }
}

TEST_CASE("scaling and shifting greens") {
  const ConcavePLFunction g = roof_green();
  const ConcavePLFunction g2 = g.scaled(Rational(2));
  CHECK(g2.domain().vertices() == std::vector<QVec>{qv(0), qv(2)});
  CHECK(g2.value({Rational(1)}) == 1);  // 2 * g(1/2)
  CHECK(g2.integral() == 4 * g.integral());

  const ConcavePLFunction gs = g.shifted(Rational(3));
  CHECK(gs.value({Rational(1, 2)}) == Rational(7, 2));
  CHECK(gs.integral() == g.integral() + 3);

  SUBCASE("scale by zero collapses to the zero point") {
    const ConcavePLFunction g0 = g.scaled(Rational(0));
    CHECK(g0.domain().is_point());
    CHECK(g0.value({Rational(0)}) == 0);
  }
}

TEST_CASE("weighted sums of greens") {
  const ConcavePLFunction g = roof_green();
  const ConcavePLFunction one(unit_interval(), {{{Rational(0)}, Rational(1)}});
  const ConcavePLFunction w = weighted_sum({Rational(1, 2), Rational(2)}, {g, one});
  CHECK(w.value({Rational(1, 2)}) == Rational(1, 4) + 2);
  CHECK(w.value({Rational(0)}) == 2);
  CHECK(w.integral() == Rational(1, 2) * g.integral() + 2);
}

TEST_CASE("sup-convolution in one dimension") {
  const ConcavePLFunction g = roof_green();
  SUBCASE("zero greens convolve to zero on the sum") {
    const ConcavePLFunction z(unit_interval(), {{{Rational(0)}, Rational(0)}});
    const ConcavePLFunction c = sup_convolve(z, z);
    CHECK(c.domain().vertices() == std::vector<QVec>{qv(0), qv(2)});
    CHECK(c.value({Rational(3, 2)}) == 0);
  }
  SUBCASE("roof with itself: min(x, 2-x, 1) on [0,2]") {
    const ConcavePLFunction c = sup_convolve(g, g);
    CHECK(c.value({Rational(1)}) == 1);
    CHECK(c.value({Rational(1, 2)}) == Rational(1, 2));
    CHECK(c.value({Rational(7, 4)}) == Rational(1, 4));
    CHECK(c.domain().vertices() == std::vector<QVec>{qv(0), qv(2)});
  }
  SUBCASE("point summand translates and shifts") {
    const ConcavePLFunction pt(LatticePolytope(1, {qv(3)}), {{{Rational(0)}, Rational(5)}});
    const ConcavePLFunction c = sup_convolve(g, pt);
    CHECK(c.domain().vertices() == std::vector<QVec>{qv(3), qv(4)});
    CHECK(c.value({Rational(7, 2)}) == Rational(11, 2));
  }
  SUBCASE("agrees with the kink-candidate oracle at sampled points") {
    const ConcavePLFunction h(LatticePolytope(1, {qv(0), qv(2)}),
                              {{{Rational(2)}, Rational(0)},
                               {{Rational(0)}, Rational(2)},
                               {{Rational(-1)}, Rational(4)}});
    const ConcavePLFunction c = sup_convolve(g, h);
    for (int num = 0; num <= 12; ++num) {
      const Rational m = frac(num, 4);
      CHECK(c.value({m}) == oracle_convolve_1d(g, h, m));
    }
  }
}

TEST_CASE("sup-convolution in two dimensions") {
  const ConcavePLFunction s(unit_simplex(), {{{Rational(-1), Rational(-1)}, Rational(1)}});
  const ConcavePLFunction roof2(
      LatticePolytope(2, {qv(0, 0), qv(2, 0), qv(2, 2), qv(0, 2)}),
      {{{Rational(1), Rational(0)}, Rational(0)}, {{Rational(-1), Rational(0)}, Rational(2)}});
  const ConcavePLFunction c = sup_convolve(s, roof2);
  CHECK(c.domain().ambient_dim() == 2);
  // domain = simplex + square
  CHECK(c.domain().volume() == frac(17, 2));  // shoelace over the Minkowski sum

  SUBCASE("matches the piece-pair LP oracle on a grid") {
    for (int ix = 0; ix <= 6; ++ix) {
      for (int iy = 0; iy <= 6; ++iy) {
        const QVec m = qv(frac(ix, 2), frac(iy, 2));
        if (!c.domain().contains(m)) continue;
        CHECK(c.value(m) == oracle_convolve_2d(s, roof2, m));
      }
    }
  }
  SUBCASE("concavity on sampled midpoints") {
    const QVec a = qv(Rational(1, 2), Rational(1, 2));
    const QVec b = qv(Rational(5, 2), Rational(1));
    const QVec mid = qv(Rational(3, 2), Rational(3, 4));
    CHECK(c.value(mid) * 2 >= c.value(a) + c.value(b));
  }
}

TEST_CASE("upper envelopes") {
  SUBCASE("1d collinear cloud gives one piece") {
    const auto pieces = upper_envelope_1d({{Rational(0), Rational(0)},
                                           {Rational(1), Rational(1)},
                                           {Rational(2), Rational(2)}});
    CHECK(pieces.size() == 1);
    CHECK(pieces[0].gradient[0] == 1);
  }
  SUBCASE("interior point below the chord is ignored") {
    const auto pieces = upper_envelope_1d({{Rational(0), Rational(0)},
                                           {Rational(1), Rational(-5)},
                                           {Rational(2), Rational(0)}});
    CHECK(pieces.size() == 1);
    CHECK(pieces[0].gradient[0] == 0);
  }
  SUBCASE("2d pyramid has four upper facets") {
    std::vector<std::pair<QVec, Rational>> pts = {
        {qv(0, 0), Rational(0)}, {qv(2, 0), Rational(0)}, {qv(2, 2), Rational(0)},
        {qv(0, 2), Rational(0)}, {qv(1, 1), Rational(1)}};
    const auto pieces = upper_envelope_2d(pts);
    CHECK(pieces.size() == 4);
  }
  SUBCASE("coplanar 2d cloud gives a single plane") {
    std::vector<std::pair<QVec, Rational>> pts = {
        {qv(0, 0), Rational(1)}, {qv(1, 0), Rational(2)}, {qv(0, 1), Rational(3)},
        {qv(1, 1), Rational(4)}};
    const auto pieces = upper_envelope_2d(pts);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].gradient == QVec{Rational(1), Rational(2)});
    CHECK(pieces[0].offset == 1);
  }
}
