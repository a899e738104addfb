#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "jacpair/newton.hpp"

using namespace jt;

static bool has_vertex(const NewtonPolygon& p, const char* x, long long y) {
  for (auto& v : p.vertices)
    if (v.x == Q(x) && v.y == y) return true;
  return false;
}

TEST_CASE("newton polygon of y^3 + x^2 y + x") {
  Series F = S(Space::P, {{"1", "0", 3}, {"1", "2", 1}, {"1", "1", 0}});
  auto poly = newton_polygon(F);
  CHECK(poly.vertices.size() == 4);
  CHECK(has_vertex(poly, "0", 0));
  CHECK(has_vertex(poly, "0", 3));
  CHECK(has_vertex(poly, "2", 1));
  CHECK(has_vertex(poly, "1", 0));
}

TEST_CASE("newton polygon degenerate segment") {
  auto poly = newton_polygon(S(Space::AX, {{"1", "2", 0}}));
  CHECK(poly.vertices.size() == 2);
  CHECK(has_vertex(poly, "0", 0));
  CHECK(has_vertex(poly, "2", 0));
  REQUIRE(poly.edges.size() == 1);
  REQUIRE(poly.edges[0].slope.has_value());
  CHECK(*poly.edges[0].slope == 0);
}

TEST_CASE("newton polygon top vertex of the quartic example") {
  Series F = S(Space::P, {{"1", "2", 4}, {"1", "1", 2}, {"2", "1", 1}});
  auto poly = newton_polygon(F);
  CHECK(has_vertex(poly, "2", 4));
}

TEST_CASE("newton polygon rejects truncated series") {
  Series F = S(Space::AX, {{"1", "0", 0}});
  F.xFloor = Q("-2");
  CHECK_THROWS_AS(newton_polygon(F), JacError);
}

TEST_CASE("prime degrees from the worked examples") {
  // x^2 y^4 + x y^2 + 2 x y + y^-2  ->  -1/3
  Series F1 = S(Space::B, {{"1", "2", 4}, {"1", "1", 2}, {"2", "1", 1}, {"1", "0", -2}});
  CHECK(prime_degree(F1).value == Q("-1/3"));
  // x y^2 + 2 x^{5/8} y  ->  -3/8
  Series F2 = S(Space::B, {{"1", "1", 2}, {"2", "5/8", 1}});
  CHECK(prime_degree(F2).value == Q("-3/8"));
  // x^4 (y^2 + x^-1)^3 expanded  ->  -1/2
  Series F3 = S(Space::B, {{"1", "4", 6}, {"3", "3", 4}, {"3", "2", 2}, {"1", "1", 0}});
  CHECK(prime_degree(F3).value == Q("-1/2"));
  // single column
  CHECK(prime_degree(S(Space::B, {{"1", "7", 3}})).kind == PrimeKind::NEG_INF);
}

TEST_CASE("components partition the series") {
  Series F = S(Space::B, {{"1", "2", 4}, {"1", "1", 2}, {"2", "1", 1}, {"1", "0", -2}});
  Rat p = Q("-1/3");
  Series F0 = component(F, p, Rat(0));
  Series E0 = S(Space::B, {{"1", "2", 4}, {"2", "1", 1}, {"1", "0", -2}});
  CHECK(equal(F0, E0));
  // F<0> = (x y^2 + y^-1)^2
  Series g = S(Space::B, {{"1", "1", 2}, {"1", "0", -1}});
  CHECK(equal(F0, pow_int(g, 2)));
  // reassembly
  Series sum = make_zero(Space::B);
  for (auto& r : component_indices(F, p)) sum = add(sum, component(F, p, r));
  CHECK(equal(sum, F));
  // positive component indices never occur
  for (auto& r : component_indices(F, p)) CHECK(r <= 0);
  CHECK(is_zero_above_floor(component(F, p, Q("1"))));
  CHECK_THROWS_AS(component(F, Q("-1"), Rat(0)), JacError);  // p below p(F) is fine; above is not
}

TEST_CASE("primary polynomial") {
  Series F = S(Space::B, {{"1", "1", 2}, {"2", "5/8", 1}});
  auto pp = primary_polynomial(F, Q("-3/8"));
  CHECK(pp.mPrime == 1);
  CHECK(pp.d == 2);
  CHECK(equal(pp.priF, S(Space::B, {{"1", "0", 2}, {"2", "-3/8", 1}})));

  // x^3 (y + x^-1)^4
  Series base = S(Space::B, {{"1", "0", 1}, {"1", "-1", 0}});
  Series G = mul_monomial(pow_int(base, 4), Rat(1), Rat(3), 0);
  auto pg = primary_polynomial(G, prime_degree(G).value);
  CHECK(pg.mPrime == 4);
  CHECK(pg.d == 1);
  CHECK(equal(pg.priF, base));

  auto pm = primary_polynomial(S(Space::B, {{"1", "2", 6}}), Q("-1"));
  CHECK(pm.mPrime == 6);
  CHECK(equal(pm.priF, S(Space::B, {{"1", "0", 1}})));
}

TEST_CASE("edge part") {
  Series F = S(Space::P, {{"1", "0", 3}, {"1", "2", 1}, {"1", "1", 0}});
  Edge e{{Q("0"), 3}, {Q("2"), 1}, Q("-1")};
  Series ep = edge_part(F, e);
  CHECK(equal(ep, S(Space::P, {{"1", "0", 3}, {"1", "2", 1}})));
  Edge bogus{{Q("0"), 3}, {Q("1"), 0}, std::nullopt};
  CHECK_THROWS_AS(edge_part(F, bogus), JacError);
  Edge point{{Q("2"), 1}, {Q("2"), 1}, std::nullopt};
  CHECK(equal(edge_part(F, point), S(Space::P, {{"1", "2", 1}})));
}

TEST_CASE("property: prime degree is stable under fractional powers") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    Series F = S(Space::B, {{"1", "2", 3}});
    Series tail = rng.poly(Space::B, 3, 1, 2);
    for (auto& [k, c] : tail.terms)
      if (k.y < 3) F.terms[{k.x, k.y}] += c;
    normalize(F);
    auto p = prime_degree(F);
    for (auto [a, b] : {std::pair<long long, long long>{2, 1}, {1, 3}, {-1, 1}}) {
      Series P;
      try {
        P = fractional_power(F, a, b, 6);
      } catch (const JacError&) {
        continue;
      }
      auto pp = prime_degree(P);
      CHECK(pp.kind == p.kind);
      if (p.finite()) CHECK(pp.value == p.value);
    }
  }
}

TEST_CASE("p(FG) can drop below max(p(F), p(G))") {
  Series A = S(Space::B, {{"1", "0", 1}, {"1", "2", 0}});  // y + x^2
  Series B2 = S(Space::B, {{"1", "0", 1}, {"1", "3", 0}}); // y + x^3
  Series F = mul(A, B2);
  CHECK(prime_degree(F).value == Q("3"));
  Series G = invert(B2, 6);
  CHECK(prime_degree(G).value == Q("3"));
  Series FG = mul(F, G);
  CHECK(equal(FG, truncated(A, FG.xFloor, FG.yFloor)));
  CHECK(prime_degree(FG).value == Q("2"));
}

TEST_CASE("property: p(FG) = max on random polynomial pairs") {
  Rng rng(33);
  int done = 0;
  while (done < 15) {
    Series F = rng.poly(Space::B, 3, 2, 2), G = rng.poly(Space::B, 3, 2, 2);
    if (F.terms.empty() || G.terms.empty()) continue;
    auto pf = prime_degree(F), pg = prime_degree(G), pm = prime_degree(mul(F, G));
    if (!pf.finite() || !pg.finite()) { ++done; continue; }
    CHECK(pm.finite());
    CHECK(pm.value == std::max(pf.value, pg.value));
    ++done;
  }
}

TEST_CASE("0-th component of fractional powers") {
  // (F^{l/m})<0> = x^{m0 l/m} priF^{l/d}
  Series base = S(Space::B, {{"1", "0", 1}, {"1", "-1", 0}});
  Series F = mul_monomial(pow_int(base, 4), Rat(1), Rat(3), 0);  // x^3 (y+1/x)^4
  Rat p = prime_degree(F).value;
  for (long long l : {1, 2, 3}) {
    Series P = fractional_power(F, l, 4, 8);
    Series lhs = component(P, p, Rat(0));
    Series rhs = mul_monomial(pow_int(base, l), Rat(1), Rat(3 * l, 4), 0);
    CHECK(equal(lhs, truncated(rhs, P.xFloor, P.yFloor)));
  }
}

TEST_CASE("polygon minimality: dropping a vertex loses containment") {
  Series F = S(Space::P, {{"1", "0", 3}, {"1", "2", 1}, {"1", "1", 0}});
  auto poly = newton_polygon(F);
  // every vertex is an extreme point: it is not inside the hull of the others
  for (size_t drop = 0; drop < poly.vertices.size(); ++drop) {
    Series G = make_zero(Space::P);
    bool dropped_is_support = false;
    for (auto& [k, c] : F.terms) {
      Vertex v{k.x, k.y};
      if (v == poly.vertices[drop]) { dropped_is_support = true; continue; }
      G.terms[k] = c;
    }
    if (!dropped_is_support || G.terms.empty()) continue;
    auto sub = newton_polygon(G);
    bool still = false;
    for (auto& v : sub.vertices)
      if (v == poly.vertices[drop]) still = true;
    CHECK(!still);
  }
}
