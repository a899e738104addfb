#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "jacpair/reduction.hpp"

using namespace jt;

namespace {

YPoly yp(std::initializer_list<const char*> cs) {
  YPoly a;
  for (auto c : cs) a.push_back(Q(c));
  return a;
}

Series baseF() { return S(Space::B, {{"1", "2/5", 2}, {"1", "2/5", 0}}); }
Series baseG() { return S(Space::B, {{"1", "3/5", 3}, {"3/2", "3/5", 1}}); }

}  // namespace

TEST_CASE("polynomial utilities") {
  // (t^3 - 1) = (t - 1)(t^2 + t + 1)
  auto [q, r] = ypoly_divmod(yp({"-1", "0", "0", "1"}), yp({"-1", "1"}));
  CHECK(q == yp({"1", "1", "1"}));
  CHECK(ypoly_deg(r) == -1);

  CHECK(ypoly_gcd(yp({"-1", "0", "1"}), yp({"-1", "0", "0", "1"})) == yp({"-1", "1"}));

  // t(t-1)^2
  auto sq = ypoly_squarefree(yp({"0", "1", "-2", "1"}));
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].first == yp({"0", "1"}));
  CHECK(sq[0].second == 1);
  CHECK(sq[1].first == yp({"-1", "1"}));
  CHECK(sq[1].second == 2);

  auto roots = ypoly_rational_roots(yp({"1", "-5", "6"}));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Q("1/3"));
  CHECK(roots[1] == Q("1/2"));
  CHECK(ypoly_rational_roots(yp({"-2", "0", "1"})).empty());
  auto zr = ypoly_rational_roots(yp({"0", "0", "-1", "1"}));
  REQUIRE(zr.size() == 2);
  CHECK(zr[0] == 0);
  CHECK(zr[1] == 1);
}

TEST_CASE("edge relation cases") {
  Series F = baseF();
  auto self = test_edge_relation(F, F, Q("0"));
  CHECK(self.kind == EdgeRelation::Case::POWER_RELATION);
  CHECK(self.num == 1);
  CHECK(self.den == 1);

  auto qj = test_edge_relation(F, baseG(), Q("0"));
  CHECK(qj.kind == EdgeRelation::Case::QJ_RELATION);
  CHECK(qj.J == Q("3/5"));

  Series F1 = S(Space::B, {{"1", "2", 4}, {"1", "1", 2}, {"2", "1", 1}, {"1", "0", -2}});
  Series G1 = S(Space::B, {{"1", "1", 2}, {"1", "0", -1}});
  auto pw = test_edge_relation(F1, G1, Q("-1/3"));
  CHECK(pw.kind == EdgeRelation::Case::POWER_RELATION);
  CHECK(pw.num == 1);
  CHECK(pw.den == 2);

  Series Fb = S(Space::B, {{"1", "2", 4}, {"1", "1", 1}});
  Series Gb = S(Space::B, {{"1", "1", 2}});
  CHECK_THROWS_AS(test_edge_relation(Fb, Gb, Q("-1/3")), JacError);
}

TEST_CASE("vertex edge helpers") {
  Series F = S(Space::B, {{"1", "2", 3}, {"-3", "3/2", 2}, {"3", "1", 1}, {"-1", "1/2", 0}});
  Vertex v{Q("2"), 3};
  CHECK(vertex_prime(F, v) == Q("-1/2"));
  CHECK(equal(edge_part_at(F, v, Q("-1/2")), F));
}

TEST_CASE("descend_vertex single factor") {
  // x^2 (y - x^{-1/2})^3
  Series F = S(Space::B, {{"1", "2", 3}, {"-3", "3/2", 2}, {"3", "1", 1}, {"-1", "1/2", 0}});
  Series G = scale(F, Q("2"));
  auto d = descend_vertex(F, G, {Q("2"), 3});
  CHECK(d.singleFactor);
  CHECK(d.alpha0 == 1);
  CHECK(d.multiplicity == 3);
  CHECK(equal(d.F, S(Space::B, {{"1", "2", 3}})));
  CHECK(equal(d.G, S(Space::B, {{"2", "2", 3}})));
  REQUIRE(d.log.steps.size() == 1);
  CHECK(equal(apply_auto(d.log, F), d.F));
}

TEST_CASE("descend_vertex maximal multiplicity") {
  // x^2 y (y - x^{-1})^2
  Series F = S(Space::B, {{"1", "2", 3}, {"-2", "1", 2}, {"1", "0", 1}});
  Series G = scale(F, Q("2"));
  auto d = descend_vertex(F, G, {Q("2"), 3});
  CHECK(!d.singleFactor);
  CHECK(d.alpha0 == 1);
  CHECK(d.multiplicity == 2);
  CHECK(d.vertex.y == 2);
  CHECK(d.vertex.x == Q("1"));
  CHECK(coeff(d.F, d.vertex.x, d.vertex.y) != 0);
  CHECK(equal(apply_auto(d.log, F), d.F));
}

TEST_CASE("descend_vertex rejects a monomial edge") {
  Series F = S(Space::B, {{"1", "2", 3}});
  CHECK_THROWS_AS(descend_vertex(F, F, {Q("2"), 3}), JacError);
}

TEST_CASE("descend_vertex irrational root") {
  // x^2 (y^2 - 2 x^{-1})^2 y: squarefree part t^2 - 2 at multiplicity 2
  Series F = S(Space::B,
               {{"1", "2", 5}, {"-4", "3/2", 3}, {"4", "1", 1}});
  CHECK_THROWS_AS(descend_vertex(F, F, {Q("2"), 5}), JacError);
}

TEST_CASE("property: multi-factor descent lowers the vertex") {
  Rng rng(41);
  for (int t = 0; t < 12; ++t) {
    long long k = 2 + rng.i(0, 1);
    Rat r1 = rng.q();
    Rat r2 = rng.q();
    if (r1 == r2) continue;
    // psi = (t - r1)^k (t - r2) planted on the edge of direction -1/2
    YPoly psi = yp({"1"});
    for (long long s = 0; s < k; ++s) {
      YPoly nx(psi.size() + 1, Rat(0));
      for (size_t i = 0; i < psi.size(); ++i) {
        Rat a = nx[i] - r1 * psi[i];
        nx[i] = a;
        Rat b = nx[i + 1] + psi[i];
        nx[i + 1] = b;
      }
      psi = nx;
    }
    {
      YPoly nx(psi.size() + 1, Rat(0));
      for (size_t i = 0; i < psi.size(); ++i) {
        Rat a = nx[i] - r2 * psi[i];
        nx[i] = a;
        Rat b = nx[i + 1] + psi[i];
        nx[i + 1] = b;
      }
      psi = nx;
    }
    long long m = k + 1;
    Series F = make_zero(Space::B);
    Rat m0 = Rat(m) - Q("1/2");
    for (long long j = 0; j <= m; ++j)
      if (psi[j] != 0) F.terms[{m0 - Rat(m - j) / 2, j}] = psi[j];
    normalize(F);
    auto d = descend_vertex(F, F, {m0, m});
    Rat small = std::min(r1, r2);  // tie-break irrelevant: k > 1
    if (d.singleFactor) continue;  // r1 or r2 zero can merge shapes
    CHECK(d.multiplicity == k);
    CHECK(d.vertex.y == k);
    CHECK(d.vertex.y < m);
    CHECK(coeff(d.F, d.vertex.x, d.vertex.y) != 0);
    (void)small;
  }
}

TEST_CASE("straighten transports monomials") {
  Series m = S(Space::B, {{"1", "2", 1}});
  auto st = straighten(m, m, 1, 3);
  CHECK(equal(st.F, S(Space::B, {{"1", "5/2", 1}})));

  auto id = straighten(m, m, 0, 2);
  CHECK(equal(id.F, m));

  CHECK_THROWS_AS(straighten(m, m, 3, 1), JacError);
}

TEST_CASE("straighten makes the chosen edge vertical") {
  // edge {(1,2),(1/2,1)} has slope 2/1
  Series F = S(Space::B, {{"1", "1", 2}, {"1", "1/2", 1}, {"1", "1", 0}});
  auto st = straighten(F, F, 1, 2);
  CHECK(equal(st.F, S(Space::B, {{"1", "0", 2}, {"1", "0", 1}, {"1", "2", 0}})));
  bool vertical = false;
  for (auto& e : newton_polygon(st.F).edges)
    if (!e.slope && e.a.x == 0) vertical = true;
  CHECK(vertical);
}

TEST_CASE("reduce_to_normal_form on a normalized pair") {
  auto np = reduce_to_normal_form(baseF(), baseG());
  CHECK(np.log.steps.empty());
  CHECK(np.m == 2);
  CHECK(np.n == 3);
  CHECK(np.J == Q("3/5"));
  CHECK(np.scaleF == 1);
  CHECK(np.scaleG == 1);
  CHECK(equal(np.f, S(Space::B, {{"1", "0", 2}, {"1", "0", 0}})));
  CHECK(equal(np.g, S(Space::B, {{"1", "0", 3}, {"3/2", "0", 1}})));
  CHECK(np.diagnostics.empty());
}

TEST_CASE("reduce_to_normal_form inverts planted shifts") {
  AutoLog pert;
  pert.steps.push_back({AutoStep::Kind::SHIFT_Y, {}, Rat(0), 0, 1, Q("2"), Q("-1/2")});
  pert.steps.push_back({AutoStep::Kind::Z_C, {}, Q("3"), 0, 1, Rat(0), Rat(0)});
  Series F = apply_auto(pert, baseF());
  Series G = apply_auto(pert, baseG());
  auto np = reduce_to_normal_form(F, G);
  CHECK(np.m == 2);
  CHECK(np.n == 3);
  CHECK(np.J == Q("3/5"));
  CHECK(equal(np.F, baseF()));
  CHECK(equal(np.G, baseG()));
  CHECK(equal(apply_auto(np.log, F), np.F));
  CHECK(np.diagnostics.empty());
}

TEST_CASE("reduce_to_normal_form rejects a bad vertex") {
  Series F = S(Space::B, {{"1", "0", 2}, {"1", "1", 0}});  // m0 = 0
  Series G = S(Space::B, {{"1", "0", 3}});
  CHECK_THROWS_AS(reduce_to_normal_form(F, G), JacError);
}

TEST_CASE("normalized pair json") {
  auto np = reduce_to_normal_form(baseF(), baseG());
  auto text = normalized_json(np);
  CHECK(text.find("\"m\":2") != std::string::npos);
  CHECK(text.find("\"J\":\"3/5\"") != std::string::npos);
}
