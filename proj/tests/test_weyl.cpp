#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "jacpair/poisson.hpp"
#include "jacpair/weyl.hpp"

using namespace jt;

namespace {

struct WT {
  const char* c;
  const char* u;
  long long v;
};

WeylSeries W(WeylRep rep, std::initializer_list<WT> ts) {
  WeylSeries F = weyl_zero(rep);
  for (auto& t : ts) F.terms[{rat_parse(t.u), t.v}] += rat_parse(t.c);
  weyl_normalize(F);
  return F;
}

const WeylRep UV = WeylRep::UV_STANDARD;
const WeylRep WF = WeylRep::W_FORM;

WeylSeries rand_uv(Rng& rng, int nterms, long long lo, long long hi) {
  WeylSeries F = weyl_zero(UV);
  for (int k = 0; k < nterms; ++k) F.terms[{Rat(rng.i(lo, hi)), rng.i(lo, hi)}] += rng.q();
  weyl_normalize(F);
  return F;
}

}  // namespace

TEST_CASE("product reordering law on the generators") {
  WeylSeries v = W(UV, {{"1", "0", 1}});
  WeylSeries u = W(UV, {{"1", "1", 0}});
  CHECK(weyl_equal(normal_product(v, u), W(UV, {{"1", "1", 1}, {"1", "0", 0}})));
  WeylSeries v2 = W(UV, {{"1", "0", 2}});
  CHECK(weyl_equal(normal_product(v2, u), W(UV, {{"1", "1", 2}, {"2", "0", 1}})));
  WeylSeries u2 = W(UV, {{"1", "2", 0}});
  CHECK(weyl_equal(normal_product(v2, u2),
                   W(UV, {{"1", "2", 2}, {"4", "1", 1}, {"2", "0", 0}})));
  CHECK(weyl_equal(weyl_bracket(v, u), weyl_const(UV, Rat(1))));
}

TEST_CASE("product requires matching representations") {
  CHECK_THROWS_AS(normal_product(W(UV, {{"1", "1", 0}}), W(WF, {{"1", "1", 0}})), JacError);
}

TEST_CASE("inverse of u and of uv") {
  WeylSeries iu = weyl_inverse(W(UV, {{"1", "1", 0}}), 4);
  CHECK(weyl_coeff(iu, Q("-1"), 0) == 1);
  CHECK(iu.terms.size() == 1);

  WeylSeries iw = weyl_inverse(W(UV, {{"1", "1", 1}}), 4);
  for (long long s = 0; s < 4; ++s)
    CHECK(weyl_coeff(iw, Rat(-1 - s), -1 - s) == factorial(s));
  CHECK(iw.terms.size() == 4);
}

TEST_CASE("property: F times its inverse is 1") {
  Rng rng(11);
  for (int t = 0; t < 12; ++t) {
    WeylSeries F = weyl_add(W(UV, {{"1", "2", 2}}), rand_uv(rng, 3, -1, 1));
    WeylSeries H = weyl_inverse(F, 8);
    CHECK(weyl_equal(normal_product(F, H), weyl_const(UV, Rat(1))));
    CHECK(weyl_equal(normal_product(H, F), weyl_const(UV, Rat(1))));
  }
}

TEST_CASE("fractional power squares back") {
  CHECK(weyl_equal(weyl_fractional_power(W(UV, {{"1", "2", 2}, {"1", "0", 1}}), 1, 1, 6),
                   W(UV, {{"1", "2", 2}, {"1", "0", 1}})));
  WeylSeries F = W(UV, {{"1", "2", 2}, {"2", "1", 1}, {"1", "0", 0}});
  WeylSeries E = weyl_fractional_power(F, 1, 2, 6);
  CHECK(weyl_coeff(E, Q("1"), 1) == 1);
  CHECK(weyl_equal(weyl_pow_int(E, 2, 12), F));
  CHECK_THROWS_AS(weyl_fractional_power(W(UV, {{"1", "2", 1}}), 1, 2, 4), JacError);
}

TEST_CASE("property: rational powers of F commute") {
  Rng rng(23);
  for (int t = 0; t < 6; ++t) {
    WeylSeries F = weyl_add(W(UV, {{"1", "2", 2}}), rand_uv(rng, 2, 0, 1));
    long long a = rng.i(1, 3), b = rng.i(1, 3);
    WeylSeries A = weyl_fractional_power(F, a, 2, 7);
    WeylSeries B = weyl_fractional_power(F, -b, 2, 7);
    CHECK(weyl_equal(weyl_bracket(A, B, 7), weyl_zero(UV)));
  }
}

TEST_CASE("w-form of uv and of u^2 v^2") {
  CHECK(weyl_equal(to_w_form(W(UV, {{"1", "1", 1}})), W(WF, {{"1", "0", 1}})));
  CHECK(weyl_equal(to_w_form(W(UV, {{"1", "2", 2}})), W(WF, {{"1", "0", 2}, {"-1", "0", 1}})));
  CHECK_THROWS_AS(to_w_form(W(UV, {{"1", "1/2", 0}})), JacError);
}

TEST_CASE("property: w-form round trip") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    WeylSeries F = rand_uv(rng, 4, -3, 3);
    CHECK(weyl_equal(from_w_form(to_w_form(F, 12), 12), F));
  }
}

TEST_CASE("property: w-form is multiplicative") {
  Rng rng(37);
  for (int t = 0; t < 8; ++t) {
    WeylSeries F = rand_uv(rng, 3, 0, 3);
    WeylSeries G = rand_uv(rng, 3, 0, 3);
    CHECK(weyl_equal(to_w_form(normal_product(F, G)),
                     normal_product(to_w_form(F), to_w_form(G))));
  }
}

TEST_CASE("trace in both representations") {
  CHECK(weyl_trace(W(UV, {{"1", "-1", -1}})) == 1);
  CHECK(weyl_trace(W(UV, {{"1", "2", 2}})) == 0);
  // v^{-1} u^{-1} normal-ordered first
  WeylSeries p = normal_product(W(UV, {{"1", "0", -1}}), W(UV, {{"1", "-1", 0}}), 6);
  CHECK(weyl_trace(p) == 1);
  CHECK(weyl_trace(W(WF, {{"1", "0", -1}})) == 1);
  WeylSeries cut = weyl_truncated(W(UV, {{"1", "1", 1}}), Q("0"), {});
  CHECK_THROWS_AS(weyl_trace(cut), JacError);
}

TEST_CASE("derivations on the generators") {
  CHECK(weyl_equal(partial_w(W(UV, {{"1", "1", 1}})), weyl_const(UV, Rat(1))));
  CHECK(weyl_equal(partial_w(W(UV, {{"1", "0", 1}})), W(UV, {{"1", "-1", 0}})));
  CHECK(weyl_equal(partial_w_v(W(UV, {{"1", "1", 0}})), W(UV, {{"1", "0", -1}})));
  CHECK(weyl_equal(partial_w_v(W(UV, {{"1", "0", 1}})), weyl_zero(UV)));
  WeylSeries d = partial_w_v(W(UV, {{"1", "1/2", 0}}), 2);
  CHECK(weyl_coeff(d, Q("-1/2"), -1) == Q("1/2"));
  CHECK(weyl_coeff(d, Q("-3/2"), -2) == Q("1/8"));
}

TEST_CASE("property: Leibniz rule for both derivations") {
  Rng rng(41);
  for (int t = 0; t < 8; ++t) {
    WeylSeries F = rand_uv(rng, 3, -2, 2);
    WeylSeries G = rand_uv(rng, 3, -2, 2);
    WeylSeries lhs = partial_w(normal_product(F, G, 10), 10);
    WeylSeries rhs = weyl_add(normal_product(partial_w(F, 10), G, 10),
                              normal_product(F, partial_w(G, 10), 10));
    CHECK(weyl_equal(lhs, rhs));
    lhs = partial_w_v(normal_product(F, G, 10), 10);
    rhs = weyl_add(normal_product(partial_w_v(F, 10), G, 10),
                   normal_product(F, partial_w_v(G, 10), 10));
    CHECK(weyl_equal(lhs, rhs));
  }
}

TEST_CASE("property: trace is cyclic in w-form") {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    WeylSeries H = weyl_zero(WF), K = weyl_zero(WF);
    for (int k = 0; k < 3; ++k) {
      H.terms[{Rat(rng.i(-2, 2)), rng.i(-3, 2)}] += rng.q();
      K.terms[{Rat(rng.i(-2, 2)), rng.i(-3, 2)}] += rng.q();
    }
    H.vFloor = -12;
    K.vFloor = -12;
    weyl_normalize(H);
    weyl_normalize(K);
    CHECK(weyl_trace(normal_product(H, K)) == weyl_trace(normal_product(K, H)));
  }
}

TEST_CASE("property: the product is associative") {
  Rng rng(47);
  for (int t = 0; t < 8; ++t) {
    WeylSeries F = weyl_truncated(rand_uv(rng, 3, -2, 2), Q("-8"), -8);
    WeylSeries G = weyl_truncated(rand_uv(rng, 3, -2, 2), Q("-8"), -8);
    WeylSeries H = weyl_truncated(rand_uv(rng, 3, -2, 2), Q("-8"), -8);
    CHECK(weyl_equal(normal_product(normal_product(F, G), H),
                     normal_product(F, normal_product(G, H))));
  }
}

TEST_CASE("property: top degree of the commutator matches the Poisson side") {
  Rng rng(53);
  int done = 0;
  for (int t = 0; t < 12; ++t) {
    WeylSeries F = rand_uv(rng, 3, 0, 3);
    WeylSeries G = rand_uv(rng, 3, 0, 3);
    Series P = bracket(bar_map(F), bar_map(G));
    auto d = deg_x(P);
    if (!d) continue;
    WeylSeries B = weyl_bracket(F, G);
    WeylSeries img = bar_unmap(P);
    for (auto& [k, c] : B.terms) CHECK(k.u <= *d);
    WeylSeries topB = weyl_zero(UV), topI = weyl_zero(UV);
    for (auto& [k, c] : B.terms)
      if (k.u == *d) topB.terms[k] = c;
    for (auto& [k, c] : img.terms)
      if (k.u == *d) topI.terms[k] = c;
    CHECK(weyl_equal(topB, topI));
    ++done;
  }
  CHECK(done >= 8);
}

TEST_CASE("property: tr(F^{k/m} d_w F) vanishes") {
  WeylSeries F = W(WF, {{"1", "2", 2}, {"1", "1", 1}, {"3", "0", 0}});
  // k = -2 is excluded: tr(F^{-1} d_w F) is the leading w-degree, not 0
  for (long long k : {-4LL, 1LL, 2LL, 3LL}) {
    WeylSeries E = weyl_fractional_power(F, k, 2, 10);
    Rat t = weyl_trace(normal_product(E, partial_w(F), 10));
    CHECK(t == 0);
  }
}

TEST_CASE("vertex system solves to the closed form") {
  auto v1 = dixmier_vertex_solve(2, 1);
  CHECK(v1.alpha == 1);
  CHECK(v1.beta == 0);
  auto v2 = dixmier_vertex_solve(3, 2);
  CHECK(v2.alpha == 3);
  CHECK(v2.beta == 1);
  // the solver itself cross-checks the 2x2 solve against the closed form
  for (long long m0 = 2; m0 <= 10; ++m0)
    for (long long m = 1; m < m0; ++m) {
      auto v = dixmier_vertex_solve(m0, m);
      CHECK(v.alpha == Rat(m0 * m) / 2);
      CHECK(v.beta == Rat((1 - m0) * (1 - m)) / 2);
    }
  CHECK_THROWS_AS(dixmier_vertex_solve(2, 2), JacError);
}

TEST_CASE("vertex bracket and trace residuals") {
  for (auto [m0, m] : {std::pair<long long, long long>{2, 1}, {3, 2}, {5, 2}}) {
    auto v = vertex_bracket_check(m0, m, 8);
    CHECK(v.pass);
  }
}

TEST_CASE("a wrong alpha leaves a trace residual") {
  long long m0 = 3, m = 2;
  Rat alpha = dixmier_vertex_solve(m0, m).alpha + 1;
  WeylSeries f = weyl_add(
      normal_product(W(WF, {{"1", "0", 1}}),
                     W(WF, {{"1", "0", 1}, {"-1", "0", 0}})),  // w(w-1)
      weyl_scale(W(WF, {{"1", "0", 1}}), alpha));
  WeylSeries lin = W(WF, {{"-1", "0", 1}, {"-1", "0", 0}});  // (1/(m-m0))(w + (m0-m+1)/2)
  WeylSeries r = normal_product(lin, weyl_inverse(f, 14));
  Rat t = weyl_trace(normal_product(r, partial_w(f), 12));
  CHECK(t != 0);
}

TEST_CASE("json round trip") {
  WeylSeries F = weyl_truncated(W(UV, {{"3/2", "-1/2", 2}, {"-2", "3", -1}}), Q("-4"), -6);
  WeylSeries G = weyl_from_json(weyl_to_json(F));
  CHECK(G.rep == F.rep);
  CHECK(G.terms == F.terms);
  CHECK(G.uFloor == F.uFloor);
  CHECK(G.vFloor == F.vFloor);
}
