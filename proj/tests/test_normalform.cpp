#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "jacpair/normalform.hpp"

using namespace jt;

namespace {

Series baseF() { return S(Space::B, {{"1", "2/5", 2}, {"1", "2/5", 0}}); }
Series baseG() { return S(Space::B, {{"1", "3/5", 3}, {"3/2", "3/5", 1}}); }

// f = y^2 + 1 and g = y^3 + (3/2) y evaluated on a series
Series f_at(const Series& K) { return add(mul(K, K), make_const(K.space, Rat(1))); }
Series g_at(const Series& K) {
  return add(mul(mul(K, K), K), scale(K, Q("3/2")));
}

// F = H^{2/5} f(K), G = H^{3/5} g(K) up to the common floor
void check_pair_residual(const NormalizedPair& np, const HKResult& hk) {
  Series Hm = fractional_power(hk.H, 2, 5, hk.depth + 2);
  Series Hn = fractional_power(hk.H, 3, 5, hk.depth + 2);
  CHECK(equal(mul(Hm, f_at(hk.K)), scale(np.F, Rat(1) / np.scaleF)));
  CHECK(equal(mul(Hn, g_at(hk.K)), scale(np.G, Rat(1) / np.scaleG)));
}

// normalized pair assembled directly, bypassing the polygon descent
NormalizedPair manual_np(const Series& F, const Series& G) {
  NormalizedPair np;
  np.F = F;
  np.G = G;
  np.m = 2;
  np.n = 3;
  np.f = S(Space::B, {{"1", "0", 2}, {"1", "0", 0}});
  np.g = S(Space::B, {{"1", "0", 3}, {"3/2", "0", 1}});
  np.scaleF = np.scaleG = 1;
  np.J = Q("3/5");
  return np;
}

}  // namespace

TEST_CASE("peel of a tail-free pair is trivial") {
  auto np = reduce_to_normal_form(baseF(), baseG());
  auto st = make_peel_state(np, 10);
  for (long long i = 1; i <= 10; ++i) {
    auto out = peel_step(st, i);
    CHECK(out.Q.known_zero());
    CHECK(!out.usedZc);
  }
  auto hk = normalize_to_HK(np, 10);
  CHECK(hk.log.steps.empty());
  CHECK(equal(hk.H, S(Space::B, {{"1", "1", 0}})));
  CHECK(equal(hk.K, S(Space::B, {{"1", "0", 1}})));
}

TEST_CASE("construct-then-peel recovers a level-1 generator") {
  Series P = S(Space::B, {{"1", "4/5", 1}});
  Series F1 = exp_ad(P, baseF(), 12);
  Series G1 = exp_ad(P, baseG(), 12);
  auto np = reduce_to_normal_form(F1, G1);
  CHECK(np.log.steps.empty());
  auto st = make_peel_state(np, 10);
  auto out = peel_step(st, 1);
  // the step itself asserts the level is clean afterwards
  CHECK(coeff(out.Q, Q("4/5"), 1) == -1);
}

TEST_CASE("planted z_{-1/2} is peeled as ZC(1/2)") {
  auto np = manual_np(shift_y(baseF(), Q("1/2"), Q("-1")),
                      shift_y(baseG(), Q("1/2"), Q("-1")));
  auto st = make_peel_state(np, 10);
  for (long long i = 1; i <= 4; ++i) CHECK(peel_step(st, i).Q.known_zero());
  auto out = peel_step(st, 5);
  CHECK(out.usedZc);
  CHECK(out.c == Q("1/2"));
  CHECK(equal(st.F, baseF()));
  CHECK(equal(st.G, baseG()));
}

TEST_CASE("peel precondition rejects a dirty shallower level") {
  Series P = S(Space::B, {{"1", "4/5", 1}});
  auto np = reduce_to_normal_form(exp_ad(P, baseF(), 12), exp_ad(P, baseG(), 12));
  auto st = make_peel_state(np, 10);
  CHECK_THROWS_AS(peel_step(st, 2), JacError);
}

TEST_CASE("normalize_to_HK on a perturbed pair") {
  Series P = S(Space::B, {{"1", "4/5", 1}});
  auto np = reduce_to_normal_form(exp_ad(P, baseF(), 12), exp_ad(P, baseG(), 12));
  auto hk = normalize_to_HK(np, 10);
  CHECK(equal(bracket(hk.H, hk.K), make_const(Space::B, Rat(1))));
  check_pair_residual(np, hk);
  // replaying the forward log returns the coordinates
  CHECK(equal(apply_auto(hk.log, hk.H), S(Space::B, {{"1", "1", 0}})));
  CHECK(equal(apply_auto(hk.log, hk.K), S(Space::B, {{"1", "0", 1}})));
}

TEST_CASE("planted z_c leaves its imprint on K") {
  auto np = manual_np(shift_y(baseF(), Q("1/2"), Q("-1")),
                      shift_y(baseG(), Q("1/2"), Q("-1")));
  auto hk = normalize_to_HK(np, 10);
  CHECK(coeff(hk.K, Q("-1"), 0) == Q("1/2"));
  check_pair_residual(np, hk);
}

TEST_CASE("property: random admissible perturbations normalize to depth 10") {
  Rng rng(97);
  int done = 0;
  for (int t = 0; t < 8; ++t) {
    AutoLog pert;
    long long i = rng.i(1, 3);
    // y-degree <= 1 keeps the top vertex of the pair in place
    Series gen = make_zero(Space::B);
    for (long long d = 0; d <= 1; ++d) {
      Rat c = rng.q();
      if (c != 0) gen.terms[{Rat(5 - i) / 5, d}] = c;
    }
    normalize(gen);
    if (gen.known_zero()) continue;
    AutoStep s;
    s.kind = AutoStep::Kind::EXP_AD;
    s.H = gen;
    pert.steps.push_back(s);
    AutoStep z;
    z.kind = AutoStep::Kind::Z_C;
    z.c = rng.q();
    pert.steps.push_back(z);
    Series F = apply_auto(pert, baseF(), 14);
    Series G = apply_auto(pert, baseG(), 14);
    auto np = reduce_to_normal_form(F, G);
    auto hk = normalize_to_HK(np, 10);
    check_pair_residual(np, hk);
    ++done;
  }
  CHECK(done >= 5);
}

TEST_CASE("alpha_decompose on a planted fixture") {
  HKResult hk;
  hk.H = S(Space::B, {{"1", "1", 0}, {"1", "3/5", 1}});  // x (1 + x^{-2/5} y)
  hk.K = S(Space::B, {{"1", "0", 1}});
  hk.depth = 10;
  auto de = alpha_decompose(hk);
  CHECK(de.alpha == Q("2/5"));
  CHECK(de.beta == 1);
  REQUIRE(de.componentsH.count(0));
  CHECK(equal(de.componentsH.at(0), hk.H));
  CHECK(equal(de.componentsK.at(0), hk.K));
}

TEST_CASE("alpha_decompose rejects the degenerate pair") {
  HKResult hk;
  hk.H = S(Space::B, {{"1", "1", 0}});
  hk.K = S(Space::B, {{"1", "0", 1}});
  CHECK_THROWS_AS(alpha_decompose(hk), JacError);
}

TEST_CASE("components reassemble H and K") {
  // a y^2 generator leaves genuine y-structure in the tails of H and K
  Series P = S(Space::B, {{"1", "4/5", 2}});
  auto np = manual_np(exp_ad(P, baseF(), 12), exp_ad(P, baseG(), 12));
  auto hk = normalize_to_HK(np, 10);
  auto de = alpha_decompose(hk);
  CHECK(de.alpha == Q("1/5"));
  Series sh = make_zero(Space::B), sk = make_zero(Space::B);
  for (auto& [i, c] : de.componentsH) sh = add(sh, c);
  for (auto& [i, c] : de.componentsK) sk = add(sk, c);
  CHECK(equal(sh, hk.H));
  CHECK(equal(sk, hk.K));
}

TEST_CASE("solve_Q_nu recovers a planted generator") {
  AlphaDecomposition de;
  de.alpha = Q("1/3");
  de.beta = 1;
  de.componentsH[Rat(0)] = S(Space::B, {{"1", "1", 0}});
  de.componentsK[Rat(0)] = S(Space::B, {{"1", "0", 1}});
  de.componentsH[Rat(2)] = S(Space::B, {{"-1", "1/3", 0}});
  de.componentsK[Rat(2)] = S(Space::B, {{"1/3", "-2/3", 1}});
  Series Qn = solve_Q_nu(de, Rat(2));
  CHECK(equal(Qn, S(Space::B, {{"1", "1/3", 1}})));
}

TEST_CASE("solve_Q_nu absorbs the lambda correction") {
  AlphaDecomposition de;
  de.alpha = Q("1/3");
  de.beta = 1;
  de.componentsH[Rat(0)] = S(Space::B, {{"1", "1", 0}});
  de.componentsK[Rat(0)] = S(Space::B, {{"1", "0", 1}});
  de.componentsH[Rat(2)] = S(Space::B, {{"-1", "1/3", 0}});
  de.componentsK[Rat(2)] = S(Space::B, {{"1/3", "-2/3", 1}, {"2", "-1/3", 0}});
  Series Qn = solve_Q_nu(de, Rat(2));
  CHECK(equal(Qn, S(Space::B, {{"1", "1/3", 1}, {"3", "2/3", 0}})));
}

TEST_CASE("solve_Q_nu flags the critical index") {
  AlphaDecomposition de;
  de.alpha = Q("1/3");  // nu0 = 4
  de.beta = 1;
  de.componentsH[Rat(0)] = S(Space::B, {{"1", "1", 0}});
  de.componentsK[Rat(0)] = S(Space::B, {{"1", "0", 1}});
  de.componentsK[Rat(4)] = S(Space::B, {{"1", "-1", 0}});
  try {
    solve_Q_nu(de, Rat(4));
    CHECK(false);
  } catch (const JacError& e) {
    CHECK(e.code == Err::NORMALIZATION_AMBIGUOUS);
  }
}

TEST_CASE("solve_Q_nu trivial and precondition cases") {
  AlphaDecomposition de;
  de.alpha = Q("1/3");
  de.beta = 1;
  de.componentsH[Rat(0)] = S(Space::B, {{"1", "1", 0}});
  de.componentsK[Rat(0)] = S(Space::B, {{"1", "0", 1}});
  CHECK(solve_Q_nu(de, Rat(2)).known_zero());
  de.componentsH[Rat(1)] = S(Space::B, {{"1", "2/3", 0}});
  CHECK_THROWS_AS(solve_Q_nu(de, Rat(2)), JacError);
}

TEST_CASE("check_polynomiality on the base pair") {
  auto np = reduce_to_normal_form(baseF(), baseG());
  auto hk = normalize_to_HK(np, 10);
  auto v = check_polynomiality(np, hk);
  CHECK(v.pass);
}

TEST_CASE("check_polynomiality on a perturbed pair and a corrupted K") {
  Series P = S(Space::B, {{"1", "4/5", 1}});
  auto np = reduce_to_normal_form(exp_ad(P, baseF(), 12), exp_ad(P, baseG(), 12));
  auto hk = normalize_to_HK(np, 10);
  CHECK(check_polynomiality(np, hk).pass);

  HKResult bad = hk;
  bad.K = add(bad.K, S(Space::B, {{"1", "-1/5", 1}}));
  auto v = check_polynomiality(np, bad);
  CHECK(!v.pass);
  CHECK(!v.detail.empty());
}
