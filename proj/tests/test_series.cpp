#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"

using namespace jt;

TEST_CASE("add identities and cancellation") {
  Series F = S(Space::P, {{"1", "0", 1}, {"1", "1", 0}});  // y + x
  CHECK(equal(add(F, make_zero(Space::P)), F));
  Series G = S(Space::P, {{"1", "0", 2}, {"1", "1", 0}});  // y^2 + x
  Series mx = S(Space::P, {{"-1", "1", 0}});
  CHECK(equal(add(G, mx), S(Space::P, {{"1", "0", 2}})));
}

TEST_CASE("add merges exponent denominators via lcm") {
  Series a = S(Space::AX, {{"1", "1/2", 0}});
  Series b = S(Space::AX, {{"1", "1/3", 0}});
  Series s = add(a, b);
  CHECK(s.N == 6);
  CHECK(coeff(s, Q("1/2"), 0) == 1);
  CHECK(coeff(s, Q("1/3"), 0) == 1);
}

TEST_CASE("mul reproduces the two-factor product") {
  // (y+x^2)(y+x^3) = y^2 + (x^2+x^3) y + x^5
  Series F = S(Space::P, {{"1", "0", 1}, {"1", "2", 0}});
  Series G = S(Space::P, {{"1", "0", 1}, {"1", "3", 0}});
  Series E = S(Space::P, {{"1", "0", 2}, {"1", "2", 1}, {"1", "3", 1}, {"1", "5", 0}});
  CHECK(equal(mul(F, G), E));
  CHECK(equal(mul(F, make_const(Space::P, Rat(1))), F));
  CHECK(equal(mul(S(Space::AX, {{"1", "1", 0}}), S(Space::AX, {{"1", "-1", 0}})),
              make_const(Space::AX, Rat(1))));
}

TEST_CASE("invert in the descending-y space") {
  // H = xy + (xy)^2, depth 4: sum_{i=2}^{5} (-1)^i (xy)^{-i}
  Series H = S(Space::B, {{"1", "1", 1}, {"1", "2", 2}});
  Series inv = invert(H, 4);
  Series E = S(Space::B, {{"1", "-2", -2}, {"-1", "-3", -3}, {"1", "-4", -4}, {"-1", "-5", -5}});
  E.yFloor = -5;
  CHECK(equal(inv, E));
  CHECK(inv.yFloor.has_value());
  CHECK(*inv.yFloor == -5);

  Series x2 = S(Space::AX, {{"1", "2", 0}});
  CHECK(equal(invert(x2, 3), S(Space::AX, {{"1", "-2", 0}})));

  // geometric series oracle: 1/(y-x) = y^-1 + x y^-2 + x^2 y^-3 + ...
  Series ymx = S(Space::B, {{"1", "0", 1}, {"-1", "1", 0}});
  Series g = invert(ymx, 3);
  Series Eg = S(Space::B, {{"1", "0", -1}, {"1", "1", -2}, {"1", "2", -3}});
  Eg.yFloor = -3;
  CHECK(equal(g, Eg));
}

TEST_CASE("fractional power: cube root of an exact cube") {
  // F1 = x^4 (y^2 + x^-1)^3 expanded = x^4 y^6 + 3 x^3 y^4 + 3 x^2 y^2 + x
  Series F = S(Space::B, {{"1", "4", 6}, {"3", "3", 4}, {"3", "2", 2}, {"1", "1", 0}});
  Series R = fractional_power(F, 1, 3, 8);
  Series E = S(Space::B, {{"1", "4/3", 2}, {"1", "1/3", 0}});
  CHECK(equal(R, E));
  CHECK(equal(fractional_power(F, 1, 1, 4), F));
}

TEST_CASE("fractional power: binomial series tail") {
  Series F = S(Space::B, {{"1", "0", 2}, {"1", "1", 0}});  // y^2 + x
  Series R = fractional_power(F, 1, 2, 4);
  Series E = S(Space::B,
               {{"1", "0", 1}, {"1/2", "1", -1}, {"-1/8", "2", -3}, {"1/16", "3", -5}});
  E.yFloor = -5;
  CHECK(equal(R, E));
}

TEST_CASE("partial derivatives") {
  CHECK(equal(partial(S(Space::P, {{"1", "2", 4}}), Var::Y), S(Space::P, {{"4", "2", 3}})));
  CHECK(equal(partial(S(Space::AX, {{"1", "5/8", 0}}), Var::X),
              S(Space::AX, {{"5/8", "-3/8", 0}})));
  CHECK(equal(partial(make_const(Space::P, Rat(7)), Var::X), make_zero(Space::P)));
}

TEST_CASE("poly_power_root") {
  Series base = S(Space::P, {{"1", "0", 2}, {"1", "1", 0}});  // y^2 + x
  auto r = poly_power_root(pow_int(base, 2), 2);
  REQUIRE(r.has_value());
  CHECK(equal(*r, base));
  CHECK(!poly_power_root(base, 2).has_value());
  auto r3 = poly_power_root(S(Space::P, {{"1", "3", 3}}), 3);
  REQUIRE(r3.has_value());
  CHECK(equal(*r3, S(Space::P, {{"1", "1", 1}})));
}

TEST_CASE("property: k-th power round trip") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    for (long long k : {2LL, 3LL}) {
      // monic leading in descending y
      Series F = S(Space::B, {{"1", "0", 3}});
      Series tail = rng.poly(Space::B, 3, 2, 2);
      for (auto& [key, c] : tail.terms)
        if (key.y < 3) F.terms[key] += c;
      normalize(F);
      Series P = pow_int(F, k);
      Series R = fractional_power(P, 1, k, 6);
      CHECK(equal(R, truncated(F, R.xFloor, R.yFloor)));
    }
  }
}

TEST_CASE("property: binomial recurrence for x-only powers") {
  // h = (1 + z1 x^-1 + z2 x^-2 + z3 x^-3 + z4 x^-4)^beta; coefficients h_{beta,j}
  // satisfy  sum_s (s(beta+1) - r) z_s h_{beta,r-s} = 0   and
  //          sum_s z_s h_{beta,r-s} = h_{beta+1,r}.
  Rng rng(7);
  for (Rat beta : {Q("1/2"), Q("-1/3"), Q("5/2")}) {
    std::vector<Rat> z{Rat(0), rng.q(), rng.q(), rng.q(), rng.q()};
    Series F = make_const(Space::AX, Rat(1));
    for (int s = 1; s <= 4; ++s) F.terms[{Rat(-s), 0}] += z[s];
    normalize(F);
    long long depth = 12;
    long long bn = static_cast<long long>(rat_num(beta)), bd = static_cast<long long>(rat_den(beta));
    Series H = fractional_power(F, bn, bd, depth + 6);
    Series H1 = fractional_power(F, bn + bd, bd, depth + 6);
    auto h = [&](const Series& X, long long j) { return coeff(X, Rat(-j), 0); };
    for (long long r = 1; r <= depth; ++r) {
      Rat lhs = 0, conv = 0;
      for (long long s = 1; s <= 4 && s <= r; ++s) {
        lhs += (Rat(s) * (beta + 1) - r) * z[s] * h(H, r - s);
        conv += z[s] * h(H, r - s);
      }
      lhs += Rat(-r) * h(H, r);  // s = 0 term, z_0 = 1
      conv += h(H, r);
      CHECK(lhs == 0);
      CHECK(conv == h(H1, r));
    }
  }
}

TEST_CASE("property: ring laws on random triples") {
  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    Series A = rng.poly(Space::P, 4), B = rng.poly(Space::P, 4), C = rng.poly(Space::P, 4);
    CHECK(equal(mul(A, B), mul(B, A)));
    CHECK(equal(mul(mul(A, B), C), mul(A, mul(B, C))));
    CHECK(equal(mul(A, add(B, C)), add(mul(A, B), mul(A, C))));
  }
}

TEST_CASE("property: invert is a right inverse") {
  Rng rng(5);
  int done = 0;
  while (done < 100) {
    Space sp = done % 2 ? Space::B : Space::AX;
    Series F = rng.poly(sp, 3, 3, 2);
    F.terms[{Rat(4), sp == Space::B ? 3 : 0}] = 1;  // dominating monic lead
    normalize(F);
    Series G;
    try {
      G = invert(F, 5);
    } catch (const JacError&) {
      continue;
    }
    Series P = mul(F, G);
    CHECK(equal(P, truncated(make_const(sp, Rat(1)), P.xFloor, P.yFloor)));
    ++done;
  }
}

TEST_CASE("serialization round trip is bit exact") {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    Series F = rng.poly(Space::P, 5);
    F.terms[{Q("-5/8"), 2}] += Q("3/8");
    F.xFloor = Q("-5");
    normalize(F);
    std::string s = to_json(F);
    Series G = from_json(s);
    CHECK(to_json(G) == s);
    CHECK(equal(F, G));
  }
  // schema shape from the interface contract
  Series M = make_monomial(Space::P, Q("3/8"), Q("-5/8"), 2);
  M.N = 8;
  M.xFloor = Q("-5");
  CHECK(to_json(M) ==
        R"({"space":"P","N":8,"xFloor":"-5","yFloor":null,"terms":[{"c":"3/8","x":"-5/8","y":2}]})");
}

TEST_CASE("floors: unknown regions stay unknown through mul") {
  Series F = S(Space::AX, {{"1", "0", 0}, {"1", "-1", 0}});
  F.xFloor = Q("-1");
  Series G = S(Space::AX, {{"1", "2", 0}});
  Series P = mul(F, G);
  REQUIRE(P.xFloor.has_value());
  CHECK(*P.xFloor == Q("1"));
}
