#ifndef JACPAIR_TEST_HELPERS_HPP
#define JACPAIR_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "jacpair/series.hpp"

namespace jt {

using namespace jac;

// Terse builder: S(P, {{c, x, y}, ...}) with string rationals.
struct T {
  const char* c;
  const char* x;
  long long y;
};

inline Series S(Space sp, std::initializer_list<T> ts) {
  Series F = make_zero(sp);
  for (auto& t : ts) F.terms[{rat_parse(t.x), t.y}] += rat_parse(t.c);
  normalize(F);
  return F;
}

inline Rat Q(const char* s) { return rat_parse(s); }

// Deterministic small random rationals / polynomials for property suites.
struct Rng {
  std::mt19937 g;
  explicit Rng(unsigned seed) : g(seed) {}
  long long i(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(g);
  }
  Rat q(long long lo = -5, long long hi = 5) {
    long long n = i(lo, hi);
    long long d = i(1, 4);
    return Rat(n, d);
  }
  // random exact polynomial in x and y, small support
  Series poly(Space sp, int nterms, long long xmax = 3, long long ymax = 3) {
    Series F = make_zero(sp);
    for (int k = 0; k < nterms; ++k) {
      long long y = sp == Space::AX ? 0 : i(0, ymax);
      F.terms[{Rat(i(0, xmax)), y}] += q();
    }
    normalize(F);
    return F;
  }
};

}  // namespace jt

#endif
