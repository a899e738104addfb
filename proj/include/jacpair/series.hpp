#ifndef JACPAIR_SERIES_HPP
#define JACPAIR_SERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jacpair/rat.hpp"

namespace jac {

// Ambient space of a series.  The tag decides expansion direction:
//   AX - series in x alone, expanded in descending x
//   B  - coefficients in x, expanded in descending y
//   P  - polynomials in y, expanded in descending x
enum class Space { AX, B, P };

const char* space_str(Space s);
Space space_parse(const std::string& s);

struct Key {
  Rat x;        // x-exponent, denominator divides the series' N
  long long y;  // y-exponent
  friend bool operator==(const Key& a, const Key& b) { return a.x == b.x && a.y == b.y; }
};

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const {
    if (a.x != b.x) return a.x > b.x;  // descending x
    return a.y > b.y;                  // then descending y
  }
};

// Global cap on the common exponent denominator N (default 2^20).
long long n_cap();
void set_n_cap(long long cap);

// A truncated two-variable series with exact rational coefficients.
// Terms below a floor are unknown, not zero; comparisons are always
// "equal above the common floor".  Values are immutable by convention:
// every operation returns a fresh Series.
struct Series {
  Space space = Space::P;
  long long N = 1;
  std::map<Key, Rat, KeyLess> terms;
  std::optional<Rat> xFloor;        // nullopt = -infinity (exact in x)
  std::optional<long long> yFloor;  // nullopt = -infinity (exact in y)

  bool known_zero() const { return terms.empty(); }
  bool is_exact() const { return !xFloor && !yFloor; }
};

Series make_zero(Space sp);
Series make_const(Space sp, const Rat& c);
Series make_monomial(Space sp, const Rat& c, const Rat& xe, long long ye);

// Drop exact-zero coefficients and terms strictly below the floors,
// and grow N to cover all stored x-exponent denominators.
void normalize(Series& F);

// Merge floors: the weaker (higher) floor of the two wins.
void join_floors(Series& F, const Series& A, const Series& B);

Series truncated(const Series& F, const std::optional<Rat>& xf,
                 const std::optional<long long>& yf);

Rat coeff(const Series& F, const Rat& xe, long long ye);

// Degrees over stored terms only (values below floor are unknowable).
std::optional<Rat> deg_x(const Series& F);
std::optional<long long> deg_y(const Series& F);

bool equal(const Series& F, const Series& G);  // above the common floors
bool is_zero_above_floor(const Series& F);

Series add(const Series& F, const Series& G);
Series sub(const Series& F, const Series& G);
Series neg(const Series& F);
Series scale(const Series& F, const Rat& c);
Series mul(const Series& F, const Series& G);
Series mul_monomial(const Series& F, const Rat& c, const Rat& xe, long long ye);
Series pow_int(const Series& F, long long k, long long depth = 0);

enum class Var { X, Y };
Series partial(const Series& F, Var v);
// Termwise antiderivative; fails if a x^-1 (resp. y^-1) term is present.
Series antiderivative(const Series& F, Var v);

Series invert(const Series& F, long long depth);
Series fractional_power(const Series& F, long long a, long long b, long long depth);

// Exact k-th root of a y-polynomial with x-Laurent coefficients, if any.
std::optional<Series> poly_power_root(const Series& H, long long k);

// Change the space tag (term data unchanged; validity is checked).
Series retag(const Series& F, Space sp);

// Substitute y -> y + lambda * x^e, expanding binomially; exact for
// y-polynomials, truncated to floors otherwise.
Series shift_y(const Series& F, const Rat& lambda, const Rat& e, long long depth = 64);

// Substitute x -> c * x^k (k a nonzero rational): x^i y^j -> c^i x^{k i} y^j.
// Used by the monomial variable changes.
Series subst_x_power(const Series& F, const Rat& cbase, const Rat& k);

std::string to_json(const Series& F);
Series from_json(const std::string& text);

std::string pretty(const Series& F);  // human-readable, for reports/tests

}  // namespace jac

#endif
