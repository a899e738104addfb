#ifndef JACPAIR_RAT_HPP
#define JACPAIR_RAT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace jac {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error codes shared by the whole toolkit.  The C API exposes the same
// enumeration; internally we throw JacError.
enum class Err {
  OK = 0,
  SPACE_MISMATCH,
  NOT_INVERTIBLE,
  BAD_LEADING,
  N_OVERFLOW,
  INFINITE_SUPPORT,
  PRIME_DEGREE_EXCEEDED,
  NOT_POLYNOMIAL,
  EDGE_NOT_FOUND,
  BAD_GENERATOR,
  BELOW_FLOOR,
  OBSTRUCTION,
  PRECONDITION_FAILED,
  NONMONIC,
  DEGENERATE,
  NOT_QJ_PAIR,
  MU_DEGENERATE,
  NO_RELATION,
  IRRATIONAL_ROOT,
  VERTEX_INVALID,
  STEP_LIMIT,
  LEVEL_NOT_CLEAN,
  DEPTH_INSUFFICIENT,
  NORMALIZATION_AMBIGUOUS,
  REPRESENTATION_MISMATCH,
  BAD_EXPONENT,
  FRACTIONAL_U_IN_W_FORM,
  SINGULAR_SYSTEM,
  UNKNOWN_ATOM,
  NONMONOMIAL_DIVISOR,
  PARSE_ERROR,
  INTERNAL,
};

struct JacError : std::runtime_error {
  Err code;
  JacError(Err c, const std::string& what) : std::runtime_error(what), code(c) {}
};

const char* err_name(Err c);

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// Rendered as "p/q" in lowest terms, or "p" when q == 1.
std::string rat_str(const Rat& r);
Rat rat_parse(const std::string& s);

Int gcd_int(Int a, Int b);
Int lcm_int(const Int& a, const Int& b);

// Floor of a rational as an Int.
Int rat_floor(const Rat& r);

// Exact n-th root of an integer if one exists.
std::optional<Int> int_root(const Int& v, unsigned n);
// Exact b-th root of a rational (b > 0), honoring sign.
std::optional<Rat> rat_root(const Rat& v, unsigned b);
// c^(a/b) when the result is rational.
std::optional<Rat> rat_pow_frac(const Rat& c, long long a, long long b);
// c^k for integer k (c != 0 when k < 0).
Rat rat_pow_int(const Rat& c, long long k);

// Generalized binomial coefficient C(a, s) for rational a, integer s >= 0.
Rat binom(const Rat& a, long long s);

Rat factorial(long long n);

}  // namespace jac

#endif
