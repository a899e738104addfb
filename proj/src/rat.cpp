#include "jacpair/rat.hpp"

#include <boost/multiprecision/integer.hpp>

namespace jac {

const char* err_name(Err c) {
  switch (c) {
    case Err::OK: return "OK";
    case Err::SPACE_MISMATCH: return "SPACE_MISMATCH";
    case Err::NOT_INVERTIBLE: return "NOT_INVERTIBLE";
    case Err::BAD_LEADING: return "BAD_LEADING";
    case Err::N_OVERFLOW: return "N_OVERFLOW";
    case Err::INFINITE_SUPPORT: return "INFINITE_SUPPORT";
    case Err::PRIME_DEGREE_EXCEEDED: return "PRIME_DEGREE_EXCEEDED";
    case Err::NOT_POLYNOMIAL: return "NOT_POLYNOMIAL";
    case Err::EDGE_NOT_FOUND: return "EDGE_NOT_FOUND";
    case Err::BAD_GENERATOR: return "BAD_GENERATOR";
    case Err::BELOW_FLOOR: return "BELOW_FLOOR";
    case Err::OBSTRUCTION: return "OBSTRUCTION";
    case Err::PRECONDITION_FAILED: return "PRECONDITION_FAILED";
    case Err::NONMONIC: return "NONMONIC";
    case Err::DEGENERATE: return "DEGENERATE";
    case Err::NOT_QJ_PAIR: return "NOT_QJ_PAIR";
    case Err::MU_DEGENERATE: return "MU_DEGENERATE";
    case Err::NO_RELATION: return "NO_RELATION";
    case Err::IRRATIONAL_ROOT: return "IRRATIONAL_ROOT";
    case Err::VERTEX_INVALID: return "VERTEX_INVALID";
    case Err::STEP_LIMIT: return "STEP_LIMIT";
    case Err::LEVEL_NOT_CLEAN: return "LEVEL_NOT_CLEAN";
    case Err::DEPTH_INSUFFICIENT: return "DEPTH_INSUFFICIENT";
    case Err::NORMALIZATION_AMBIGUOUS: return "NORMALIZATION_AMBIGUOUS";
    case Err::REPRESENTATION_MISMATCH: return "REPRESENTATION_MISMATCH";
    case Err::BAD_EXPONENT: return "BAD_EXPONENT";
    case Err::FRACTIONAL_U_IN_W_FORM: return "FRACTIONAL_U_IN_W_FORM";
    case Err::SINGULAR_SYSTEM: return "SINGULAR_SYSTEM";
    case Err::UNKNOWN_ATOM: return "UNKNOWN_ATOM";
    case Err::NONMONOMIAL_DIVISOR: return "NONMONOMIAL_DIVISOR";
    case Err::PARSE_ERROR: return "PARSE_ERROR";
    case Err::INTERNAL: return "INTERNAL";
  }
  return "?";
}

std::string rat_str(const Rat& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) {
    s += "/";
    s += rat_den(r).str();
  }
  return s;
}

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw JacError(Err::PARSE_ERROR, "empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw JacError(Err::PARSE_ERROR, "zero denominator: " + s);
    return Rat(num, den);
  } catch (const JacError&) {
    throw;
  } catch (const std::exception&) {
    throw JacError(Err::PARSE_ERROR, "bad rational: " + s);
  }
}

Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

Int rat_floor(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) q -= 1;
  return q;
}

std::optional<Int> int_root(const Int& v, unsigned n) {
  if (n == 0) return std::nullopt;
  if (n == 1) return v;
  if (v == 0) return Int(0);
  bool neg = v < 0;
  if (neg && n % 2 == 0) return std::nullopt;
  Int a = neg ? Int(-v) : v;
  // Newton iteration on integers, then verify.
  Int x = Int(1) << static_cast<unsigned>((boost::multiprecision::msb(a) / n) + 1);
  Int prev = -1;
  while (x != prev) {
    prev = x;
    Int xp = boost::multiprecision::pow(x, n - 1);
    x = ((n - 1) * x + a / xp) / n;
    if (x > prev) break;  // converged from above
  }
  for (Int c = prev - 2; c <= prev + 2; ++c) {
    if (c >= 0 && boost::multiprecision::pow(c, n) == a) return neg ? Int(-c) : c;
  }
  return std::nullopt;
}

std::optional<Rat> rat_root(const Rat& v, unsigned b) {
  auto n = int_root(rat_num(v), b);
  auto d = int_root(rat_den(v), b);
  if (!n || !d) return std::nullopt;
  return Rat(*n, *d);
}

Rat rat_pow_int(const Rat& c, long long k) {
  if (k == 0) return Rat(1);
  if (c == 0) {
    if (k < 0) throw JacError(Err::NOT_INVERTIBLE, "0^negative");
    return Rat(0);
  }
  bool inv = k < 0;
  unsigned long long e = inv ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  Rat base = c, acc = 1;
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  if (inv) acc = Rat(1) / acc;
  return acc;
}

std::optional<Rat> rat_pow_frac(const Rat& c, long long a, long long b) {
  if (b < 0) { a = -a; b = -b; }
  if (b == 0) return std::nullopt;
  Rat p = rat_pow_int(c, a);
  if (b == 1) return p;
  return rat_root(p, static_cast<unsigned>(b));
}

Rat binom(const Rat& a, long long s) {
  if (s < 0) return Rat(0);
  Rat acc = 1;
  for (long long i = 0; i < s; ++i) {
    acc *= (a - i);
    acc /= (i + 1);
  }
  return acc;
}

Rat factorial(long long n) {
  Rat acc = 1;
  for (long long i = 2; i <= n; ++i) acc *= i;
  return acc;
}

}  // namespace jac
