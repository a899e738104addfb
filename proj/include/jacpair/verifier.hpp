#ifndef JACPAIR_VERIFIER_HPP
#define JACPAIR_VERIFIER_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "jacpair/rat.hpp"
#include "jacpair/verdict.hpp"

namespace jac {

// A minimal symbolic engine over monomials in x, y and a few function
// atoms, with polynomial coefficients in the listed parameters and
// exponents that are affine in nu, nu0 and the product k*nu0.  Just
// enough structure for the three verification programs.

enum PPar { P_AP = 0, P_NU, P_NU0, P_BET, P_GAM, P_TC0, P_K };
constexpr int kNumPar = 7;
extern const char* kParName[kNumPar];

using PMono = std::array<int, kNumPar>;

struct PPoly {
  std::map<PMono, Rat> t;
  bool zero() const { return t.empty(); }
};

PPoly pp_const(const Rat& c);
PPoly pp_var(PPar p);
PPoly pp_add(const PPoly& a, const PPoly& b);
PPoly pp_sub(const PPoly& a, const PPoly& b);
PPoly pp_mul(const PPoly& a, const PPoly& b);
PPoly pp_neg(const PPoly& a);
PPoly pp_pow(const PPoly& a, int k);
std::string pp_str(const PPoly& a);

// Rational function num/den; equality by cross-multiplication, with a
// cheap exact-division pass to keep the representation small.
struct PRat {
  PPoly num, den;
};

PRat pr_const(const Rat& c);
PRat pr_poly(const PPoly& p);
PRat pr_add(const PRat& a, const PRat& b);
PRat pr_sub(const PRat& a, const PRat& b);
PRat pr_mul(const PRat& a, const PRat& b);
PRat pr_div(const PRat& a, const PRat& b);
PRat pr_neg(const PRat& a);
bool pr_zero(const PRat& a);
bool pr_equal(const PRat& a, const PRat& b);

// c0 + cnu*nu + cnu0*nu0 + cknu0*(k*nu0)
struct AffExp {
  Rat c0, cnu, cnu0, cknu0;
  friend bool operator==(const AffExp& a, const AffExp& b) {
    return a.c0 == b.c0 && a.cnu == b.cnu && a.cnu0 == b.cnu0 && a.cknu0 == b.cknu0;
  }
  friend bool operator<(const AffExp& a, const AffExp& b) {
    if (a.c0 != b.c0) return a.c0 < b.c0;
    if (a.cnu != b.cnu) return a.cnu < b.cnu;
    if (a.cnu0 != b.cnu0) return a.cnu0 < b.cnu0;
    return a.cknu0 < b.cknu0;
  }
};

AffExp aff_const(const Rat& c);
AffExp aff_add(const AffExp& a, const AffExp& b);
AffExp aff_sub(const AffExp& a, const AffExp& b);
bool aff_is_int(const AffExp& a, long long& out);
// the exponent as a coefficient polynomial (knu0 -> k*nu0)
PPoly aff_poly(const AffExp& a);

enum class PAtom { X, Y, H0, K0, QN, TQ, TQN0 };
extern const char* patom_name(PAtom a);

struct AtomKey {
  PAtom a;
  int primes = 0;  // number of x-derivatives
  friend bool operator==(const AtomKey& x, const AtomKey& y) {
    return x.a == y.a && x.primes == y.primes;
  }
  friend bool operator<(const AtomKey& x, const AtomKey& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.primes < y.primes;
  }
};

struct PTerm {
  PRat coeff;
  std::map<AtomKey, AffExp> pows;
};

struct ParamExpr {
  std::vector<PTerm> terms;
  bool zero() const { return terms.empty(); }
};

ParamExpr pe_zero();
ParamExpr pe_const(const Rat& c);
ParamExpr pe_coeff(const PRat& c);
ParamExpr pe_atom(PAtom a, int primes = 0);
ParamExpr pe_atom_pow(PAtom a, const AffExp& e);
void pe_normalize(ParamExpr& e);
ParamExpr pe_add(const ParamExpr& a, const ParamExpr& b);
ParamExpr pe_sub(const ParamExpr& a, const ParamExpr& b);
ParamExpr pe_mul(const ParamExpr& a, const ParamExpr& b);
ParamExpr pe_neg(const ParamExpr& a);
ParamExpr pe_scale(const ParamExpr& a, const PRat& c);
ParamExpr pe_pow_int(const ParamExpr& a, long long k);
// divide by a single-term expression
ParamExpr pe_div_term(const ParamExpr& a, const ParamExpr& d);
bool pe_equal(const ParamExpr& a, const ParamExpr& b);
std::string pe_str(const ParamExpr& e);

// d/dx with x' = 1, y' = 0 and primed successors for the other atoms.
ParamExpr differentiate(const ParamExpr& e);

// Replace one atom key by an expression.  Non-constant or negative
// exponents require a single-term replacement with coefficient 1.
ParamExpr substitute(const ParamExpr& e, const AtomKey& key, const ParamExpr& rep);

// Replace an atom and all of its primed successors by rep and its
// formal derivatives.
ParamExpr instantiate(const ParamExpr& e, PAtom base, const ParamExpr& rep);

// Replace a parameter by a rational function (constant value required
// when the parameter occurs in exponents).
ParamExpr subst_param(const ParamExpr& e, PPar p, const PRat& val);

// Terms whose coefficient is homogeneous of degree d in p, as written
// (the parameter power stays in place).
ParamExpr coefficient_slice(const ParamExpr& e, PPar p, int d);

// Page 1: f1 = ap R1' - (1 + ap(1-nu))(H0 Knu' + Hnu K0'), rewritten by
// the K0' and (optionally) K0'' relations.  The full pipeline is zero.
ParamExpr main_identity_residual(bool applySecondOrderRule = true);

Verdict verify_main_identity();
Verdict verify_r_coefficients();
Verdict verify_tilde_r();

// The r-coefficients / tilde-r coefficients after instantiation, paired
// with their expected canonical forms, for cross-checking.
std::vector<std::pair<ParamExpr, ParamExpr>> r_coefficient_pairs();
std::vector<std::pair<ParamExpr, ParamExpr>> tilde_r_pairs();

}  // namespace jac

#endif
