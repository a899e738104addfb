#ifndef JACPAIR_POISSON_HPP
#define JACPAIR_POISSON_HPP

#include <vector>

#include "jacpair/series.hpp"
#include "jacpair/verdict.hpp"

namespace jac {

// [F,G] = (d_x F)(d_y G) - (d_y F)(d_x G)
Series bracket(const Series& F, const Series& G);

// tr F = Coeff(F, x^-1 y^-1)
Rat trace(const Series& F);

// One step of a composite automorphism.  EXP_AD is e^{ad_H}; Z_C is
// (x,y) -> (x, y - c/x); MONOMIAL_CHANGE is x^i y^j -> x^{(qi-pj)/(q-p)} y^j
// (needs p < q); SHIFT_Y is y -> y + lambda x^e.
struct AutoStep {
  enum class Kind { EXP_AD, Z_C, MONOMIAL_CHANGE, SHIFT_Y } kind = Kind::Z_C;
  Series H;                  // EXP_AD
  Rat c;                     // Z_C
  long long p = 0, q = 1;    // MONOMIAL_CHANGE
  Rat lambda, e;             // SHIFT_Y
};

struct AutoLog {
  std::vector<AutoStep> steps;
};

// e^{ad_H}(P) = sum_i ad_H^i(P)/i!.  H may contain x-degree-1 terms only
// of the shape x(a0 y + a1); anything steeper is rejected.
Series exp_ad(const Series& H, const Series& P, long long depth);

Series apply_auto(const AutoLog& log, const Series& F, long long depth = 12);

std::string auto_log_json(const AutoLog& log);
AutoLog auto_log_parse(const std::string& text);

// Necessary-condition test: tr((F-c)^a) = 0 over a finite sample grid.
struct CandidateReport {
  bool pass = true;
  Rat a, c, traceValue;  // witness when pass == false
};

CandidateReport is_jacobian_candidate(const Series& F, const std::vector<Rat>& aSamples,
                                      const std::vector<Rat>& cSamples, long long depth);
// Canonical grid: a in {+-1, +-1/m, (1-m-i)/m for i <= 3}, c in {0} union
// rational roots of the y-constant coefficient.
CandidateReport is_jacobian_candidate(const Series& F, long long depth);

// Partner G with [F,G] = 1 to the guaranteed floor (deg_y F >= 1 only).
Series construct_partner(const Series& F, long long depth);

// res_t(F dG/dt) = J res_t(u dv/dt) under x = u(t), y = v(t), given
// res_x(F d_x G) = 0.  u, v are Laurent series in the AX space read in t.
Verdict residue_pullback_check(const Series& F, const Series& G, const Series& u,
                               const Series& v, long long depth);

}  // namespace jac

#endif
