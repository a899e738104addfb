#ifndef JACPAIR_WEYL_HPP
#define JACPAIR_WEYL_HPP

#include <map>
#include <optional>
#include <string>

#include "jacpair/series.hpp"
#include "jacpair/verdict.hpp"

namespace jac {

// A Weyl-algebra element in standard form: u always appears before v.
// UV_STANDARD keys are (u-exponent, v-exponent); W_FORM keys are
// (u-exponent, w-exponent) with w = uv written after the u power.
enum class WeylRep { UV_STANDARD, W_FORM };

const char* weyl_rep_str(WeylRep r);

struct WKey {
  Rat u;        // u-exponent, denominator divides N
  long long v;  // v-exponent (w-exponent in W_FORM)
  friend bool operator==(const WKey& a, const WKey& b) { return a.u == b.u && a.v == b.v; }
};

struct WKeyLess {
  bool operator()(const WKey& a, const WKey& b) const {
    if (a.u != b.u) return a.u > b.u;  // descending u
    return a.v > b.v;                  // then descending v (resp. w)
  }
};

// Truncated like Series: entries below a floor are unknown, not zero,
// and comparisons hold above the common floors.
struct WeylSeries {
  WeylRep rep = WeylRep::UV_STANDARD;
  long long N = 1;
  std::map<WKey, Rat, WKeyLess> terms;
  std::optional<Rat> uFloor;
  std::optional<long long> vFloor;  // w-floor in W_FORM

  bool known_zero() const { return terms.empty(); }
  bool is_exact() const { return !uFloor && !vFloor; }
};

WeylSeries weyl_zero(WeylRep rep);
WeylSeries weyl_const(WeylRep rep, const Rat& c);
WeylSeries weyl_term(WeylRep rep, const Rat& c, const Rat& ue, long long ve);

void weyl_normalize(WeylSeries& F);
WeylSeries weyl_truncated(const WeylSeries& F, const std::optional<Rat>& uf,
                          const std::optional<long long>& vf);
Rat weyl_coeff(const WeylSeries& F, const Rat& ue, long long ve);
bool weyl_equal(const WeylSeries& F, const WeylSeries& G);

WeylSeries weyl_add(const WeylSeries& F, const WeylSeries& G);
WeylSeries weyl_sub(const WeylSeries& F, const WeylSeries& G);
WeylSeries weyl_neg(const WeylSeries& F);
WeylSeries weyl_scale(const WeylSeries& F, const Rat& c);

// Normal-ordered product.  Reordering sums that do not terminate are cut
// at the provable floors, or at `depth` levels below the leading pair
// when both factors are exact (the cut is recorded in the floors).
WeylSeries normal_product(const WeylSeries& F, const WeylSeries& G, long long depth = 24);

// [F, G] = FG - GF.
WeylSeries weyl_bracket(const WeylSeries& F, const WeylSeries& G, long long depth = 24);

WeylSeries weyl_pow_int(const WeylSeries& F, long long k, long long depth = 24);

// Two-sided inverse of a series whose leading term dominates, solved by
// residual squaring; `depth` counts kept levels below the leading term.
WeylSeries weyl_inverse(const WeylSeries& F, long long depth);

// E with E^b = F^a, normalized by e_0 = f_0^{a/b} on the leading block.
WeylSeries weyl_fractional_power(const WeylSeries& F, long long a, long long b,
                                 long long depth);

// Exact basis change u^i v^j = u^{i-j} w(w-1)...(w-j+1) (and the
// reciprocal ascending product for j < 0, truncated to floors).
WeylSeries to_w_form(const WeylSeries& F, long long depth = 24);
WeylSeries from_w_form(const WeylSeries& F, long long depth = 24);

// Coefficient of u^0 w^{-1}, equivalently of u^{-1} v^{-1}.
Rat weyl_trace(const WeylSeries& F);

// The derivations with d_w(u) = 0, d_w(v) = u^{-1} and
// d_w^v(u) = v^{-1}, d_w^v(v) = 0.
WeylSeries partial_w(const WeylSeries& F, long long depth = 24);
WeylSeries partial_w_v(const WeylSeries& F, long long depth = 24);

// Substitute w -> w + delta in W_FORM (integer delta keeps it exact on
// polynomial parts; negative powers expand to the floor).
WeylSeries shift_w(const WeylSeries& F, const Rat& delta, long long depth = 24);

// u -> -x, v -> y onto the Poisson side, and its inverse.
Series bar_map(const WeylSeries& F);
WeylSeries bar_unmap(const Series& F);

struct VertexSolution {
  long long m0 = 0, m = 0;
  Rat alpha, beta;
};

// Exact 2x2 solve of the vanishing-trace conditions at a vertex (m0, m),
// asserted against the closed forms m0*m/2 and (1-m0)(1-m)/2.
VertexSolution dixmier_vertex_solve(long long m0, long long m);

// Builds F<0> = u^{m0} v^m + alpha u^{m0-1} v^{m-1} and the partner
// R<0> from the closed-form product f(w) r(w), then checks the
// telescoped bracket [F<0>, R<0>] = 1 and both trace residuals.
Verdict vertex_bracket_check(long long m0, long long m, long long depth);

std::string weyl_to_json(const WeylSeries& F);
WeylSeries weyl_from_json(const std::string& text);

std::string weyl_pretty(const WeylSeries& F);

}  // namespace jac

#endif
