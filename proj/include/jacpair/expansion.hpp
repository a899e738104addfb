#ifndef JACPAIR_EXPANSION_HPP
#define JACPAIR_EXPANSION_HPP

#include <vector>

#include "jacpair/series.hpp"
#include "jacpair/verdict.hpp"

namespace jac {

enum class ExpandKind { G_IN_F, Y_IN_F };

// G = sum_i coeffs[i] F^{(n-i)/m} (or y = sum_i coeffs[i] F^{(1-i)/m}).
// The coefficients live in the AX space.
struct ExpansionCoeffs {
  ExpandKind kind = ExpandKind::G_IN_F;
  long long m = 1;
  long long n = 0;
  std::vector<Series> coeffs;
};

ExpansionCoeffs expand_G_in_F(const Series& F, const Series& G, long long depth);
ExpansionCoeffs expand_y_in_F(const Series& F, long long depth);

std::string expansion_json(const ExpansionCoeffs& ec);

// Closed-form coefficient c_{l,i} of F^{(l-i)/m} in the expansion of y^l:
//   c_{l,i} = -(l/(i-l)) Coeff(F^{(i-l)/m}, y^{-l})        for i != l,
//   c_{l,l} = (1/m) Coeff(F^{-1} d_y F, y^{-l-1})          for l > 0.
// With k != -m the same formula gives the F^{-1} coefficient of y^l F^{k/m}
// at i = m+k+l; the i reported here is always the index in the y^l expansion.
Series coeff_of_F_power(const Series& F, long long l, long long i, long long depth);

// b_i constant for i < m+n-1 and d_x b_{i+m+n-1} = -((1-i)J/m) bbar_i.
Verdict check_b_derivative_law(const Series& F, const Series& G, long long depth);

// R_0 built from the expansion data of a quasi-Jacobi pair; [F<0>, R_0] = J.
Series compute_R0(const Series& F, const Series& G, long long depth);

// a1 P d_y priF + a2 priF d_y P = a3 priF^{a+1} with a1 = -a*a2 - m'(p'+q),
// a2 = p'm + m0 q, a3 = qJ x^{1-m0}; J is recovered from the leading terms.
Verdict check_edge_ode(const Series& priF, const Series& P, long long a,
                       long long pPrime, long long q, long long m, const Rat& m0,
                       long long mPrime);

}  // namespace jac

#endif
