#include "jacpair/expansion.hpp"

#include <algorithm>

#include "jacpair/newton.hpp"
#include "jacpair/poisson.hpp"
#include "json.hpp"

namespace jac {

namespace {

Series to_B(const Series& F) { return F.space == Space::B ? F : retag(F, Space::B); }

// The y^level block of S as a series in x alone.
Series y_block_ax(const Series& S, long long level) {
  Series R = make_zero(Space::AX);
  R.N = S.N;
  for (auto& [k, c] : S.terms)
    if (k.y == level) R.terms[{k.x, 0}] = c;
  R.xFloor = S.xFloor;
  normalize(R);
  return R;
}

void require_monic_leading(const Series& F, long long m) {
  std::optional<Rat> top;
  for (auto& [k, c] : F.terms)
    if (k.y == m && (!top || k.x > *top)) top = k.x;
  if (!top || coeff(F, *top, m) != 1)
    throw JacError(Err::NONMONIC, "expansion: leading coefficient of F is not 1");
}

ExpansionCoeffs expand_core(const Series& Fin, const Series& Gin, ExpandKind kind,
                            long long depth) {
  Series F = to_B(Fin);
  Series G = to_B(Gin);
  auto dm = deg_y(F);
  if (!dm || *dm < 1)
    throw JacError(Err::PRECONDITION_FAILED, "expansion: need deg_y F >= 1");
  long long m = *dm;
  require_monic_leading(F, m);
  auto dn = deg_y(G);
  long long n = dn ? *dn : 0;

  long long fdepth = depth + 6;
  ExpansionCoeffs ec;
  ec.kind = kind;
  ec.m = m;
  ec.n = n;
  Series R = G;
  for (long long i = 0; i <= depth; ++i) {
    long long lvl = n - i;
    if (R.yFloor && lvl < *R.yFloor) break;  // block unknowable at this depth
    Series Pi = lvl == 0 ? make_const(Space::B, Rat(1))
                         : fractional_power(F, lvl, m, fdepth);
    Series blockP = y_block_ax(Pi, lvl);
    Series blockR = y_block_ax(R, lvl);
    Series bi;
    if (blockR.known_zero()) {
      bi = blockR;
    } else {
      bi = mul(blockR, invert(blockP, fdepth));
    }
    ec.coeffs.push_back(bi);
    if (!(bi.known_zero() && bi.is_exact()))
      R = sub(R, mul(retag(bi, Space::B), Pi));
  }
  return ec;
}

}  // namespace

ExpansionCoeffs expand_G_in_F(const Series& F, const Series& G, long long depth) {
  return expand_core(F, G, ExpandKind::G_IN_F, depth);
}

ExpansionCoeffs expand_y_in_F(const Series& F, long long depth) {
  return expand_core(F, make_monomial(Space::B, Rat(1), Rat(0), 1), ExpandKind::Y_IN_F,
                     depth);
}

std::string expansion_json(const ExpansionCoeffs& ec) {
  nlohmann::ordered_json j;
  j["kind"] = ec.kind == ExpandKind::G_IN_F ? "G_IN_F" : "Y_IN_F";
  j["m"] = ec.m;
  j["n"] = ec.n;
  auto arr = nlohmann::ordered_json::array();
  for (auto& s : ec.coeffs) arr.push_back(nlohmann::ordered_json::parse(to_json(s)));
  j["coeffs"] = arr;
  return j.dump();
}

Series coeff_of_F_power(const Series& Fin, long long l, long long i, long long depth) {
  Series F = to_B(Fin);
  auto dm = deg_y(F);
  if (!dm || *dm < 1)
    throw JacError(Err::PRECONDITION_FAILED, "coefficient formula: need deg_y F >= 1");
  long long m = *dm;
  if (i == l) {
    if (l == 0) return make_const(Space::AX, Rat(1));
    if (l < 0)
      throw JacError(Err::PRECONDITION_FAILED, "coefficient formula: i = l needs l > 0");
    // c_{l,l} = (1/m) [y^{-l-1}] (F^{-1} d_y F); the extra -1 absorbs the
    // degree shift of the derivative
    Series W = mul(invert(F, depth), partial(F, Var::Y));
    return scale(y_block_ax(W, -l - 1), Rat(1, m));
  }
  if (i - l == -m)
    throw JacError(Err::DEGENERATE, "coefficient formula: power exponent collapses");
  Series P = fractional_power(F, i - l, m, depth);
  return scale(y_block_ax(P, -l), Rat(-l) / Rat(i - l));
}

namespace {

// [F,G] must be a nonzero constant above the floor; returns it.
Rat qj_constant(const Series& F, const Series& G) {
  Series J = bracket(F, G);
  for (auto& [k, c] : J.terms)
    if (!(k.x == 0 && k.y == 0))
      throw JacError(Err::NOT_QJ_PAIR, "[F,G] is not a constant");
  Rat j = coeff(J, Rat(0), 0);
  if (j == 0) throw JacError(Err::NOT_QJ_PAIR, "[F,G] vanishes above the floor");
  return j;
}

}  // namespace

Verdict check_b_derivative_law(const Series& Fin, const Series& Gin, long long depth) {
  Series F = to_B(Fin);
  Series G = to_B(Gin);
  Rat J = qj_constant(F, G);
  long long m = deg_y(F).value_or(0);
  long long n = deg_y(G).value_or(0);
  Verdict v;
  if (m + n < 1) {
    v.pass = false;
    v.detail = "m+n < 1";
    return v;
  }
  ExpansionCoeffs b = expand_G_in_F(F, G, depth + m + n - 1);
  ExpansionCoeffs bb = expand_y_in_F(F, depth);
  for (long long i = 0; i < std::min<long long>(m + n - 1, b.coeffs.size()); ++i)
    for (auto& [k, c] : b.coeffs[i].terms)
      if (k.x != 0) {
        v.pass = false;
        v.detail = "b_" + std::to_string(i) + " is not a constant";
        return v;
      }
  long long imax = std::min<long long>(
      depth, std::min<long long>(b.coeffs.size() - (m + n - 1), bb.coeffs.size()) - 1);
  for (long long i = 0; i <= imax; ++i) {
    Series lhs = partial(b.coeffs[i + m + n - 1], Var::X);
    Series rhs = scale(bb.coeffs[i], Rat(-(1 - i)) * J / Rat(m));
    if (!equal(lhs, rhs)) {
      v.pass = false;
      v.detail = "d_x b_" + std::to_string(i + m + n - 1) + " mismatch";
      return v;
    }
  }
  v.detail = "checked " + std::to_string(imax + 1) + " derivative relations";
  return v;
}

Series compute_R0(const Series& Fin, const Series& Gin, long long depth) {
  Series F = to_B(Fin);
  Series G = to_B(Gin);
  Rat J = qj_constant(F, G);
  long long m = deg_y(F).value_or(0);
  long long n = deg_y(G).value_or(0);
  if (m < 1 || m + n < 2)
    throw JacError(Err::PRECONDITION_FAILED, "R0: need deg_y F >= 1 and m+n >= 2");
  Rat m0 = vertex_m0(F);
  PrimeDegree pd = prime_degree(F);
  if (!pd.finite()) throw JacError(Err::DEGENERATE, "R0: F is a monomial column");
  Rat p = pd.value;
  Rat slope = m0 / Rat(m) + p;
  if (slope == 0) throw JacError(Err::MU_DEGENERATE, "R0: p = -m0/m");
  Rat mu = Rat(m + n) - (Rat(1) + p) / slope;
  PrimaryPolynomial pp = primary_polynomial(F, p);

  ExpansionCoeffs bb = expand_y_in_F(F, depth);
  // b_mu is needed for the first term and for the limit convention
  std::optional<ExpansionCoeffs> b;
  auto b_coeff_at_x0 = [&](long long idx) {
    if (!b) b = expand_G_in_F(F, G, std::max(idx, depth));
    if (idx >= static_cast<long long>(b->coeffs.size())) return Rat(0);
    return coeff(b->coeffs[idx], Rat(0), 0);
  };

  Series R0 = make_zero(Space::B);
  if (is_integer(mu) && mu >= 0 && mu < m + n - 1) {
    Rat bt = b_coeff_at_x0(static_cast<long long>(rat_num(mu)));
    if (bt != 0) {
      Series head = fractional_power(pp.priF, static_cast<long long>(rat_num(Rat(n) - mu)),
                                     pp.d, depth + 2);
      R0 = add(R0, mul_monomial(head, bt, m0 * (Rat(n) - mu) / Rat(m), 0));
    }
  }
  for (long long i = 0; i < static_cast<long long>(bb.coeffs.size()); ++i) {
    Rat sigma = Rat(i) * slope - m0 / Rat(m);
    Rat c;
    if (Rat(1) + sigma == 0) {
      c = b_coeff_at_x0(m + n - 1 + i);  // the limit convention
    } else {
      Rat bi0 = coeff(bb.coeffs[i], sigma, 0);
      c = -(J / Rat(m)) * Rat(1 - i) / (Rat(1) + sigma) * bi0;
    }
    if (c == 0) continue;
    Series pw = fractional_power(pp.priF, 1 - i - m, pp.d, depth + 2);
    R0 = add(R0, mul_monomial(pw, c, Rat(1) - m0 + Rat(i) * p, 0));
  }
  // the first omitted summand tops out at g(1-i-m)/d; everything above is final
  long long g = deg_y(pp.priF).value_or(m);
  Rat top = Rat(g) * Rat(1 - static_cast<long long>(bb.coeffs.size()) - m) / Rat(pp.d);
  long long yf = static_cast<long long>(rat_floor(top)) + 1;
  return truncated(R0, std::nullopt, yf);
}

Verdict check_edge_ode(const Series& priF, const Series& P, long long a,
                       long long pPrime, long long q, long long m, const Rat& m0,
                       long long mPrime) {
  Rat a2 = Rat(pPrime) * Rat(m) + m0 * Rat(q);
  Rat a1 = -Rat(a) * a2 - Rat(mPrime) * Rat(pPrime + q);
  Series lhs = add(scale(mul(P, partial(priF, Var::Y)), a1),
                   scale(mul(priF, partial(P, Var::Y)), a2));
  long long k = a + 1 >= 0 ? 0 : -(a + 1);
  Series L = k > 0 ? mul(lhs, pow_int(priF, k)) : lhs;
  Series T = mul_monomial(pow_int(priF, a + 1 + k), Rat(1), Rat(1) - m0, 0);
  Verdict v;
  if (is_zero_above_floor(L)) {
    v.pass = false;
    v.detail = "zero left side: holds only if a3 = 0";
    return v;
  }
  if (is_zero_above_floor(T)) {
    v.pass = false;
    v.detail = "zero right side against nonzero left side";
    return v;
  }
  auto lead = T.terms.begin();
  Rat c = coeff(L, lead->first.x, lead->first.y) / lead->second;
  v.pass = equal(L, scale(T, c));
  v.detail = v.pass ? "qJ = " + rat_str(c) : "residual is nonzero";
  return v;
}

}  // namespace jac
