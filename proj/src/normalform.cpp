#include "jacpair/normalform.hpp"

#include <algorithm>

namespace jac {

namespace {

// x-block at exponent xa as a pure y-polynomial
Series level_block(const Series& F, const Rat& xa) {
  Series R = make_zero(F.space);
  R.N = 1;
  for (auto& [k, c] : F.terms)
    if (k.x == xa) R.terms[{Rat(0), k.y}] = c;
  normalize(R);
  return R;
}

YPoly to_ypoly(const Series& f) {
  long long d = deg_y(f).value_or(-1);
  YPoly a(std::max<long long>(d + 1, 0), Rat(0));
  for (auto& [k, c] : f.terms) {
    if (k.y < 0) throw JacError(Err::NOT_POLYNOMIAL, "negative y-power");
    a[k.y] = c;
  }
  return a;
}

Series from_ypoly(const YPoly& a, Space sp) {
  Series R = make_zero(sp);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) R.terms[{Rat(0), static_cast<long long>(i)}] = a[i];
  normalize(R);
  return R;
}

// applications of ad_Q needed to reach level `depth` when each one
// descends by i/N
long long apps_for(long long depth, long long i) {
  return (depth + i - 1) / i + 1;
}

long long ll(const Int& v) { return v.convert_to<long long>(); }

}  // namespace

PeelState make_peel_state(const NormalizedPair& np, long long depth) {
  PeelState st;
  st.m = np.m;
  st.n = np.n;
  st.depth = depth;
  st.F = scale(np.F, Rat(1) / np.scaleF);
  st.G = scale(np.G, Rat(1) / np.scaleG);
  st.f = np.f;
  st.g = np.g;
  st.J = np.J / (np.scaleF * np.scaleG);
  st.N = ll(lcm_int(lcm_int(Int(st.F.N), Int(st.G.N)), Int(np.m + np.n)));
  return st;
}

PeelOutcome peel_step(PeelState& st, long long i) {
  if (i <= 0) throw JacError(Err::PRECONDITION_FAILED, "peel level must be positive");
  PeelOutcome out;
  out.Q = make_zero(st.F.space);
  Rat xa = Rat(st.m) / Rat(st.m + st.n);
  Rat xb = Rat(st.n) / Rat(st.m + st.n);
  Rat lvF = xa - Rat(i) / Rat(st.N);
  Rat lvG = xb - Rat(i) / Rat(st.N);

  for (auto& [k, c] : st.F.terms)
    if (k.x > lvF && k.x < xa)
      throw JacError(Err::LEVEL_NOT_CLEAN, "shallower tail level still present in F");
  for (auto& [k, c] : st.G.terms)
    if (k.x > lvG && k.x < xb)
      throw JacError(Err::LEVEL_NOT_CLEAN, "shallower tail level still present in G");

  Series fi = level_block(st.F, lvF);
  Series gi = level_block(st.G, lvG);
  st.fDeg.push_back({i, deg_y(fi).value_or(-1)});
  st.gDeg.push_back({i, deg_y(gi).value_or(-1)});
  if (fi.known_zero() && gi.known_zero()) return out;

  Series fp = partial(st.f, Var::Y), gp = partial(st.g, Var::Y);
  long long di;
  if (i != st.N) {
    Series hb = scale(sub(mul(fi, gp), mul(fp, gi)), Rat(1) / st.J);
    Series kb = scale(sub(scale(mul(st.f, gi), Rat(st.m)), scale(mul(fi, st.g), Rat(st.n))),
                      Rat(1) / (Rat(st.m + st.n) * st.J));
    Rat w = Rat(1) - Rat(i) / Rat(st.N);
    if (!equal(scale(hb, w), neg(partial(kb, Var::Y))))
      throw JacError(Err::NOT_QJ_PAIR, "tail level fails the divergence identity");
    out.Q = mul_monomial(kb, Rat(-st.N) / Rat(st.N - i), w, 0);
    st.qDeg.push_back({i, deg_y(out.Q).value_or(-1)});
    if (out.Q.known_zero()) return out;
    AutoStep s;
    s.kind = AutoStep::Kind::EXP_AD;
    s.H = out.Q;
    out.steps.steps.push_back(s);
    di = apps_for(st.depth, i);
  } else {
    Series P = sub(scale(mul(st.f, gi), Rat(st.m)), scale(mul(fi, st.g), Rat(st.n)));
    for (auto& [k, c] : P.terms)
      if (!(k.x == 0 && k.y == 0))
        throw JacError(Err::NOT_QJ_PAIR, "level-N tail fails the constant relation");
    out.c = coeff(P, Rat(0), 0) / (Rat(st.m + st.n) * st.J);
    Series gr = sub(gi, scale(gp, out.c));
    auto [q, r] = ypoly_divmod(to_ypoly(gr), to_ypoly(st.g));
    if (ypoly_deg(r) >= 0)
      throw JacError(Err::INTERNAL, "level-N remainder is not divisible by g");
    Series kt = scale(from_ypoly(q, st.F.space), Rat(st.m + st.n) / Rat(st.n));
    if (!equal(sub(fi, scale(fp, out.c)), scale(mul(st.f, kt), Rat(st.m) / Rat(st.m + st.n))))
      throw JacError(Err::NOT_QJ_PAIR, "level-N tails of F and G disagree");
    out.Q = antiderivative(kt, Var::Y);
    st.qDeg.push_back({i, deg_y(out.Q).value_or(-1)});
    if (!out.Q.known_zero()) {
      AutoStep s;
      s.kind = AutoStep::Kind::EXP_AD;
      s.H = out.Q;
      out.steps.steps.push_back(s);
    }
    if (out.c != 0) {
      out.usedZc = true;
      AutoStep z;
      z.kind = AutoStep::Kind::Z_C;
      z.c = out.c;
      out.steps.steps.push_back(z);
    }
    if (out.steps.steps.empty()) return out;
    di = apps_for(st.depth, st.N);
  }

  st.F = apply_auto(out.steps, st.F, di);
  st.G = apply_auto(out.steps, st.G, di);
  st.F = truncated(st.F, xa - Rat(st.depth) / Rat(st.N), std::nullopt);
  st.G = truncated(st.G, xb - Rat(st.depth) / Rat(st.N), std::nullopt);
  if (!level_block(st.F, lvF).known_zero() || !level_block(st.G, lvG).known_zero())
    throw JacError(Err::INTERNAL, "peel step left its own level dirty");
  return out;
}

HKResult normalize_to_HK(const NormalizedPair& np, long long depth) {
  if (depth <= 0) throw JacError(Err::PRECONDITION_FAILED, "depth must be positive");
  PeelState st = make_peel_state(np, depth);
  HKResult hk;
  hk.depth = depth;
  for (long long i = 1; i <= depth; ++i) {
    PeelOutcome out = peel_step(st, i);
    for (auto& s : out.steps.steps) hk.log.steps.push_back(s);
  }

  // growth bound: with gamma the largest (deg_y Q_i - 1)/i, every level
  // obeys deg_y f_i <= m + i*gamma and deg_y g_i <= n + i*gamma
  Rat gamma(0);
  for (auto& [i, d] : st.qDeg)
    if (d >= 1) gamma = std::max(gamma, Rat(d - 1) / Rat(i));
  for (auto& [i, d] : st.fDeg)
    if (d >= 0 && Rat(d) > Rat(st.m) + Rat(i) * gamma)
      throw JacError(Err::INTERNAL, "tail of F violates the degree growth bound");
  for (auto& [i, d] : st.gDeg)
    if (d >= 0 && Rat(d) > Rat(st.n) + Rat(i) * gamma)
      throw JacError(Err::INTERNAL, "tail of G violates the degree growth bound");

  hk.H = make_monomial(st.F.space, Rat(1), Rat(1), 0);
  hk.K = make_monomial(st.F.space, Rat(1), Rat(0), 1);
  for (auto it = hk.log.steps.rbegin(); it != hk.log.steps.rend(); ++it) {
    if (it->kind == AutoStep::Kind::EXP_AD) {
      Rat lvl = (Rat(1) - *deg_x(it->H)) * Rat(st.N);
      long long di = apps_for(depth, ll(rat_num(lvl)));
      hk.H = exp_ad(neg(it->H), hk.H, di);
      hk.K = exp_ad(neg(it->H), hk.K, di);
    } else {  // Z_C
      hk.H = shift_y(hk.H, it->c, Rat(-1));
      hk.K = shift_y(hk.K, it->c, Rat(-1));
    }
  }
  hk.H = truncated(hk.H, Rat(1) - Rat(depth) / Rat(st.N), std::nullopt);
  hk.K = truncated(hk.K, -Rat(depth) / Rat(st.N), std::nullopt);
  if (!equal(bracket(hk.H, hk.K), make_const(hk.H.space, Rat(1))))
    throw JacError(Err::INTERNAL, "[H,K] = 1 fails to the working floor");
  return hk;
}

AlphaDecomposition alpha_decompose(const HKResult& hk) {
  std::optional<Rat> alpha;
  for (auto& [k, c] : hk.H.terms) {
    if (k.y < 0)
      throw JacError(Err::REPRESENTATION_MISMATCH, "H has a negative y-power");
    if (k.y >= 1 && k.x < 1) {
      Rat cand = (Rat(1) - k.x) / Rat(k.y);
      if (!alpha || cand < *alpha) alpha = cand;
    }
  }
  for (auto& [k, c] : hk.K.terms) {
    if (k.x > 0)
      throw JacError(Err::REPRESENTATION_MISMATCH, "K has a positive x-power");
    if (k.y >= 2 && k.x < 0) {
      Rat cand = -k.x / Rat(k.y - 1);
      if (!alpha || cand < *alpha) alpha = cand;
    }
  }
  if (!alpha) {
    bool tails = hk.H.terms.size() > 1 || hk.K.terms.size() > 1;
    if (tails)
      throw JacError(Err::DEGENERATE, "NO_TAIL: no y-tail pins the leading degree");
    if (hk.H.is_exact() && hk.K.is_exact())
      throw JacError(Err::DEGENERATE, "NO_TAIL: H = x, K = y carry no leading degree");
    throw JacError(Err::DEPTH_INSUFFICIENT,
                   "no tail term above the floor determines the leading degree");
  }
  if (coeff(hk.K, Rat(0), 0) != 0)
    throw JacError(Err::REPRESENTATION_MISMATCH, "K has a constant term");

  AlphaDecomposition de;
  de.alpha = *alpha;
  Int beta(1);
  auto place = [&](std::map<Rat, Series>& comps, const Rat& idx, const Key& k, const Rat& c,
                   Space sp) {
    auto it = comps.find(idx);
    if (it == comps.end()) it = comps.emplace(idx, make_zero(sp)).first;
    it->second.terms[k] = c;
  };
  for (auto& [k, c] : hk.H.terms) {
    Rat j = (Rat(1) - k.x) / de.alpha;
    Rat idx = j - Rat(k.y);
    if (idx < 0) throw JacError(Err::REPRESENTATION_MISMATCH, "H term outside the index cone");
    beta = lcm_int(beta, rat_den(idx));
    place(de.componentsH, idx, k, c, hk.H.space);
  }
  for (auto& [k, c] : hk.K.terms) {
    Rat j = -k.x / de.alpha;
    Rat idx = j + Rat(1 - k.y);
    if (idx < 0) throw JacError(Err::REPRESENTATION_MISMATCH, "K term outside the index cone");
    beta = lcm_int(beta, rat_den(idx));
    place(de.componentsK, idx, k, c, hk.K.space);
  }
  de.beta = ll(beta);
  for (auto& [i, S] : de.componentsH) {
    S.xFloor = hk.H.xFloor;
    normalize(S);
  }
  for (auto& [i, S] : de.componentsK) {
    S.xFloor = hk.K.xFloor;
    normalize(S);
  }
  return de;
}

Series solve_Q_nu(const AlphaDecomposition& de, const Rat& nu) {
  if (nu <= 0) throw JacError(Err::PRECONDITION_FAILED, "index must be positive");
  const Rat& a = de.alpha;
  auto comp = [](const std::map<Rat, Series>& m, const Rat& i, Space sp) {
    auto it = m.find(i);
    return it == m.end() ? make_zero(sp) : it->second;
  };
  Space sp = Space::B;
  if (!de.componentsH.count(0) || !de.componentsK.count(0))
    throw JacError(Err::PRECONDITION_FAILED, "decomposition lacks the index-0 components");
  Series H0 = de.componentsH.at(0);
  Series K0 = de.componentsK.at(0);
  for (auto& [i, S] : de.componentsH)
    if (i > 0 && i < nu && !S.known_zero())
      throw JacError(Err::PRECONDITION_FAILED, "a smaller index carries a nonzero component");
  for (auto& [i, S] : de.componentsK)
    if (i > 0 && i < nu && !S.known_zero())
      throw JacError(Err::PRECONDITION_FAILED, "a smaller index carries a nonzero component");
  Series Hn = comp(de.componentsH, nu, sp);
  Series Kn = comp(de.componentsK, nu, sp);
  if (Hn.known_zero() && Kn.known_zero()) return make_zero(sp);

  // tail coefficients of H<0> = x(1 + sum h0[i] x^{-i a} y^i)
  std::map<long long, Rat> h0;
  long long h0span = 0;
  for (auto& [k, c] : H0.terms)
    if (k.y >= 1) {
      h0[k.y] = c;
      h0span = std::max(h0span, k.y);
    }
  // target coefficients h_nu[t] at j = nu + t
  std::map<long long, Rat> hn;
  long long tmax = 0;
  for (auto& [k, c] : Hn.terms) {
    hn[k.y] = c;
    tmax = std::max(tmax, k.y);
  }
  for (auto& [k, c] : Kn.terms) tmax = std::max(tmax, k.y);

  long long tcap;
  bool exact = H0.is_exact() && Hn.is_exact() && Kn.is_exact();
  if (!exact || !h0.empty()) {
    std::optional<Rat> xf = H0.xFloor;
    if (Hn.xFloor && (!xf || *Hn.xFloor > *xf)) xf = Hn.xFloor;
    if (xf) {
      Rat jmax = (Rat(1) - *xf) / a;
      tcap = ll(rat_floor(jmax - nu));
      if (tcap < 0)
        throw JacError(Err::DEPTH_INSUFFICIENT, "floor sits above the first solvable slot");
      tcap = std::max(tcap, tmax);
    } else {
      tcap = tmax + 4 * (h0span + 1) + 8;
    }
  } else {
    tcap = tmax;
  }

  // triangular solve: coefficient of x^{1-(nu+t)a} y^{1+t} in Q
  std::map<long long, Rat> q;
  for (long long t = 0; t <= tcap; ++t) {
    Rat s = nu + Rat(t);
    Rat acc = -(hn.count(t) ? hn[t] : Rat(0));
    for (auto& [i, hc] : h0) {
      if (t - i < 0) break;  // q below the starting slot vanishes
      auto pit = q.find(t - i);
      if (pit == q.end() || pit->second == 0) continue;
      Rat prev = pit->second;
      Rat C = (Rat(1) - Rat(i) * a) * (Rat(1) + s - Rat(i) - nu) -
              Rat(i) * (Rat(1) - (s - Rat(i)) * a);
      acc -= hc * C * prev;
    }
    if (acc != 0) q[t] = acc / (Rat(1) + Rat(t));
  }

  Series Q = make_zero(sp);
  for (auto& [t, c] : q) Q.terms[{Rat(1) - (nu + Rat(t)) * a, 1 + t}] = c;
  if (!exact || !h0.empty()) Q.xFloor = Rat(1) - (nu + Rat(tcap)) * a;
  normalize(Q);

  Series R = sub(Kn, bracket(Q, K0));
  if (!is_zero_above_floor(R)) {
    Rat e = Rat(1) + a * (Rat(1) - nu);
    if (e == 0)
      throw JacError(Err::NORMALIZATION_AMBIGUOUS,
                     "residual at the critical index: K is not trace-normalized");
    long long dd = tcap + 4;
    Rat eTop = e - 1;
    Rat lam = coeff(R, eTop, 0);
    Series Hlow = fractional_power(H0, ll(rat_num(eTop)), ll(rat_den(eTop)), dd);
    if (!is_zero_above_floor(sub(R, scale(Hlow, lam))))
      throw JacError(Err::INTERNAL, "residual is not a power of the index-0 component");
    Series Hpow = fractional_power(H0, ll(rat_num(e)), ll(rat_den(e)), dd);
    Q = add(Q, scale(Hpow, lam / e));
  }

  if (!equal(bracket(Q, H0), Hn))
    throw JacError(Err::INTERNAL, "H-side defining equation failed");
  if (!equal(bracket(Q, K0), Kn))
    throw JacError(Err::INTERNAL, "K-side defining equation failed");
  // d_y Q is already determined by d_x Q on this support
  Series lhs = scale(mul_monomial(partial(Q, Var::Y), Rat(1), Rat(0), 1), a);
  Series rhs = sub(scale(Q, Rat(1) + a * (Rat(1) - nu)),
                   mul_monomial(partial(Q, Var::X), Rat(1), Rat(1), 0));
  if (!equal(lhs, rhs))
    throw JacError(Err::INTERNAL, "x/y derivative consistency failed");
  return Q;
}

Verdict check_polynomiality(const NormalizedPair& np, const HKResult& hk) {
  Verdict v;
  Rat den = Rat(np.m + np.n) * np.J;
  auto side = [&](Var var, const char* name) {
    Series rhs = scale(sub(scale(mul(np.F, partial(np.G, var)), Rat(np.m)),
                           scale(mul(np.G, partial(np.F, var)), Rat(np.n))),
                       Rat(1) / den);
    Series lhs = mul(hk.H, partial(hk.K, var));
    Series diff = sub(lhs, rhs);
    if (!is_zero_above_floor(diff)) {
      v.pass = false;
      v.detail += std::string(name) + " residual: " + pretty(truncated(diff, std::nullopt, std::nullopt)) + "; ";
    }
    for (auto& [k, c] : rhs.terms)
      if (k.y < 0) {
        v.pass = false;
        v.detail += std::string(name) + " right side has a negative y-power; ";
        break;
      }
  };
  side(Var::X, "d_x");
  side(Var::Y, "d_y");
  if (v.pass) v.detail = "polynomiality identities hold to the floor";
  return v;
}

}  // namespace jac
