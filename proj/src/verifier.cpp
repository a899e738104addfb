#include "jacpair/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace jac {

const char* kParName[kNumPar] = {"ap", "nu", "nu0", "bet", "gam", "tc0", "k"};

const char* patom_name(PAtom a) {
  switch (a) {
    case PAtom::X: return "x";
    case PAtom::Y: return "y";
    case PAtom::H0: return "H0";
    case PAtom::K0: return "K0";
    case PAtom::QN: return "Qn";
    case PAtom::TQ: return "tq";
    case PAtom::TQN0: return "tqn0";
  }
  return "?";
}

PPoly pp_const(const Rat& c) {
  PPoly p;
  if (c != 0) p.t[PMono{}] = c;
  return p;
}

PPoly pp_var(PPar v) {
  PPoly p;
  PMono m{};
  m[v] = 1;
  p.t[m] = 1;
  return p;
}

PPoly pp_add(const PPoly& a, const PPoly& b) {
  PPoly r = a;
  for (auto& [m, c] : b.t) {
    auto [it, fresh] = r.t.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) r.t.erase(it);
    }
  }
  return r;
}

PPoly pp_neg(const PPoly& a) {
  PPoly r = a;
  for (auto& [m, c] : r.t) c = -c;
  return r;
}

PPoly pp_sub(const PPoly& a, const PPoly& b) { return pp_add(a, pp_neg(b)); }

PPoly pp_mul(const PPoly& a, const PPoly& b) {
  PPoly r;
  for (auto& [ma, ca] : a.t)
    for (auto& [mb, cb] : b.t) {
      PMono m;
      for (int i = 0; i < kNumPar; ++i) m[i] = ma[i] + mb[i];
      Rat v = ca * cb;
      auto [it, fresh] = r.t.try_emplace(m, v);
      if (!fresh) {
        it->second += v;
        if (it->second == 0) r.t.erase(it);
      }
    }
  return r;
}

PPoly pp_pow(const PPoly& a, int k) {
  PPoly r = pp_const(Rat(1));
  for (int i = 0; i < k; ++i) r = pp_mul(r, a);
  return r;
}

std::string pp_str(const PPoly& a) {
  if (a.t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : a.t) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c);
    for (int i = 0; i < kNumPar; ++i)
      if (m[i]) {
        os << " " << kParName[i];
        if (m[i] != 1) os << "^" << m[i];
      }
  }
  return os.str();
}

namespace {

// exact single-divisor division in the lexicographic order, or failure
bool pp_try_divide(const PPoly& num, const PPoly& den, PPoly& q) {
  q = PPoly{};
  PPoly rem = num;
  auto ld = den.t.rbegin();
  int guard = 0;
  while (!rem.t.empty()) {
    if (++guard > 4096) return false;
    auto lr = rem.t.rbegin();
    PMono m;
    for (int i = 0; i < kNumPar; ++i) {
      m[i] = lr->first[i] - ld->first[i];
      if (m[i] < 0) return false;
    }
    Rat c = lr->second / ld->second;
    PPoly qt;
    qt.t[m] = c;
    q = pp_add(q, qt);
    rem = pp_sub(rem, pp_mul(qt, den));
  }
  return true;
}

void pr_reduce(PRat& r) {
  if (r.num.zero()) {
    r.den = pp_const(Rat(1));
    return;
  }
  if (r.den.zero()) throw JacError(Err::INTERNAL, "zero denominator");
  // cancel the common monomial factor
  PMono g;
  bool first = true;
  for (auto* p : {&r.num, &r.den})
    for (auto& [m, c] : p->t) {
      for (int i = 0; i < kNumPar; ++i) g[i] = first ? m[i] : std::min(g[i], m[i]);
      first = false;
    }
  bool any = false;
  for (int i = 0; i < kNumPar; ++i)
    if (g[i]) any = true;
  if (any)
    for (auto* p : {&r.num, &r.den}) {
      PPoly q;
      for (auto& [m, c] : p->t) {
        PMono m2;
        for (int i = 0; i < kNumPar; ++i) m2[i] = m[i] - g[i];
        q.t[m2] = c;
      }
      *p = q;
    }
  PPoly q;
  if (pp_try_divide(r.num, r.den, q)) {
    r.num = q;
    r.den = pp_const(Rat(1));
    return;
  }
  // scale the denominator monic on its leading term
  Rat lc = r.den.t.rbegin()->second;
  if (lc != 1) {
    for (auto& [m, c] : r.num.t) c /= lc;
    for (auto& [m, c] : r.den.t) c /= lc;
  }
}

}  // namespace

PRat pr_const(const Rat& c) { return PRat{pp_const(c), pp_const(Rat(1))}; }
PRat pr_poly(const PPoly& p) { return PRat{p, pp_const(Rat(1))}; }

PRat pr_add(const PRat& a, const PRat& b) {
  PRat r{pp_add(pp_mul(a.num, b.den), pp_mul(b.num, a.den)), pp_mul(a.den, b.den)};
  pr_reduce(r);
  return r;
}

PRat pr_neg(const PRat& a) { return PRat{pp_neg(a.num), a.den}; }
PRat pr_sub(const PRat& a, const PRat& b) { return pr_add(a, pr_neg(b)); }

PRat pr_mul(const PRat& a, const PRat& b) {
  PRat r{pp_mul(a.num, b.num), pp_mul(a.den, b.den)};
  pr_reduce(r);
  return r;
}

PRat pr_div(const PRat& a, const PRat& b) {
  if (b.num.zero()) throw JacError(Err::NOT_INVERTIBLE, "division by zero coefficient");
  PRat r{pp_mul(a.num, b.den), pp_mul(a.den, b.num)};
  pr_reduce(r);
  return r;
}

bool pr_zero(const PRat& a) { return a.num.zero(); }

bool pr_equal(const PRat& a, const PRat& b) {
  return pp_sub(pp_mul(a.num, b.den), pp_mul(b.num, a.den)).zero();
}

AffExp aff_const(const Rat& c) { return AffExp{c, 0, 0, 0}; }

AffExp aff_add(const AffExp& a, const AffExp& b) {
  return AffExp{a.c0 + b.c0, a.cnu + b.cnu, a.cnu0 + b.cnu0, a.cknu0 + b.cknu0};
}
AffExp aff_sub(const AffExp& a, const AffExp& b) {
  return AffExp{a.c0 - b.c0, a.cnu - b.cnu, a.cnu0 - b.cnu0, a.cknu0 - b.cknu0};
}

namespace {
AffExp aff_scale(const AffExp& a, const Rat& c) {
  return AffExp{a.c0 * c, a.cnu * c, a.cnu0 * c, a.cknu0 * c};
}
bool aff_is_const(const AffExp& a, Rat& out) {
  if (a.cnu != 0 || a.cnu0 != 0 || a.cknu0 != 0) return false;
  out = a.c0;
  return true;
}
std::string aff_str(const AffExp& a) {
  std::ostringstream os;
  os << rat_str(a.c0);
  if (a.cnu != 0) os << "+" << rat_str(a.cnu) << " nu";
  if (a.cnu0 != 0) os << "+" << rat_str(a.cnu0) << " nu0";
  if (a.cknu0 != 0) os << "+" << rat_str(a.cknu0) << " k nu0";
  return os.str();
}
}  // namespace

bool aff_is_int(const AffExp& a, long long& out) {
  Rat c;
  if (!aff_is_const(a, c) || !is_integer(c)) return false;
  out = rat_floor(c).convert_to<long long>();
  return true;
}

PPoly aff_poly(const AffExp& a) {
  PPoly p = pp_const(a.c0);
  if (a.cnu != 0) {
    PPoly q = pp_var(P_NU);
    for (auto& [m, c] : q.t) c *= a.cnu;
    p = pp_add(p, q);
  }
  if (a.cnu0 != 0) {
    PPoly q = pp_var(P_NU0);
    for (auto& [m, c] : q.t) c *= a.cnu0;
    p = pp_add(p, q);
  }
  if (a.cknu0 != 0) {
    PPoly q = pp_mul(pp_var(P_K), pp_var(P_NU0));
    for (auto& [m, c] : q.t) c *= a.cknu0;
    p = pp_add(p, q);
  }
  return p;
}

ParamExpr pe_zero() { return ParamExpr{}; }

ParamExpr pe_const(const Rat& c) { return pe_coeff(pr_const(c)); }

ParamExpr pe_coeff(const PRat& c) {
  ParamExpr e;
  if (!pr_zero(c)) e.terms.push_back(PTerm{c, {}});
  return e;
}

ParamExpr pe_atom(PAtom a, int primes) {
  ParamExpr e;
  e.terms.push_back(PTerm{pr_const(Rat(1)), {{AtomKey{a, primes}, aff_const(Rat(1))}}});
  return e;
}

ParamExpr pe_atom_pow(PAtom a, const AffExp& ex) {
  ParamExpr e;
  PTerm t{pr_const(Rat(1)), {}};
  Rat c;
  if (!(aff_is_const(ex, c) && c == 0)) t.pows[AtomKey{a, 0}] = ex;
  e.terms.push_back(t);
  return e;
}

void pe_normalize(ParamExpr& e) {
  std::map<std::map<AtomKey, AffExp>, PRat> acc;
  for (auto& t : e.terms) {
    std::map<AtomKey, AffExp> sig;
    Rat c;
    for (auto& [k, ex] : t.pows)
      if (!(aff_is_const(ex, c) && c == 0)) sig[k] = ex;
    auto it = acc.find(sig);
    if (it == acc.end())
      acc.emplace(sig, t.coeff);
    else
      it->second = pr_add(it->second, t.coeff);
  }
  e.terms.clear();
  for (auto& [sig, c] : acc)
    if (!pr_zero(c)) e.terms.push_back(PTerm{c, sig});
}

ParamExpr pe_add(const ParamExpr& a, const ParamExpr& b) {
  ParamExpr r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  pe_normalize(r);
  return r;
}

ParamExpr pe_neg(const ParamExpr& a) {
  ParamExpr r = a;
  for (auto& t : r.terms) t.coeff = pr_neg(t.coeff);
  return r;
}

ParamExpr pe_sub(const ParamExpr& a, const ParamExpr& b) { return pe_add(a, pe_neg(b)); }

ParamExpr pe_mul(const ParamExpr& a, const ParamExpr& b) {
  ParamExpr r;
  for (auto& ta : a.terms)
    for (auto& tb : b.terms) {
      PTerm t{pr_mul(ta.coeff, tb.coeff), ta.pows};
      for (auto& [k, ex] : tb.pows) {
        auto [it, fresh] = t.pows.try_emplace(k, ex);
        if (!fresh) it->second = aff_add(it->second, ex);
      }
      r.terms.push_back(t);
    }
  pe_normalize(r);
  return r;
}

ParamExpr pe_scale(const ParamExpr& a, const PRat& c) {
  ParamExpr r = a;
  for (auto& t : r.terms) t.coeff = pr_mul(t.coeff, c);
  pe_normalize(r);
  return r;
}

ParamExpr pe_pow_int(const ParamExpr& a, long long k) {
  if (k < 0) {
    if (a.terms.size() != 1)
      throw JacError(Err::NONMONOMIAL_DIVISOR, "negative power of a sum");
    ParamExpr inv;
    PTerm t{pr_div(pr_const(Rat(1)), a.terms[0].coeff), {}};
    for (auto& [key, ex] : a.terms[0].pows) t.pows[key] = aff_scale(ex, Rat(-1));
    inv.terms.push_back(t);
    return pe_pow_int(inv, -k);
  }
  ParamExpr r = pe_const(Rat(1));
  for (long long i = 0; i < k; ++i) r = pe_mul(r, a);
  return r;
}

ParamExpr pe_div_term(const ParamExpr& a, const ParamExpr& d) {
  if (d.terms.size() != 1)
    throw JacError(Err::NONMONOMIAL_DIVISOR, "divisor is not a single term");
  return pe_mul(a, pe_pow_int(d, -1));
}

bool pe_equal(const ParamExpr& a, const ParamExpr& b) { return pe_sub(a, b).zero(); }

std::string pe_str(const ParamExpr& e) {
  if (e.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : e.terms) {
    if (!first) os << "  +  ";
    first = false;
    os << "(" << pp_str(t.coeff.num) << ")";
    if (!(t.coeff.den.t.size() == 1 && t.coeff.den.t.count(PMono{}) &&
          t.coeff.den.t.at(PMono{}) == 1))
      os << "/(" << pp_str(t.coeff.den) << ")";
    for (auto& [k, ex] : t.pows) {
      os << " " << patom_name(k.a);
      for (int i = 0; i < k.primes; ++i) os << "'";
      os << "^(" << aff_str(ex) << ")";
    }
  }
  return os.str();
}

ParamExpr differentiate(const ParamExpr& e) {
  ParamExpr r;
  for (auto& t : e.terms)
    for (auto& [key, ex] : t.pows) {
      if (key.a == PAtom::Y) continue;
      PTerm d = t;
      d.coeff = pr_mul(d.coeff, pr_poly(aff_poly(ex)));
      d.pows[key] = aff_sub(ex, aff_const(Rat(1)));
      if (key.a != PAtom::X) {
        AtomKey up{key.a, key.primes + 1};
        auto [it, fresh] = d.pows.try_emplace(up, aff_const(Rat(1)));
        if (!fresh) it->second = aff_add(it->second, aff_const(Rat(1)));
      }
      r.terms.push_back(d);
    }
  pe_normalize(r);
  return r;
}

ParamExpr substitute(const ParamExpr& e, const AtomKey& key, const ParamExpr& rep) {
  ParamExpr r;
  for (auto& t : e.terms) {
    auto it = t.pows.find(key);
    if (it == t.pows.end()) {
      r.terms.push_back(t);
      continue;
    }
    AffExp ex = it->second;
    PTerm rest = t;
    rest.pows.erase(key);
    ParamExpr restE;
    restE.terms.push_back(rest);
    long long n;
    ParamExpr piece;
    if (aff_is_int(ex, n) && (n >= 0 || rep.terms.size() == 1)) {
      piece = pe_pow_int(rep, n);
    } else {
      if (rep.terms.size() != 1)
        throw JacError(Err::NONMONOMIAL_DIVISOR, "symbolic power of a sum");
      const PTerm& rt = rep.terms[0];
      if (!pr_equal(rt.coeff, pr_const(Rat(1))))
        throw JacError(Err::PRECONDITION_FAILED,
                       "symbolic power needs a coefficient-one replacement");
      PTerm p{pr_const(Rat(1)), {}};
      for (auto& [k2, f] : rt.pows) {
        Rat cf, ce;
        AffExp prod;
        if (aff_is_const(f, cf))
          prod = aff_scale(ex, cf);
        else if (aff_is_const(ex, ce))
          prod = aff_scale(f, ce);
        else
          throw JacError(Err::PRECONDITION_FAILED, "non-affine exponent product");
        auto [it2, fresh] = p.pows.try_emplace(k2, prod);
        if (!fresh) it2->second = aff_add(it2->second, prod);
      }
      piece.terms.push_back(p);
    }
    ParamExpr done = pe_mul(restE, piece);
    r.terms.insert(r.terms.end(), done.terms.begin(), done.terms.end());
  }
  pe_normalize(r);
  return r;
}

ParamExpr instantiate(const ParamExpr& e, PAtom base, const ParamExpr& rep) {
  int maxp = -1;
  for (auto& t : e.terms)
    for (auto& [k, ex] : t.pows)
      if (k.a == base) maxp = std::max(maxp, k.primes);
  std::vector<ParamExpr> reps{rep};
  for (int p = 1; p <= maxp; ++p) reps.push_back(differentiate(reps.back()));
  ParamExpr r = e;
  for (int p = maxp; p >= 0; --p) r = substitute(r, AtomKey{base, p}, reps[p]);
  return r;
}

namespace {
PRat pp_subst_param(const PPoly& p, PPar par, const PRat& val) {
  PRat acc = pr_const(Rat(0));
  for (auto& [m, c] : p.t) {
    PMono m2 = m;
    int e = m2[par];
    m2[par] = 0;
    PPoly base;
    base.t[m2] = c;
    PRat term = pr_poly(base);
    for (int i = 0; i < e; ++i) term = pr_mul(term, val);
    acc = pr_add(acc, term);
  }
  return acc;
}
}  // namespace

ParamExpr subst_param(const ParamExpr& e, PPar p, const PRat& val) {
  Rat cv;
  bool isConst = val.num.t.size() <= 1 && val.den.t.size() == 1 &&
                 val.den.t.count(PMono{}) && (val.num.t.empty() || val.num.t.count(PMono{}));
  if (isConst)
    cv = val.num.t.empty() ? Rat(0) : val.num.t.at(PMono{}) / val.den.t.at(PMono{});
  ParamExpr r;
  for (auto& t : e.terms) {
    PTerm t2 = t;
    t2.coeff = pr_div(pp_subst_param(t.coeff.num, p, val), pp_subst_param(t.coeff.den, p, val));
    std::map<AtomKey, AffExp> pows;
    for (auto& [k, ex] : t2.pows) {
      AffExp e2 = ex;
      if (p == P_NU && e2.cnu != 0) {
        if (!isConst)
          throw JacError(Err::PRECONDITION_FAILED, "nu occurs in exponents; value must be constant");
        e2.c0 += e2.cnu * cv;
        e2.cnu = 0;
      }
      if (p == P_K && e2.cknu0 != 0) {
        if (!isConst)
          throw JacError(Err::PRECONDITION_FAILED, "k occurs in exponents; value must be constant");
        e2.cnu0 += e2.cknu0 * cv;
        e2.cknu0 = 0;
      }
      if (p == P_NU0 && (e2.cnu0 != 0 || e2.cknu0 != 0)) {
        if (!isConst || e2.cknu0 != 0)
          throw JacError(Err::PRECONDITION_FAILED,
                         "nu0 in exponents needs a constant value and k substituted first");
        e2.c0 += e2.cnu0 * cv;
        e2.cnu0 = 0;
      }
      pows[k] = e2;
    }
    t2.pows = pows;
    r.terms.push_back(t2);
  }
  pe_normalize(r);
  return r;
}

ParamExpr coefficient_slice(const ParamExpr& e, PPar p, int d) {
  ParamExpr r;
  for (auto& t : e.terms) {
    for (auto& [m, c] : t.coeff.den.t)
      if (m[p] != 0)
        throw JacError(Err::PRECONDITION_FAILED, "parameter occurs in a denominator");
    PPoly num;
    for (auto& [m, c] : t.coeff.num.t)
      if (m[p] == d) num.t[m] = c;
    if (num.zero()) continue;
    PTerm t2 = t;
    t2.coeff = PRat{num, t.coeff.den};
    r.terms.push_back(t2);
  }
  pe_normalize(r);
  return r;
}

namespace {

const PRat& pr_one() {
  static PRat one = pr_const(Rat(1));
  return one;
}

// 1 + ap (1 - e) for an exponent polynomial e
PRat lam_of(const PPoly& e) {
  return pr_poly(pp_add(pp_const(Rat(1)),
                        pp_mul(pp_var(P_AP), pp_sub(pp_const(Rat(1)), e))));
}

// (H0 Q' - lam Q H0') / (ap y)
ParamExpr h_up(const ParamExpr& Q, const PRat& lam) {
  ParamExpr apy = pe_scale(pe_atom(PAtom::Y), pr_poly(pp_var(P_AP)));
  return pe_div_term(pe_sub(pe_mul(pe_atom(PAtom::H0), differentiate(Q)),
                            pe_scale(pe_mul(Q, pe_atom(PAtom::H0, 1)), lam)),
                     apy);
}

// (ap K0 Q' - lam Q K0') / (ap y)
ParamExpr k_up(const ParamExpr& Q, const PRat& lam) {
  ParamExpr apy = pe_scale(pe_atom(PAtom::Y), pr_poly(pp_var(P_AP)));
  return pe_div_term(
      pe_sub(pe_scale(pe_mul(pe_atom(PAtom::K0), differentiate(Q)), pr_poly(pp_var(P_AP))),
             pe_scale(pe_mul(Q, pe_atom(PAtom::K0, 1)), lam)),
      apy);
}

ParamExpr expected_term(const PPoly& coeff, const AffExp& yexp) {
  ParamExpr e = pe_atom_pow(PAtom::Y, yexp);
  return pe_scale(e, pr_poly(coeff));
}

}  // namespace

ParamExpr main_identity_residual(bool applySecondOrderRule) {
  PRat ap = pr_poly(pp_var(P_AP));
  PRat lam = lam_of(pp_var(P_NU));
  ParamExpr Qn = pe_atom(PAtom::QN);
  ParamExpr Hnu = h_up(Qn, lam);
  ParamExpr Knu = k_up(Qn, lam);
  PRat onemnu = pr_poly(pp_sub(pp_const(Rat(1)), pp_var(P_NU)));
  ParamExpr R1 = pe_add(pe_scale(pe_mul(pe_atom(PAtom::H0), Knu), onemnu),
                        pe_mul(Hnu, pe_atom(PAtom::K0)));
  ParamExpr f1 = pe_sub(pe_scale(differentiate(R1), ap),
                        pe_scale(pe_add(pe_mul(pe_atom(PAtom::H0), differentiate(Knu)),
                                        pe_mul(Hnu, pe_atom(PAtom::K0, 1))),
                                 lam));
  // K0' -> (ap K0 H0' + ap y)/H0
  ParamExpr ruleP = pe_div_term(
      pe_scale(pe_add(pe_mul(pe_atom(PAtom::K0), pe_atom(PAtom::H0, 1)), pe_atom(PAtom::Y)),
               ap),
      pe_atom(PAtom::H0));
  f1 = substitute(f1, AtomKey{PAtom::K0, 1}, ruleP);
  if (applySecondOrderRule) {
    // K0'' -> ap(K0' H0' + K0 H0'')/H0 - (ap K0 H0' + ap y) H0'/H0^2
    ParamExpr a1 = pe_div_term(
        pe_scale(pe_add(pe_mul(pe_atom(PAtom::K0, 1), pe_atom(PAtom::H0, 1)),
                        pe_mul(pe_atom(PAtom::K0), pe_atom(PAtom::H0, 2))),
                 ap),
        pe_atom(PAtom::H0));
    ParamExpr a2 = pe_div_term(
        pe_mul(pe_scale(pe_add(pe_mul(pe_atom(PAtom::K0), pe_atom(PAtom::H0, 1)),
                               pe_atom(PAtom::Y)),
                        ap),
               pe_atom(PAtom::H0, 1)),
        pe_mul(pe_atom(PAtom::H0), pe_atom(PAtom::H0)));
    f1 = substitute(f1, AtomKey{PAtom::K0, 2}, pe_sub(a1, a2));
  }
  f1 = substitute(f1, AtomKey{PAtom::K0, 1}, ruleP);
  return f1;
}

Verdict verify_main_identity() {
  ParamExpr f1 = main_identity_residual(true);
  Verdict v;
  v.pass = f1.zero();
  v.detail = v.pass ? "residual normalizes to 0" : "nonzero residual: " + pe_str(f1);
  return v;
}

std::vector<std::pair<ParamExpr, ParamExpr>> r_coefficient_pairs() {
  PRat ap = pr_poly(pp_var(P_AP));
  PRat bet = pr_poly(pp_var(P_BET));
  PRat lam = lam_of(pp_var(P_NU));
  AffExp e1mnu{Rat(1), Rat(-1), 0, 0};
  ParamExpr Qnu = pe_add(pe_atom(PAtom::QN),
                         pe_scale(pe_mul(pe_atom(PAtom::H0), pe_atom_pow(PAtom::K0, e1mnu)),
                                  bet));
  ParamExpr Hnu = h_up(Qnu, lam);
  ParamExpr Knu = k_up(Qnu, lam);
  // (1-nu) ap (Knu Hnu' + Hnu Knu') - (1 + ap(1-2nu)) Hnu Knu'
  PRat c1 = pr_mul(pr_poly(pp_sub(pp_const(Rat(1)), pp_var(P_NU))), ap);
  PRat c2 = lam_of(pp_add(pp_var(P_NU), pp_var(P_NU)));
  ParamExpr R7 =
      pe_sub(pe_scale(pe_add(pe_mul(Knu, differentiate(Hnu)), pe_mul(Hnu, differentiate(Knu))),
                      c1),
             pe_scale(pe_mul(Hnu, differentiate(Knu)), c2));
  ParamExpr r0 = pe_div_term(coefficient_slice(R7, P_BET, 2),
                             pe_atom_pow(PAtom::K0, AffExp{0, Rat(-2), 0, 0}));
  ParamExpr r1 = pe_div_term(coefficient_slice(R7, P_BET, 1),
                             pe_atom_pow(PAtom::K0, AffExp{0, Rat(-1), 0, 0}));
  ParamExpr r2 = coefficient_slice(R7, P_BET, 0);
  // qn := -bet x y^{1-nu}, H0 := x, K0 := y
  ParamExpr qnRep = pe_scale(pe_mul(pe_atom(PAtom::X), pe_atom_pow(PAtom::Y, e1mnu)),
                             pr_neg(bet));
  auto inst = [&](ParamExpr e) {
    e = instantiate(e, PAtom::QN, qnRep);
    e = instantiate(e, PAtom::H0, pe_atom(PAtom::X));
    e = instantiate(e, PAtom::K0, pe_atom(PAtom::Y));
    return e;
  };
  PPoly base = pp_mul(pp_mul(pp_var(P_AP), pp_pow(pp_var(P_BET), 2)),
                      pp_pow(pp_sub(pp_var(P_NU), pp_const(Rat(1))), 2));
  std::vector<std::pair<ParamExpr, ParamExpr>> out;
  out.emplace_back(inst(r0), expected_term(pp_neg(base), aff_const(Rat(1))));
  out.emplace_back(inst(r1),
                   expected_term(pp_mul(pp_const(Rat(2)), base), AffExp{Rat(1), Rat(-1), 0, 0}));
  out.emplace_back(inst(r2), expected_term(pp_neg(base), AffExp{Rat(1), Rat(-2), 0, 0}));
  return out;
}

Verdict verify_r_coefficients() {
  auto pairs = r_coefficient_pairs();
  Verdict v;
  std::ostringstream os;
  for (size_t i = 0; i < pairs.size(); ++i)
    if (!pe_equal(pairs[i].first, pairs[i].second)) {
      v.pass = false;
      os << "r" << i << " = " << pe_str(pairs[i].first) << " != " << pe_str(pairs[i].second)
         << "; ";
    }
  v.detail = v.pass ? "r0, r1, r2 match the printed outputs" : os.str();
  return v;
}

std::vector<std::pair<ParamExpr, ParamExpr>> tilde_r_pairs() {
  PRat ap = pr_poly(pp_var(P_AP));
  PRat gam = pr_poly(pp_var(P_GAM));
  PPoly knu0 = pp_mul(pp_var(P_K), pp_var(P_NU0));
  AffExp eKnu0{Rat(1), 0, 0, Rat(-1)};     // 1 - k nu0
  AffExp eMnu0{0, 0, Rat(-1), 0};          // -nu0
  // xQn0 = tqn0 + tc0 y K0^{-nu0}
  ParamExpr xQn0 = pe_add(pe_atom(PAtom::TQN0),
                          pe_scale(pe_mul(pe_atom(PAtom::Y), pe_atom_pow(PAtom::K0, eMnu0)),
                                   pr_poly(pp_var(P_TC0))));
  ParamExpr Hn0 = pe_div_term(pe_mul(pe_atom(PAtom::H0), xQn0),
                              pe_scale(pe_atom(PAtom::Y), ap));
  ParamExpr Kn0 = pe_div_term(pe_mul(pe_atom(PAtom::K0), xQn0), pe_atom(PAtom::Y));
  // tQk = tq + gam H0 K0^{1 - k nu0}
  ParamExpr tQk = pe_add(pe_atom(PAtom::TQ),
                         pe_scale(pe_mul(pe_atom(PAtom::H0), pe_atom_pow(PAtom::K0, eKnu0)),
                                  gam));
  PRat lamk = lam_of(knu0);
  ParamExpr tHk = h_up(tQk, lamk);
  ParamExpr tKk = k_up(tQk, lamk);
  PRat cK = pr_mul(pr_poly(pp_sub(pp_const(Rat(1)), knu0)), ap);
  PRat cN = pr_mul(pr_poly(pp_sub(pp_const(Rat(1)), pp_var(P_NU0))), ap);
  PRat cL = lam_of(pp_add(knu0, pp_var(P_NU0)));
  ParamExpr tR7 = pe_sub(
      pe_add(pe_scale(pe_add(pe_mul(tKk, differentiate(Hn0)), pe_mul(Hn0, differentiate(tKk))),
                      cK),
             pe_scale(pe_add(pe_mul(Kn0, differentiate(tHk)), pe_mul(tHk, differentiate(Kn0))),
                      cN)),
      pe_scale(pe_add(pe_mul(Hn0, differentiate(tKk)), pe_mul(tHk, differentiate(Kn0))), cL));
  ParamExpr s0 = coefficient_slice(tR7, P_TC0, 1);
  ParamExpr s1 = coefficient_slice(tR7, P_TC0, 0);
  ParamExpr tr0 = pe_div_term(coefficient_slice(s0, P_GAM, 1),
                              pe_atom_pow(PAtom::K0, AffExp{0, 0, Rat(-1), Rat(-1)}));
  ParamExpr tr1 = pe_div_term(coefficient_slice(s0, P_GAM, 0),
                              pe_atom_pow(PAtom::K0, eMnu0));
  ParamExpr tr2 = pe_div_term(coefficient_slice(s1, P_GAM, 1),
                              pe_atom_pow(PAtom::K0, AffExp{0, 0, 0, Rat(-1)}));
  ParamExpr tr3 = coefficient_slice(s1, P_GAM, 0);
  // tqn0 := -tc0 y^{1-nu0}; tq := -gam x y^{1-k nu0}; H0 := x; K0 := y;
  // ap := 1/(nu0 - 1)
  ParamExpr tqn0Rep = pe_scale(pe_atom_pow(PAtom::Y, AffExp{Rat(1), 0, Rat(-1), 0}),
                               pr_neg(pr_poly(pp_var(P_TC0))));
  ParamExpr tqRep =
      pe_scale(pe_mul(pe_atom(PAtom::X), pe_atom_pow(PAtom::Y, eKnu0)), pr_neg(gam));
  PRat apVal = PRat{pp_const(Rat(1)), pp_sub(pp_var(P_NU0), pp_const(Rat(1)))};
  auto inst = [&](ParamExpr e) {
    e = instantiate(e, PAtom::TQN0, tqn0Rep);
    e = instantiate(e, PAtom::TQ, tqRep);
    e = instantiate(e, PAtom::H0, pe_atom(PAtom::X));
    e = instantiate(e, PAtom::K0, pe_atom(PAtom::Y));
    e = subst_param(e, P_AP, apVal);
    return e;
  };
  ParamExpr trr = pe_add(inst(tr1),
                         pe_mul(inst(tr2), pe_atom_pow(PAtom::Y, AffExp{0, 0, Rat(1), Rat(-1)})));
  PPoly base = pp_mul(pp_mul(pp_const(Rat(2)), pp_var(P_GAM)),
                      pp_mul(pp_sub(knu0, pp_const(Rat(1))), pp_var(P_TC0)));
  std::vector<std::pair<ParamExpr, ParamExpr>> out;
  out.emplace_back(inst(tr0), expected_term(pp_neg(base), aff_const(Rat(1))));
  out.emplace_back(inst(tr1), expected_term(base, eKnu0));
  out.emplace_back(inst(tr2), expected_term(base, AffExp{Rat(1), 0, Rat(-1), 0}));
  out.emplace_back(inst(tr3), expected_term(pp_neg(base), AffExp{Rat(1), 0, Rat(-1), Rat(-1)}));
  out.emplace_back(trr, expected_term(pp_mul(pp_const(Rat(2)), base), eKnu0));
  return out;
}

Verdict verify_tilde_r() {
  auto pairs = tilde_r_pairs();
  Verdict v;
  std::ostringstream os;
  const char* names[] = {"tr0", "tr1", "tr2", "tr3", "tilde r"};
  for (size_t i = 0; i < pairs.size(); ++i)
    if (!pe_equal(pairs[i].first, pairs[i].second)) {
      v.pass = false;
      os << names[i] << " = " << pe_str(pairs[i].first) << " != " << pe_str(pairs[i].second)
         << "; ";
    }
  v.detail = v.pass ? "tr0..tr3 and tilde r match the printed outputs" : os.str();
  return v;
}

}  // namespace jac
