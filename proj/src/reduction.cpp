#include "jacpair/reduction.hpp"

#include <algorithm>

#include "json.hpp"

namespace jac {

long long ypoly_deg(const YPoly& a) {
  for (long long i = static_cast<long long>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

YPoly ypoly_derivative(const YPoly& a) {
  YPoly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Rat(i));
  return d;
}

Rat ypoly_eval(const YPoly& a, const Rat& t) {
  Rat v = 0;
  for (long long i = static_cast<long long>(a.size()) - 1; i >= 0; --i) {
    Rat w = v * t + a[i];
    v = w;
  }
  return v;
}

std::pair<YPoly, YPoly> ypoly_divmod(const YPoly& a, const YPoly& b) {
  long long db = ypoly_deg(b);
  if (db < 0) throw JacError(Err::NOT_INVERTIBLE, "polynomial division by zero");
  YPoly r = a;
  long long dr = ypoly_deg(r);
  YPoly q(std::max<long long>(dr - db + 1, 0), Rat(0));
  while (dr >= db) {
    Rat c = r[dr] / b[db];
    q[dr - db] = c;
    for (long long i = 0; i <= db; ++i) {
      Rat w = r[dr - db + i] - c * b[i];
      r[dr - db + i] = w;
    }
    dr = ypoly_deg(r);
  }
  r.resize(std::max<long long>(ypoly_deg(r) + 1, 0));
  return {q, r};
}

static YPoly ypoly_monic(YPoly a) {
  long long d = ypoly_deg(a);
  if (d < 0) return a;
  Rat lead = a[d];
  for (auto& c : a) {
    Rat w = c / lead;
    c = w;
  }
  a.resize(d + 1);
  return a;
}

YPoly ypoly_gcd(YPoly a, YPoly b) {
  while (ypoly_deg(b) >= 0) {
    YPoly r = ypoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return ypoly_monic(a);
}

std::vector<std::pair<YPoly, long long>> ypoly_squarefree(const YPoly& a) {
  std::vector<std::pair<YPoly, long long>> out;
  YPoly f = ypoly_monic(a);
  if (ypoly_deg(f) < 1) return out;
  YPoly fp = ypoly_derivative(f);
  YPoly g = ypoly_gcd(f, fp);
  YPoly b = ypoly_divmod(f, g).first;
  YPoly c = ypoly_divmod(fp, g).first;
  YPoly d;
  {
    YPoly bp = ypoly_derivative(b);
    d.assign(std::max(c.size(), bp.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) d[i] = c[i];
    for (size_t i = 0; i < bp.size(); ++i) {
      Rat w = d[i] - bp[i];
      d[i] = w;
    }
  }
  long long k = 1;
  while (ypoly_deg(b) > 0) {
    YPoly s = ypoly_gcd(b, d);
    if (ypoly_deg(s) > 0) out.push_back({s, k});
    b = ypoly_divmod(b, s).first;
    YPoly cb = ypoly_divmod(d, s).first;
    YPoly bp = ypoly_derivative(b);
    d.assign(std::max(cb.size(), bp.size()), Rat(0));
    for (size_t i = 0; i < cb.size(); ++i) d[i] = cb[i];
    for (size_t i = 0; i < bp.size(); ++i) {
      Rat w = d[i] - bp[i];
      d[i] = w;
    }
    ++k;
  }
  return out;
}

std::vector<Rat> ypoly_rational_roots(const YPoly& a) {
  std::vector<Rat> roots;
  long long d = ypoly_deg(a);
  if (d < 0) return roots;
  long long low = 0;
  while (low <= d && a[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  if (low == d) return roots;
  if (d - low == 1) {
    roots.push_back(-a[low] / a[low + 1]);
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  if (d - low == 2) {
    Rat disc = a[low + 1] * a[low + 1] - Rat(4) * a[low + 2] * a[low];
    if (auto s = rat_root(disc, 2)) {
      roots.push_back((-a[low + 1] + *s) / (Rat(2) * a[low + 2]));
      Rat other = (-a[low + 1] - *s) / (Rat(2) * a[low + 2]);
      if (other != roots.back()) roots.push_back(other);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  // clear denominators of the stripped polynomial
  Int den = 1;
  for (long long i = low; i <= d; ++i) den = lcm_int(den, rat_den(a[i]));
  std::vector<Int> b;
  for (long long i = low; i <= d; ++i) b.push_back(rat_num(a[i] * Rat(den)));
  Int a0 = b.front(), al = b.back();
  if (a0 < 0) a0 = -a0;
  if (al < 0) al = -al;
  // divisors from a capped trial factorization; a composite cofactor is
  // kept whole, so factors above the cap can only appear all at once
  auto divisors = [](Int v) {
    std::vector<std::pair<Int, int>> fac;
    for (Int p = 2; p * p <= v && p <= 1000000; ++p)
      if (v % p == 0) {
        int e = 0;
        while (v % p == 0) {
          v /= p;
          ++e;
        }
        fac.push_back({p, e});
      }
    if (v > 1) fac.push_back({v, 1});
    std::vector<Int> ds{Int(1)};
    for (auto& [p, e] : fac) {
      size_t n = ds.size();
      Int pk = 1;
      for (int k = 1; k <= e; ++k) {
        pk *= p;
        for (size_t i = 0; i < n; ++i) ds.push_back(ds[i] * pk);
      }
    }
    return ds;
  };
  for (const Int& pn : divisors(a0))
    for (const Int& qd : divisors(al))
      for (int sg : {1, -1}) {
        Rat cand = Rat(pn * sg) / Rat(qd);
        if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
        if (ypoly_eval(a, cand) == 0) roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

Rat constant_bracket(const Series& F, const Series& G) {
  Series J = bracket(F, G);
  for (auto& [k, c] : J.terms)
    if (!(k.x == 0 && k.y == 0))
      throw JacError(Err::NO_RELATION, "[F_L, G_L] is not a constant: " + pretty(J));
  Rat j = coeff(J, Rat(0), 0);
  if (j == 0) throw JacError(Err::NO_RELATION, "[F_L, G_L] vanishes");
  return j;
}

long long ll(const Int& v) { return static_cast<long long>(v); }

}  // namespace

EdgeRelation test_edge_relation(const Series& F, const Series& G, const Rat& p) {
  Series FL = component(F, p, Rat(0));
  Series GL = component(G, p, Rat(0));
  long long m = vertex_m(FL), n = vertex_m(GL);
  if (m < 1 || n < 1)
    throw JacError(Err::PRECONDITION_FAILED, "edge relation: need positive y-degrees");
  if (vertex_m0(FL) * Rat(n) != vertex_m0(GL) * Rat(m))
    throw JacError(Err::PRECONDITION_FAILED, "edge relation: vertex ratios differ");
  Int g = gcd_int(Int(m), Int(n));
  // G_L = F_L^{n/m} exactly iff G_L^{m/g} = F_L^{n/g}
  if (equal(pow_int(GL, ll(Int(m) / g)), pow_int(FL, ll(Int(n) / g)))) {
    EdgeRelation r;
    r.kind = EdgeRelation::Case::POWER_RELATION;
    r.num = ll(Int(n) / g);
    r.den = ll(Int(m) / g);
    return r;
  }
  EdgeRelation r;
  r.kind = EdgeRelation::Case::QJ_RELATION;
  r.J = constant_bracket(FL, GL);
  return r;
}

Rat vertex_prime(const Series& F, const Vertex& v) {
  std::optional<Rat> best;
  for (auto& [k, c] : F.terms) {
    if (k.y >= v.y) continue;
    Rat cand = (k.x - v.x) / Rat(k.y - v.y);
    if (!best || cand > *best) best = cand;
  }
  if (!best) throw JacError(Err::EDGE_NOT_FOUND, "no support below the vertex");
  return -*best;  // x-step per unit drop in y, as a prime degree
}

Series edge_part_at(const Series& F, const Vertex& v, const Rat& p) {
  Series R = make_zero(F.space);
  R.N = F.N;
  for (auto& [k, c] : F.terms)
    if (k.y <= v.y && k.x - v.x == p * Rat(v.y - k.y)) R.terms[k] = c;
  normalize(R);
  return R;
}

namespace {

// multiplicity of a root of a monic polynomial, by synthetic division
long long root_multiplicity(YPoly f, const Rat& a) {
  long long mult = 0;
  while (ypoly_deg(f) >= 1 && ypoly_eval(f, a) == 0) {
    YPoly lin = {-a, Rat(1)};
    f = ypoly_divmod(f, lin).first;
    ++mult;
  }
  return mult;
}

}  // namespace

DescentResult descend_vertex(const Series& Fin, const Series& Gin, const Vertex& v) {
  const Series& F = Fin;
  const Series& G = Gin;
  if (coeff(F, v.x, v.y) == 0)
    throw JacError(Err::VERTEX_INVALID, "vertex not in the support of F");
  long long m = v.y;
  Rat m0 = v.x;
  if (!(m >= 2 && m0 > 0 && m0 < m))
    throw JacError(Err::VERTEX_INVALID, "descent needs 0 < m0 < m with m >= 2");
  Rat p = vertex_prime(F, v);
  // edge polynomial in t = x^{-p} y
  YPoly psi(m + 1, Rat(0));
  for (long long j = 0; j <= m; ++j) {
    Rat c = coeff(F, v.x + Rat(j) * p, v.y - j);
    psi[m - j] = c;
  }
  YPoly mon = ypoly_monic(psi);
  bool monomial = true;
  for (long long i = 0; i < m; ++i)
    if (mon[i] != 0) monomial = false;
  if (monomial)
    throw JacError(Err::VERTEX_INVALID, "edge part is a monomial, nothing to descend");

  DescentResult res;
  res.F = F;
  res.G = G;
  res.vertex = v;

  // single-root test: mon = (t - a)^m coefficientwise
  Rat a = -mon[m - 1] / Rat(m);
  bool single = true;
  for (long long i = 0; i <= m; ++i)
    if (mon[i] != binom(Rat(m), m - i) * rat_pow_int(-a, m - i)) single = false;
  if (single) {
    res.singleFactor = true;
    res.alpha0 = a;
    res.multiplicity = m;
    AutoStep st;
    st.kind = AutoStep::Kind::SHIFT_Y;
    st.lambda = a;
    st.e = p;
    res.log.steps.push_back(st);
    res.F = shift_y(F, a, p);
    res.G = shift_y(G, a, p);
    return res;
  }

  auto sqf = ypoly_squarefree(mon);
  long long kmax = 0;
  for (auto& [s, k] : sqf) kmax = std::max(kmax, k);
  std::optional<Rat> alpha;
  for (auto& [s, k] : sqf) {
    if (k != kmax) continue;
    for (auto& r : ypoly_rational_roots(s)) {
      if (!alpha) {
        alpha = r;
        continue;
      }
      auto key = [](const Rat& q) { return std::make_pair(rat_num(q), rat_den(q)); };
      if (key(r) < key(*alpha)) alpha = r;
    }
  }
  if (!alpha)
    throw JacError(Err::IRRATIONAL_ROOT,
                   "maximal-multiplicity factor has no rational root");
  res.alpha0 = *alpha;
  res.multiplicity = root_multiplicity(mon, *alpha);
  if (*alpha != 0) {
    AutoStep st;
    st.kind = AutoStep::Kind::SHIFT_Y;
    st.lambda = *alpha;
    st.e = p;
    res.log.steps.push_back(st);
    res.F = shift_y(F, *alpha, p);
    res.G = shift_y(G, *alpha, p);
  }
  res.vertex = {v.x + Rat(m - res.multiplicity) * p, res.multiplicity};
  return res;
}

StraightenResult straighten(const Series& F, const Series& G, long long pHat,
                            long long qHat) {
  if (!(qHat > pHat && pHat >= 0))
    throw JacError(Err::PRECONDITION_FAILED, "straighten: need q > p >= 0");
  StraightenResult out;
  AutoStep st;
  st.kind = AutoStep::Kind::MONOMIAL_CHANGE;
  st.p = pHat;
  st.q = qHat;
  out.log.steps.push_back(st);
  out.F = apply_auto(out.log, F);
  out.G = apply_auto(out.log, G);
  return out;
}

namespace {

// top x-block as a pure y-polynomial
Series top_block(const Series& F, const Rat& xa) {
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

}  // namespace

NormalizedPair reduce_to_normal_form(const Series& F, const Series& G,
                                     long long maxSteps) {
  NormalizedPair np;
  Series Fc = F, Gc = G;
  long long mtop = vertex_m(Fc), ntop = vertex_m(Gc);
  if (mtop < 1 || ntop < 1)
    throw JacError(Err::VERTEX_INVALID, "need positive y-degrees");
  Rat ratio = Rat(ntop) / Rat(mtop);
  Vertex v{vertex_m0(Fc), mtop};
  Rat p;
  long long n = 0;
  for (long long step = 0;; ++step) {
    if (step >= maxSteps) throw JacError(Err::STEP_LIMIT, "descent did not terminate");
    long long m = v.y;
    Rat m0 = v.x;
    if (!(m >= 2 && m0 > 0 && m0 < m))
      throw JacError(Err::VERTEX_INVALID, "working vertex needs 0 < m0 < m, m >= 2");
    Rat nr = ratio * Rat(m);
    if (!is_integer(nr))
      throw JacError(Err::VERTEX_INVALID, "corresponding y-degree of G is fractional");
    n = static_cast<long long>(rat_num(nr));
    p = vertex_prime(Fc, v);
    Rat target = m0 / Rat(m) - Rat(m - m0) / (Rat(m) * Rat(m + n - 1));
    if (-p == target) break;  // the terminal slope: this edge carries the pair
    if (-p > target) {
      // steeper than terminal: a stray single factor is shifted away;
      // anything else is a peelable tail, provided the terminal
      // direction already carries the pair
      bool shifted = false;
      try {
        DescentResult d = descend_vertex(Fc, Gc, v);
        if (d.singleFactor) {
          for (auto& st : d.log.steps) np.log.steps.push_back(st);
          Fc = d.F;
          Gc = d.G;
          v = d.vertex;
          shifted = true;
        }
      } catch (const JacError&) {
      }
      if (shifted) continue;
      EdgeRelation rel = test_edge_relation(Fc, Gc, -target);
      if (rel.kind == EdgeRelation::Case::QJ_RELATION) {
        p = -target;
        break;
      }
      throw JacError(Err::VERTEX_INVALID, "multi-factor edge beyond the terminal slope");
    }
    DescentResult d = descend_vertex(Fc, Gc, v);
    for (auto& st : d.log.steps) np.log.steps.push_back(st);
    Fc = d.F;
    Gc = d.G;
    v = d.vertex;
  }
  long long m = v.y;
  Rat s = -p;  // = pHat/qHat >= 0
  long long pHat = static_cast<long long>(rat_num(s));
  long long qHat = static_cast<long long>(rat_den(s));
  if (pHat < 0)
    throw JacError(Err::VERTEX_INVALID, "terminal edge slope is negative");
  if (pHat != 0) {  // pHat = 0 straightens to the identity
    StraightenResult st = straighten(Fc, Gc, pHat, qHat);
    for (auto& stp : st.log.steps) np.log.steps.push_back(stp);
    Fc = st.F;
    Gc = st.G;
  }

  Rat xa = *deg_x(Fc), xb = *deg_x(Gc);
  if (xa != Rat(m) / Rat(m + n))
    np.diagnostics.push_back("x-degree of F is not m/(m+n) after straightening");
  if (xb != Rat(n) / Rat(m + n))
    np.diagnostics.push_back("x-degree of G is not n/(m+n) after straightening");

  Rat leadF = coeff(Fc, xa, m);
  if (leadF == 0) throw JacError(Err::INTERNAL, "missing top term after straightening");
  Rat c1 = coeff(Fc, xa, m - 1) / leadF;
  if (c1 != 0) {
    AutoStep sh;
    sh.kind = AutoStep::Kind::SHIFT_Y;
    sh.lambda = -c1 / Rat(m);
    sh.e = Rat(0);
    np.log.steps.push_back(sh);
    Fc = shift_y(Fc, sh.lambda, Rat(0));
    Gc = shift_y(Gc, sh.lambda, Rat(0));
  }
  np.F = Fc;
  np.G = Gc;
  np.m = m;
  np.n = n;
  np.scaleF = leadF;
  Rat leadG = coeff(Gc, xb, n);
  if (leadG == 0) throw JacError(Err::INTERNAL, "missing top term of G");
  np.scaleG = leadG;
  np.f = scale(top_block(Fc, xa), Rat(1) / leadF);
  np.g = scale(top_block(Gc, xb), Rat(1) / leadG);

  Series fp = partial(np.f, Var::Y), gp = partial(np.g, Var::Y);
  Series rel = sub(scale(mul(np.f, gp), Rat(m) / Rat(m + n)),
                   scale(mul(fp, np.g), Rat(n) / Rat(m + n)));
  for (auto& [k, c] : rel.terms)
    if (!(k.x == 0 && k.y == 0))
      throw JacError(Err::NOT_QJ_PAIR, "edge polynomials fail the constant relation");
  Rat jrel = coeff(rel, Rat(0), 0);
  if (jrel == 0) throw JacError(Err::NOT_QJ_PAIR, "edge relation constant vanishes");
  np.J = leadF * leadG * jrel;

  if (m == 1)
    np.diagnostics.push_back("m = 1: contradicts the non-divisibility assumption");
  if (m >= 2 && n % m == 0) np.diagnostics.push_back("m divides n");
  if (!(m < n)) np.diagnostics.push_back("m >= n");
  if (ypoly_deg(ypoly_gcd(to_ypoly(np.f), to_ypoly(np.g))) > 0)
    np.diagnostics.push_back("f and g share an irreducible factor");

  std::optional<Rat> xmin;
  for (auto& [k, c] : Fc.terms)
    if (!xmin || k.x < *xmin) xmin = k.x;
  for (auto& [k, c] : Gc.terms)
    if (!xmin || k.x < *xmin) xmin = k.x;
  long long N = std::max(Fc.N, Gc.N);
  np.tailDepth = static_cast<long long>(rat_floor((std::max(xa, xb) - *xmin) * Rat(N)));
  return np;
}

std::string normalized_json(const NormalizedPair& np) {
  nlohmann::ordered_json j;
  j["m"] = np.m;
  j["n"] = np.n;
  j["J"] = rat_str(np.J);
  j["scaleF"] = rat_str(np.scaleF);
  j["scaleG"] = rat_str(np.scaleG);
  j["tailDepth"] = np.tailDepth;
  j["F"] = nlohmann::ordered_json::parse(to_json(np.F));
  j["G"] = nlohmann::ordered_json::parse(to_json(np.G));
  j["f"] = nlohmann::ordered_json::parse(to_json(np.f));
  j["g"] = nlohmann::ordered_json::parse(to_json(np.g));
  j["autoLog"] = nlohmann::ordered_json::parse(auto_log_json(np.log));
  j["diagnostics"] = np.diagnostics;
  return j.dump();
}

}  // namespace jac
