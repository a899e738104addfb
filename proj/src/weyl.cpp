#include "jacpair/weyl.hpp"

#include <sstream>
#include <vector>

#include "json.hpp"

namespace jac {

const char* weyl_rep_str(WeylRep r) { return r == WeylRep::UV_STANDARD ? "Weyl-UV" : "Weyl-W"; }

namespace {

long long ll(const Rat& r) { return rat_floor(r).convert_to<long long>(); }

std::optional<Rat> max_opt(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}
std::optional<long long> max_opt(const std::optional<long long>& a,
                                 const std::optional<long long>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

std::optional<Rat> wdeg_u(const WeylSeries& F) {
  std::optional<Rat> d;
  for (auto& [k, c] : F.terms)
    if (!d || k.u > *d) d = k.u;
  return d;
}
std::optional<long long> wdeg_v(const WeylSeries& F) {
  std::optional<long long> d;
  for (auto& [k, c] : F.terms)
    if (!d || k.v > *d) d = k.v;
  return d;
}

// Descending Laurent series in one variable, for the w-form basis work.
using WPoly = std::map<long long, Rat>;

// Inverse of p (leading coefficient nonzero) down to exponent >= cut.
WPoly winv(const WPoly& p, long long cut) {
  long long L = p.rbegin()->first;
  Rat lead = p.rbegin()->second;
  WPoly g;
  for (long long t = -L; t >= cut; --t) {
    Rat s = t == -L ? Rat(1) : Rat(0);
    for (auto& [i, c] : p) {
      if (i == L) continue;
      auto it = g.find(L + t - i);
      if (it != g.end()) s -= c * it->second;
    }
    if (s != 0) g[t] = s / lead;
  }
  return g;
}

// w(w-1)...(w-j+1) for j >= 0, as ascending coefficient vector.
std::vector<Rat> falling_factorial(long long j) {
  std::vector<Rat> p{Rat(1)};
  for (long long t = 0; t < j; ++t) {
    std::vector<Rat> q(p.size() + 1, Rat(0));
    for (size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= p[i] * Rat(t);
    }
    p = std::move(q);
  }
  return p;
}

// (w+1)(w+2)...(w+j')
WPoly ascending_factorial(long long jp) {
  WPoly p{{0, Rat(1)}};
  for (long long t = 1; t <= jp; ++t) {
    WPoly q;
    for (auto& [i, c] : p) {
      q[i + 1] += c;
      q[i] += c * Rat(t);
    }
    p = std::move(q);
  }
  return p;
}

void check_rep(const WeylSeries& F, WeylRep want, const char* who) {
  if (F.rep != want)
    throw JacError(Err::REPRESENTATION_MISMATCH,
                   std::string(who) + ": expected " + weyl_rep_str(want));
}

}  // namespace

WeylSeries weyl_zero(WeylRep rep) {
  WeylSeries F;
  F.rep = rep;
  return F;
}

WeylSeries weyl_const(WeylRep rep, const Rat& c) { return weyl_term(rep, c, Rat(0), 0); }

WeylSeries weyl_term(WeylRep rep, const Rat& c, const Rat& ue, long long ve) {
  WeylSeries F;
  F.rep = rep;
  if (c != 0) F.terms[{ue, ve}] = c;
  weyl_normalize(F);
  return F;
}

void weyl_normalize(WeylSeries& F) {
  Int n = F.N;
  for (auto it = F.terms.begin(); it != F.terms.end();) {
    bool drop = it->second == 0;
    if (!drop && F.uFloor && it->first.u < *F.uFloor) drop = true;
    if (!drop && F.vFloor && it->first.v < *F.vFloor) drop = true;
    if (drop) {
      it = F.terms.erase(it);
    } else {
      n = lcm_int(n, rat_den(it->first.u));
      ++it;
    }
  }
  if (n > n_cap()) throw JacError(Err::N_OVERFLOW, "common denominator exceeds cap: " + n.str());
  F.N = static_cast<long long>(n);
}

WeylSeries weyl_truncated(const WeylSeries& F, const std::optional<Rat>& uf,
                          const std::optional<long long>& vf) {
  WeylSeries R = F;
  R.uFloor = max_opt(R.uFloor, uf);
  R.vFloor = max_opt(R.vFloor, vf);
  weyl_normalize(R);
  return R;
}

Rat weyl_coeff(const WeylSeries& F, const Rat& ue, long long ve) {
  auto it = F.terms.find({ue, ve});
  return it == F.terms.end() ? Rat(0) : it->second;
}

bool weyl_equal(const WeylSeries& F, const WeylSeries& G) {
  if (F.rep != G.rep)
    throw JacError(Err::REPRESENTATION_MISMATCH, "equal: different representations");
  auto uf = max_opt(F.uFloor, G.uFloor);
  auto vf = max_opt(F.vFloor, G.vFloor);
  return weyl_truncated(F, uf, vf).terms == weyl_truncated(G, uf, vf).terms;
}

WeylSeries weyl_add(const WeylSeries& F, const WeylSeries& G) {
  if (F.rep != G.rep)
    throw JacError(Err::REPRESENTATION_MISMATCH, "add: different representations");
  WeylSeries R = F;
  for (auto& [k, c] : G.terms) {
    auto [it, fresh] = R.terms.try_emplace(k, c);
    if (!fresh) it->second += c;
  }
  R.uFloor = max_opt(F.uFloor, G.uFloor);
  R.vFloor = max_opt(F.vFloor, G.vFloor);
  R.N = static_cast<long long>(lcm_int(F.N, G.N));
  weyl_normalize(R);
  return R;
}

WeylSeries weyl_neg(const WeylSeries& F) { return weyl_scale(F, Rat(-1)); }

WeylSeries weyl_sub(const WeylSeries& F, const WeylSeries& G) { return weyl_add(F, weyl_neg(G)); }

WeylSeries weyl_scale(const WeylSeries& F, const Rat& c) {
  WeylSeries R = F;
  if (c == 0) {
    R.terms.clear();
    return R;
  }
  for (auto& [k, v] : R.terms) v *= c;
  return R;
}

WeylSeries normal_product(const WeylSeries& F, const WeylSeries& G, long long depth) {
  if (F.rep != G.rep)
    throw JacError(Err::REPRESENTATION_MISMATCH, "product: different representations");
  WeylSeries R = weyl_zero(F.rep);
  R.N = static_cast<long long>(lcm_int(F.N, G.N));
  // floor(F) * top(G) rule per coordinate, as in the Poisson-side product
  auto bound = [](const std::optional<Rat>& fl, const WeylSeries& other,
                  std::optional<Rat> otherTop) -> std::optional<Rat> {
    if (!fl) return std::nullopt;
    if (!otherTop) {
      if (other.is_exact()) return std::nullopt;
      otherTop = other.uFloor ? *other.uFloor : Rat(0);
    }
    return *fl + *otherTop;
  };
  auto boundv = [](const std::optional<long long>& fl, const WeylSeries& other,
                   std::optional<long long> otherTop) -> std::optional<long long> {
    if (!fl) return std::nullopt;
    if (!otherTop) {
      if (other.is_exact()) return std::nullopt;
      otherTop = other.vFloor ? *other.vFloor : 0;
    }
    return *fl + *otherTop;
  };
  std::optional<Rat> cutU =
      max_opt(bound(F.uFloor, G, wdeg_u(G)), bound(G.uFloor, F, wdeg_u(F)));
  std::optional<long long> cutV =
      max_opt(boundv(F.vFloor, G, wdeg_v(G)), boundv(G.vFloor, F, wdeg_v(F)));

  bool uv = F.rep == WeylRep::UV_STANDARD;
  // non-terminating reordering sums need a recorded cut somewhere
  auto finite_pair = [&](const WKey& kf, const WKey& kg) {
    if (uv) return kf.v >= 0 || (is_integer(kg.u) && kg.u >= 0);
    return kf.v >= 0 || kg.u == 0;
  };
  bool needCut = false;
  for (auto& [kf, cf] : F.terms)
    for (auto& [kg, cg] : G.terms)
      if (!finite_pair(kf, kg)) needCut = true;
  if (needCut && !cutU && !cutV) {
    for (auto& [kf, cf] : F.terms)
      for (auto& [kg, cg] : G.terms)
        if (!finite_pair(kf, kg)) {
          if (uv) cutU = max_opt(cutU, std::optional<Rat>(kf.u + kg.u - depth));
          cutV = max_opt(cutV, std::optional<long long>(kf.v + kg.v - depth));
        }
  }

  for (auto& [kf, cf] : F.terms)
    for (auto& [kg, cg] : G.terms) {
      std::optional<long long> sl;
      if (uv) {
        if (kf.v >= 0) sl = kf.v;
        if (is_integer(kg.u) && kg.u >= 0) {
          long long b = ll(kg.u);
          sl = sl ? std::min(*sl, b) : b;
        }
        if (cutU) {
          long long b = ll(kf.u + kg.u - *cutU);
          sl = sl ? std::min(*sl, b) : b;
        }
      } else {
        if (kf.v >= 0) sl = kf.v;
        if (kg.u == 0) sl = sl ? std::min(*sl, 0LL) : 0;
      }
      if (cutV) {
        long long b = kf.v + kg.v - *cutV;
        sl = sl ? std::min(*sl, b) : b;
      }
      if (!sl) throw JacError(Err::INTERNAL, "product: unbounded reordering sum");
      for (long long s = 0; s <= *sl; ++s) {
        Rat coef;
        if (uv)
          coef = cf * cg * factorial(s) * binom(Rat(kf.v), s) * binom(kg.u, s);
        else
          coef = cf * cg * binom(Rat(kf.v), s) * rat_pow_int(kg.u, s);
        if (coef == 0) continue;
        WKey k{uv ? Rat(kf.u + kg.u - s) : Rat(kf.u + kg.u), kf.v + kg.v - s};
        auto [it, fresh] = R.terms.try_emplace(k, coef);
        if (!fresh) it->second += coef;
      }
    }
  R.uFloor = cutU;
  R.vFloor = cutV;
  weyl_normalize(R);
  return R;
}

WeylSeries weyl_bracket(const WeylSeries& F, const WeylSeries& G, long long depth) {
  return weyl_sub(normal_product(F, G, depth), normal_product(G, F, depth));
}

WeylSeries weyl_pow_int(const WeylSeries& F, long long k, long long depth) {
  if (k < 0) return weyl_pow_int(weyl_inverse(F, depth), -k, depth);
  WeylSeries acc = weyl_const(F.rep, Rat(1));
  WeylSeries base = F;
  long long e = k;
  while (e) {
    if (e & 1) acc = normal_product(acc, base, depth);
    e >>= 1;
    if (e) base = normal_product(base, base, depth);
  }
  return acc;
}

WeylSeries weyl_inverse(const WeylSeries& F, long long depth) {
  if (F.known_zero()) throw JacError(Err::NOT_INVERTIBLE, "inverse of zero");
  WKey lead = F.terms.begin()->first;
  Rat lc = F.terms.begin()->second;
  std::optional<Rat> uT = -lead.u - Rat(depth - 1) / Rat(F.N);
  std::optional<long long> vT = -lead.v - (depth - 1);
  if (F.rep == WeylRep::W_FORM) {
    // u-exponents never drop under w-form reordering
    bool oneLevel = true;
    for (auto& [k, c] : F.terms)
      if (k.u != lead.u) oneLevel = false;
    if (oneLevel) uT = F.uFloor ? std::optional<Rat>(*F.uFloor - 2 * lead.u) : std::nullopt;
  }
  WeylSeries H = weyl_term(F.rep, Rat(1) / lc, -lead.u, -lead.v);
  H.uFloor = uT;
  H.vFloor = vT;
  WeylSeries one = weyl_const(F.rep, Rat(1));
  for (int it = 0; it < 200; ++it) {
    WeylSeries R = weyl_sub(one, normal_product(F, H, depth));
    if (it == 0)
      for (auto& [k, c] : R.terms)
        if (k.u > 0 || (k.u == 0 && k.v >= 0))
          throw JacError(Err::NOT_INVERTIBLE, "leading term does not dominate");
    if (R.known_zero()) return H;
    H = weyl_truncated(weyl_add(H, normal_product(H, R, depth)), uT, vT);
  }
  throw JacError(Err::INTERNAL, "inverse iteration failed to settle");
}

WeylSeries weyl_fractional_power(const WeylSeries& F, long long a, long long b,
                                 long long depth) {
  if (b <= 0) throw JacError(Err::BAD_EXPONENT, "root index must be positive");
  if (F.known_zero()) {
    if (a < 0) throw JacError(Err::NOT_INVERTIBLE, "inverse power of zero");
    return weyl_zero(F.rep);
  }
  if (b == 1) return weyl_pow_int(F, a, depth);
  WKey lead = F.terms.begin()->first;
  Rat lc = F.terms.begin()->second;
  if ((a * lead.v) % b != 0)
    throw JacError(Err::BAD_EXPONENT, "root index does not divide the leading degree");
  auto c0 = rat_pow_frac(lc, a, b);
  if (!c0) throw JacError(Err::BAD_LEADING, "leading coefficient has no rational a/b power");
  Rat ue = Rat(a) * lead.u / Rat(b);
  long long ve = a * lead.v / b;
  std::optional<Rat> uT = ue - Rat(depth);
  std::optional<long long> vT = ve - depth;
  WeylSeries A = weyl_truncated(weyl_pow_int(F, a, depth + 4),
                                *uT + Rat(b - 1) * ue, *vT + (b - 1) * ve);
  WeylSeries E = weyl_term(F.rep, *c0, ue, ve);
  E.uFloor = uT;
  E.vFloor = vT;
  Rat denom = Rat(b) * rat_pow_int(*c0, b - 1);
  std::optional<WKey> last;
  for (int it = 0; it < 5000; ++it) {
    WeylSeries R = weyl_sub(A, weyl_pow_int(E, b, depth));
    if (R.known_zero()) return E;
    WKey top = R.terms.begin()->first;
    if (last && !WKeyLess{}(*last, top))
      throw JacError(Err::INTERNAL, "root iteration stalled");
    last = top;
    Rat d = R.terms.begin()->second / denom;
    E = weyl_truncated(
        weyl_add(E, weyl_term(F.rep, d, top.u - Rat(b - 1) * ue, top.v - (b - 1) * ve)),
        uT, vT);
  }
  throw JacError(Err::INTERNAL, "root iteration failed to settle");
}

WeylSeries to_w_form(const WeylSeries& F, long long depth) {
  check_rep(F, WeylRep::UV_STANDARD, "to_w_form");
  for (auto& [k, c] : F.terms)
    if (!is_integer(k.u))
      throw JacError(Err::FRACTIONAL_U_IN_W_FORM, "fractional u-exponent in w-form request");
  if (F.uFloor && !F.vFloor)
    throw JacError(Err::PRECONDITION_FAILED, "u-truncated series needs a v-floor to convert");
  WeylSeries R = weyl_zero(WeylRep::W_FORM);
  R.N = 1;
  bool hasNeg = false;
  std::optional<long long> minv;
  for (auto& [k, c] : F.terms) {
    if (k.v < 0) hasNeg = true;
    if (!minv || k.v < *minv) minv = k.v;
  }
  std::optional<long long> wcut = F.vFloor;
  if (!wcut && hasNeg) wcut = *minv - depth;
  if (F.uFloor) R.uFloor = *F.uFloor - *F.vFloor;
  R.vFloor = wcut;
  for (auto& [k, c] : F.terms) {
    if (k.v >= 0) {
      auto p = falling_factorial(k.v);
      for (size_t e = 0; e < p.size(); ++e)
        if (p[e] != 0) R.terms[{k.u - k.v, (long long)e}] += c * p[e];
    } else {
      auto inv = winv(ascending_factorial(-k.v), *wcut);
      for (auto& [e, q] : inv) R.terms[{k.u - k.v, e}] += c * q;
    }
  }
  weyl_normalize(R);
  return R;
}

WeylSeries from_w_form(const WeylSeries& F, long long depth) {
  check_rep(F, WeylRep::W_FORM, "from_w_form");
  if (F.uFloor)
    throw JacError(Err::PRECONDITION_FAILED, "u-truncated w-form cannot be converted");
  for (auto& [k, c] : F.terms)
    if (!is_integer(k.u))
      throw JacError(Err::FRACTIONAL_U_IN_W_FORM, "fractional u-exponent in w-form");
  WeylSeries R = weyl_zero(WeylRep::UV_STANDARD);
  R.N = 1;
  bool hasNeg = false;
  std::optional<long long> minw;
  long long maxk = 0;
  for (auto& [k, c] : F.terms) {
    if (k.v < 0) hasNeg = true;
    if (!minw || k.v < *minw) minw = k.v;
    if (k.v > maxk) maxk = k.v;
  }
  std::optional<long long> wcut = F.vFloor;
  if (!wcut && hasNeg) wcut = *minw - depth;
  R.vFloor = wcut;
  // w^k = sum_j S(k,j) u^j v^j in the falling-factorial basis
  std::vector<std::vector<Rat>> S(maxk + 1, std::vector<Rat>(maxk + 1, Rat(0)));
  S[0][0] = 1;
  for (long long k = 1; k <= maxk; ++k)
    for (long long j = 1; j <= k; ++j) S[k][j] = Rat(j) * S[k - 1][j] + S[k - 1][j - 1];
  // group the descending parts by u-level
  std::map<Rat, WPoly> tails;
  for (auto& [k, c] : F.terms) {
    if (k.v >= 0) {
      for (long long j = 0; j <= k.v; ++j)
        if (S[k.v][j] != 0) R.terms[{k.u + j, j}] += c * S[k.v][j];
    } else {
      tails[k.u][k.v] += c;
    }
  }
  for (auto& [ue, rem0] : tails) {
    WPoly rem = rem0;
    for (long long jp = 1; -jp >= *wcut; ++jp) {
      auto it = rem.find(-jp);
      if (it == rem.end() || it->second == 0) continue;
      Rat b = it->second;
      R.terms[{ue - jp, -jp}] += b;
      auto inv = winv(ascending_factorial(jp), *wcut);
      for (auto& [e, q] : inv) rem[e] -= b * q;
    }
  }
  weyl_normalize(R);
  return R;
}

Rat weyl_trace(const WeylSeries& F) {
  Rat ue = F.rep == WeylRep::UV_STANDARD ? Rat(-1) : Rat(0);
  if (F.uFloor && *F.uFloor > ue)
    throw JacError(Err::BELOW_FLOOR, "trace coefficient is below the u-floor");
  if (F.vFloor && *F.vFloor > -1)
    throw JacError(Err::BELOW_FLOOR, "trace coefficient is below the v-floor");
  return weyl_coeff(F, ue, -1);
}

WeylSeries partial_w(const WeylSeries& F, long long depth) {
  WeylSeries R = weyl_zero(F.rep);
  R.N = F.N;
  if (F.rep == WeylRep::W_FORM) {
    for (auto& [k, c] : F.terms)
      if (k.v != 0) R.terms[{k.u, k.v - 1}] += c * Rat(k.v);
    R.uFloor = F.uFloor;
    if (F.vFloor) R.vFloor = *F.vFloor - 1;
    weyl_normalize(R);
    return R;
  }
  std::optional<Rat> uf = F.uFloor ? std::optional<Rat>(*F.uFloor - 1) : std::nullopt;
  std::optional<long long> vf =
      F.vFloor ? std::optional<long long>(*F.vFloor - 1) : std::nullopt;
  if (!uf && !vf)
    for (auto& [k, c] : F.terms)
      if (k.v < 0) {
        uf = max_opt(uf, std::optional<Rat>(k.u - depth));
        vf = max_opt(vf, std::optional<long long>(k.v - depth));
      }
  for (auto& [k, c] : F.terms) {
    std::optional<long long> sl;
    if (k.v >= 0) sl = k.v;
    if (uf) {
      long long b = ll(k.u - *uf);
      sl = sl ? std::min(*sl, b) : b;
    }
    if (vf) {
      long long b = k.v - *vf;
      sl = sl ? std::min(*sl, b) : b;
    }
    Rat sign(1);
    for (long long i = 1; i <= *sl; ++i) {
      Rat coef = c * sign * factorial(i - 1) * binom(Rat(k.v), i);
      if (coef != 0) R.terms[{k.u - i, k.v - i}] += coef;
      sign = -sign;
    }
  }
  R.uFloor = uf;
  R.vFloor = vf;
  weyl_normalize(R);
  return R;
}

WeylSeries partial_w_v(const WeylSeries& F, long long depth) {
  check_rep(F, WeylRep::UV_STANDARD, "partial_w_v");
  WeylSeries R = weyl_zero(F.rep);
  R.N = F.N;
  std::optional<Rat> uf = F.uFloor ? std::optional<Rat>(*F.uFloor - 1) : std::nullopt;
  std::optional<long long> vf =
      F.vFloor ? std::optional<long long>(*F.vFloor - 1) : std::nullopt;
  if (!uf && !vf)
    for (auto& [k, c] : F.terms)
      if (!(is_integer(k.u) && k.u >= 0)) {
        uf = max_opt(uf, std::optional<Rat>(k.u - depth));
        vf = max_opt(vf, std::optional<long long>(k.v - depth));
      }
  for (auto& [k, c] : F.terms) {
    std::optional<long long> sl;
    if (is_integer(k.u) && k.u >= 0) sl = ll(k.u);
    if (uf) {
      long long b = ll(k.u - *uf);
      sl = sl ? std::min(*sl, b) : b;
    }
    if (vf) {
      long long b = k.v - *vf;
      sl = sl ? std::min(*sl, b) : b;
    }
    Rat sign(1);
    for (long long i = 1; i <= *sl; ++i) {
      Rat coef = c * sign * factorial(i - 1) * binom(k.u, i);
      if (coef != 0) R.terms[{k.u - i, k.v - i}] += coef;
      sign = -sign;
    }
  }
  R.uFloor = uf;
  R.vFloor = vf;
  weyl_normalize(R);
  return R;
}

WeylSeries shift_w(const WeylSeries& F, const Rat& delta, long long depth) {
  check_rep(F, WeylRep::W_FORM, "shift_w");
  WeylSeries R = weyl_zero(F.rep);
  R.N = F.N;
  R.uFloor = F.uFloor;
  std::optional<long long> vf = F.vFloor;
  if (!vf && delta != 0)
    for (auto& [k, c] : F.terms)
      if (k.v < 0) vf = max_opt(vf, std::optional<long long>(k.v - depth));
  for (auto& [k, c] : F.terms) {
    long long sl = k.v >= 0 ? k.v : (delta == 0 ? 0 : k.v - *vf);
    for (long long s = 0; s <= sl; ++s) {
      Rat coef = c * binom(Rat(k.v), s) * rat_pow_int(delta, s);
      if (coef != 0) R.terms[{k.u, k.v - s}] += coef;
    }
  }
  R.vFloor = vf;
  weyl_normalize(R);
  return R;
}

Series bar_map(const WeylSeries& F) {
  check_rep(F, WeylRep::UV_STANDARD, "bar_map");
  Series R = make_zero(Space::B);
  for (auto& [k, c] : F.terms) {
    if (!is_integer(k.u))
      throw JacError(Err::PRECONDITION_FAILED, "fractional u-exponent has no polynomial image");
    R.terms[{k.u, k.v}] = (ll(k.u) % 2 != 0 ? -c : c);
  }
  R.xFloor = F.uFloor;
  R.yFloor = F.vFloor;
  normalize(R);
  return R;
}

WeylSeries bar_unmap(const Series& F) {
  WeylSeries R = weyl_zero(WeylRep::UV_STANDARD);
  for (auto& [k, c] : F.terms) {
    if (!is_integer(k.x))
      throw JacError(Err::PRECONDITION_FAILED, "fractional x-exponent has no Weyl image");
    R.terms[{k.x, k.y}] = (ll(k.x) % 2 != 0 ? -c : c);
  }
  R.uFloor = F.xFloor;
  R.vFloor = F.yFloor;
  weyl_normalize(R);
  return R;
}

VertexSolution dixmier_vertex_solve(long long m0, long long m) {
  if (!(m0 > m && m > 0))
    throw JacError(Err::PRECONDITION_FAILED, "vertex needs m0 > m > 0");
  // (m-1) a + m b  = (2 m0 - 1) C(m, 2)
  // (m0-1) a + m0 b = (2 m - 1) C(m0, 2)
  Rat r1 = Rat(2 * m0 - 1) * binom(Rat(m), 2);
  Rat r2 = Rat(2 * m - 1) * binom(Rat(m0), 2);
  Rat det = Rat(m - 1) * Rat(m0) - Rat(m) * Rat(m0 - 1);
  if (det == 0) throw JacError(Err::SINGULAR_SYSTEM, "degenerate vertex system");
  VertexSolution vs;
  vs.m0 = m0;
  vs.m = m;
  vs.alpha = (r1 * Rat(m0) - r2 * Rat(m)) / det;
  vs.beta = (Rat(m - 1) * r2 - Rat(m0 - 1) * r1) / det;
  if (vs.alpha != Rat(m0 * m) / 2 || vs.beta != Rat((1 - m0) * (1 - m)) / 2)
    throw JacError(Err::INTERNAL, "vertex solution disagrees with the closed form");
  return vs;
}

Verdict vertex_bracket_check(long long m0, long long m, long long depth) {
  VertexSolution vs = dixmier_vertex_solve(m0, m);
  long long a = m0 - m;
  long long dd = depth + m0 + m + 4;
  // f(w) = w(w-1)...(w-m+1) + alpha w(w-1)...(w-m+2)
  WeylSeries f = weyl_zero(WeylRep::W_FORM);
  auto p1 = falling_factorial(m), p2 = falling_factorial(m - 1);
  for (size_t e = 0; e < p1.size(); ++e)
    if (p1[e] != 0) f.terms[{Rat(0), (long long)e}] += p1[e];
  for (size_t e = 0; e < p2.size(); ++e)
    if (p2[e] != 0) f.terms[{Rat(0), (long long)e}] += vs.alpha * p2[e];
  weyl_normalize(f);
  // r(w) = (1/(m-m0)) (w + (m0-m+1)/2) / f(w), descending in w
  WeylSeries lin = weyl_add(weyl_term(WeylRep::W_FORM, Rat(1) / Rat(m - m0), Rat(0), 1),
                            weyl_const(WeylRep::W_FORM, Rat(m0 - m + 1) / Rat(2 * (m - m0))));
  WeylSeries r = normal_product(lin, weyl_inverse(f, dd + m), dd);

  // r(w) u^{-a} = u^{-a} r(w - a); the standard-form series carries beta
  WeylSeries rShift = shift_w(r, Rat(-a), dd);

  std::ostringstream os;
  bool pass = true;
  Rat r0 = Rat(1) / Rat(m - m0);
  Rat betaObs = binom(Rat(m), 2) + weyl_coeff(rShift, Rat(0), -m) / r0;
  if (betaObs != vs.beta) {
    pass = false;
    os << "beta from r(w): " << rat_str(betaObs) << " vs " << rat_str(vs.beta) << "; ";
  }

  WeylSeries F0 = weyl_zero(WeylRep::W_FORM);
  for (auto& [k, c] : f.terms) F0.terms[{Rat(a), k.v}] = c;
  weyl_normalize(F0);
  WeylSeries R0 = weyl_zero(WeylRep::W_FORM);
  for (auto& [k, c] : rShift.terms) R0.terms[{Rat(-a), k.v}] = c;
  R0.vFloor = rShift.vFloor;
  weyl_normalize(R0);

  WeylSeries B = weyl_bracket(F0, R0, dd);
  if (!weyl_equal(B, weyl_const(WeylRep::W_FORM, Rat(1)))) {
    pass = false;
    os << "bracket does not telescope to 1; ";
  }
  Rat t1 = weyl_trace(normal_product(R0, partial_w(F0), dd));
  if (t1 != 0) {
    pass = false;
    os << "tr(R<0> d_w F<0>) = " << rat_str(t1) << "; ";
  }
  WeylSeries F0uv = weyl_add(weyl_term(WeylRep::UV_STANDARD, Rat(1), Rat(m0), m),
                             weyl_term(WeylRep::UV_STANDARD, vs.alpha, Rat(m0 - 1), m - 1));
  WeylSeries R0uv = from_w_form(R0, dd);
  Rat t2 = weyl_trace(normal_product(F0uv, partial_w_v(R0uv, dd), dd));
  if (t2 != 0) {
    pass = false;
    os << "tr(F<0> d_w^v R<0>) = " << rat_str(t2) << "; ";
  }
  Verdict v;
  v.pass = pass;
  v.detail = pass ? "bracket telescopes to 1 and both trace residuals vanish" : os.str();
  return v;
}

std::string weyl_to_json(const WeylSeries& F) {
  nlohmann::ordered_json j;
  j["space"] = weyl_rep_str(F.rep);
  j["N"] = F.N;
  j["uFloor"] = F.uFloor ? nlohmann::ordered_json(rat_str(*F.uFloor)) : nlohmann::ordered_json(nullptr);
  j["vFloor"] = F.vFloor ? nlohmann::ordered_json(std::to_string(*F.vFloor)) : nlohmann::ordered_json(nullptr);
  auto arr = nlohmann::ordered_json::array();
  for (auto& [k, c] : F.terms) {
    nlohmann::ordered_json t;
    t["c"] = rat_str(c);
    t["u"] = rat_str(k.u);
    t["v"] = k.v;
    arr.push_back(t);
  }
  j["terms"] = arr;
  return j.dump();
}

WeylSeries weyl_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw JacError(Err::PARSE_ERROR, std::string("bad weyl JSON: ") + e.what());
  }
  WeylSeries F;
  try {
    std::string sp = j.at("space").get<std::string>();
    if (sp == "Weyl-UV")
      F.rep = WeylRep::UV_STANDARD;
    else if (sp == "Weyl-W")
      F.rep = WeylRep::W_FORM;
    else
      throw JacError(Err::PARSE_ERROR, "unknown weyl space tag: " + sp);
    F.N = j.value("N", 1LL);
    if (j.contains("uFloor") && !j["uFloor"].is_null())
      F.uFloor = rat_parse(j["uFloor"].get<std::string>());
    if (j.contains("vFloor") && !j["vFloor"].is_null())
      F.vFloor = std::stoll(j["vFloor"].get<std::string>());
    for (auto& t : j.at("terms")) {
      Rat c = rat_parse(t.at("c").get<std::string>());
      Rat u = rat_parse(t.at("u").get<std::string>());
      long long v = t.at("v").get<long long>();
      F.terms[{u, v}] += c;
    }
  } catch (const JacError&) {
    throw;
  } catch (const std::exception& e) {
    throw JacError(Err::PARSE_ERROR, std::string("bad weyl JSON: ") + e.what());
  }
  weyl_normalize(F);
  return F;
}

std::string weyl_pretty(const WeylSeries& F) {
  if (F.terms.empty()) return "0";
  const char* second = F.rep == WeylRep::UV_STANDARD ? "v" : "w";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : F.terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c);
    if (k.u != 0) os << " u^" << rat_str(k.u);
    if (k.v != 0) os << " " << second << "^" << k.v;
  }
  if (F.uFloor) os << "  [u>=" << rat_str(*F.uFloor) << "]";
  if (F.vFloor) os << "  [" << second << ">=" << *F.vFloor << "]";
  return os.str();
}

}  // namespace jac
