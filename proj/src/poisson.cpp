#include "jacpair/poisson.hpp"

#include <algorithm>

#include "jacpair/expansion.hpp"
#include "json.hpp"

namespace jac {

Series bracket(const Series& F, const Series& G) {
  if (F.space != G.space)
    throw JacError(Err::SPACE_MISMATCH, "bracket: operands live in different spaces");
  Series a = mul(partial(F, Var::X), partial(G, Var::Y));
  Series b = mul(partial(F, Var::Y), partial(G, Var::X));
  return sub(a, b);
}

Rat trace(const Series& F) {
  if ((F.xFloor && Rat(-1) < *F.xFloor) || (F.yFloor && -1 < *F.yFloor))
    throw JacError(Err::BELOW_FLOOR, "trace: the (-1,-1) coefficient is below the floor");
  return coeff(F, Rat(-1), -1);
}

namespace {

// Allowed generators: deg_x H <= 1, and x-degree-1 terms only of the
// shape x(a0 y + a1).
void check_generator_shape(const Series& H) {
  for (auto& [k, c] : H.terms) {
    if (k.x > 1) throw JacError(Err::BAD_GENERATOR, "exp_ad: generator has x-degree > 1");
    if (k.x == 1 && k.y != 0 && k.y != 1)
      throw JacError(Err::BAD_GENERATOR, "exp_ad: x-degree-1 part must be x(a0 y + a1)");
  }
}

Rat min_support_x(const Series& F) {
  std::optional<Rat> m;
  for (auto& [k, c] : F.terms)
    if (!m || k.x < *m) m = k.x;
  return m ? *m : Rat(0);
}

Rat max_support_x(const Series& F) {
  auto d = deg_x(F);
  return d ? *d : Rat(0);
}

}  // namespace

Series exp_ad(const Series& H, const Series& P, long long depth) {
  if (H.space != P.space)
    throw JacError(Err::SPACE_MISMATCH, "exp_ad: generator and argument spaces differ");
  if (depth <= 0) throw JacError(Err::PRECONDITION_FAILED, "exp_ad: depth must be positive");
  check_generator_shape(H);
  if (H.known_zero()) return P;

  // Per-application drift of a monomial under ad_H.
  Rat maxdx(-1);
  long long mindy = 0, maxdy = 0;
  bool first = true, has_xy = false;
  for (auto& [k, c] : H.terms) {
    Rat dx = k.x - 1;
    long long dy = k.y - 1;
    if (first) {
      maxdx = dx;
      mindy = maxdy = dy;
      first = false;
    } else {
      if (dx > maxdx) maxdx = dx;
      if (dy < mindy) mindy = dy;
      if (dy > maxdy) maxdy = dy;
    }
    if (k.x == 1 && k.y == 1) has_xy = true;
  }

  Rat bx = P.xFloor ? *P.xFloor : min_support_x(P);
  long long by;
  if (P.yFloor) {
    by = *P.yFloor;
  } else {
    by = 0;
    for (auto& [k, c] : P.terms) by = std::min(by, k.y);
  }
  Rat xf = bx;
  if (maxdx < 0) xf += Rat(depth) * maxdx;
  // y stays exact when no generator term descends in y
  std::optional<long long> yf;
  if (P.yFloor || mindy < 0) yf = by + depth * std::min(mindy, 0LL);

  long long itercap;
  if (has_xy) {
    itercap = depth;
  } else {
    itercap = depth + 64;
    if (maxdx < 0) {
      Rat span = max_support_x(P) - xf;
      if (span > 0) itercap += static_cast<long long>(rat_floor(-span / maxdx)) + 1;
    }
    if (mindy < 0) {
      long long top = 0;
      for (auto& [k, c] : P.terms) top = std::max(top, k.y);
      itercap += top - *yf;
    }
  }

  // Below xf a term can never climb back (dx <= 0); below the working
  // y-cut it cannot climb past yf within itercap applications.
  Rat xw = xf;
  std::optional<long long> yw;
  if (yf) yw = *yf - std::max(0LL, maxdy) * itercap;

  Series acc = P;
  Series T = P;
  bool truncated_any = false;
  for (long long i = 1;; ++i) {
    T = scale(bracket(H, T), Rat(1, i));
    if (T.known_zero() && T.is_exact()) break;  // nilpotent case, sum is exact
    {
      Series Tw = truncated(T, xw, yw);
      if (Tw.terms.size() != T.terms.size()) {
        truncated_any = true;
        T = Tw;
      }
    }
    acc = add(acc, T);
    if (has_xy) {
      if (i >= itercap) { truncated_any = true; break; }
      continue;
    }
    if (is_zero_above_floor(truncated(T, xf, yf))) break;
    if (i >= itercap) throw JacError(Err::STEP_LIMIT, "exp_ad: iteration cap exceeded");
  }
  if (truncated_any || !acc.is_exact()) acc = truncated(acc, xf, yf);
  return acc;
}

namespace {

Series monomial_change(const Series& F, long long p, long long q) {
  if (p >= q)
    throw JacError(Err::PRECONDITION_FAILED, "monomial change needs p < q");
  Rat den(q - p);
  Series R = make_zero(F.space);
  for (auto& [k, c] : F.terms) {
    Rat nx = (Rat(q) * k.x - Rat(p) * Rat(k.y)) / den;
    Rat v = c;
    R.terms[{nx, k.y}] += v;
  }
  if (F.xFloor) {
    // the image of the floor line depends on y; take the lowest over the
    // y-range that stored or hidden terms can occupy
    long long ymin = F.yFloor ? *F.yFloor : 0;
    long long ymax = ymin;
    for (auto& [k, c] : F.terms) {
      ymin = std::min(ymin, k.y);
      ymax = std::max(ymax, k.y);
    }
    Rat a = (Rat(q) * *F.xFloor - Rat(p) * Rat(ymin)) / den;
    Rat b = (Rat(q) * *F.xFloor - Rat(p) * Rat(ymax)) / den;
    R.xFloor = std::max(a, b);
  }
  R.yFloor = F.yFloor;
  normalize(R);
  return R;
}

}  // namespace

Series apply_auto(const AutoLog& log, const Series& F, long long depth) {
  Series R = F;
  for (auto& s : log.steps) {
    switch (s.kind) {
      case AutoStep::Kind::EXP_AD:
        R = exp_ad(s.H, R, depth);
        break;
      case AutoStep::Kind::Z_C:
        R = shift_y(R, -s.c, Rat(-1), depth);
        break;
      case AutoStep::Kind::MONOMIAL_CHANGE:
        R = monomial_change(R, s.p, s.q);
        break;
      case AutoStep::Kind::SHIFT_Y:
        R = shift_y(R, s.lambda, s.e, depth);
        break;
    }
  }
  return R;
}

std::string auto_log_json(const AutoLog& log) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& s : log.steps) {
    nlohmann::ordered_json j;
    switch (s.kind) {
      case AutoStep::Kind::EXP_AD:
        j["kind"] = "expAd";
        j["H"] = nlohmann::ordered_json::parse(to_json(s.H));
        break;
      case AutoStep::Kind::Z_C:
        j["kind"] = "zc";
        j["c"] = rat_str(s.c);
        break;
      case AutoStep::Kind::MONOMIAL_CHANGE:
        j["kind"] = "monomial";
        j["p"] = s.p;
        j["q"] = s.q;
        break;
      case AutoStep::Kind::SHIFT_Y:
        j["kind"] = "shiftY";
        j["lambda"] = rat_str(s.lambda);
        j["e"] = rat_str(s.e);
        break;
    }
    arr.push_back(j);
  }
  return arr.dump();
}

AutoLog auto_log_parse(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw JacError(Err::PARSE_ERROR, std::string("auto log: ") + ex.what());
  }
  if (!arr.is_array()) throw JacError(Err::PARSE_ERROR, "auto log: expected an array");
  AutoLog log;
  for (auto& j : arr) {
    AutoStep s;
    std::string kind = j.value("kind", "");
    if (kind == "expAd") {
      s.kind = AutoStep::Kind::EXP_AD;
      s.H = from_json(j.at("H").dump());
    } else if (kind == "zc") {
      s.kind = AutoStep::Kind::Z_C;
      s.c = rat_parse(j.at("c").get<std::string>());
    } else if (kind == "monomial") {
      s.kind = AutoStep::Kind::MONOMIAL_CHANGE;
      s.p = j.at("p").get<long long>();
      s.q = j.at("q").get<long long>();
    } else if (kind == "shiftY") {
      s.kind = AutoStep::Kind::SHIFT_Y;
      s.lambda = rat_parse(j.at("lambda").get<std::string>());
      s.e = rat_parse(j.at("e").get<std::string>());
    } else {
      throw JacError(Err::PARSE_ERROR, "auto log: unknown step kind '" + kind + "'");
    }
    log.steps.push_back(std::move(s));
  }
  return log;
}

namespace {

// Rational roots of an x-polynomial with nonnegative integer exponents.
std::vector<Rat> rational_roots_xpoly(const Series& f) {
  std::vector<Rat> roots;
  for (auto& [k, c] : f.terms)
    if (!is_integer(k.x) || k.x < 0) return roots;
  if (f.terms.empty()) return roots;
  auto eval = [&](const Rat& v) {
    Rat s(0);
    for (auto& [k, c] : f.terms) {
      Rat t = c * rat_pow_int(v, static_cast<long long>(rat_num(k.x)));
      s += t;
    }
    return s;
  };
  Rat zero(0);
  if (eval(zero) == 0) roots.push_back(zero);
  // clear denominators, then apply the rational root bound
  Int den = 1;
  for (auto& [k, c] : f.terms) den = lcm_int(den, rat_den(c));
  Int a0 = 0, an = 0;
  Rat dmin, dmax;
  bool first = true;
  for (auto& [k, c] : f.terms) {
    if (c == 0) continue;
    if (first) { dmin = k.x; dmax = k.x; first = false; }
    dmin = std::min(dmin, k.x);
    dmax = std::max(dmax, k.x);
  }
  for (auto& [k, c] : f.terms) {
    Int ic = rat_num(c * Rat(den));
    if (k.x == dmin) a0 = ic;
    if (k.x == dmax) an = ic;
  }
  if (a0 == 0 || an == 0) return roots;
  auto divisors = [](Int v) {
    if (v < 0) v = -v;
    std::vector<Int> ds;
    for (Int d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        ds.push_back(v / d);
      }
    return ds;
  };
  for (auto& pn : divisors(a0))
    for (auto& qd : divisors(an))
      for (int sgn : {1, -1}) {
        Rat cand = Rat(pn * sgn, qd);
        if (eval(cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

CandidateReport is_jacobian_candidate(const Series& F, const std::vector<Rat>& aSamples,
                                      const std::vector<Rat>& cSamples, long long depth) {
  if (F.terms.empty() || (F.terms.size() == 1 && F.terms.begin()->first.x == 0 &&
                          F.terms.begin()->first.y == 0))
    throw JacError(Err::DEGENERATE, "candidate test: F must not be a constant");
  CandidateReport rep;
  for (auto& c : cSamples) {
    Series T = sub(F, make_const(F.space, c));
    for (auto& a : aSamples) {
      if (a == 0) continue;
      Series P;
      try {
        P = fractional_power(T, static_cast<long long>(rat_num(a)),
                             static_cast<long long>(rat_den(a)), depth);
      } catch (const JacError& ex) {
        if (ex.code == Err::BAD_EXPONENT || ex.code == Err::BAD_LEADING ||
            ex.code == Err::NOT_INVERTIBLE)
          continue;  // this power never enters the representation
        throw;
      }
      if ((P.xFloor && Rat(-1) < *P.xFloor) || (P.yFloor && -1 < *P.yFloor))
        continue;  // trace not decidable at this depth
      Rat tr = coeff(P, Rat(-1), -1);
      if (tr != 0) {
        rep.pass = false;
        rep.a = a;
        rep.c = c;
        rep.traceValue = tr;
        return rep;
      }
    }
  }
  return rep;
}

CandidateReport is_jacobian_candidate(const Series& F, long long depth) {
  auto dm = deg_y(F);
  long long m = dm && *dm > 0 ? *dm : 1;
  std::vector<Rat> as = {Rat(1), Rat(-1), Rat(1, m), Rat(-1, m)};
  for (long long i = 0; i <= 3; ++i) as.push_back(Rat(1 - m - i, m));
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  std::vector<Rat> cs = {Rat(0)};
  if (dm) {
    // the top y-block, as a polynomial in x
    Series f0 = make_zero(Space::AX);
    for (auto& [k, c] : F.terms)
      if (k.y == *dm) f0.terms[{k.x, 0}] = c;
    for (auto& r : rational_roots_xpoly(f0))
      if (std::find(cs.begin(), cs.end(), r) == cs.end()) cs.push_back(r);
  }
  return is_jacobian_candidate(F, as, cs, depth);
}

Series construct_partner(const Series& F, long long depth) {
  Series FB = F.space == Space::B ? F : retag(F, Space::B);
  auto dm = deg_y(FB);
  if (!dm || *dm < 1)
    throw JacError(Err::PRECONDITION_FAILED, "construct_partner: need deg_y F >= 1");
  long long m = *dm;
  ExpansionCoeffs bb = expand_y_in_F(FB, depth + m + 1);
  Series G = make_zero(Space::B);
  for (long long i = 0; i < static_cast<long long>(bb.coeffs.size()); ++i) {
    const Series& bbar = bb.coeffs[i];
    if (i != 1) {
      Rat bad = coeff(bbar, Rat(-1), 0);
      if (bad != 0)
        throw JacError(Err::OBSTRUCTION,
                       "construct_partner: x^-1 obstruction at index " + std::to_string(i));
    }
    Rat factor = Rat(-(1 - i), m);
    if (factor == 0) continue;
    Series bi = scale(antiderivative(bbar, Var::X), factor);
    if (bi.known_zero() && bi.is_exact()) continue;
    Series pw = fractional_power(FB, 1 - m - i, m, depth + 2);
    G = add(G, mul(retag(bi, Space::B), pw));
  }
  // every omitted summand has top y-degree below 1-m-imax
  long long imax = static_cast<long long>(bb.coeffs.size()) - 1;
  return truncated(G, std::nullopt, 1 - m - imax);
}

Verdict residue_pullback_check(const Series& F, const Series& G, const Series& u,
                               const Series& v, long long depth) {
  Series Jser = bracket(F, G);
  for (auto& [k, c] : Jser.terms)
    if (!(k.x == 0 && k.y == 0))
      throw JacError(Err::NOT_QJ_PAIR, "residue pullback: [F,G] is not a constant");
  Rat J = coeff(Jser, Rat(0), 0);

  Series W = mul(F, partial(G, Var::X));
  for (auto& [k, c] : W.terms)
    if (k.x == -1)
      throw JacError(Err::PRECONDITION_FAILED, "residue pullback: res_x(F d_x G) != 0");

  auto subst = [&](const Series& S) {
    Series out = make_zero(Space::AX);
    for (auto& [k, c] : S.terms) {
      Series ux = fractional_power(u, static_cast<long long>(rat_num(k.x)),
                                   static_cast<long long>(rat_den(k.x)), depth);
      Series vy = fractional_power(v, k.y, 1, depth);
      out = add(out, scale(mul(ux, vy), c));
    }
    return out;
  };

  Series Fs = subst(F);
  Series Gs = subst(G);
  Series lhsSer = mul(Fs, partial(Gs, Var::X));
  Series rhsSer = mul(u, partial(v, Var::X));
  if (lhsSer.xFloor && Rat(-1) < *lhsSer.xFloor)
    throw JacError(Err::BELOW_FLOOR, "residue pullback: t^-1 coefficient below floor");
  Rat lhs = coeff(lhsSer, Rat(-1), 0);
  Rat rhs = J * coeff(rhsSer, Rat(-1), 0);
  Verdict ver;
  ver.pass = lhs == rhs;
  ver.detail = "res_t(F dG/dt) = " + rat_str(lhs) + ", J res_t(u dv/dt) = " + rat_str(rhs);
  return ver;
}

}  // namespace jac
