#include "jacpair/series.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace jac {

const char* space_str(Space s) {
  switch (s) {
    case Space::AX: return "A";
    case Space::B: return "B";
    case Space::P: return "P";
  }
  return "?";
}

Space space_parse(const std::string& s) {
  if (s == "A") return Space::AX;
  if (s == "B") return Space::B;
  if (s == "P") return Space::P;
  throw JacError(Err::PARSE_ERROR, "unknown space tag: " + s);
}

static std::atomic<long long> g_n_cap{1 << 20};
long long n_cap() { return g_n_cap.load(); }
void set_n_cap(long long cap) { g_n_cap.store(cap); }

Series make_zero(Space sp) {
  Series S;
  S.space = sp;
  return S;
}

Series make_const(Space sp, const Rat& c) { return make_monomial(sp, c, Rat(0), 0); }

Series make_monomial(Space sp, const Rat& c, const Rat& xe, long long ye) {
  Series S;
  S.space = sp;
  if (c != 0) S.terms[{xe, ye}] = c;
  normalize(S);
  return S;
}

void normalize(Series& F) {
  Int n = F.N;
  for (auto it = F.terms.begin(); it != F.terms.end();) {
    bool drop = it->second == 0;
    if (!drop && F.xFloor && it->first.x < *F.xFloor) drop = true;
    if (!drop && F.yFloor && it->first.y < *F.yFloor) drop = true;
    if (drop) {
      it = F.terms.erase(it);
    } else {
      n = lcm_int(n, rat_den(it->first.x));
      ++it;
    }
  }
  if (n > n_cap()) throw JacError(Err::N_OVERFLOW, "common denominator exceeds cap: " + n.str());
  F.N = static_cast<long long>(n);
  if (F.space == Space::AX) {
    for (auto& [k, c] : F.terms)
      if (k.y != 0) throw JacError(Err::SPACE_MISMATCH, "y term in x-only series");
  }
  if (F.space == Space::P) {
    for (auto& [k, c] : F.terms)
      if (k.y < 0) throw JacError(Err::SPACE_MISMATCH, "negative y power in polynomial-y series");
  }
}

static std::optional<Rat> max_opt(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}
static std::optional<long long> max_opt(const std::optional<long long>& a,
                                        const std::optional<long long>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

void join_floors(Series& F, const Series& A, const Series& B) {
  F.xFloor = max_opt(A.xFloor, B.xFloor);
  F.yFloor = max_opt(A.yFloor, B.yFloor);
}

Series truncated(const Series& F, const std::optional<Rat>& xf,
                 const std::optional<long long>& yf) {
  Series R = F;
  R.xFloor = max_opt(R.xFloor, xf);
  R.yFloor = max_opt(R.yFloor, yf);
  normalize(R);
  return R;
}

Rat coeff(const Series& F, const Rat& xe, long long ye) {
  auto it = F.terms.find({xe, ye});
  return it == F.terms.end() ? Rat(0) : it->second;
}

std::optional<Rat> deg_x(const Series& F) {
  std::optional<Rat> d;
  for (auto& [k, c] : F.terms)
    if (!d || k.x > *d) d = k.x;
  return d;
}

std::optional<long long> deg_y(const Series& F) {
  std::optional<long long> d;
  for (auto& [k, c] : F.terms)
    if (!d || k.y > *d) d = k.y;
  return d;
}

bool equal(const Series& F, const Series& G) {
  auto xf = max_opt(F.xFloor, G.xFloor);
  auto yf = max_opt(F.yFloor, G.yFloor);
  Series A = truncated(F, xf, yf);
  Series B = truncated(G, xf, yf);
  return A.terms == B.terms;
}

bool is_zero_above_floor(const Series& F) { return F.terms.empty(); }

Series add(const Series& F, const Series& G) {
  if (F.space != G.space) throw JacError(Err::SPACE_MISMATCH, "add: different spaces");
  Series R = F;
  for (auto& [k, c] : G.terms) {
    auto [it, fresh] = R.terms.try_emplace(k, c);
    if (!fresh) it->second += c;
  }
  join_floors(R, F, G);
  R.N = static_cast<long long>(lcm_int(F.N, G.N));
  normalize(R);
  return R;
}

Series neg(const Series& F) { return scale(F, Rat(-1)); }

Series sub(const Series& F, const Series& G) { return add(F, neg(G)); }

Series scale(const Series& F, const Rat& c) {
  Series R = F;
  if (c == 0) {
    R.terms.clear();
    return R;
  }
  for (auto& [k, v] : R.terms) v *= c;
  return R;
}

Series mul_monomial(const Series& F, const Rat& c, const Rat& xe, long long ye) {
  Series R = make_zero(F.space);
  R.N = F.N;
  if (c != 0)
    for (auto& [k, v] : F.terms) R.terms[{k.x + xe, k.y + ye}] = v * c;
  if (F.xFloor) R.xFloor = *F.xFloor + xe;
  if (F.yFloor) R.yFloor = *F.yFloor + ye;
  normalize(R);
  return R;
}

Series mul(const Series& F, const Series& G) {
  if (F.space != G.space) throw JacError(Err::SPACE_MISMATCH, "mul: different spaces");
  Series R = make_zero(F.space);
  R.N = static_cast<long long>(lcm_int(F.N, G.N));
  for (auto& [kf, cf] : F.terms)
    for (auto& [kg, cg] : G.terms) {
      Key k{kf.x + kg.x, kf.y + kg.y};
      Rat v = cf * cg;
      auto [it, fresh] = R.terms.try_emplace(k, v);
      if (!fresh) it->second += v;
    }
  // floor(F) * top(G) rule, per coordinate
  auto bound = [](const std::optional<Rat>& fl, const Series& other,
                  std::optional<Rat> otherTop) -> std::optional<Rat> {
    if (!fl) return std::nullopt;
    if (!otherTop) {
      // other has no stored terms; if it is exact it is zero and the
      // unknown region contributes nothing
      if (other.is_exact()) return std::nullopt;
      otherTop = other.xFloor ? *other.xFloor : Rat(0);
    }
    return *fl + *otherTop;
  };
  R.xFloor = max_opt(bound(F.xFloor, G, deg_x(G)), bound(G.xFloor, F, deg_x(F)));
  auto boundy = [](const std::optional<long long>& fl, const Series& other,
                   std::optional<long long> otherTop) -> std::optional<long long> {
    if (!fl) return std::nullopt;
    if (!otherTop) {
      if (other.is_exact()) return std::nullopt;
      otherTop = other.yFloor ? *other.yFloor : 0;
    }
    return *fl + *otherTop;
  };
  R.yFloor = max_opt(boundy(F.yFloor, G, deg_y(G)), boundy(G.yFloor, F, deg_y(F)));
  normalize(R);
  return R;
}

Series pow_int(const Series& F, long long k, long long depth) {
  if (k < 0) {
    Series inv = invert(F, depth > 0 ? depth : 16);
    return pow_int(inv, -k, depth);
  }
  Series acc = make_const(F.space, Rat(1));
  Series base = F;
  long long e = k;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

Series partial(const Series& F, Var v) {
  Series R = make_zero(F.space);
  R.N = F.N;
  for (auto& [k, c] : F.terms) {
    if (v == Var::X) {
      if (k.x != 0) R.terms[{k.x - 1, k.y}] = c * k.x;
    } else {
      if (k.y != 0) R.terms[{k.x, k.y - 1}] = c * Rat(k.y);
    }
  }
  if (F.xFloor) R.xFloor = v == Var::X ? *F.xFloor - 1 : *F.xFloor;
  if (F.yFloor) R.yFloor = v == Var::Y ? *F.yFloor - 1 : *F.yFloor;
  normalize(R);
  return R;
}

Series antiderivative(const Series& F, Var v) {
  Series R = make_zero(F.space);
  R.N = F.N;
  for (auto& [k, c] : F.terms) {
    if (v == Var::X) {
      if (k.x == -1) throw JacError(Err::OBSTRUCTION, "x^-1 term has no power antiderivative");
      R.terms[{k.x + 1, k.y}] = c / (k.x + 1);
    } else {
      if (k.y == -1) throw JacError(Err::OBSTRUCTION, "y^-1 term has no power antiderivative");
      R.terms[{k.x, k.y + 1}] = c / Rat(k.y + 1);
    }
  }
  if (F.xFloor) R.xFloor = v == Var::X ? *F.xFloor + 1 : *F.xFloor;
  if (F.yFloor) R.yFloor = v == Var::Y ? *F.yFloor + 1 : *F.yFloor;
  normalize(R);
  return R;
}

// The dominating monomial w.r.t. the space's expansion order.
static Key leading_key(const Series& F) {
  if (F.terms.empty()) throw JacError(Err::BAD_LEADING, "empty series has no leading term");
  if (F.space == Space::B) {
    const Key* best = nullptr;
    for (auto& [k, c] : F.terms)
      if (!best || k.y > best->y || (k.y == best->y && k.x > best->x)) best = &k;
    return *best;
  }
  // AX / P: map order is (x desc, y desc); the top-x block must be a monomial
  const Key& first = F.terms.begin()->first;
  auto it = std::next(F.terms.begin());
  if (it != F.terms.end() && it->first.x == first.x)
    throw JacError(Err::BAD_LEADING, "leading x-block is not a monomial");
  return first;
}

Series invert(const Series& F, long long depth) {
  try {
    return fractional_power(F, -1, 1, depth);
  } catch (const JacError& e) {
    if (e.code == Err::BAD_LEADING) throw JacError(Err::NOT_INVERTIBLE, e.what());
    throw;
  }
}

Series fractional_power(const Series& F, long long a, long long b, long long depth) {
  if (b == 0) throw JacError(Err::BAD_EXPONENT, "zero exponent denominator");
  if (b < 0) { a = -a; b = -b; }
  {
    long long g = std::abs(std::gcd(a, b));
    if (g > 1) { a /= g; b /= g; }
  }
  if (b == 1 && a >= 0) return pow_int(F, a);
  if (F.terms.empty()) {
    if (a > 0 && F.is_exact()) return make_zero(F.space);
    throw JacError(Err::BAD_LEADING, "no leading term");
  }
  const Key lead = leading_key(F);
  const Rat c = F.terms.at(lead);

  if ((lead.y * a) % b != 0)
    throw JacError(Err::BAD_EXPONENT, "fractional y-exponent would be required");
  long long ye = lead.y * a / b;
  Rat xe = lead.x * a / b;
  auto croot = rat_pow_frac(c, a, b);
  if (!croot) throw JacError(Err::BAD_LEADING, "leading coefficient has no rational power");
  Rat ab = Rat(a, b);

  // u = F / lead - 1; every term must be "small" in the space's order
  Series u = mul_monomial(F, Rat(1) / c, -lead.x, -lead.y);
  u.terms.erase({Rat(0), 0});
  std::optional<Rat> sx, sx0, uxmax;  // max x overall / over y==0 terms
  std::optional<long long> sy;        // max y over y<0 terms
  for (auto& [k, v] : u.terms) {
    if (!uxmax || k.x > *uxmax) uxmax = k.x;
    if (F.space == Space::B) {
      if (k.y > 0 || (k.y == 0 && k.x >= 0))
        throw JacError(Err::BAD_LEADING, "tail term not dominated by leading term");
      if (k.y < 0) {
        if (!sy || k.y > *sy) sy = k.y;
      } else if (!sx0 || k.x > *sx0) {
        sx0 = k.x;
      }
    } else {
      if (k.x >= 0) throw JacError(Err::BAD_LEADING, "tail term not dominated by leading term");
      if (!sx || k.x > *sx) sx = k.x;
    }
  }

  // Floors of the result (in result coordinates), from the depth contract
  // plus whatever the input's own floors already limit.
  std::optional<Rat> xf;
  std::optional<long long> yf;
  if (F.space == Space::B) {
    if (sy) yf = ye + (depth - 1) * *sy;
    if (u.yFloor) yf = max_opt(yf, std::optional<long long>(ye + *u.yFloor));
    if (sx0) xf = xe + Rat(depth - 1) * *sx0;
    if (u.xFloor) xf = max_opt(xf, std::optional<Rat>(xe + *u.xFloor));
  } else {
    if (sx) xf = xe + Rat(depth - 1) * *sx;
    if (u.xFloor) xf = max_opt(xf, std::optional<Rat>(xe + *u.xFloor));
  }

  // Working floors for the accumulation, in u-coordinates.  In B, partial
  // products may regain x-degree through positive-x tail terms, so the
  // working x-cut is relaxed by the worst possible regain.
  std::optional<Rat> xw;
  std::optional<long long> yw;
  if (yf) yw = *yf - ye;
  if (xf) {
    Rat relax = 0;
    if (F.space == Space::B && yw && uxmax && *uxmax > 0) relax = Rat(-*yw) * *uxmax;
    xw = *xf - xe - relax;
  }

  Series acc = make_const(F.space, Rat(1));
  Series pw = acc;
  for (long long j = 1;; ++j) {
    if (j > 200000) throw JacError(Err::INTERNAL, "fractional_power did not terminate");
    pw = truncated(mul(pw, u), xw, yw);
    pw.xFloor.reset();
    pw.yFloor.reset();
    if (pw.terms.empty()) break;
    Rat bc = binom(ab, j);
    if (bc != 0) acc = add(acc, scale(pw, bc));
  }
  acc.xFloor.reset();
  acc.yFloor.reset();
  Series R = mul_monomial(acc, *croot, xe, ye);
  R.xFloor = xf;
  R.yFloor = yf;
  normalize(R);
  return R;
}

std::optional<Series> poly_power_root(const Series& H, long long k) {
  if (k <= 0) return std::nullopt;
  if (!H.is_exact()) return std::nullopt;
  if (k == 1) return H;
  if (H.terms.empty()) return make_zero(H.space);
  auto dy = deg_y(H);
  long long D = *dy;
  if (D % k != 0) return std::nullopt;
  long long d = D / k;
  // leading y-block must be a single monomial with a rational k-th root
  std::optional<Key> leadKey;
  for (auto& [key, c] : H.terms)
    if (key.y == D) {
      if (leadKey) return std::nullopt;
      leadKey = key;
    }
  Rat cl = H.terms.at(*leadKey);
  auto cr = rat_pow_frac(cl, 1, k);
  if (!cr) return std::nullopt;
  Rat el = leadKey->x / k;
  Series G = make_monomial(H.space, *cr, el, d);
  Rat gd_pow = rat_pow_int(*cr, k - 1);    // leading coeff of G^(k-1)
  Rat ed_pow = el * (k - 1);               // its x-exponent
  for (long long j = 1; j <= d; ++j) {
    Series P = pow_int(G, k);
    Series R = sub(H, P);
    // block of R at y-level k*d - j determines g_{d-j}
    Series blk = make_zero(H.space);
    blk.N = R.N;
    long long lvl = k * d - j;
    for (auto& [key, c] : R.terms)
      if (key.y == lvl) blk.terms[{key.x - ed_pow, 0}] = c / (k * gd_pow);
    normalize(blk);
    G = add(G, mul_monomial(blk, Rat(1), Rat(0), d - j));
  }
  if (equal(pow_int(G, k), H)) return G;
  return std::nullopt;
}

Series retag(const Series& F, Space sp) {
  Series R = F;
  R.space = sp;
  normalize(R);
  return R;
}

Series shift_y(const Series& F, const Rat& lambda, const Rat& e, long long depth) {
  if (lambda == 0) return F;
  Series R = make_zero(F.space);
  R.N = F.N;
  R.xFloor = F.xFloor;
  R.yFloor = F.yFloor;
  std::optional<Rat> xcut;
  std::optional<long long> ycut;
  for (auto& [k, c] : F.terms) {
    if (k.y >= 0) {
      for (long long j = 0; j <= k.y; ++j) {
        Key nk{k.x + j * e, k.y - j};
        Rat v = c * binom(Rat(k.y), j) * rat_pow_int(lambda, j);
        auto [it, fresh] = R.terms.try_emplace(nk, v);
        if (!fresh) it->second += v;
      }
    } else {
      if (e > 0) throw JacError(Err::BAD_GENERATOR, "divergent y-shift on negative y power");
      for (long long j = 0; j <= depth; ++j) {
        Key nk{k.x + j * e, k.y - j};
        Rat v = c * binom(Rat(k.y), j) * rat_pow_int(lambda, j);
        auto [it, fresh] = R.terms.try_emplace(nk, v);
        if (!fresh) it->second += v;
      }
      if (e < 0)
        xcut = max_opt(xcut, std::optional<Rat>(k.x + Rat(depth) * e));
      else
        ycut = max_opt(ycut, std::optional<long long>(k.y - depth));
    }
  }
  R.xFloor = max_opt(R.xFloor, xcut);
  R.yFloor = max_opt(R.yFloor, ycut);
  normalize(R);
  return R;
}

Series subst_x_power(const Series& F, const Rat& cbase, const Rat& k) {
  if (k == 0) throw JacError(Err::BAD_EXPONENT, "x-substitution exponent must be nonzero");
  Series R = make_zero(F.space);
  for (auto& [key, c] : F.terms) {
    auto f = rat_pow_frac(cbase, static_cast<long long>(rat_num(key.x)),
                          static_cast<long long>(rat_den(key.x)));
    if (!f) throw JacError(Err::IRRATIONAL_ROOT, "irrational scale in x-substitution");
    Key nk{key.x * k, key.y};
    Rat v = c * *f;
    auto [it, fresh] = R.terms.try_emplace(nk, v);
    if (!fresh) it->second += v;
  }
  if (F.xFloor && k > 0) R.xFloor = *F.xFloor * k;
  R.yFloor = F.yFloor;
  normalize(R);
  return R;
}

std::string to_json(const Series& F) {
  nlohmann::ordered_json j;
  j["space"] = space_str(F.space);
  j["N"] = F.N;
  j["xFloor"] = F.xFloor ? nlohmann::ordered_json(rat_str(*F.xFloor)) : nlohmann::ordered_json(nullptr);
  j["yFloor"] = F.yFloor ? nlohmann::ordered_json(std::to_string(*F.yFloor)) : nlohmann::ordered_json(nullptr);
  auto arr = nlohmann::ordered_json::array();
  for (auto& [k, c] : F.terms) {
    nlohmann::ordered_json t;
    t["c"] = rat_str(c);
    t["x"] = rat_str(k.x);
    t["y"] = k.y;
    arr.push_back(t);
  }
  j["terms"] = arr;
  return j.dump();
}

Series from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw JacError(Err::PARSE_ERROR, std::string("bad series JSON: ") + e.what());
  }
  Series F;
  try {
    F.space = space_parse(j.at("space").get<std::string>());
    F.N = j.value("N", 1LL);
    if (j.contains("xFloor") && !j["xFloor"].is_null())
      F.xFloor = rat_parse(j["xFloor"].get<std::string>());
    if (j.contains("yFloor") && !j["yFloor"].is_null())
      F.yFloor = std::stoll(j["yFloor"].get<std::string>());
    for (auto& t : j.at("terms")) {
      Rat c = rat_parse(t.at("c").get<std::string>());
      Rat x = rat_parse(t.at("x").get<std::string>());
      long long y = t.at("y").get<long long>();
      F.terms[{x, y}] += c;
    }
  } catch (const JacError&) {
    throw;
  } catch (const std::exception& e) {
    throw JacError(Err::PARSE_ERROR, std::string("bad series JSON: ") + e.what());
  }
  normalize(F);
  return F;
}

std::string pretty(const Series& F) {
  if (F.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : F.terms) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rat ac = c > 0 ? c : Rat(-c);
    bool unit = ac == 1 && (k.x != 0 || k.y != 0);
    if (!unit) os << rat_str(ac);
    if (k.x != 0) os << (unit ? "" : " ") << "x^" << rat_str(k.x);
    if (k.y != 0) os << (k.x != 0 || !unit ? " " : "") << "y^" << k.y;
  }
  if (F.xFloor) os << "  [xFloor " << rat_str(*F.xFloor) << "]";
  if (F.yFloor) os << "  [yFloor " << *F.yFloor << "]";
  return os.str();
}

}  // namespace jac
