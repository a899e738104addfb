#include "jacpair/newton.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace jac {

namespace {

struct Pt {
  Rat x, y;
};

Rat cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

NewtonPolygon newton_polygon(const Series& F) {
  if (!F.is_exact())
    throw JacError(Err::INFINITE_SUPPORT, "floor-truncated tail could add vertices");
  std::vector<Pt> pts;
  pts.push_back({Rat(0), Rat(0)});
  for (auto& [k, c] : F.terms) pts.push_back({k.x, Rat(k.y)});
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  NewtonPolygon poly;
  std::vector<Pt> hull;
  if (pts.size() == 1) {
    hull = pts;
  } else {
    std::vector<Pt> lo, hi;
    for (auto& p : pts) {
      while (lo.size() >= 2 && cross(lo[lo.size() - 2], lo.back(), p) <= 0) lo.pop_back();
      lo.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      while (hi.size() >= 2 && cross(hi[hi.size() - 2], hi.back(), *it) <= 0) hi.pop_back();
      hi.push_back(*it);
    }
    hull.assign(lo.begin(), lo.end() - 1);
    hull.insert(hull.end(), hi.begin(), hi.end() - 1);
  }
  for (auto& p : hull)
    poly.vertices.push_back({p.x, static_cast<long long>(rat_num(p.y))});
  size_t n = poly.vertices.size();
  if (n == 2) {
    Edge e{poly.vertices[0], poly.vertices[1], std::nullopt};
    if (e.a.x != e.b.x) e.slope = Rat(e.b.y - e.a.y) / (e.b.x - e.a.x);
    poly.edges.push_back(e);
  } else if (n > 2) {
    for (size_t i = 0; i < n; ++i) {
      const Vertex& a = poly.vertices[i];
      const Vertex& b = poly.vertices[(i + 1) % n];
      Edge e{a, b, std::nullopt};
      if (a.x != b.x) e.slope = Rat(b.y - a.y) / (b.x - a.x);
      poly.edges.push_back(e);
    }
  }
  return poly;
}

Rat vertex_m0(const Series& F) {
  auto m = deg_y(F);
  if (!m) throw JacError(Err::DEGENERATE, "zero series has no vertex");
  std::optional<Rat> d;
  for (auto& [k, c] : F.terms)
    if (k.y == *m && (!d || k.x > *d)) d = k.x;
  return *d;
}

long long vertex_m(const Series& F) {
  auto m = deg_y(F);
  if (!m) throw JacError(Err::DEGENERATE, "zero series has no vertex");
  return *m;
}

PrimeDegree prime_degree(const Series& F) {
  if (F.terms.empty()) throw JacError(Err::DEGENERATE, "zero series has no prime degree");
  long long m = vertex_m(F);
  Rat d0 = vertex_m0(F);
  PrimeDegree p;
  p.kind = PrimeKind::NEG_INF;
  // per y-level x-tops
  std::map<long long, Rat> tops;
  for (auto& [k, c] : F.terms) {
    long long i = m - k.y;
    auto it = tops.find(i);
    if (it == tops.end() || k.x > it->second) tops[i] = k.x;
  }
  for (auto& [i, dx] : tops) {
    if (i == 0) continue;
    Rat cand = (dx - d0) / i;
    if (p.kind == PrimeKind::NEG_INF || cand > p.value) {
      p.kind = PrimeKind::FINITE;
      p.value = cand;
    }
  }
  return p;
}

Series component(const Series& F, const Rat& p, const Rat& r) {
  PrimeDegree pf = prime_degree(F);
  if (pf.finite() && pf.value > p)
    throw JacError(Err::PRIME_DEGREE_EXCEEDED, "component: p below the prime degree of F");
  long long m = vertex_m(F);
  Rat m0 = vertex_m0(F);
  Series R = make_zero(F.space);
  R.N = F.N;
  R.xFloor = F.xFloor;
  R.yFloor = F.yFloor;
  for (auto& [k, c] : F.terms)
    if (k.x == m0 + r + p * Rat(m - k.y)) R.terms[k] = c;
  normalize(R);
  return R;
}

std::vector<Rat> component_indices(const Series& F, const Rat& p) {
  long long m = vertex_m(F);
  Rat m0 = vertex_m0(F);
  std::vector<Rat> rs;
  for (auto& [k, c] : F.terms) {
    Rat r = k.x - m0 - p * Rat(m - k.y);
    if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(r);
  }
  std::sort(rs.begin(), rs.end(), std::greater<Rat>());
  return rs;
}

PrimaryPolynomial primary_polynomial(const Series& F, const Rat& p) {
  Series F0 = component(F, p, Rat(0));
  for (auto& [k, c] : F0.terms)
    if (k.y < 0) throw JacError(Err::NOT_POLYNOMIAL, "0-th component has negative y-powers");
  long long m = vertex_m(F0);
  Rat m0 = vertex_m0(F0);
  Series P0 = mul_monomial(F0, Rat(1), -m0, 0);
  Rat lead = coeff(P0, Rat(0), m);
  if (lead == 0) throw JacError(Err::INTERNAL, "primary polynomial: missing top term");
  if (lead != 1) P0 = scale(P0, Rat(1) / lead);
  if (m == 0) return {make_const(F.space, Rat(1)), 1, 0};
  for (long long k = m; k >= 1; --k) {
    if (m % k != 0) continue;
    auto root = poly_power_root(P0, k);
    if (root) return {*root, k, m / k};
  }
  throw JacError(Err::INTERNAL, "primary polynomial: no root found");  // k = 1 always succeeds
}

Series edge_part(const Series& F, const Edge& e) {
  NewtonPolygon poly = newton_polygon(F);
  bool found = false;
  for (auto& pe : poly.edges)
    if ((pe.a == e.a && pe.b == e.b) || (pe.a == e.b && pe.b == e.a)) found = true;
  if (!found && !(e.a == e.b)) throw JacError(Err::EDGE_NOT_FOUND, "edge not on the Newton polygon");
  Series R = make_zero(F.space);
  R.N = F.N;
  Rat ax = e.a.x, ay(e.a.y), bx = e.b.x, by(e.b.y);
  for (auto& [k, c] : F.terms) {
    Rat px = k.x, py(k.y);
    Rat cr = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
    if (cr != 0) continue;
    // within the closed segment
    Rat lo_x = std::min(ax, bx), hi_x = std::max(ax, bx);
    Rat lo_y = std::min(ay, by), hi_y = std::max(ay, by);
    if (px < lo_x || px > hi_x || py < lo_y || py > hi_y) continue;
    R.terms[k] = c;
  }
  normalize(R);
  return R;
}

Edge prime_edge(const NewtonPolygon& poly) {
  // topmost vertex, ties broken toward larger x
  const Vertex* top = nullptr;
  for (auto& v : poly.vertices)
    if (!top || v.y > top->y || (v.y == top->y && v.x > top->x)) top = &v;
  if (!top) throw JacError(Err::DEGENERATE, "empty polygon");
  const Edge* best = nullptr;
  for (auto& e : poly.edges) {
    const Vertex* other = nullptr;
    if (e.a == *top) other = &e.b;
    else if (e.b == *top) other = &e.a;
    else continue;
    if (other->y >= top->y) continue;
    if (!best) { best = &e; continue; }
    const Vertex& bo = best->a == *top ? best->b : best->a;
    if (other->x > bo.x) best = &e;
  }
  if (!best) throw JacError(Err::EDGE_NOT_FOUND, "no descending edge at the top vertex");
  Edge e = *best;
  if (!(e.a == *top)) std::swap(e.a, e.b);
  return e;
}

std::string polygon_json(const NewtonPolygon& poly) {
  nlohmann::ordered_json j;
  auto vs = nlohmann::ordered_json::array();
  for (auto& v : poly.vertices) vs.push_back({rat_str(v.x), std::to_string(v.y)});
  j["vertices"] = vs;
  auto es = nlohmann::ordered_json::array();
  for (auto& e : poly.edges) {
    nlohmann::ordered_json je;
    je["from"] = {rat_str(e.a.x), std::to_string(e.a.y)};
    je["to"] = {rat_str(e.b.x), std::to_string(e.b.y)};
    je["slope"] = e.slope ? nlohmann::ordered_json(rat_str(*e.slope))
                          : nlohmann::ordered_json("VERTICAL");
    es.push_back(je);
  }
  j["edges"] = es;
  return j.dump();
}

}  // namespace jac
