#ifndef JACPAIR_NEWTON_HPP
#define JACPAIR_NEWTON_HPP

#include <vector>

#include "jacpair/series.hpp"

namespace jac {

struct Vertex {
  Rat x;
  long long y;
  friend bool operator==(const Vertex& a, const Vertex& b) { return a.x == b.x && a.y == b.y; }
};

struct Edge {
  Vertex a, b;
  std::optional<Rat> slope;  // nullopt = vertical
};

// Convex hull of Supp(F) together with the origin; vertices in
// counterclockwise order starting from the lexicographically least point.
struct NewtonPolygon {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

enum class PrimeKind { FINITE, NEG_INF, POS_INF };

struct PrimeDegree {
  PrimeKind kind = PrimeKind::FINITE;
  Rat value;  // meaningful only when FINITE
  bool finite() const { return kind == PrimeKind::FINITE; }
};

struct PrimaryPolynomial {
  Series priF;      // monic in y, power-free
  long long mPrime;  // maximal exponent with F<0> = x^m0 priF^mPrime
  long long d;       // deg_y priF
};

NewtonPolygon newton_polygon(const Series& F);

PrimeDegree prime_degree(const Series& F);

// x-degree of the top y-block (m0) and deg_y (m).
Rat vertex_m0(const Series& F);
long long vertex_m(const Series& F);

// p-type r-th component: the part of F supported on the line through
// (m0 + r, m) with direction (p, -1).
Series component(const Series& F, const Rat& p, const Rat& r);

// All r with nonzero component, descending.
std::vector<Rat> component_indices(const Series& F, const Rat& p);

PrimaryPolynomial primary_polynomial(const Series& F, const Rat& p);

Series edge_part(const Series& F, const Edge& e);

// The edge of newton_polygon(F) at the right-bottom side whose top vertex
// is the topmost vertex (the prime line for vertex descent).
Edge prime_edge(const NewtonPolygon& poly);

std::string polygon_json(const NewtonPolygon& poly);

}  // namespace jac

#endif
