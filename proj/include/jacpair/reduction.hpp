#ifndef JACPAIR_REDUCTION_HPP
#define JACPAIR_REDUCTION_HPP

#include <utility>
#include <vector>

#include "jacpair/newton.hpp"
#include "jacpair/poisson.hpp"
#include "jacpair/series.hpp"

namespace jac {

// Dense univariate polynomial over Q; coeffs[i] multiplies t^i.
using YPoly = std::vector<Rat>;

long long ypoly_deg(const YPoly& a);
YPoly ypoly_derivative(const YPoly& a);
Rat ypoly_eval(const YPoly& a, const Rat& t);
// Quotient and remainder of exact division over Q.
std::pair<YPoly, YPoly> ypoly_divmod(const YPoly& a, const YPoly& b);
YPoly ypoly_gcd(YPoly a, YPoly b);  // monic
// Yun decomposition a = c * prod s_k^k with each s_k squarefree, monic.
std::vector<std::pair<YPoly, long long>> ypoly_squarefree(const YPoly& a);
std::vector<Rat> ypoly_rational_roots(const YPoly& a);

// Relation carried by a pair of corresponding edges: either G_L is exactly
// a rational power of F_L, or [F_L, G_L] is a nonzero constant.
struct EdgeRelation {
  enum class Case { POWER_RELATION, QJ_RELATION } kind = Case::POWER_RELATION;
  long long num = 1, den = 1;  // exponent n/m in lowest terms
  Rat J;                       // QJ case only
};

// p is the common edge direction (x-step per unit drop in y).  The edge
// parts are the 0-th p-type components of F and G.
EdgeRelation test_edge_relation(const Series& F, const Series& G, const Rat& p);

// Direction of the lower-right polygon edge hanging from vertex v.
Rat vertex_prime(const Series& F, const Vertex& v);
// Part of F supported on that edge (y-levels at or below v).
Series edge_part_at(const Series& F, const Vertex& v, const Rat& p);

struct DescentResult {
  bool singleFactor = false;
  Rat alpha0;
  long long multiplicity = 0;  // of the chosen factor
  Vertex vertex;               // working vertex after the step
  Series F, G;
  AutoLog log;
};

// One descent step at vertex v: either the whole edge polynomial is a
// power of a single linear factor (shift it away, vertex unchanged), or
// the maximal-multiplicity rational root is shifted to expose a strictly
// lower vertex.
DescentResult descend_vertex(const Series& F, const Series& G, const Vertex& v);

struct StraightenResult {
  Series F, G;
  AutoLog log;
};

// (x,y) -> (x^{q/(q-p)}, x^{-p/(q-p)} y): edges of direction -p/q become
// vertical, steeper lines acquire negative slopes.
StraightenResult straighten(const Series& F, const Series& G, long long pHat,
                            long long qHat);

struct NormalizedPair {
  Series F, G;  // transformed pair; the log replays input -> here exactly
  long long m = 0, n = 0;
  Series f, g;          // monic edge polynomials in y
  Rat scaleF, scaleG;   // F = scaleF x^{m/(m+n)}(f + tails), same for G
  Rat J;                // [F, G]
  long long tailDepth = 0;
  AutoLog log;
  std::vector<std::string> diagnostics;
};

NormalizedPair reduce_to_normal_form(const Series& F, const Series& G,
                                     long long maxSteps = 64);

std::string normalized_json(const NormalizedPair& np);

}  // namespace jac

#endif
