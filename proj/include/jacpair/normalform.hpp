#ifndef JACPAIR_NORMALFORM_HPP
#define JACPAIR_NORMALFORM_HPP

#include <map>

#include "jacpair/reduction.hpp"
#include "jacpair/verdict.hpp"

namespace jac {

// Working state while peeling tails off a normalized pair.  F and G are
// kept monic (scales divided out); J is the constant of the edge relation
// (m/(m+n)) f g' - (n/(m+n)) f' g.
struct PeelState {
  Series F, G;
  Series f, g;  // pure y-polynomials
  long long m = 0, n = 0, N = 1;
  Rat J;
  long long depth = 0;  // deepest level that must stay known
  // per-level y-degrees seen while peeling, for the growth-bound check
  std::vector<std::pair<long long, long long>> qDeg, fDeg, gDeg;
};

PeelState make_peel_state(const NormalizedPair& np, long long depth);

struct PeelOutcome {
  Series Q;          // generator of the peeling exponential (zero if clean)
  bool usedZc = false;
  Rat c;             // z_c parameter when usedZc
  AutoLog steps;     // what was applied to the state
};

// Clear the level-i tail: for i != N via e^{ad_{Q_i}} with
// Q_i = (-N/(N-i)) x^{1-i/N} kbar_i, kbar_i = (m f g_i - n f_i g)/((m+n)J);
// for i = N the constant c is split off first and z_c applied after.
PeelOutcome peel_step(PeelState& st, long long i);

struct HKResult {
  Series H, K;
  AutoLog log;  // forward peeling log; H,K are built from its inverse
  long long depth = 0;
};

// Peel levels 1..depth, then pull (x, y) back through the inverse steps.
HKResult normalize_to_HK(const NormalizedPair& np, long long depth);

struct AlphaDecomposition {
  Rat alpha;
  long long beta = 1;
  std::map<Rat, Series> componentsH, componentsK;  // index i in (1/beta)Z+
};

AlphaDecomposition alpha_decompose(const HKResult& hk);

// Unique Q_nu = sum_j q_{nu j} x^{1-j alpha} y^{1+j-nu} with
// [Q_nu, H<0>] = H<nu> and [Q_nu, K<0>] = K<nu>.
Series solve_Q_nu(const AlphaDecomposition& de, const Rat& nu);

// H d_x K = (m F d_x G - n G d_x F)/((m+n)J), same with d_y, and the
// right-hand sides contain no negative y-powers above the floor.
Verdict check_polynomiality(const NormalizedPair& np, const HKResult& hk);

}  // namespace jac

#endif
