#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sug/core.h"

namespace sug {

// Record of one instance transformation. Labelings travel through `forward`
// (input labeling -> output labeling) and `backward` (output -> input) as
// plain vectors, one label per vertex. Bipartite labelings are passed as a
// single vector with the left block first, then the right block. The maps
// are total: a vertex with no preimage (dropped or freshly introduced)
// decodes to label 0.
struct ReductionTrace {
  std::string stage;
  int input_vertices = 0;
  int output_vertices = 0;
  long long input_edges = 0;
  long long output_edges = 0;
  std::function<std::vector<int>(const std::vector<int>&)> forward;
  std::function<std::vector<int>(const std::vector<int>&)> backward;
};

template <typename T>
struct Reduced {
  T instance;
  ReductionTrace trace;
};

// Rebuilds a d-uniform weighted hypergraph game so that every vertex has the
// same total incident weight d/|V'|. Hyperedge weights are floored to
// integer multiples of 1/P with P = 2|V|^3|E|^3, vertices whose remaining
// incident weight falls below 1/(|V|^2|E|^2) are dropped together with their
// hyperedges, and each surviving vertex v is replicated nu(v)/g times where
// nu(v) is v's integer incident mass and g = gcd_v nu(v). Each hyperedge
// becomes a cluster over all tuples of its endpoints' replicas, weight split
// evenly, permutations unchanged. All weights stay exact rationals.
//
// forward: copies inherit their source vertex's label.
// backward: a surviving vertex reads its first replica; dropped vertices
// decode to 0.
//
// Requires a uniform arity and at least one hyperedge, with distinct
// vertices inside each hyperedge. Throws CapError when the output would
// exceed 1e6 vertices or hyperedges, or when P overflows 64 bits.
Reduced<HypUGInstance> uniformize_hypug(const HypUGInstance& h);

// Encodes a d-uniform hypergraph game as a bipartite strong game: one left
// vertex per hyperedge carrying its weight, right side = original vertices.
// The left label is the hyperedge's shared value c, so each incidence
// (e, v_j, pi_j) becomes the edge sigma_R(v_j) = pi_j(sigma_L(u_e)). Left
// degrees all equal d; the optimal strongly-satisfied left measure equals
// the optimal satisfied hyperedge weight exactly.
//
// forward: vertex labeling sigma -> [left | right] with left u_e =
// pis[0](sigma(v_0)) read off e's first incidence, right = sigma.
// backward: keeps the right block.
Reduced<SBUGInstance> hypug_to_sbug(const HypUGInstance& h);

// Subsamples the left side: every right vertex draws `ell` left neighbors
// i.i.d. from the left measure conditioned on its neighborhood; each draw is
// a fresh copy keeping its source's full constraint set. Right vertices
// whose sampled degree exceeds cprime * d * ell (d = the input's maximum
// left degree) are deleted along with the copies touching them. The output
// measure is uniform over the surviving copies.
//
// forward ([left | right] -> [copies | surviving right]): copies take their
// source's label, surviving right vertices keep theirs.
// backward: a left vertex reads its first surviving copy (0 when none),
// a right vertex reads its surviving image (0 when deleted).
//
// Requires every right vertex to have at least one left neighbor, ell >= 1,
// cprime >= 1. Deterministic in `seed`.
Reduced<SBUGInstance> sparsify_sbug(const SBUGInstance& g, int ell, int cprime, uint64_t seed);

// Collapses a bipartite strong game onto its left side: for every right
// vertex and every pair of its incident edges (u1, pi1), (u2, pi2) the
// output gains the unique-game edge sigma(u2) = pi2^-1(pi1(sigma(u1))).
// Two parallel constraints on the same pair yield a self-loop that encodes
// their (in)consistency. Output degrees are at most d*D for input left
// degree d and right degree D. For a uniform left measure the optimal
// strongly-satisfied fraction is preserved exactly.
//
// forward ([left | right] -> left): keeps the left block.
// backward: right vertex v decodes through its first incident edge
// (u, v, pi) as pi(sigma(u)); isolated right vertices decode to 0.
Reduced<UGInstance> sbug_to_strong_ug(const SBUGInstance& g);

// Doubles a binary unique game into a pure disequality game: vertex e
// splits into e+ = e and e- = n + e joined by a disequality, an equality
// edge (u, v) becomes disequalities (u+, v-) and (u-, v+), and a
// disequality edge becomes (u+, v+) and (u-, v-). Degrees grow by exactly
// one. The strong value is preserved going forward and at least
// 1 - 2*(1 - sval) coming back.
//
// forward: sigma'(e+) = sigma(e), sigma'(e-) = 1 - sigma(e).
// backward: sigma(e) = sigma'(e+).
//
// Requires k = 2 (every binary constraint is an equality or disequality).
Reduced<UGInstance> strong_ug_to_oct(const UGInstance& g);

// Exhaustive optimum of the satisfied hyperedge weight over all k^n vertex
// labelings. Caps: n <= max_n, k <= max_k, k^n <= 2e6.
Rational brute_force_hypug_value(const HypUGInstance& h, int max_n = 12, int max_k = 4);

// Exhaustive optimum of the strongly-satisfied left measure: enumerates
// right labelings (k^n_right <= 2e6, n_right <= max_n, k <= max_k) and
// counts each left vertex whose constraints admit a consistent left label.
Rational brute_force_sbug_value(const SBUGInstance& b, int max_n = 12, int max_k = 4);

}  // namespace sug
