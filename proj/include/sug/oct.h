#pragma once

// Odd cycle transversal front-end: encode vertex bipartization as a strong
// unique-games instance over two labels, solve it with the full pipeline,
// and certify the residual graph. Ships the exact subset-enumeration oracle
// and a BFS bipartiteness certifier with odd-cycle witnesses.

#include <cstdint>
#include <vector>

#include "sug/core.h"
#include "sug/io.h"
#include "sug/rounding.h"

namespace sug {

// One inequation constraint sigma(u) != sigma(v) over labels {0,1} per edge.
// A vertex subset induces a bipartite subgraph exactly when its induced game
// is fully satisfiable, and the satisfying labeling is a two-coloring.
// Duplicate edges are kept; self-loops throw std::invalid_argument.
UGInstance graph_to_strong_ug(const SimpleGraph& g);

struct BipartiteReport {
  bool bipartite = false;
  std::vector<int> coloring;   // 0/1 per vertex when bipartite, -1 elsewhere
  std::vector<int> odd_cycle;  // closed odd walk (vertex list) when not
};

// BFS two-coloring; on failure the witness closes an odd cycle through the
// conflicting edge and the two tree paths to their lowest common ancestor.
BipartiteReport is_bipartite(const SimpleGraph& g);

struct OctResult {
  std::vector<int> deleted;    // sorted
  std::vector<int> coloring;   // -1 on deleted vertices, 0/1 on the rest
  double fraction = 0.0;       // |deleted| / n (0 for the empty graph)
  Report report;
};

// Exact minimum odd cycle transversal: subsets enumerated by size, then
// lexicographically, until the residual graph is bipartite. Throws CapError
// when n exceeds `cap`.
OctResult brute_force_oct(const SimpleGraph& g, int cap = 18);

// Pipeline wrapper: solve the inequation encoding with the l2-l22 separator
// variant, delete the complement of the certificate, and color the rest with
// the certificate labels. The residual is re-certified with is_bipartite
// (InternalError on failure -- never expected).
OctResult solve_oct(const SimpleGraph& g, double epsilon, const SolveConfig& cfg, uint64_t seed);

// Same over the built-in epsilon grid, keeping the smallest deleted set.
OctResult solve_oct_auto(const SimpleGraph& g, const SolveConfig& cfg, uint64_t seed);

}  // namespace sug
