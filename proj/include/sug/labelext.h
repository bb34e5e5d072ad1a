#pragma once
#include <utility>
#include <vector>

#include "sug/core.h"

namespace sug {

// Undirected multigraph with an explicit edge list.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const;     // neighbor lists (with repeats)
  std::vector<int> degrees() const;
};

// Label-extended graph of a unique-games instance: one vertex per
// (instance vertex, label) pair, id(a,i) = a*k + i, and for every constraint
// edge (u,v,pi) the k edges {(u,i),(v,pi(i))}.
struct LabelExtendedGraph {
  int n = 0, k = 0;
  Graph graph;

  int id(int a, int i) const { return a * k + i; }
  int vertex_of(int id) const { return id / k; }
  int label_of(int id) const { return id % k; }
};

LabelExtendedGraph build_label_extended_graph(const UGInstance& g);

// Vertex-weighted incidence ("symmetrized") graph of a base graph: original
// vertices keep weight 1, every base edge becomes a degree-2 vertex of weight
// min(1/deg(u), 1/deg(v)) adjacent to its endpoints.
struct VertexWeightedGraph {
  Graph graph;
  std::vector<double> weight;
  int n_base = 0;  // vertices < n_base are originals, n_base+j is base edge j

  bool is_edge_vertex(int v) const { return v >= n_base; }
};

VertexWeightedGraph build_symmetrized_graph(const Graph& g);

// Hypergraph with one weighted hyperedge E(v) = {v} + N(v) per vertex of a
// vertex-weighted graph. When built from a unique-games instance,
// n_instance/k_instance record the cloud structure of the first
// n_instance*k_instance vertices (0 otherwise).
struct WeightedHypergraph {
  int num_vertices = 0;
  std::vector<std::vector<int>> edges;
  std::vector<double> weight;
  bool one_per_vertex = false;  // hyperedge i is E(i)
  int n_instance = 0, k_instance = 0;

  int n_label_vertices() const { return n_instance * k_instance; }
  int max_arity() const;
  std::vector<std::vector<int>> vertex_to_edges() const;
};

WeightedHypergraph build_label_extended_hypergraph(const VertexWeightedGraph& g);
// Full chain: label-extended graph -> symmetrized graph -> hypergraph, with
// cloud metadata stamped.
WeightedHypergraph build_label_extended_hypergraph(const UGInstance& g);

struct Boundaries {
  std::vector<int> outer;      // vertices outside S adjacent to S
  std::vector<int> internal_;  // vertices inside S adjacent to the complement
};

Boundaries boundaries(const Graph& g, const std::vector<char>& in_set);

// Hyperedges meeting both the set and its complement.
std::vector<int> hyperedge_boundary(const WeightedHypergraph& h, const std::vector<char>& in_set);

double set_weight(const VertexWeightedGraph& g, const std::vector<char>& in_set);
// Total vertex weight of outer + internal boundary.
double symmetric_boundary_weight(const VertexWeightedGraph& g, const std::vector<char>& in_set);
double hyperedge_cut_weight(const WeightedHypergraph& h, const std::vector<char>& in_set);

struct GraphExpansion {
  double phi = 0.0;  // min |outer boundary| / |S|
  double Phi = 0.0;  // min (|internal| + |outer|) / |S|
  std::vector<int> phi_witness, Phi_witness;
};

// Exhaustive small-set expansion at size exactly ceil(delta*n), or over all
// sizes 1..ceil(delta*n) when size_at_most is set. Cap: n <= 22.
GraphExpansion expansion_profile_bruteforce(const Graph& g, double delta, bool size_at_most = false);

struct HyperExpansion {
  double phiE = 0.0;  // min |cut hyperedges| / |S|
  std::vector<int> witness;
};

HyperExpansion hyperedge_expansion_bruteforce(const WeightedHypergraph& h, double delta,
                                              bool size_at_most = false);

// Vertex set {(a, sigma(a))} of the certificate in label-extended ids.
std::vector<int> labeling_to_set(const UGInstance& g, const SolutionCertificate& cert);

// Inverse direction with boundary pruning: drops every cloud that owns an
// outer-boundary vertex of S', then reads the remaining one-per-cloud set as
// a partial labeling. Throws std::invalid_argument if the (pruned) set still
// assigns two labels to one cloud; with prune=false the set must already be
// boundary-free per cloud.
SolutionCertificate set_to_partial_labeling(const UGInstance& g, const std::vector<int>& set,
                                            bool prune = true);

}  // namespace sug
