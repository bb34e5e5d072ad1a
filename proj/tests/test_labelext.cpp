#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "sug/labelext.h"

using namespace sug;

namespace {

UGInstance eq_eq_neq_triangle() {
  UGInstance g;
  g.n = 3;
  g.k = 2;
  g.edges.push_back({0, 1, Permutation::identity(2)});
  g.edges.push_back({1, 2, Permutation::identity(2)});
  g.edges.push_back({0, 2, Permutation({1, 0})});
  return g;
}

std::vector<char> to_mask(const std::vector<int>& set, int n) {
  std::vector<char> mask(n, 0);
  for (int v : set) mask[v] = 1;
  return mask;
}

}  // namespace

TEST_CASE("label extended graph of a single constraint") {
  UGInstance g;
  g.n = 2;
  g.k = 2;
  g.edges.push_back({0, 1, Permutation::identity(2)});
  LabelExtendedGraph leg = build_label_extended_graph(g);
  CHECK(leg.graph.n == 4);
  REQUIRE(leg.graph.edges.size() == 2);
  CHECK(leg.graph.edges[0] == std::pair<int, int>{0, 2});
  CHECK(leg.graph.edges[1] == std::pair<int, int>{1, 3});

  g.edges[0].pi = Permutation({1, 0});
  leg = build_label_extended_graph(g);
  CHECK(leg.graph.edges[0] == std::pair<int, int>{0, 3});
  CHECK(leg.graph.edges[1] == std::pair<int, int>{1, 2});
}

TEST_CASE("label extended graph size scales with k") {
  UGInstance g;
  g.n = 3;
  g.k = 3;
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}})
    g.edges.push_back({u, v, Permutation::identity(3)});
  LabelExtendedGraph leg = build_label_extended_graph(g);
  CHECK(leg.graph.n == 9);
  CHECK(leg.graph.edges.size() == 9);
  // Identity constraints keep labels: components are the 3 global shifts.
  for (const auto& [a, b] : leg.graph.edges) CHECK(a % 3 == b % 3);
}

TEST_CASE("symmetrized graph weights follow degrees") {
  Graph g;
  g.n = 6;
  g.edges = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {1, 5}};
  VertexWeightedGraph sym = build_symmetrized_graph(g);
  CHECK(sym.graph.n == 6 + 5);
  CHECK(sym.n_base == 6);
  for (int v = 0; v < 6; ++v) CHECK(sym.weight[v] == 1.0);
  // deg(0) = 2, deg(1) = 4: the (0,1) edge vertex gets min(1/2, 1/4).
  CHECK(sym.weight[6] == doctest::Approx(0.25));
  // deg(2) = 1: the (0,2) edge vertex gets min(1/2, 1) = 1/2.
  CHECK(sym.weight[7] == doctest::Approx(0.5));
  // Every edge vertex has degree exactly 2.
  auto deg = sym.graph.degrees();
  for (int j = 6; j < sym.graph.n; ++j) CHECK(deg[j] == 2);
}

TEST_CASE("label extended hypergraph arities and weights") {
  Graph isolated;
  isolated.n = 1;
  WeightedHypergraph h0 = build_label_extended_hypergraph(build_symmetrized_graph(isolated));
  REQUIRE(h0.edges.size() == 1);
  CHECK(h0.edges[0] == std::vector<int>{0});
  CHECK(h0.weight[0] == 1.0);

  Graph edge;
  edge.n = 2;
  edge.edges = {{0, 1}};
  WeightedHypergraph h = build_label_extended_hypergraph(build_symmetrized_graph(edge));
  CHECK(h.num_vertices == 3);
  CHECK(h.one_per_vertex);
  REQUIRE(h.edges.size() == 3);
  CHECK(h.edges[0] == std::vector<int>{0, 2});
  CHECK(h.edges[1] == std::vector<int>{1, 2});
  CHECK(h.edges[2] == std::vector<int>{0, 1, 2});
  CHECK(h.weight[2] == doctest::Approx(1.0));
  CHECK(h.max_arity() == 3);

  // Instance route stamps cloud metadata; arity of a label vertex hyperedge
  // is 1 + instance degree.
  UGInstance tri = eq_eq_neq_triangle();
  WeightedHypergraph ht = build_label_extended_hypergraph(tri);
  CHECK(ht.n_instance == 3);
  CHECK(ht.k_instance == 2);
  CHECK(ht.num_vertices == 6 + 6);
  for (int v = 0; v < 6; ++v) CHECK(ht.edges[v].size() == 1 + 2);
  for (int v = 6; v < 12; ++v) CHECK(ht.edges[v].size() == 3);
  CHECK(ht.max_arity() <= 2 * tri.max_degree());
}

TEST_CASE("boundaries on a path") {
  Graph path;
  path.n = 3;
  path.edges = {{0, 1}, {1, 2}};
  Boundaries b = boundaries(path, to_mask({0}, 3));
  CHECK(b.outer == std::vector<int>{1});
  CHECK(b.internal_ == std::vector<int>{0});
  b = boundaries(path, to_mask({0, 1, 2}, 3));
  CHECK(b.outer.empty());
  CHECK(b.internal_.empty());
  b = boundaries(path, to_mask({1}, 3));
  CHECK(b.outer == std::vector<int>{0, 2});
  CHECK(b.internal_ == std::vector<int>{1});
}

TEST_CASE("hyperedge boundary") {
  Graph edge;
  edge.n = 2;
  edge.edges = {{0, 1}};
  WeightedHypergraph h = build_label_extended_hypergraph(build_symmetrized_graph(edge));
  auto cut = hyperedge_boundary(h, to_mask({0}, 3));
  CHECK(cut == std::vector<int>{0, 2});
  CHECK(hyperedge_boundary(h, to_mask({0, 1, 2}, 3)).empty());
  CHECK(hyperedge_cut_weight(h, to_mask({0}, 3)) == doctest::Approx(2.0));
}

TEST_CASE("expansion profile on K4") {
  Graph k4;
  k4.n = 4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.edges.emplace_back(u, v);
  GraphExpansion e = expansion_profile_bruteforce(k4, 0.25);
  CHECK(e.phi == doctest::Approx(3.0));
  CHECK(e.Phi == doctest::Approx(4.0));
  CHECK(e.phi_witness.size() == 1);
}

TEST_CASE("expansion profile finds the slack cut") {
  Graph two_edges;
  two_edges.n = 4;
  two_edges.edges = {{0, 1}, {2, 3}};
  GraphExpansion e = expansion_profile_bruteforce(two_edges, 0.5);
  CHECK(e.phi == doctest::Approx(0.0));
  CHECK(e.Phi == doctest::Approx(0.0));
  CHECK(e.phi_witness.size() == 2);
  // Size-at-most variant may pick smaller sets but never a larger value.
  GraphExpansion le = expansion_profile_bruteforce(two_edges, 0.5, true);
  CHECK(le.phi <= e.phi + 1e-12);
}

TEST_CASE("hyperedge expansion frozen value") {
  Graph edge;
  edge.n = 2;
  edge.edges = {{0, 1}};
  WeightedHypergraph h = build_label_extended_hypergraph(build_symmetrized_graph(edge));
  HyperExpansion e = hyperedge_expansion_bruteforce(h, 1.0 / 3);
  CHECK(e.phiE == doctest::Approx(2.0));
  CHECK(e.witness.size() == 1);
}

TEST_CASE("expansion cap") {
  Graph big;
  big.n = 23;
  CHECK_THROWS_AS(expansion_profile_bruteforce(big, 0.5), CapError);
}

TEST_CASE("labeling to set round trip with pruning") {
  UGInstance g = eq_eq_neq_triangle();
  SolutionCertificate cert;
  cert.subset = {0, 1};
  cert.labels = {0, 0};
  cert.claimed_fraction = 2.0 / 3;
  std::vector<int> set = labeling_to_set(g, cert);
  CHECK(set == std::vector<int>{0, 2});
  SolutionCertificate back = set_to_partial_labeling(g, set);
  CHECK(back.subset == cert.subset);
  CHECK(back.labels == cert.labels);
  CHECK(back.claimed_fraction == doctest::Approx(2.0 / 3));
}

TEST_CASE("set_to_partial_labeling rejects double labels") {
  UGInstance g = eq_eq_neq_triangle();
  CHECK_THROWS_AS(set_to_partial_labeling(g, {0, 1}, false), std::invalid_argument);
}

TEST_CASE("pruning repairs boundary sets into satisfiable labelings") {
  // Random non-repeating sets: after boundary pruning the residual labeling
  // must satisfy all induced constraints and lose at most one vertex per
  // outer-boundary vertex.
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Planted p = generate_planted(8, 2, 2, 0.4, seed);
    Rng rng(seed * 31);
    std::vector<int> set;
    for (int a = 0; a < p.instance.n; ++a)
      if (rng.below(4) != 0) set.push_back(a * p.instance.k + rng.index(p.instance.k));
    LabelExtendedGraph leg = build_label_extended_graph(p.instance);
    Boundaries b = boundaries(leg.graph, to_mask(set, leg.graph.n));
    SolutionCertificate cert = set_to_partial_labeling(p.instance, set);
    CHECK(induced_satisfiable(p.instance, cert).satisfiable);
    CHECK(static_cast<int>(cert.subset.size()) >=
          static_cast<int>(set.size()) - static_cast<int>(b.outer.size()));
  }
}

TEST_CASE("planted certificates have small label boundary") {
  // Outer boundary of the planted set only comes from corrupted clouds.
  Planted p = generate_planted(10, 3, 3, 0.2, 17);
  std::vector<int> set = labeling_to_set(p.instance, p.certificate);
  LabelExtendedGraph leg = build_label_extended_graph(p.instance);
  Boundaries b = boundaries(leg.graph, to_mask(set, leg.graph.n));
  CHECK(static_cast<int>(b.outer.size()) <=
        static_cast<int>(p.corrupted.size()) * p.instance.k);
  for (int v : b.outer)
    CHECK(std::binary_search(p.corrupted.begin(), p.corrupted.end(), leg.vertex_of(v)));
}

TEST_CASE("hyperedge cuts are dominated by symmetric boundaries") {
  // Pointwise comparison on random sets: cutting E(v) forces v into the
  // boundary of the underlying vertex-weighted graph, with matching weights.
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Planted p = generate_planted(6, 2, 2, 0.3, seed);
    LabelExtendedGraph leg = build_label_extended_graph(p.instance);
    VertexWeightedGraph sym = build_symmetrized_graph(leg.graph);
    WeightedHypergraph h = build_label_extended_hypergraph(sym);
    Rng rng(seed);
    std::vector<char> mask(sym.graph.n, 0);
    for (int v = 0; v < sym.graph.n; ++v) mask[v] = rng.below(2) == 0;
    Boundaries b = boundaries(sym.graph, mask);
    CHECK(hyperedge_boundary(h, mask).size() <= b.outer.size() + b.internal_.size());
    CHECK(hyperedge_cut_weight(h, mask) <= symmetric_boundary_weight(sym, mask) + 1e-9);
  }
}

TEST_CASE("vertex boundary transfers to the symmetrized graph") {
  // S in the base graph, padded with all incident edge vertices, has weighted
  // symmetric expansion at most twice the vertex expansion of S.
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Planted p = generate_planted(7, 2, 2, 0.2, seed * 7);
    LabelExtendedGraph leg = build_label_extended_graph(p.instance);
    const Graph& g = leg.graph;
    VertexWeightedGraph sym = build_symmetrized_graph(g);
    Rng rng(seed);
    std::vector<char> base_mask(g.n, 0);
    int size = 0;
    for (int v = 0; v < g.n; ++v)
      if (rng.below(3) == 0) {
        base_mask[v] = 1;
        ++size;
      }
    if (size == 0) continue;
    std::vector<char> padded(sym.graph.n, 0);
    for (int v = 0; v < g.n; ++v) padded[v] = base_mask[v];
    for (size_t j = 0; j < g.edges.size(); ++j)
      if (base_mask[g.edges[j].first] || base_mask[g.edges[j].second])
        padded[g.n + j] = 1;
    Boundaries base = boundaries(g, base_mask);
    double lhs = symmetric_boundary_weight(sym, padded) / set_weight(sym, padded);
    double rhs = 2.0 * static_cast<double>(base.outer.size()) / size;
    CHECK(lhs <= rhs + 1e-9);
  }
}
