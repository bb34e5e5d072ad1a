#include "sug/labelext.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace sug {

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    if (u != v) adj[v].push_back(u);
  }
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

LabelExtendedGraph build_label_extended_graph(const UGInstance& g) {
  LabelExtendedGraph out;
  out.n = g.n;
  out.k = g.k;
  out.graph.n = g.n * g.k;
  for (const auto& e : g.edges)
    for (int i = 0; i < g.k; ++i)
      out.graph.edges.emplace_back(out.id(e.u, i), out.id(e.v, e.pi(i)));
  return out;
}

VertexWeightedGraph build_symmetrized_graph(const Graph& g) {
  VertexWeightedGraph out;
  out.n_base = g.n;
  out.graph.n = g.n + static_cast<int>(g.edges.size());
  out.weight.assign(out.graph.n, 1.0);
  std::vector<int> deg = g.degrees();
  for (size_t j = 0; j < g.edges.size(); ++j) {
    auto [u, v] = g.edges[j];
    int ev = g.n + static_cast<int>(j);
    out.graph.edges.emplace_back(u, ev);
    out.graph.edges.emplace_back(v, ev);
    out.weight[ev] = std::min(1.0 / deg[u], 1.0 / deg[v]);
  }
  return out;
}

int WeightedHypergraph::max_arity() const {
  int best = 0;
  for (const auto& e : edges) best = std::max(best, static_cast<int>(e.size()));
  return best;
}

std::vector<std::vector<int>> WeightedHypergraph::vertex_to_edges() const {
  std::vector<std::vector<int>> inc(num_vertices);
  for (size_t j = 0; j < edges.size(); ++j)
    for (int v : edges[j]) inc[v].push_back(static_cast<int>(j));
  return inc;
}

WeightedHypergraph build_label_extended_hypergraph(const VertexWeightedGraph& g) {
  WeightedHypergraph out;
  out.num_vertices = g.graph.n;
  out.one_per_vertex = true;
  out.weight = g.weight;
  auto adj = g.graph.adjacency();
  out.edges.resize(g.graph.n);
  for (int v = 0; v < g.graph.n; ++v) {
    std::vector<int> e = adj[v];
    e.push_back(v);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    out.edges[v] = std::move(e);
  }
  return out;
}

WeightedHypergraph build_label_extended_hypergraph(const UGInstance& g) {
  LabelExtendedGraph leg = build_label_extended_graph(g);
  WeightedHypergraph out = build_label_extended_hypergraph(build_symmetrized_graph(leg.graph));
  out.n_instance = g.n;
  out.k_instance = g.k;
  return out;
}

Boundaries boundaries(const Graph& g, const std::vector<char>& in_set) {
  Boundaries out;
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v) {
    bool touches_in = false, touches_out = false;
    for (int w : adj[v]) {
      if (w == v) continue;
      (in_set[w] ? touches_in : touches_out) = true;
    }
    if (!in_set[v] && touches_in) out.outer.push_back(v);
    if (in_set[v] && touches_out) out.internal_.push_back(v);
  }
  return out;
}

std::vector<int> hyperedge_boundary(const WeightedHypergraph& h, const std::vector<char>& in_set) {
  std::vector<int> out;
  for (size_t j = 0; j < h.edges.size(); ++j) {
    bool has_in = false, has_out = false;
    for (int v : h.edges[j]) (in_set[v] ? has_in : has_out) = true;
    if (has_in && has_out) out.push_back(static_cast<int>(j));
  }
  return out;
}

double set_weight(const VertexWeightedGraph& g, const std::vector<char>& in_set) {
  double s = 0.0;
  for (int v = 0; v < g.graph.n; ++v)
    if (in_set[v]) s += g.weight[v];
  return s;
}

double symmetric_boundary_weight(const VertexWeightedGraph& g, const std::vector<char>& in_set) {
  Boundaries b = boundaries(g.graph, in_set);
  double s = 0.0;
  for (int v : b.outer) s += g.weight[v];
  for (int v : b.internal_) s += g.weight[v];
  return s;
}

double hyperedge_cut_weight(const WeightedHypergraph& h, const std::vector<char>& in_set) {
  double s = 0.0;
  for (int j : hyperedge_boundary(h, in_set)) s += h.weight[j];
  return s;
}

namespace {

constexpr int kExpansionCap = 22;

int target_size(double delta, int n) {
  int s = static_cast<int>(std::ceil(delta * n - 1e-12));
  return std::clamp(s, 1, n);
}

std::vector<int> mask_to_set(uint32_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (mask >> v & 1u) out.push_back(v);
  return out;
}

// Calls fn(mask) for every n-bit mask with exactly s bits (Gosper's hack).
template <typename F>
void for_each_subset(int n, int s, F&& fn) {
  uint32_t mask = (s == 32 ? ~0u : (1u << s) - 1);
  uint32_t limit = (n == 32 ? ~0u : (1u << n) - 1);
  while (mask <= limit) {
    fn(mask);
    uint32_t c = mask & -mask;
    uint32_t r = mask + c;
    uint32_t next = (((r ^ mask) >> 2) / c) | r;
    if (r > limit || next == mask) break;
    mask = next;
  }
}

}  // namespace

GraphExpansion expansion_profile_bruteforce(const Graph& g, double delta, bool size_at_most) {
  if (g.n > kExpansionCap)
    throw CapError("expansion brute force limited to " + std::to_string(kExpansionCap) + " vertices");
  std::vector<uint32_t> nbr(g.n, 0);
  for (auto [u, v] : g.edges)
    if (u != v) {
      nbr[u] |= 1u << v;
      nbr[v] |= 1u << u;
    }
  uint32_t full = g.n == 32 ? ~0u : (1u << g.n) - 1;
  GraphExpansion out;
  out.phi = std::numeric_limits<double>::infinity();
  out.Phi = std::numeric_limits<double>::infinity();
  int s_max = target_size(delta, g.n);
  for (int s = size_at_most ? 1 : s_max; s <= s_max; ++s) {
    for_each_subset(g.n, s, [&](uint32_t mask) {
      uint32_t reach = 0;
      int internal = 0;
      for (int v = 0; v < g.n; ++v)
        if (mask >> v & 1u) {
          reach |= nbr[v];
          if (nbr[v] & full & ~mask) ++internal;
        }
      int outer = std::popcount(reach & full & ~mask);
      double phi = static_cast<double>(outer) / s;
      double Phi = static_cast<double>(outer + internal) / s;
      if (phi < out.phi) {
        out.phi = phi;
        out.phi_witness = mask_to_set(mask, g.n);
      }
      if (Phi < out.Phi) {
        out.Phi = Phi;
        out.Phi_witness = mask_to_set(mask, g.n);
      }
    });
  }
  return out;
}

HyperExpansion hyperedge_expansion_bruteforce(const WeightedHypergraph& h, double delta,
                                              bool size_at_most) {
  if (h.num_vertices > kExpansionCap)
    throw CapError("expansion brute force limited to " + std::to_string(kExpansionCap) + " vertices");
  std::vector<uint32_t> emask(h.edges.size(), 0);
  for (size_t j = 0; j < h.edges.size(); ++j)
    for (int v : h.edges[j]) emask[j] |= 1u << v;
  uint32_t full = h.num_vertices == 32 ? ~0u : (1u << h.num_vertices) - 1;
  HyperExpansion out;
  out.phiE = std::numeric_limits<double>::infinity();
  int s_max = target_size(delta, h.num_vertices);
  for (int s = size_at_most ? 1 : s_max; s <= s_max; ++s) {
    for_each_subset(h.num_vertices, s, [&](uint32_t mask) {
      int cut = 0;
      for (uint32_t em : emask)
        if ((em & mask) && (em & full & ~mask)) ++cut;
      double phi = static_cast<double>(cut) / s;
      if (phi < out.phiE) {
        out.phiE = phi;
        out.witness = mask_to_set(mask, h.num_vertices);
      }
    });
  }
  return out;
}

std::vector<int> labeling_to_set(const UGInstance& g, const SolutionCertificate& cert) {
  std::vector<int> out;
  for (size_t i = 0; i < cert.subset.size(); ++i)
    out.push_back(cert.subset[i] * g.k + cert.labels[i]);
  return out;
}

SolutionCertificate set_to_partial_labeling(const UGInstance& g, const std::vector<int>& set,
                                            bool prune) {
  LabelExtendedGraph leg = build_label_extended_graph(g);
  std::vector<char> in(leg.graph.n, 0);
  for (int v : set) {
    if (v < 0 || v >= leg.graph.n) throw std::invalid_argument("set vertex out of range");
    in[v] = 1;
  }
  std::vector<char> keep = in;
  if (prune) {
    Boundaries b = boundaries(leg.graph, in);
    std::vector<char> bad_cloud(g.n, 0);
    for (int v : b.outer) bad_cloud[leg.vertex_of(v)] = 1;
    for (int v = 0; v < leg.graph.n; ++v)
      if (keep[v] && bad_cloud[leg.vertex_of(v)]) keep[v] = 0;
  }
  SolutionCertificate cert;
  for (int a = 0; a < g.n; ++a) {
    int label = -1;
    for (int i = 0; i < g.k; ++i)
      if (keep[leg.id(a, i)]) {
        if (label >= 0)
          throw std::invalid_argument("set assigns two labels to vertex " + std::to_string(a));
        label = i;
      }
    if (label >= 0) {
      cert.subset.push_back(a);
      cert.labels.push_back(label);
    }
  }
  cert.claimed_fraction = g.n == 0 ? 1.0 : static_cast<double>(cert.subset.size()) / g.n;
  if (prune) {
    InducedReport rep = induced_satisfiable(g, cert);
    if (!rep.satisfiable)
      throw InternalError("pruned set still violates edge " + std::to_string(rep.violated_edge));
  }
  return cert;
}

}  // namespace sug
