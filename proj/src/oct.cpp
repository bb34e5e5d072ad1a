#include "sug/oct.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sug {

namespace {

// Next size-|comb| combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& comb, int n) {
  int s = static_cast<int>(comb.size());
  for (int i = s - 1; i >= 0; --i) {
    if (comb[i] < n - (s - i)) {
      ++comb[i];
      for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// BFS two-coloring that ignores deleted vertices. On a same-color conflict
// the odd cycle walks both tree paths up to the lowest common ancestor and
// closes through the conflicting edge.
BipartiteReport bipartite_masked(const SimpleGraph& g, const std::vector<char>& deleted) {
  BipartiteReport rep;
  rep.coloring.assign(g.n, -1);
  std::vector<std::vector<int>> adj(g.n);
  for (auto [u, v] : g.edges) {
    if (deleted[u] || deleted[v]) continue;
    if (u == v) {  // a self-loop is an odd cycle of length one
      rep.odd_cycle = {u};
      return rep;
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  std::vector<int> parent(g.n, -1), depth(g.n, 0);
  for (int root = 0; root < g.n; ++root) {
    if (deleted[root] || rep.coloring[root] >= 0) continue;
    rep.coloring[root] = 0;
    std::vector<int> queue{root};
    for (size_t h = 0; h < queue.size(); ++h) {
      int u = queue[h];
      for (int v : adj[u]) {
        if (rep.coloring[v] < 0) {
          rep.coloring[v] = 1 - rep.coloring[u];
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (rep.coloring[v] == rep.coloring[u]) {
          std::vector<int> pu{u}, pv{v};
          while (depth[pu.back()] > depth[pv.back()]) pu.push_back(parent[pu.back()]);
          while (depth[pv.back()] > depth[pu.back()]) pv.push_back(parent[pv.back()]);
          while (pu.back() != pv.back()) {
            pu.push_back(parent[pu.back()]);
            pv.push_back(parent[pv.back()]);
          }
          rep.odd_cycle.assign(pu.rbegin(), pu.rend());  // lca .. u
          for (size_t i = 0; i + 1 < pv.size(); ++i) rep.odd_cycle.push_back(pv[i]);  // v .. lca+1
          rep.coloring.assign(g.n, -1);
          return rep;
        }
      }
    }
  }
  rep.bipartite = true;
  return rep;
}

OctResult finish_solve(const SimpleGraph& g, const SolveResult& r) {
  OctResult out;
  out.coloring.assign(g.n, -1);
  std::vector<char> kept(g.n, 0);
  for (size_t i = 0; i < r.certificate.subset.size(); ++i) {
    kept[r.certificate.subset[i]] = 1;
    out.coloring[r.certificate.subset[i]] = r.certificate.labels[i];
  }
  for (int v = 0; v < g.n; ++v)
    if (!kept[v]) out.deleted.push_back(v);
  out.fraction = g.n == 0 ? 0.0 : static_cast<double>(out.deleted.size()) / g.n;

  std::vector<char> deleted(g.n, 0);
  for (int v : out.deleted) deleted[v] = 1;
  if (!bipartite_masked(g, deleted).bipartite)
    throw InternalError("residual graph failed the bipartite check");

  out.report = r.report;
  out.report.add("deleted_fraction", out.fraction);
  out.report.add("bipartite", true);
  return out;
}

}  // namespace

UGInstance graph_to_strong_ug(const SimpleGraph& g) {
  UGInstance inst;
  inst.n = g.n;
  inst.k = 2;
  for (auto [u, v] : g.edges) {
    if (u == v) throw std::invalid_argument("self-loops cannot be encoded");
    UGEdge e;
    e.u = u;
    e.v = v;
    e.pi = Permutation({1, 0});
    inst.edges.push_back(std::move(e));
  }
  return inst;
}

BipartiteReport is_bipartite(const SimpleGraph& g) {
  return bipartite_masked(g, std::vector<char>(g.n, 0));
}

OctResult brute_force_oct(const SimpleGraph& g, int cap) {
  if (g.n > cap) throw CapError("exact transversal limited to n <= " + std::to_string(cap));
  for (int s = 0; s <= g.n; ++s) {
    std::vector<int> comb(s);
    for (int i = 0; i < s; ++i) comb[i] = i;
    do {
      std::vector<char> deleted(g.n, 0);
      for (int v : comb) deleted[v] = 1;
      BipartiteReport rep = bipartite_masked(g, deleted);
      if (!rep.bipartite) continue;
      OctResult out;
      out.deleted = comb;
      out.coloring = rep.coloring;
      out.fraction = g.n == 0 ? 0.0 : static_cast<double>(s) / g.n;
      out.report.add("deleted_fraction", out.fraction);
      out.report.add("bipartite", true);
      return out;
    } while (next_combination(comb, g.n));
  }
  throw InternalError("unreachable: deleting every vertex leaves a bipartite graph");
}

OctResult solve_oct(const SimpleGraph& g, double epsilon, const SolveConfig& cfg, uint64_t seed) {
  return finish_solve(g, solve_strong_ug(graph_to_strong_ug(g), epsilon,
                                         SeparatorVariant::L2L22, cfg, seed));
}

OctResult solve_oct_auto(const SimpleGraph& g, const SolveConfig& cfg, uint64_t seed) {
  return finish_solve(
      g, solve_strong_ug_auto(graph_to_strong_ug(g), SeparatorVariant::L2L22, cfg, seed));
}

}  // namespace sug
