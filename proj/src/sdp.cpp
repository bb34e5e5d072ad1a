#include "sug/sdp.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "sug/rng.h"

namespace sug {

namespace {

double pair_distance(const Eigen::MatrixXd& gram, int u, int v) {
  return gram(u, u) + gram(v, v) - 2.0 * gram(u, v);
}

// Ordered triple (u, v, w) with center v; the l2^2 triangle constraint reads
// d(u,v) + d(v,w) - d(u,w) = 2(X_vv - X_uv - X_vw + X_uw) >= 0.
double triangle_slack(const Eigen::MatrixXd& gram, int u, int v, int w) {
  return 2.0 * (gram(v, v) - gram(u, v) - gram(v, w) + gram(u, w));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// All unordered pairs inside each hyperedge, deduplicated.
std::vector<std::vector<std::pair<int, int>>> hyperedge_pairs(const WeightedHypergraph& h) {
  std::vector<std::vector<std::pair<int, int>>> out(h.edges.size());
  for (size_t j = 0; j < h.edges.size(); ++j) {
    const auto& e = h.edges[j];
    for (size_t a = 0; a < e.size(); ++a)
      for (size_t b = a + 1; b < e.size(); ++b) out[j].emplace_back(e[a], e[b]);
  }
  return out;
}

// 1-D 0/1 vectors for a set of selected label vertices: an edge vertex sits
// at 1 exactly when both of its label endpoints are selected.
Eigen::MatrixXd selection_vectors(const WeightedHypergraph& h,
                                  const std::vector<char>& label_selected) {
  int nk = h.n_label_vertices();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(h.num_vertices, 1);
  for (int v = 0; v < nk; ++v)
    if (label_selected[v]) x(v, 0) = 1.0;
  for (int ev = nk; ev < h.num_vertices; ++ev) {
    bool all = true;
    for (int w : h.edges[ev])
      if (w < nk && !label_selected[w]) all = false;
    if (all) x(ev, 0) = 1.0;
  }
  return x;
}

FeasibilityReport feasibility_impl(const SdpProblem& p, const Eigen::MatrixXd& vectors,
                                   const std::vector<std::array<int, 3>>* extra_triples,
                                   bool exhaustive) {
  const int N = p.num_vertices, nk = p.n * p.k;
  Eigen::MatrixXd gram = vectors * vectors.transpose();
  FeasibilityReport rep;

  double mass = 0.0;
  for (int v = 0; v < nk; ++v) mass += gram(v, v);
  rep.mass = std::abs(mass - p.mass_target);

  for (int a = 0; a < p.n; ++a) {
    double cloud = 0.0;
    for (int i = 0; i < p.k; ++i) cloud += gram(a * p.k + i, a * p.k + i);
    rep.cloud_cap = std::max(rep.cloud_cap, cloud - 1.0);
    for (int i = 0; i < p.k; ++i)
      for (int j = i + 1; j < p.k; ++j)
        rep.orthogonality = std::max(rep.orthogonality, std::abs(gram(a * p.k + i, a * p.k + j)));
  }
  rep.cloud_cap = std::max(rep.cloud_cap, 0.0);

  for (int v = 0; v < N; ++v) rep.norm_cap = std::max(rep.norm_cap, gram(v, v) - 1.0);
  rep.norm_cap = std::max(rep.norm_cap, 0.0);

  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v) {
      double x = gram(u, v);
      double hi = std::min(gram(u, u), gram(v, v));
      rep.box = std::max(rep.box, std::max(-x, x - hi));
    }
  rep.box = std::max(rep.box, 0.0);

  auto probe = [&](int u, int v, int w) {
    double s = triangle_slack(gram, u, v, w);
    if (-s > rep.triangle) rep.triangle = -s;
  };
  if (exhaustive && N <= 350) {
    for (int v = 0; v < N; ++v)
      for (int u = 0; u < N; ++u)
        for (int w = u + 1; w < N; ++w)
          if (u != v && w != v) probe(u, v, w);
  } else {
    for (const auto& e : p.h.edges)
      for (int u : e)
        for (int v : e)
          for (int w : e)
            if (u != v && v != w && u < w) probe(u, v, w);
    Rng rng(9001);
    int samples = exhaustive ? 200000 : 20000;
    for (int t = 0; t < samples; ++t) {
      int u = rng.index(N), v = rng.index(N), w = rng.index(N);
      if (u != v && v != w && u != w) probe(u, v, w);
    }
    if (extra_triples)
      for (const auto& tri : *extra_triples) probe(tri[0], tri[1], tri[2]);
  }
  rep.triangle = std::max(rep.triangle, 0.0);
  return rep;
}

}  // namespace

double FeasibilityReport::max_violation() const {
  return std::max({mass, cloud_cap, norm_cap, orthogonality, box, triangle});
}

SdpProblem build_sdp(const WeightedHypergraph& h, double epsilon) {
  if (h.n_instance <= 0 || h.k_instance <= 0 || !h.one_per_vertex)
    throw std::invalid_argument("hypergraph lacks cloud structure");
  if (epsilon < 0.0 || epsilon > 1.0) throw std::invalid_argument("epsilon must lie in [0,1]");
  SdpProblem p;
  p.h = h;
  p.epsilon = epsilon;
  p.n = h.n_instance;
  p.k = h.k_instance;
  p.num_vertices = h.num_vertices;
  double target = p.n * (1.0 - epsilon);
  double snapped = std::round(target);
  p.mass_target = std::abs(target - snapped) <= 1e-9 * std::max(1, p.n) ? snapped : target;
  return p;
}

double hypergraph_objective(const WeightedHypergraph& h, const Eigen::MatrixXd& vectors) {
  double obj = 0.0;
  for (size_t j = 0; j < h.edges.size(); ++j) {
    const auto& e = h.edges[j];
    double diam = 0.0;
    for (size_t a = 0; a < e.size(); ++a)
      for (size_t b = a + 1; b < e.size(); ++b)
        diam = std::max(diam, (vectors.row(e[a]) - vectors.row(e[b])).squaredNorm());
    obj += h.weight[j] * diam;
  }
  return obj;
}

FeasibilityReport check_feasibility(const SdpProblem& p, const Eigen::MatrixXd& vectors) {
  return feasibility_impl(p, vectors, nullptr, true);
}

GramSolution witness_solution(const UGInstance& g, const SolutionCertificate& cert,
                              const WeightedHypergraph& h) {
  InducedReport ind = induced_satisfiable(g, cert);
  if (!ind.satisfiable)
    throw std::invalid_argument("witness requires a satisfiable certificate, edge " +
                                std::to_string(ind.violated_edge) + " fails");
  if (h.n_instance != g.n || h.k_instance != g.k)
    throw std::invalid_argument("hypergraph does not match the instance");
  std::vector<char> selected(h.n_label_vertices(), 0);
  for (size_t i = 0; i < cert.subset.size(); ++i)
    selected[cert.subset[i] * g.k + cert.labels[i]] = 1;

  GramSolution sol;
  sol.vectors = selection_vectors(h, selected);
  sol.objective = hypergraph_objective(h, sol.vectors);
  double eps = g.n == 0 ? 0.0 : 1.0 - static_cast<double>(cert.subset.size()) / g.n;
  SdpProblem p = build_sdp(h, eps);
  sol.residuals = check_feasibility(p, sol.vectors);
  sol.feasible = true;
  sol.accepted_iterations = 1;
  sol.objective_log = {sol.objective};
  return sol;
}

namespace {

// Label-extended edges (pairs of label vertices), reconstructed from the
// degree-3 edge-vertex hyperedges {label, label, edge vertex}.
std::vector<std::pair<int, int>> label_pairs(const SdpProblem& p) {
  const int nk = p.n * p.k;
  std::vector<std::pair<int, int>> out;
  for (int ev = nk; ev < p.num_vertices; ++ev) {
    std::vector<int> labels;
    for (int w : p.h.edges[ev])
      if (w < nk) labels.push_back(w);
    if (labels.size() == 2) out.emplace_back(labels[0], labels[1]);
  }
  return out;
}

}  // namespace

SolutionCertificate greedy_certificate(const SdpProblem& p) {
  const int n = p.n, k = p.k, nk = n * k;
  std::vector<std::pair<int, int>> constraints = label_pairs(p);
  std::vector<std::vector<int>> nbr(nk);
  for (auto [u, v] : constraints) {
    nbr[u].push_back(v);
    nbr[v].push_back(u);
  }

  // Cloud-level components, then per component the root label with the
  // fewest violated constraints; a satisfiable component admits a label with
  // zero violations.
  std::vector<int> sigma(n, -1);
  std::vector<char> visited(n, 0);
  for (int root = 0; root < n; ++root) {
    if (visited[root]) continue;
    std::vector<int> comp{root};
    visited[root] = 1;
    for (size_t h = 0; h < comp.size(); ++h)
      for (int i = 0; i < k; ++i)
        for (int w : nbr[comp[h] * k + i]) {
          int b = w / k;
          if (!visited[b]) {
            visited[b] = 1;
            comp.push_back(b);
          }
        }
    std::vector<int> best_local;
    int best_viol = -1;
    for (int c = 0; c < k; ++c) {
      std::vector<int> local(n, -1);
      local[root] = c;
      std::vector<int> queue{root};
      for (size_t h = 0; h < queue.size(); ++h) {
        int a = queue[h];
        for (int w : nbr[a * k + local[a]]) {
          int b = w / k, j = w % k;
          if (local[b] < 0) {
            local[b] = j;
            queue.push_back(b);
          }
        }
      }
      int viol = 0;
      for (auto [up, vp] : constraints) {
        int a = up / k, b = vp / k;
        if (local[a] >= 0 && local[b] >= 0 && local[a] == up % k && local[b] != vp % k) ++viol;
      }
      if (best_viol < 0 || viol < best_viol) {
        best_viol = viol;
        best_local = local;
      }
      if (viol == 0) break;
    }
    for (int a : comp)
      if (best_local[a] >= 0) sigma[a] = best_local[a];
    for (int a : comp)
      if (sigma[a] < 0) sigma[a] = 0;  // isolated labels are free
  }

  // Iteratively delete the vertex with the most violated incident constraints.
  std::vector<char> alive(n, 1);
  for (;;) {
    std::vector<int> viol(n, 0);
    for (auto [up, vp] : constraints) {
      int a = up / k, b = vp / k;
      if (!alive[a] || !alive[b]) continue;
      if (sigma[a] == up % k && sigma[b] != vp % k) {
        ++viol[a];
        ++viol[b];
      }
    }
    int worst = -1;
    for (int a = 0; a < n; ++a)
      if (viol[a] > 0 && (worst < 0 || viol[a] > viol[worst])) worst = a;
    if (worst < 0) break;
    alive[worst] = 0;
  }

  SolutionCertificate cert;
  for (int a = 0; a < n; ++a)
    if (alive[a]) {
      cert.subset.push_back(a);
      cert.labels.push_back(sigma[a]);
    }
  cert.claimed_fraction = n == 0 ? 1.0 : static_cast<double>(cert.subset.size()) / n;
  return cert;
}

UGInstance reconstruct_instance(const WeightedHypergraph& h) {
  const int n = h.n_instance, k = h.k_instance, nk = n * k;
  if (n <= 0 || k <= 0) throw std::invalid_argument("hypergraph lacks cloud metadata");
  if (h.num_vertices < nk || (h.num_vertices - nk) % k != 0 ||
      static_cast<int>(h.edges.size()) != h.num_vertices)
    throw std::invalid_argument("edge vertices do not form per-constraint label blocks");
  const int m = (h.num_vertices - nk) / k;
  UGInstance g;
  g.n = n;
  g.k = k;
  for (int c = 0; c < m; ++c) {
    // Triple i of constraint block c holds the source vertex at label i, the
    // target at its image and the edge vertex itself.
    std::vector<std::array<int, 2>> ends(k);
    for (int i = 0; i < k; ++i) {
      int ev = nk + c * k + i;
      std::vector<int> lab;
      for (int w : h.edges[ev])
        if (w < nk) lab.push_back(w);
      if (h.edges[ev].size() != 3 || lab.size() != 2)
        throw std::invalid_argument("hyperedge " + std::to_string(ev) +
                                    " is not a label-extended triple");
      ends[i] = {lab[0], lab[1]};
    }
    bool done = false;
    for (int cand : {ends[0][0] / k, ends[0][1] / k}) {
      Permutation pi = Permutation::identity(k);
      int other = -1;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        int src = -1, dst = -1;
        for (int x : ends[i])
          if (src < 0 && x / k == cand && x % k == i)
            src = x;
          else
            dst = x;
        if (src < 0 || dst < 0 || dst / k == cand) {
          ok = false;
          break;
        }
        if (other < 0) other = dst / k;
        if (dst / k != other) {
          ok = false;
          break;
        }
        pi.image[i] = dst % k;
      }
      if (ok && other >= 0 && pi.valid()) {
        g.edges.push_back({cand, other, pi});
        done = true;
        break;
      }
    }
    if (!done)
      throw std::invalid_argument("constraint block " + std::to_string(c) +
                                  " has no consistent source cloud");
  }
  return g;
}

namespace {

// Greedy insertion in a random cloud order: each cloud gets the first label
// consistent with every constraint toward already-selected clouds, until the
// target size is reached or no cloud fits.
SolutionCertificate random_insertion(const UGInstance& g,
                                     const std::vector<std::vector<int>>& incident, int target,
                                     Rng& rng) {
  const int n = g.n, k = g.k;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<int> sel(n, -1);
  int size = 0;
  for (int a : order) {
    if (size >= target) break;
    for (int c = 0; c < k && sel[a] < 0; ++c) {
      bool ok = true;
      for (int ei : incident[a]) {
        const UGEdge& e = g.edges[ei];
        int b = e.u == a ? e.v : e.u;
        if (b == a || sel[b] < 0) continue;
        int su = e.u == a ? c : sel[e.u];
        int sv = e.v == a ? c : sel[e.v];
        if (e.pi(su) != sv) {
          ok = false;
          break;
        }
      }
      if (ok) {
        sel[a] = c;
        ++size;
      }
    }
  }
  SolutionCertificate cert;
  for (int a = 0; a < n; ++a)
    if (sel[a] >= 0) {
      cert.subset.push_back(a);
      cert.labels.push_back(sel[a]);
    }
  cert.claimed_fraction = n == 0 ? 1.0 : static_cast<double>(cert.subset.size()) / n;
  return cert;
}

// Full labeling that follows constraints breadth-first from each component's
// first vertex, rooted at `root_label`.
std::vector<int> propagation_start(const UGInstance& g,
                                   const std::vector<std::vector<int>>& incident,
                                   int root_label) {
  const int n = g.n;
  std::vector<int> sigma(n, -1);
  std::vector<int> queue;
  for (int root = 0; root < n; ++root) {
    if (sigma[root] >= 0) continue;
    sigma[root] = root_label;
    queue.assign(1, root);
    for (size_t h = 0; h < queue.size(); ++h) {
      int a = queue[h];
      for (int ei : incident[a]) {
        const UGEdge& e = g.edges[ei];
        int b = e.u == a ? e.v : e.u;
        if (b == a || sigma[b] >= 0) continue;
        sigma[b] = e.u == a ? e.pi(sigma[a]) : e.pi.inverse()(sigma[a]);
        queue.push_back(b);
      }
    }
  }
  return sigma;
}

// Majority-vote relabeling sweeps over a full labeling, then greedy peeling
// of the worst violator until the surviving selection is fully consistent.
// Recovers large satisfiable sets where single-root propagation poisons the
// labels downstream of a corrupted region.
SolutionCertificate vote_peel(const UGInstance& g, const std::vector<std::vector<int>>& incident,
                              std::vector<int> sigma) {
  const int n = g.n, k = g.k;
  std::vector<int> score(k);
  for (int sweep = 0; sweep < 50; ++sweep) {
    bool changed = false;
    for (int a = 0; a < n; ++a) {
      std::fill(score.begin(), score.end(), 0);
      for (int ei : incident[a]) {
        const UGEdge& e = g.edges[ei];
        if (e.u == e.v) continue;
        if (e.u == a) {
          for (int c = 0; c < k; ++c)
            if (e.pi(c) == sigma[e.v]) ++score[c];
        } else {
          ++score[e.pi(sigma[e.u])];
        }
      }
      int best = sigma[a];
      for (int c = 0; c < k; ++c)
        if (score[c] > score[best]) best = c;
      if (best != sigma[a]) {
        sigma[a] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<char> alive(n, 1);
  std::vector<int> viol(n);
  for (;;) {
    std::fill(viol.begin(), viol.end(), 0);
    for (const UGEdge& e : g.edges) {
      if (!alive[e.u] || !alive[e.v]) continue;
      if (e.pi(sigma[e.u]) != sigma[e.v]) {
        ++viol[e.u];
        ++viol[e.v];
      }
    }
    int worst = -1;
    for (int a = 0; a < n; ++a)
      if (viol[a] > 0 && (worst < 0 || viol[a] > viol[worst])) worst = a;
    if (worst < 0) break;
    alive[worst] = 0;
  }

  SolutionCertificate cert;
  for (int a = 0; a < n; ++a)
    if (alive[a]) {
      cert.subset.push_back(a);
      cert.labels.push_back(sigma[a]);
    }
  cert.claimed_fraction = n == 0 ? 1.0 : static_cast<double>(cert.subset.size()) / n;
  return cert;
}

// Integral embedding of a certificate smaller than the mass target: selected
// clouds share one axis, and every unselected cloud spreads the per-cloud
// deficit q = (target - |A|) / (n - |A|) evenly over k private axes. All
// constraint families hold exactly (orthogonal axes, 0/1 inner products), so
// the point is feasible with a larger objective.
Eigen::MatrixXd padded_selection(const SdpProblem& p, const SolutionCertificate& cert,
                                 int target) {
  const int n = p.n, k = p.k, nk = n * k;
  const int s = static_cast<int>(cert.subset.size());
  std::vector<char> label_sel(nk, 0);
  std::vector<char> cloud_sel(n, 0);
  for (size_t i = 0; i < cert.subset.size(); ++i) {
    label_sel[cert.subset[i] * k + cert.labels[i]] = 1;
    cloud_sel[cert.subset[i]] = 1;
  }
  const double q = static_cast<double>(target - s) / (n - s);
  const double coef = std::sqrt(q / k);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(p.num_vertices, 1 + (n - s) * k);
  int next = 1;
  for (int a = 0; a < n; ++a) {
    if (cloud_sel[a]) {
      for (int i = 0; i < k; ++i)
        if (label_sel[a * k + i]) x(a * k + i, 0) = 1.0;
    } else {
      for (int i = 0; i < k; ++i) x(a * k + i, next + i) = coef;
      next += k;
    }
  }
  for (int ev = nk; ev < p.num_vertices; ++ev) {
    bool all = true;
    for (int w : p.h.edges[ev])
      if (w < nk && !label_sel[w]) all = false;
    if (all) x(ev, 0) = 1.0;
  }
  return x;
}

// Fixed-size local search on consistent partial labelings: relabel moves and
// (on small instances) swap moves, first-improvement sweeps on the weighted
// boundary objective. The invariant is full consistency of the selection, so
// every intermediate certificate stays valid.
void improve_certificate(const SdpProblem& p, const UGInstance& g,
                         const std::vector<std::vector<int>>& incident,
                         SolutionCertificate& cert) {
  const int n = p.n, k = p.k;
  std::vector<int> sel(n, -1);
  for (size_t i = 0; i < cert.subset.size(); ++i) sel[cert.subset[i]] = cert.labels[i];

  auto consistent_at = [&](int a, int c) {
    for (int ei : incident[a]) {
      const UGEdge& e = g.edges[ei];
      int b = e.u == a ? e.v : e.u;
      if (b == a || sel[b] < 0) continue;
      int su = e.u == a ? c : sel[e.u];
      int sv = e.v == a ? c : sel[e.v];
      if (e.pi(su) != sv) return false;
    }
    return true;
  };
  auto objective = [&]() {
    std::vector<char> mask(n * k, 0);
    for (int a = 0; a < n; ++a)
      if (sel[a] >= 0) mask[a * k + sel[a]] = 1;
    return hypergraph_objective(p.h, selection_vectors(p.h, mask));
  };

  double cur = objective();
  const bool allow_swaps = n <= 64;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool improved = false;
    for (int a = 0; a < n; ++a) {
      if (sel[a] < 0) continue;
      int keep = sel[a];
      for (int c = 0; c < k; ++c) {
        if (c == keep) continue;
        sel[a] = -1;
        bool ok = consistent_at(a, c);
        sel[a] = keep;
        if (!ok) continue;
        sel[a] = c;
        double obj = objective();
        if (obj < cur - 1e-12) {
          cur = obj;
          keep = c;
          improved = true;
        } else {
          sel[a] = keep;
        }
      }
    }
    if (allow_swaps) {
      for (int a = 0; a < n; ++a) {
        if (sel[a] < 0) continue;
        int la = sel[a];
        sel[a] = -1;
        int best_b = -1, best_c = -1;
        double best_obj = cur;
        for (int b = 0; b < n; ++b) {
          if (b == a || sel[b] >= 0) continue;
          for (int c = 0; c < k; ++c) {
            if (!consistent_at(b, c)) continue;
            sel[b] = c;
            double obj = objective();
            if (obj < best_obj - 1e-12) {
              best_obj = obj;
              best_b = b;
              best_c = c;
            }
            sel[b] = -1;
          }
        }
        if (best_b >= 0) {
          sel[best_b] = best_c;
          cur = best_obj;
          improved = true;
        } else {
          sel[a] = la;
        }
      }
    }
    if (!improved) break;
  }

  cert.subset.clear();
  cert.labels.clear();
  for (int a = 0; a < n; ++a)
    if (sel[a] >= 0) {
      cert.subset.push_back(a);
      cert.labels.push_back(sel[a]);
    }
  cert.claimed_fraction = n == 0 ? 1.0 : static_cast<double>(cert.subset.size()) / n;
}

// Cyclic projection pass over the simple constraint families. Approximate
// (one sweep is not an exact projection onto the intersection) but cheap;
// repeated passes inside the subgradient loop drive violations down.
void project_simple(Eigen::MatrixXd& x, const SdpProblem& p,
                    const std::vector<std::array<int, 3>>& triangles) {
  const int N = p.num_vertices, n = p.n, k = p.k, nk = n * k;

  for (int a = 0; a < n; ++a)
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) x(a * k + i, a * k + j) = x(a * k + j, a * k + i) = 0.0;

  for (int round = 0; round < 2; ++round) {
    for (int v = 0; v < N; ++v) x(v, v) = std::clamp(x(v, v), 0.0, 1.0);
    // Per-cloud simplex cap sum_i x_ii <= 1.
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += x(a * k + i, a * k + i);
      if (s > 1.0) {
        // Euclidean projection onto the capped simplex: uniform shift + clip.
        std::array<double, 8> y{};
        for (int i = 0; i < k; ++i) y[i] = x(a * k + i, a * k + i);
        double excess = s - 1.0;
        for (int pass = 0; pass < 4 && excess > 1e-15; ++pass) {
          int pos = 0;
          for (int i = 0; i < k; ++i)
            if (y[i] > 0.0) ++pos;
          if (pos == 0) break;
          double shift = excess / pos;
          excess = 0.0;
          for (int i = 0; i < k; ++i)
            if (y[i] > 0.0) {
              y[i] -= shift;
              if (y[i] < 0.0) {
                excess += -y[i];
                y[i] = 0.0;
              }
            }
        }
        for (int i = 0; i < k; ++i) x(a * k + i, a * k + i) = y[i];
      }
    }
    // Label mass toward the equality target (exactness comes from the
    // multiplier; this keeps iterates near the slice).
    double mass = 0.0;
    for (int v = 0; v < nk; ++v) mass += x(v, v);
    double shift = (p.mass_target - mass) / nk;
    for (int v = 0; v < nk; ++v) x(v, v) = std::clamp(x(v, v) + shift, 0.0, 1.0);
  }

  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v) {
      double hi = std::min(x(u, u), x(v, v));
      double c = std::clamp(x(u, v), 0.0, hi);
      x(u, v) = x(v, u) = c;
    }

  for (const auto& tri : triangles) {
    auto [u, v, w] = tri;
    double inner = x(v, v) - x(u, v) - x(v, w) + x(u, w);
    if (inner < 0.0) {
      double s = -inner / 2.5;
      x(v, v) += s;
      x(u, v) -= s / 2;
      x(v, u) -= s / 2;
      x(v, w) -= s / 2;
      x(w, v) -= s / 2;
      x(u, w) += s / 2;
      x(w, u) += s / 2;
    }
  }
}

std::vector<std::array<int, 3>> separate_triangles(const Eigen::MatrixXd& x, const SdpProblem& p,
                                                   const SdpConfig& cfg, Rng& rng) {
  const int N = p.num_vertices;
  std::vector<std::array<int, 3>> out;
  const size_t cap = 20000;
  auto consider = [&](int u, int v, int w) {
    if (out.size() >= cap) return;
    if (triangle_slack(x, u, v, w) < -1e-9) out.push_back({u, v, w});
  };
  if (N <= cfg.triangle_cap) {
    for (int v = 0; v < N; ++v)
      for (int u = 0; u < N; ++u)
        for (int w = u + 1; w < N; ++w)
          if (u != v && w != v) consider(u, v, w);
  } else {
    for (const auto& e : p.h.edges)
      for (int u : e)
        for (int v : e)
          for (int w : e)
            if (u != v && v != w && u < w) consider(u, v, w);
    for (int t = 0; t < cfg.triangle_sample; ++t) {
      int u = rng.index(N), v = rng.index(N), w = rng.index(N);
      if (u != v && v != w && u != w) consider(u, v, w);
    }
  }
  return out;
}

// Grows (label-compatible additions) or trims (objective-greedy removals) a
// satisfiable certificate to exactly `target` vertices. Returns false when
// the target cannot be reached.
bool adjust_certificate_size(const SdpProblem& p, const std::vector<std::pair<int, int>>& pairs,
                             SolutionCertificate& cert, int target) {
  const int n = p.n, k = p.k;
  std::vector<int> sel(n, -1);
  for (size_t i = 0; i < cert.subset.size(); ++i) sel[cert.subset[i]] = cert.labels[i];
  int size = static_cast<int>(cert.subset.size());

  auto rebuild = [&]() {
    cert.subset.clear();
    cert.labels.clear();
    for (int a = 0; a < n; ++a)
      if (sel[a] >= 0) {
        cert.subset.push_back(a);
        cert.labels.push_back(sel[a]);
      }
    cert.claimed_fraction = n == 0 ? 1.0 : static_cast<double>(cert.subset.size()) / n;
  };

  while (size < target) {
    bool added = false;
    for (int a = 0; a < n && !added; ++a) {
      if (sel[a] >= 0) continue;
      for (int c = 0; c < k && !added; ++c) {
        // Label c is compatible iff every constraint edge toward a selected
        // neighbor routes c onto the neighbor's label; the pair list carries
        // each edge at every source label, so checking the pairs at c is
        // enough.
        bool ok = true;
        for (auto [up, vp] : pairs) {
          int x = up / k, y = vp / k;
          if (x == a && up % k == c && sel[y] >= 0 && sel[y] != vp % k) ok = false;
          if (y == a && vp % k == c && sel[x] >= 0 && sel[x] != up % k) ok = false;
        }
        if (ok) {
          sel[a] = c;
          ++size;
          added = true;
        }
      }
    }
    if (!added) return false;
  }

  while (size > target) {
    double best_obj = std::numeric_limits<double>::infinity();
    int best_a = -1;
    for (int a = 0; a < n; ++a) {
      if (sel[a] < 0) continue;
      std::vector<char> mask(p.n * p.k, 0);
      for (int b = 0; b < n; ++b)
        if (b != a && sel[b] >= 0) mask[b * k + sel[b]] = 1;
      double obj = hypergraph_objective(p.h, selection_vectors(p.h, mask));
      if (obj < best_obj - 1e-15) {
        best_obj = obj;
        best_a = a;
      }
    }
    if (best_a < 0) return false;
    sel[best_a] = -1;
    --size;
  }
  rebuild();
  return true;
}

// Integral polish: cluster near-coincident vectors within hyperedges, demand
// a clean 0/1 norm structure consistent with the cloud constraints and the
// integral mass target, and rebuild exact axis-aligned vectors. Returns an
// empty matrix when the iterate is not integrally shaped.
Eigen::MatrixXd try_snap(const Eigen::MatrixXd& gram, const SdpProblem& p,
                         const std::vector<std::vector<std::pair<int, int>>>& pairs,
                         double threshold) {
  const int N = p.num_vertices, nk = p.n * p.k;
  double mass_round = std::round(p.mass_target);
  if (std::abs(p.mass_target - mass_round) > 1e-9) return {};

  UnionFind uf(N);
  for (const auto& pe : pairs)
    for (auto [u, v] : pe)
      if (pair_distance(gram, u, v) <= threshold) uf.unite(u, v);

  std::vector<double> sum(N, 0.0);
  std::vector<int> cnt(N, 0);
  for (int v = 0; v < N; ++v) {
    int r = uf.find(v);
    sum[r] += gram(v, v);
    ++cnt[r];
  }
  std::vector<int> level(N, -1);  // 0/1 per root
  for (int v = 0; v < N; ++v)
    if (cnt[v] > 0) {
      double mean = sum[v] / cnt[v];
      int rounded = mean >= 0.5 ? 1 : 0;
      if (std::abs(mean - rounded) > 0.3) return {};
      level[v] = rounded;
    }

  // One selected label per cloud at most, and exactly mass_target in total.
  std::vector<int> unit_root;
  std::vector<int> dim_of(N, -1);
  int selected_labels = 0;
  for (int a = 0; a < p.n; ++a) {
    int hits = 0;
    for (int i = 0; i < p.k; ++i)
      if (level[uf.find(a * p.k + i)] == 1) ++hits;
    if (hits > 1) return {};
    selected_labels += hits;
  }
  if (selected_labels != static_cast<int>(mass_round)) return {};

  for (int v = 0; v < N; ++v) {
    int r = uf.find(v);
    if (level[r] == 1 && dim_of[r] < 0) {
      dim_of[r] = static_cast<int>(unit_root.size());
      unit_root.push_back(r);
    }
  }
  int dim = std::max<size_t>(1, unit_root.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, dim);
  for (int v = 0; v < N; ++v) {
    int r = uf.find(v);
    if (level[r] == 1) out(v, dim_of[r]) = 1.0;
  }
  (void)nk;
  return out;
}

}  // namespace

GramSolution integral_solution(const SdpProblem& p, uint64_t seed) {
  const int n = p.n, k = p.k, nk = n * k;
  if (p.num_vertices <= 0) throw std::invalid_argument("empty problem");
  GramSolution out;
  out.objective = std::numeric_limits<double>::infinity();
  if (std::abs(p.mass_target - std::round(p.mass_target)) > 1e-9) return out;
  const int target = static_cast<int>(std::round(p.mass_target));
  Rng rng(seed);
  auto pair_list = label_pairs(p);

  std::vector<SolutionCertificate> cands, raw;
  {
    SolutionCertificate cert = greedy_certificate(p);
    raw.push_back(cert);
    if (adjust_certificate_size(p, pair_list, cert, target)) cands.push_back(cert);
  }
  bool have_inst = false;
  UGInstance inst;
  std::vector<std::vector<int>> incident;
  try {
    inst = reconstruct_instance(p.h);
    have_inst = true;
  } catch (const std::invalid_argument&) {
    // Not label-extended shaped; the greedy candidate still applies.
  }
  if (have_inst) {
    incident.resize(inst.n);
    for (size_t ei = 0; ei < inst.edges.size(); ++ei) {
      incident[inst.edges[ei].u].push_back(static_cast<int>(ei));
      if (inst.edges[ei].v != inst.edges[ei].u)
        incident[inst.edges[ei].v].push_back(static_cast<int>(ei));
    }
    const int restarts = n <= 64 ? 6 : 2;
    for (int r = 0; r < restarts; ++r) {
      SolutionCertificate cert = random_insertion(inst, incident, target, rng);
      raw.push_back(cert);
      if (adjust_certificate_size(p, pair_list, cert, target)) cands.push_back(cert);
    }
    std::vector<std::vector<int>> starts;
    for (int c = 0; c < k; ++c) starts.push_back(propagation_start(inst, incident, c));
    for (int r = 0; r < 2; ++r) {
      std::vector<int> sigma(inst.n);
      for (int& s : sigma) s = rng.index(k);
      starts.push_back(std::move(sigma));
    }
    for (auto& s : starts) {
      SolutionCertificate cert = vote_peel(inst, incident, std::move(s));
      raw.push_back(cert);
      if (adjust_certificate_size(p, pair_list, cert, target)) cands.push_back(cert);
    }
    for (auto& cert : cands) improve_certificate(p, inst, incident, cert);
  }
  double cand_obj = std::numeric_limits<double>::infinity();
  int cand_at = -1;
  for (size_t i = 0; i < cands.size(); ++i) {
    if (static_cast<int>(cands[i].subset.size()) != target) continue;
    std::vector<char> selected(nk, 0);
    for (size_t j = 0; j < cands[i].subset.size(); ++j)
      selected[cands[i].subset[j] * k + cands[i].labels[j]] = 1;
    double obj = hypergraph_objective(p.h, selection_vectors(p.h, selected));
    if (obj < cand_obj - 1e-15) {
      cand_obj = obj;
      cand_at = static_cast<int>(i);
    }
  }
  if (cand_at >= 0) {
    std::vector<char> selected(nk, 0);
    for (size_t j = 0; j < cands[cand_at].subset.size(); ++j)
      selected[cands[cand_at].subset[j] * k + cands[cand_at].labels[j]] = 1;
    out.vectors = selection_vectors(p.h, selected);
  } else {
    // No candidate reached the mass target; embed the largest consistent one
    // and pad the deficit over the unselected clouds.
    int best_raw = -1;
    for (size_t i = 0; i < raw.size(); ++i)
      if (best_raw < 0 || raw[i].subset.size() > raw[best_raw].subset.size())
        best_raw = static_cast<int>(i);
    if (best_raw < 0 || static_cast<int>(raw[best_raw].subset.size()) >= target)
      return out;
    if (have_inst) improve_certificate(p, inst, incident, raw[best_raw]);
    out.vectors = padded_selection(p, raw[best_raw], target);
  }
  out.objective = hypergraph_objective(p.h, out.vectors);
  out.residuals = feasibility_impl(p, out.vectors, nullptr, true);
  out.feasible = out.residuals.max_violation() <= 1e-9;
  out.accepted_iterations = 1;
  out.objective_log.push_back(out.objective);
  return out;
}

GramSolution solve_sdp(const SdpProblem& p, const SdpConfig& cfg, uint64_t seed) {
  const int N = p.num_vertices, n = p.n, k = p.k, nk = n * k;
  if (N <= 0) throw std::invalid_argument("empty problem");
  Rng rng(seed);
  auto pairs = hyperedge_pairs(p.h);

  GramSolution best;
  best.objective = std::numeric_limits<double>::infinity();
  auto consider = [&](const Eigen::MatrixXd& vectors, bool exhaustive) {
    FeasibilityReport rep = feasibility_impl(p, vectors, nullptr, exhaustive);
    double obj = hypergraph_objective(p.h, vectors);
    if (rep.max_violation() <= cfg.tolerance && obj < best.objective - 1e-12) {
      best.vectors = vectors;
      best.objective = obj;
      best.residuals = rep;
      best.feasible = true;
      best.objective_log.push_back(obj);
      ++best.accepted_iterations;
      return true;
    }
    return false;
  };

  // Integral warm start: always-feasible upper bound, accepted first so the
  // splitting iteration only ever replaces it with a strictly better point.
  bool have_warm = false;
  Eigen::MatrixXd warm;
  {
    GramSolution integral = integral_solution(p, rng.next());
    if (integral.vectors.size() > 0) {
      warm = integral.vectors;
      have_warm = consider(warm, true);
    }
  }
  if (best.feasible && best.objective <= 1e-12) {
    best.outer_iterations = 0;
    return best;
  }

  double rho = cfg.rho;
  double lambda_mass = 0.0;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(N, N);
  if (have_warm) {
    x = warm * warm.transpose();
  } else {
    double init = (1.0 - p.epsilon) / k;
    for (int v = 0; v < N; ++v) x(v, v) = init;
  }
  Eigen::MatrixXd z = x, u = Eigen::MatrixXd::Zero(N, N), z_prev = z;
  std::vector<std::array<int, 3>> active;

  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    best.outer_iterations = outer + 1;
    for (int j = 0; j < cfg.inner_steps; ++j) {
      Eigen::MatrixXd grad = rho * (x - z + u);
      for (size_t e = 0; e < pairs.size(); ++e) {
        if (pairs[e].empty()) continue;
        double d_best = -1.0;
        int bu = 0, bv = 0;
        for (auto [a, b] : pairs[e]) {
          double d = pair_distance(x, a, b);
          if (d > d_best) {
            d_best = d;
            bu = a;
            bv = b;
          }
        }
        double w = p.h.weight[e];
        grad(bu, bu) += w;
        grad(bv, bv) += w;
        grad(bu, bv) -= w;
        grad(bv, bu) -= w;
      }
      double mass = 0.0;
      for (int v = 0; v < nk; ++v) mass += x(v, v);
      double gm = lambda_mass + rho * (mass - p.mass_target);
      for (int v = 0; v < nk; ++v) grad(v, v) += gm;

      double eta = 2.0 / (rho * (j + 2));
      x -= eta * grad;
      project_simple(x, p, active);
    }
    {
      double mass = 0.0;
      for (int v = 0; v < nk; ++v) mass += x(v, v);
      lambda_mass += rho * (mass - p.mass_target);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x + u);
    const auto& evals = es.eigenvalues();
    double lam_max = std::max(evals(N - 1), 0.0);
    double floor = std::max(1e-12, 1e-10 * lam_max);
    std::vector<int> keep;
    for (int i = 0; i < N; ++i)
      if (evals(i) > floor) keep.push_back(i);
    if (cfg.dimension_cap > 0 && static_cast<int>(keep.size()) > cfg.dimension_cap)
      keep.erase(keep.begin(), keep.end() - cfg.dimension_cap);
    int r = std::max<size_t>(1, keep.size());
    Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(N, r);
    z.setZero();
    for (size_t c = 0; c < keep.size(); ++c) {
      double lam = evals(keep[c]);
      vectors.col(c) = std::sqrt(lam) * es.eigenvectors().col(keep[c]);
      z += lam * es.eigenvectors().col(keep[c]) * es.eigenvectors().col(keep[c]).transpose();
    }
    u += x - z;

    if (outer % 5 == 4 || outer == cfg.max_outer - 1) consider(vectors, false);
    if (outer % 10 == 9 || outer == cfg.max_outer - 1) {
      Eigen::MatrixXd snapped = try_snap(x, p, pairs, cfg.snap_threshold);
      if (snapped.size() > 0) {
        consider(snapped, true);
        if (best.feasible && best.objective <= 1e-12) break;
      }
    }
    active = separate_triangles(x, p, cfg, rng);

    if (outer % 25 == 24) {
      double primal = (x - z).norm();
      double dual = rho * (z - z_prev).norm();
      if (primal > 10.0 * dual && rho < 1e4) {
        rho *= 2.0;
        u *= 0.5;
      } else if (dual > 10.0 * primal && rho > 1e-4) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
    z_prev = z;
  }

  if (!best.feasible) {
    // Report the last iterate honestly rather than failing.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(z);
    int r = 0;
    for (int i = 0; i < N; ++i)
      if (es.eigenvalues()(i) > 1e-12) ++r;
    r = std::max(r, 1);
    best.vectors = Eigen::MatrixXd::Zero(N, r);
    int c = 0;
    for (int i = 0; i < N; ++i)
      if (es.eigenvalues()(i) > 1e-12)
        best.vectors.col(c++) = std::sqrt(es.eigenvalues()(i)) * es.eigenvectors().col(i);
    best.objective = hypergraph_objective(p.h, best.vectors);
    best.residuals = feasibility_impl(p, best.vectors, nullptr, true);
    best.feasible = best.residuals.max_violation() <= cfg.tolerance;
    best.objective_log.push_back(best.objective);
  }
  return best;
}

}  // namespace sug
