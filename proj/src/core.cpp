#include "sug/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sug {

Permutation Permutation::identity(int k) {
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::random(int k, Rng& rng) {
  Permutation p = identity(k);
  rng.shuffle(p.image);
  return p;
}

bool Permutation::valid() const {
  std::vector<char> seen(image.size(), 0);
  for (int x : image) {
    if (x < 0 || x >= k() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> img(image.size());
  for (int i = 0; i < k(); ++i) img[image[i]] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& o) const {
  std::vector<int> img(image.size());
  for (int i = 0; i < k(); ++i) img[i] = image[o.image[i]];
  return Permutation(std::move(img));
}

std::vector<int> UGInstance::degrees() const {
  std::vector<int> deg(n, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

int UGInstance::max_degree() const {
  int best = 0;
  for (int d : degrees()) best = std::max(best, d);
  return best;
}

Rational HypUGInstance::total_weight() const {
  Rational s;
  for (const auto& e : hyperedges) s += e.weight;
  return s;
}

int HypUGInstance::arity() const {
  if (hyperedges.empty()) return -1;
  int d = static_cast<int>(hyperedges[0].vertices.size());
  for (const auto& e : hyperedges)
    if (static_cast<int>(e.vertices.size()) != d) return -1;
  return d;
}

std::vector<int> SBUGInstance::left_degrees() const {
  std::vector<int> deg(n_left, 0);
  for (const auto& e : edges) ++deg[e.u];
  return deg;
}

std::vector<int> SBUGInstance::right_degrees() const {
  std::vector<int> deg(n_right, 0);
  for (const auto& e : edges) ++deg[e.v];
  return deg;
}

int SolutionCertificate::label_of(int v) const {
  auto it = std::lower_bound(subset.begin(), subset.end(), v);
  if (it == subset.end() || *it != v) return -1;
  return labels[it - subset.begin()];
}

std::vector<std::vector<int>> SimpleGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<std::string> validate_instance(const UGInstance& g) {
  std::vector<std::string> errs;
  if (g.n < 0 || g.k <= 0) errs.push_back("instance sizes must satisfy n >= 0, k >= 1");
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
      errs.push_back("edge " + std::to_string(i) + ": endpoint out of range");
    if (e.pi.k() != g.k || !e.pi.valid())
      errs.push_back("edge " + std::to_string(i) + ": constraint is non-bijective or wrong arity");
  }
  return errs;
}

std::vector<std::string> validate_instance(const HypUGInstance& h) {
  std::vector<std::string> errs;
  if (h.n < 0 || h.k <= 0) errs.push_back("instance sizes must satisfy n >= 0, k >= 1");
  Rational total;
  for (size_t i = 0; i < h.hyperedges.size(); ++i) {
    const auto& e = h.hyperedges[i];
    if (e.vertices.size() != e.pis.size() || e.vertices.empty())
      errs.push_back("hyperedge " + std::to_string(i) + ": vertex/permutation arity mismatch");
    for (int v : e.vertices)
      if (v < 0 || v >= h.n)
        errs.push_back("hyperedge " + std::to_string(i) + ": vertex out of range");
    for (const auto& p : e.pis)
      if (p.k() != h.k || !p.valid())
        errs.push_back("hyperedge " + std::to_string(i) + ": constraint is non-bijective");
    if (e.weight < Rational(0))
      errs.push_back("hyperedge " + std::to_string(i) + ": negative weight");
    total += e.weight;
  }
  if (!h.hyperedges.empty() && total != Rational(1))
    errs.push_back("hyperedge weights sum to " + total.to_string() + ", expected 1");
  return errs;
}

std::vector<std::string> validate_instance(const SBUGInstance& b) {
  std::vector<std::string> errs;
  if (b.n_left < 0 || b.n_right < 0 || b.k <= 0)
    errs.push_back("instance sizes must satisfy n_left, n_right >= 0, k >= 1");
  if (static_cast<int>(b.mu.size()) != b.n_left)
    errs.push_back("left measure has wrong length");
  Rational total;
  for (const auto& w : b.mu) {
    if (w < Rational(0)) errs.push_back("negative left measure entry");
    total += w;
  }
  if (b.n_left > 0 && total != Rational(1))
    errs.push_back("left measure sums to " + total.to_string() + ", expected 1");
  for (size_t i = 0; i < b.edges.size(); ++i) {
    const auto& e = b.edges[i];
    if (e.u < 0 || e.u >= b.n_left || e.v < 0 || e.v >= b.n_right)
      errs.push_back("edge " + std::to_string(i) + ": endpoint out of range");
    if (e.pi.k() != b.k || !e.pi.valid())
      errs.push_back("edge " + std::to_string(i) + ": constraint is non-bijective");
  }
  return errs;
}

Rational evaluate_labeling(const UGInstance& g, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != g.n)
    throw std::invalid_argument("labeling length mismatch");
  if (g.edges.empty()) return Rational(1);
  int64_t sat = 0;
  for (const auto& e : g.edges)
    if (sigma[e.v] == e.pi(sigma[e.u])) ++sat;
  return Rational(sat, static_cast<int64_t>(g.edges.size()));
}

InducedReport induced_satisfiable(const UGInstance& g, const SolutionCertificate& cert) {
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    int lu = cert.label_of(e.u), lv = cert.label_of(e.v);
    if (lu < 0 || lv < 0) continue;
    if (lv != e.pi(lu)) return {false, static_cast<int>(i)};
  }
  return {true, -1};
}

namespace {

// Labels the subset's induced constraint graph by per-component propagation
// from the smallest-id root, trying root labels in increasing order. Returns
// false when some component admits no labeling. When `out` is non-null it
// receives the lexicographically smallest satisfying labeling (indexed by
// vertex id; untouched entries stay -1).
bool label_subset(const UGInstance& g, const std::vector<int>& subset, std::vector<int>* out) {
  std::vector<char> in(g.n, 0);
  for (int v : subset) in[v] = 1;
  std::vector<std::vector<int>> incident(g.n);
  std::vector<const UGEdge*> induced;
  for (const auto& e : g.edges)
    if (in[e.u] && in[e.v]) {
      incident[e.u].push_back(static_cast<int>(induced.size()));
      incident[e.v].push_back(static_cast<int>(induced.size()));
      induced.push_back(&e);
    }

  std::vector<int> label(g.n, -1);
  std::vector<char> done(g.n, 0);
  std::vector<int> order(subset);
  std::sort(order.begin(), order.end());
  for (int root : order) {
    if (done[root]) continue;
    // Collect the component by BFS over induced edges.
    std::vector<int> comp{root};
    done[root] = 1;
    for (size_t h = 0; h < comp.size(); ++h) {
      for (int ei : incident[comp[h]]) {
        const UGEdge& e = *induced[ei];
        int other = e.u == comp[h] ? e.v : e.u;
        if (!done[other]) {
          done[other] = 1;
          comp.push_back(other);
        }
      }
    }
    bool ok = false;
    for (int c = 0; c < g.k && !ok; ++c) {
      for (int v : comp) label[v] = -1;
      label[root] = c;
      std::vector<int> queue{root};
      bool fail = false;
      for (size_t h = 0; h < queue.size() && !fail; ++h) {
        int v = queue[h];
        for (int ei : incident[v]) {
          const UGEdge& e = *induced[ei];
          int want_u = label[e.u], want_v = label[e.v];
          if (want_u >= 0 && want_v >= 0) {
            if (want_v != e.pi(want_u)) {
              fail = true;
              break;
            }
          } else if (want_u >= 0) {
            label[e.v] = e.pi(want_u);
            queue.push_back(e.v);
          } else if (want_v >= 0) {
            label[e.u] = e.pi.inverse()(want_v);
            queue.push_back(e.u);
          }
        }
      }
      ok = !fail;
    }
    if (!ok) return false;
  }
  if (out) *out = label;
  return true;
}

// Advances `comb` (sorted, size s, entries < n) to the lexicographic
// successor; returns false past the last combination.
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

}  // namespace

bool subset_satisfiable(const UGInstance& g, const std::vector<int>& subset) {
  return label_subset(g, subset, nullptr);
}

SolutionCertificate brute_force_sval(const UGInstance& g, int max_n, int max_k) {
  if (g.n > max_n)
    throw CapError("brute force limited to n <= " + std::to_string(max_n));
  if (g.k > max_k)
    throw CapError("brute force limited to k <= " + std::to_string(max_k));
  for (int s = g.n; s >= 1; --s) {
    std::vector<int> comb(s);
    std::iota(comb.begin(), comb.end(), 0);
    do {
      std::vector<int> labels;
      std::vector<int> full;
      if (label_subset(g, comb, &full)) {
        SolutionCertificate cert;
        cert.subset = comb;
        for (int v : comb) cert.labels.push_back(full[v]);
        cert.claimed_fraction = g.n == 0 ? 1.0 : static_cast<double>(s) / g.n;
        return cert;
      }
    } while (next_combination(comb, g.n));
  }
  SolutionCertificate empty;
  empty.claimed_fraction = g.n == 0 ? 1.0 : 0.0;
  return empty;
}

Planted generate_planted(int n, int k, int target_degree, double eps, uint64_t seed) {
  if (n < 2 || k < 1 || target_degree < 1) throw std::invalid_argument("bad planted parameters");
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("eps must lie in [0,1]");
  Rng rng(seed);

  Planted out;
  out.instance.n = n;
  out.instance.k = k;
  out.planted_labeling.resize(n);
  for (int v = 0; v < n; ++v) out.planted_labeling[v] = rng.index(k);

  // target_degree rounds of random matchings; odd n leaves one vertex out
  // per round.
  for (int round = 0; round < target_degree; ++round) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int i = 0; i + 1 < n; i += 2) {
      UGEdge e;
      e.u = order[i];
      e.v = order[i + 1];
      // Uniform among permutations consistent with the planted labeling: take
      // a uniform permutation and swap two images to route sigma*(u) onto
      // sigma*(v); each consistent permutation has exactly k preimages.
      e.pi = Permutation::random(k, rng);
      int a = out.planted_labeling[e.u], b = out.planted_labeling[e.v];
      int j = e.pi.inverse()(b);
      std::swap(e.pi.image[a], e.pi.image[j]);
      out.instance.edges.push_back(std::move(e));
    }
  }

  int t = static_cast<int>(std::ceil(eps * n - 1e-12));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  out.corrupted.assign(order.begin(), order.begin() + t);
  std::sort(out.corrupted.begin(), out.corrupted.end());
  std::vector<char> bad(n, 0);
  for (int v : out.corrupted) bad[v] = 1;
  for (auto& e : out.instance.edges)
    if (bad[e.u] || bad[e.v]) e.pi = Permutation::random(k, rng);

  for (int v = 0; v < n; ++v)
    if (!bad[v]) {
      out.certificate.subset.push_back(v);
      out.certificate.labels.push_back(out.planted_labeling[v]);
    }
  out.certificate.claimed_fraction = static_cast<double>(n - t) / n;
  return out;
}

}  // namespace sug
