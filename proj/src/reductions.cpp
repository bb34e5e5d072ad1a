#include "sug/reductions.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sug/rng.h"

namespace sug {
namespace {

constexpr long long kSizeCap = 1000000;
constexpr long long kEnumCap = 2000000;

std::string join_errors(const std::vector<std::string>& errs) {
  std::string msg;
  for (const auto& e : errs) {
    if (!msg.empty()) msg += "; ";
    msg += e;
  }
  return msg;
}

void require_valid(const HypUGInstance& h) {
  auto errs = validate_instance(h);
  if (!errs.empty()) throw std::invalid_argument("hypergraph game: " + join_errors(errs));
}

void require_valid(const SBUGInstance& b) {
  auto errs = validate_instance(b);
  if (!errs.empty()) throw std::invalid_argument("bipartite game: " + join_errors(errs));
}

void require_valid(const UGInstance& g) {
  auto errs = validate_instance(g);
  if (!errs.empty()) throw std::invalid_argument("unique game: " + join_errors(errs));
}

int require_uniform_arity(const HypUGInstance& h) {
  int d = h.arity();
  if (d <= 0) throw std::invalid_argument("hypergraph game must be nonempty with uniform arity");
  for (const auto& e : h.hyperedges) {
    std::vector<int> verts = e.vertices;
    std::sort(verts.begin(), verts.end());
    if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
      throw std::invalid_argument("hyperedge repeats a vertex");
  }
  return d;
}

// k^n with an enumeration cap; throws CapError beyond kEnumCap.
long long checked_power(int k, int n) {
  long long p = 1;
  for (int i = 0; i < n; ++i) {
    p *= k;
    if (p > kEnumCap) throw CapError("labeling enumeration exceeds 2e6 states");
  }
  return p;
}

bool advance_labeling(std::vector<int>& sigma, int k) {
  for (size_t i = 0; i < sigma.size(); ++i) {
    if (++sigma[i] < k) return true;
    sigma[i] = 0;
  }
  return false;
}

}  // namespace

Reduced<HypUGInstance> uniformize_hypug(const HypUGInstance& h) {
  require_valid(h);
  int d = require_uniform_arity(h);
  int n = h.n;
  long long m = static_cast<long long>(h.hyperedges.size());
  if (n < 1) throw std::invalid_argument("hypergraph game needs at least one vertex");

  __int128 precision_wide = 2;
  for (int i = 0; i < 3; ++i) precision_wide *= n;
  for (int i = 0; i < 3; ++i) precision_wide *= m;
  if (precision_wide > 1000000000000000LL)
    throw CapError("uniformization precision 2|V|^3|E|^3 exceeds 1e15");
  long long precision = static_cast<long long>(precision_wide);

  // Integer numerators m_e = floor(weight * P); zero-mass hyperedges drop.
  std::vector<long long> mass(h.hyperedges.size(), 0);
  for (size_t e = 0; e < h.hyperedges.size(); ++e) {
    Rational scaled = h.hyperedges[e].weight * Rational(precision);
    mass[e] = scaled.num() / scaled.den();
  }

  // Vertices whose surviving incident mass stays below P/(|V|^2|E|^2) drop,
  // together with every hyperedge touching them (one simultaneous pass).
  std::vector<long long> incident(n, 0);
  for (size_t e = 0; e < h.hyperedges.size(); ++e) {
    if (mass[e] == 0) continue;
    for (int v : h.hyperedges[e].vertices) incident[v] += mass[e];
  }
  std::vector<char> light(n, 0);
  __int128 scale = static_cast<__int128>(n) * n * m * m;
  for (int v = 0; v < n; ++v)
    light[v] = static_cast<__int128>(incident[v]) * scale < precision_wide ? 1 : 0;

  std::vector<size_t> kept_edges;
  long long total_mass = 0;
  for (size_t e = 0; e < h.hyperedges.size(); ++e) {
    if (mass[e] == 0) continue;
    bool ok = true;
    for (int v : h.hyperedges[e].vertices)
      if (light[v]) ok = false;
    if (!ok) continue;
    kept_edges.push_back(e);
    total_mass += mass[e];
  }
  if (total_mass == 0) throw std::invalid_argument("every hyperedge rounded or trimmed away");

  // Replicate vertex v nu(v)/g times, g = gcd of the integer incident
  // masses, so each copy carries incident weight exactly g/M = d/|V'|.
  std::vector<long long> nu(n, 0);
  for (size_t e : kept_edges)
    for (int v : h.hyperedges[e].vertices) nu[v] += mass[e];
  long long g = 0;
  for (int v = 0; v < n; ++v) g = std::gcd(g, nu[v]);
  std::vector<long long> copies(n, 0);
  long long total_copies = 0;
  for (int v = 0; v < n; ++v) {
    copies[v] = nu[v] / g;
    total_copies += copies[v];
    if (total_copies > kSizeCap) throw CapError("uniformized instance exceeds 1e6 vertices");
  }
  long long cluster_total = 0;
  for (size_t e : kept_edges) {
    long long prod = 1;
    for (int v : h.hyperedges[e].vertices) {
      prod *= copies[v];
      if (prod > kSizeCap) throw CapError("uniformized instance exceeds 1e6 hyperedges");
    }
    cluster_total += prod;
    if (cluster_total > kSizeCap) throw CapError("uniformized instance exceeds 1e6 hyperedges");
  }

  std::vector<long long> offset(n, 0);
  long long acc = 0;
  for (int v = 0; v < n; ++v) {
    offset[v] = acc;
    acc += copies[v];
  }

  HypUGInstance out;
  out.n = static_cast<int>(total_copies);
  out.k = h.k;
  out.hyperedges.reserve(static_cast<size_t>(cluster_total));
  for (size_t e : kept_edges) {
    const auto& he = h.hyperedges[e];
    long long prod = 1;
    for (int v : he.vertices) prod *= copies[v];
    Rational w = Rational(mass[e], total_mass) * Rational(1, prod);
    std::vector<long long> idx(he.vertices.size(), 0);
    while (true) {
      HypUGEdge ne;
      ne.weight = w;
      ne.pis = he.pis;
      ne.vertices.resize(he.vertices.size());
      for (size_t j = 0; j < he.vertices.size(); ++j)
        ne.vertices[j] = static_cast<int>(offset[he.vertices[j]] + idx[j]);
      out.hyperedges.push_back(std::move(ne));
      size_t j = 0;
      for (; j < idx.size(); ++j) {
        if (++idx[j] < copies[he.vertices[j]]) break;
        idx[j] = 0;
      }
      if (j == idx.size()) break;
    }
  }

  ReductionTrace trace;
  trace.stage = "uniformize";
  trace.input_vertices = n;
  trace.output_vertices = out.n;
  trace.input_edges = m;
  trace.output_edges = static_cast<long long>(out.hyperedges.size());
  int out_n = out.n;
  trace.forward = [offset, copies, out_n, n](const std::vector<int>& sigma) {
    std::vector<int> res(out_n, 0);
    for (int v = 0; v < n; ++v)
      for (long long i = 0; i < copies[v]; ++i) res[offset[v] + i] = sigma[v];
    return res;
  };
  trace.backward = [offset, copies, n](const std::vector<int>& sigma) {
    std::vector<int> res(n, 0);
    for (int v = 0; v < n; ++v)
      if (copies[v] > 0) res[v] = sigma[offset[v]];
    return res;
  };
  (void)d;
  return {std::move(out), std::move(trace)};
}

Reduced<SBUGInstance> hypug_to_sbug(const HypUGInstance& h) {
  require_valid(h);
  int d = require_uniform_arity(h);
  (void)d;
  int m = static_cast<int>(h.hyperedges.size());

  SBUGInstance out;
  out.n_left = m;
  out.n_right = h.n;
  out.k = h.k;
  out.mu.reserve(m);
  std::vector<std::pair<int, Permutation>> first_incidence;
  first_incidence.reserve(m);
  for (int j = 0; j < m; ++j) {
    const auto& he = h.hyperedges[j];
    out.mu.push_back(he.weight);
    first_incidence.emplace_back(he.vertices[0], he.pis[0]);
    for (size_t i = 0; i < he.vertices.size(); ++i)
      out.edges.push_back({j, he.vertices[i], he.pis[i]});
  }

  ReductionTrace trace;
  trace.stage = "bipartize";
  trace.input_vertices = h.n;
  trace.output_vertices = m + h.n;
  trace.input_edges = m;
  trace.output_edges = static_cast<long long>(out.edges.size());
  int n = h.n;
  trace.forward = [first_incidence, m, n](const std::vector<int>& sigma) {
    std::vector<int> res(m + n, 0);
    for (int j = 0; j < m; ++j)
      res[j] = first_incidence[j].second(sigma[first_incidence[j].first]);
    for (int v = 0; v < n; ++v) res[m + v] = sigma[v];
    return res;
  };
  trace.backward = [m, n](const std::vector<int>& sigma) {
    return std::vector<int>(sigma.begin() + m, sigma.begin() + m + n);
  };
  return {std::move(out), std::move(trace)};
}

Reduced<SBUGInstance> sparsify_sbug(const SBUGInstance& g, int ell, int cprime, uint64_t seed) {
  require_valid(g);
  if (ell < 1) throw std::invalid_argument("sample count ell must be >= 1");
  if (cprime < 1) throw std::invalid_argument("truncation factor must be >= 1");
  if (g.n_right < 1) throw std::invalid_argument("sparsification needs a nonempty right side");

  std::vector<std::vector<size_t>> left_edges(g.n_left);
  std::vector<std::vector<int>> right_nbrs(g.n_right);
  for (size_t i = 0; i < g.edges.size(); ++i) {
    left_edges[g.edges[i].u].push_back(i);
    right_nbrs[g.edges[i].v].push_back(g.edges[i].u);
  }
  int d = 0;
  for (const auto& le : left_edges) d = std::max(d, static_cast<int>(le.size()));

  for (auto& nb : right_nbrs) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    if (nb.empty()) throw std::invalid_argument("a right vertex has no left neighbor");
  }

  // Each right vertex draws ell left neighbors from mu conditioned on its
  // neighborhood; each draw becomes a fresh copy with its source's edges.
  Rng rng(seed);
  int total_copies = g.n_right * ell;
  std::vector<int> source(total_copies, -1);
  for (int v = 0; v < g.n_right; ++v) {
    std::vector<double> cdf;
    cdf.reserve(right_nbrs[v].size());
    double acc = 0.0;
    for (int u : right_nbrs[v]) {
      acc += g.mu[u].to_double();
      cdf.push_back(acc);
    }
    if (acc <= 0.0) throw std::invalid_argument("a right vertex sees only zero-measure neighbors");
    for (int i = 0; i < ell; ++i) {
      double r = rng.uniform() * acc;
      size_t pick = 0;
      while (pick + 1 < cdf.size() && cdf[pick] <= r) ++pick;
      source[v * ell + i] = right_nbrs[v][pick];
    }
  }

  // Truncate right vertices whose sampled degree exceeds cprime*d*ell and
  // drop the copies touching them; survivors keep their full edge set.
  std::vector<long long> sampled_degree(g.n_right, 0);
  for (int c = 0; c < total_copies; ++c)
    for (size_t ei : left_edges[source[c]]) sampled_degree[g.edges[ei].v]++;
  long long cutoff = static_cast<long long>(cprime) * d * ell;
  std::vector<char> right_alive(g.n_right, 1);
  for (int v = 0; v < g.n_right; ++v)
    if (sampled_degree[v] > cutoff) right_alive[v] = 0;

  std::vector<char> copy_alive(total_copies, 1);
  for (int c = 0; c < total_copies; ++c)
    for (size_t ei : left_edges[source[c]])
      if (!right_alive[g.edges[ei].v]) copy_alive[c] = 0;

  std::vector<int> copy_id(total_copies, -1), right_id(g.n_right, -1);
  int n_left_out = 0, n_right_out = 0;
  for (int c = 0; c < total_copies; ++c)
    if (copy_alive[c]) copy_id[c] = n_left_out++;
  for (int v = 0; v < g.n_right; ++v)
    if (right_alive[v]) right_id[v] = n_right_out++;
  if (n_left_out == 0) throw InternalError("sparsification truncated every left copy");

  SBUGInstance out;
  out.n_left = n_left_out;
  out.n_right = n_right_out;
  out.k = g.k;
  out.mu.assign(n_left_out, Rational(1, n_left_out));
  for (int c = 0; c < total_copies; ++c) {
    if (!copy_alive[c]) continue;
    for (size_t ei : left_edges[source[c]])
      out.edges.push_back({copy_id[c], right_id[g.edges[ei].v], g.edges[ei].pi});
  }

  ReductionTrace trace;
  trace.stage = "sparsify";
  trace.input_vertices = g.n_left + g.n_right;
  trace.output_vertices = n_left_out + n_right_out;
  trace.input_edges = static_cast<long long>(g.edges.size());
  trace.output_edges = static_cast<long long>(out.edges.size());
  int nl_in = g.n_left, nr_in = g.n_right;
  trace.forward = [source, copy_id, right_id, copy_alive, right_alive, nl_in, nr_in, n_left_out,
                   n_right_out, total_copies](const std::vector<int>& sigma) {
    std::vector<int> res(n_left_out + n_right_out, 0);
    for (int c = 0; c < total_copies; ++c)
      if (copy_alive[c]) res[copy_id[c]] = sigma[source[c]];
    for (int v = 0; v < nr_in; ++v)
      if (right_alive[v]) res[n_left_out + right_id[v]] = sigma[nl_in + v];
    return res;
  };
  trace.backward = [source, copy_id, right_id, copy_alive, right_alive, nl_in, nr_in, n_left_out,
                    total_copies](const std::vector<int>& sigma) {
    std::vector<int> res(nl_in + nr_in, 0);
    std::vector<char> seen(nl_in, 0);
    for (int c = 0; c < total_copies; ++c) {
      if (!copy_alive[c] || seen[source[c]]) continue;
      seen[source[c]] = 1;
      res[source[c]] = sigma[copy_id[c]];
    }
    for (int v = 0; v < nr_in; ++v)
      if (right_alive[v]) res[nl_in + v] = sigma[n_left_out + right_id[v]];
    return res;
  };
  return {std::move(out), std::move(trace)};
}

Reduced<UGInstance> sbug_to_strong_ug(const SBUGInstance& g) {
  require_valid(g);

  UGInstance out;
  out.n = g.n_left;
  out.k = g.k;
  std::vector<std::vector<std::pair<int, Permutation>>> right_inc(g.n_right);
  for (const auto& e : g.edges) right_inc[e.v].emplace_back(e.u, e.pi);
  for (int v = 0; v < g.n_right; ++v) {
    const auto& inc = right_inc[v];
    for (size_t i = 0; i < inc.size(); ++i)
      for (size_t j = i + 1; j < inc.size(); ++j)
        out.edges.push_back(
            {inc[i].first, inc[j].first, inc[j].second.inverse().compose(inc[i].second)});
  }

  ReductionTrace trace;
  trace.stage = "collapse";
  trace.input_vertices = g.n_left + g.n_right;
  trace.output_vertices = g.n_left;
  trace.input_edges = static_cast<long long>(g.edges.size());
  trace.output_edges = static_cast<long long>(out.edges.size());
  int nl = g.n_left, nr = g.n_right;
  std::vector<std::pair<int, Permutation>> first_inc(nr, {-1, Permutation()});
  for (int v = 0; v < nr; ++v)
    if (!right_inc[v].empty()) first_inc[v] = right_inc[v][0];
  trace.forward = [nl](const std::vector<int>& sigma) {
    return std::vector<int>(sigma.begin(), sigma.begin() + nl);
  };
  trace.backward = [first_inc, nl, nr](const std::vector<int>& sigma) {
    std::vector<int> res(nl + nr, 0);
    for (int u = 0; u < nl; ++u) res[u] = sigma[u];
    for (int v = 0; v < nr; ++v)
      if (first_inc[v].first >= 0) res[nl + v] = first_inc[v].second(sigma[first_inc[v].first]);
    return res;
  };
  return {std::move(out), std::move(trace)};
}

Reduced<UGInstance> strong_ug_to_oct(const UGInstance& g) {
  require_valid(g);
  if (g.k != 2) throw std::invalid_argument("vertex doubling needs a binary alphabet");

  int n = g.n;
  Permutation neq(std::vector<int>{1, 0});
  UGInstance out;
  out.n = 2 * n;
  out.k = 2;
  for (int i = 0; i < n; ++i) out.edges.push_back({i, n + i, neq});
  for (const auto& e : g.edges) {
    bool equality = e.pi.image[0] == 0;
    if (equality) {
      out.edges.push_back({e.u, n + e.v, neq});
      out.edges.push_back({n + e.u, e.v, neq});
    } else {
      out.edges.push_back({e.u, e.v, neq});
      out.edges.push_back({n + e.u, n + e.v, neq});
    }
  }

  ReductionTrace trace;
  trace.stage = "octify";
  trace.input_vertices = n;
  trace.output_vertices = 2 * n;
  trace.input_edges = static_cast<long long>(g.edges.size());
  trace.output_edges = static_cast<long long>(out.edges.size());
  trace.forward = [n](const std::vector<int>& sigma) {
    std::vector<int> res(2 * n, 0);
    for (int i = 0; i < n; ++i) {
      res[i] = sigma[i];
      res[n + i] = 1 - sigma[i];
    }
    return res;
  };
  trace.backward = [n](const std::vector<int>& sigma) {
    return std::vector<int>(sigma.begin(), sigma.begin() + n);
  };
  return {std::move(out), std::move(trace)};
}

Rational brute_force_hypug_value(const HypUGInstance& h, int max_n, int max_k) {
  require_valid(h);
  if (h.hyperedges.empty()) return Rational(1);
  if (h.n > max_n || h.k > max_k) throw CapError("hypergraph game too large for brute force");
  checked_power(h.k, h.n);

  Rational best(0);
  std::vector<int> sigma(h.n, 0);
  do {
    Rational sat(0);
    for (const auto& e : h.hyperedges) {
      bool ok = false;
      for (int c = 0; c < h.k && !ok; ++c) {
        bool all = true;
        for (size_t j = 0; j < e.vertices.size() && all; ++j)
          if (sigma[e.vertices[j]] != e.pis[j](c)) all = false;
        ok = all;
      }
      if (ok) sat += e.weight;
    }
    if (sat > best) best = sat;
  } while (advance_labeling(sigma, h.k));
  return best;
}

Rational brute_force_sbug_value(const SBUGInstance& b, int max_n, int max_k) {
  require_valid(b);
  if (b.n_right > max_n || b.k > max_k) throw CapError("bipartite game too large for brute force");
  checked_power(b.k, b.n_right);

  std::vector<std::vector<size_t>> left_edges(b.n_left);
  for (size_t i = 0; i < b.edges.size(); ++i) left_edges[b.edges[i].u].push_back(i);

  Rational best(0);
  std::vector<int> sigma(b.n_right, 0);
  do {
    Rational sat(0);
    for (int u = 0; u < b.n_left; ++u) {
      bool ok = false;
      for (int c = 0; c < b.k && !ok; ++c) {
        bool all = true;
        for (size_t ei : left_edges[u]) {
          const auto& e = b.edges[ei];
          if (sigma[e.v] != e.pi(c)) {
            all = false;
            break;
          }
        }
        ok = all;
      }
      if (ok) sat += b.mu[u];
    }
    if (sat > best) best = sat;
  } while (advance_labeling(sigma, b.k));
  return best;
}

}  // namespace sug
