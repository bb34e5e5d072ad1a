#include "sug/separator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "sug/rng.h"

namespace sug {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int word_bits(int m) {
  int b = 1;
  while ((1ll << b) < m) ++b;
  return b;
}

// One draw of the word sampler over the rows of `points`: fresh Gaussian
// directions (one direction at a time), then the target word, then the
// radius. Returns selected row indices.
std::vector<int> word_sample(const Eigen::MatrixXd& points, int m, Rng& rng) {
  const int n = static_cast<int>(points.rows());
  const int r = static_cast<int>(points.cols());
  const int B = word_bits(m);
  Eigen::MatrixXd dirs(r, B);
  for (int b = 0; b < B; ++b)
    for (int c = 0; c < r; ++c) dirs(c, b) = rng.gaussian();
  Eigen::MatrixXd dots = points * dirs;
  uint64_t target = rng.below(1ull << B);
  double radius;
  do {
    radius = rng.uniform();
  } while (radius == 0.0);

  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    double norm2 = points.row(i).squaredNorm();
    if (norm2 <= 0.0 || norm2 < radius) continue;
    uint64_t word = 0;
    for (int b = 0; b < B; ++b)
      if (dots(i, b) >= 0.0) word |= 1ull << b;
    if (word == target) out.push_back(i);
  }
  return out;
}

double auto_eps_net(double total_weight, size_t num_edges) {
  // With an all-pure hypergraph any radius below the disconnected-pair
  // sentinel (2M + 1 = 1) works; stay clear of it.
  if (total_weight <= 0.0) return 0.5;
  return total_weight / (4.0 * std::max<size_t>(1, num_edges));
}

void check_input(const Eigen::MatrixXd& vectors, const WeightedHypergraph& h) {
  if (vectors.rows() == 0 || vectors.cols() == 0)
    throw std::invalid_argument("zero-dimensional solution");
  if (vectors.rows() != h.num_vertices)
    throw std::invalid_argument("vector count does not match the hypergraph");
}

void fill_bound_terms(const Eigen::MatrixXd& vectors, const WeightedHypergraph& h,
                      SeparatorSample& s) {
  s.l22_term.assign(h.edges.size(), 0.0);
  s.l2_term.assign(h.edges.size(), 0.0);
  for (size_t j = 0; j < h.edges.size(); ++j) {
    const auto& e = h.edges[j];
    double maxpair2 = 0.0, minnorm = kInf;
    for (size_t a = 0; a < e.size(); ++a) {
      minnorm = std::min(minnorm, vectors.row(e[a]).norm());
      for (size_t b = a + 1; b < e.size(); ++b)
        maxpair2 = std::max(maxpair2, (vectors.row(e[a]) - vectors.row(e[b])).squaredNorm());
    }
    if (e.empty()) minnorm = 0.0;
    s.l22_term[j] = maxpair2;
    s.l2_term[j] = minnorm * std::sqrt(maxpair2);
  }
}

}  // namespace

double separator_alpha(int m) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  return std::ldexp(1.0, -word_bits(m));
}

std::vector<double> pair_weights(const WeightedHypergraph& h, const Eigen::MatrixXd& vectors) {
  std::vector<double> w(h.edges.size(), 0.0);
  for (size_t j = 0; j < h.edges.size(); ++j) {
    const auto& e = h.edges[j];
    for (size_t a = 0; a < e.size(); ++a)
      for (size_t b = a + 1; b < e.size(); ++b)
        w[j] = std::max(w[j], (vectors.row(e[a]) - vectors.row(e[b])).squaredNorm());
  }
  return w;
}

SeparatorSample sample_separator(const Eigen::MatrixXd& vectors, const WeightedHypergraph& h,
                                 const SeparatorParams& params, uint64_t seed) {
  check_input(vectors, h);
  if (params.m < 2) throw std::invalid_argument("m must be at least 2");
  SeparatorSample s;
  s.seed = seed;
  s.alpha = std::ldexp(1.0, -word_bits(params.m));
  Rng rng(seed);

  if (params.variant == SeparatorVariant::NET) {
    std::vector<double> pw = pair_weights(h, vectors);
    double total = 0.0;
    for (double w : pw) total += w;
    double eps = params.eps_net > 0.0 ? params.eps_net : auto_eps_net(total, h.edges.size());
    NetStructure ns = greedy_epsilon_net(h, shortest_path_metric(h, pw), eps, pw);
    Eigen::MatrixXd pts(ns.net.size(), vectors.cols());
    for (size_t i = 0; i < ns.net.size(); ++i) pts.row(i) = vectors.row(ns.net[i]);
    std::vector<int> chosen = word_sample(pts, params.m, rng);
    std::vector<char> in(h.num_vertices, 0);
    for (int c : chosen)
      for (int v = 0; v < h.num_vertices; ++v)
        if (ns.d_sdp(ns.net[c], v) <= eps && ns.d_sdp(ns.net[c], v) < ns.sentinel) in[v] = 1;
    for (int v = 0; v < h.num_vertices; ++v)
      if (in[v]) s.subset.push_back(v);
  } else {
    s.subset = word_sample(vectors, params.m, rng);
  }
  if (params.variant == SeparatorVariant::L2L22) fill_bound_terms(vectors, h, s);
  return s;
}

SeparatorSample sample_separator_l2l22(const Eigen::MatrixXd& vectors,
                                       const WeightedHypergraph& h,
                                       const SeparatorParams& params, uint64_t seed) {
  SeparatorParams p = params;
  p.variant = SeparatorVariant::L2L22;
  return sample_separator(vectors, h, p, seed);
}

Eigen::MatrixXd shortest_path_metric(const WeightedHypergraph& h,
                                     const std::vector<double>& pair_weight) {
  const int n = h.num_vertices;
  if (pair_weight.size() != h.edges.size())
    throw std::invalid_argument("one pair weight per hyperedge required");
  auto inc = h.vertex_to_edges();
  Eigen::MatrixXd table = Eigen::MatrixXd::Constant(n, n, kInf);
  std::vector<double> dist(n);
  std::vector<char> edge_done(h.edges.size());
  using Item = std::pair<double, int>;
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(edge_done.begin(), edge_done.end(), 0);
    dist[src] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, src});
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[v]) continue;
      for (int e : inc[v]) {
        if (edge_done[e]) continue;
        edge_done[e] = 1;
        double nd = d + pair_weight[e];
        for (int u : h.edges[e])
          if (nd < dist[u]) {
            dist[u] = nd;
            heap.push({nd, u});
          }
      }
    }
    for (int v = 0; v < n; ++v) table(src, v) = dist[v];
  }
  return table;
}

NetStructure greedy_epsilon_net(const WeightedHypergraph& h, const Eigen::MatrixXd& d_sdp,
                                double eps_net, const std::vector<double>& pair_weight) {
  if (eps_net <= 0.0) throw std::invalid_argument("eps_net must be positive");
  const int n = h.num_vertices;
  NetStructure ns;
  ns.eps_net = eps_net;
  for (double w : pair_weight) ns.total_weight += w;
  ns.sentinel = 2.0 * ns.total_weight + 1.0;
  ns.d_sdp = d_sdp;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(ns.d_sdp(i, j) < kInf)) ns.d_sdp(i, j) = ns.sentinel;

  std::vector<double> mind(n, kInf);
  for (;;) {
    int far = -1;
    for (int v = 0; v < n; ++v)
      if (far < 0 || mind[v] > mind[far]) far = v;
    if (far < 0 || mind[far] <= eps_net) break;
    ns.net.push_back(far);
    for (int v = 0; v < n; ++v) mind[v] = std::min(mind[v], ns.d_sdp(far, v));
  }
  return ns;
}

Report estimate_properties(const Eigen::MatrixXd& vectors, const WeightedHypergraph& h,
                           const SeparatorParams& params, int trials, uint64_t seed) {
  check_input(vectors, h);
  if (trials < 10000) throw std::invalid_argument("at least 10^4 trials required");
  const int n = h.num_vertices;
  const double alpha = std::ldexp(1.0, -word_bits(params.m));
  const double T = trials;

  std::vector<double> norm2(n);
  for (int v = 0; v < n; ++v) norm2[v] = vectors.row(v).squaredNorm();

  // Separated pairs; property 2 is gated on the orthogonal ones only, the
  // merely beta-separated ones are reported without a verdict.
  std::vector<std::pair<int, int>> ortho, bsep;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double minn = std::min(norm2[u], norm2[v]);
      if (minn <= 0.0) continue;
      double d2 = (vectors.row(u) - vectors.row(v)).squaredNorm();
      if (d2 < params.beta * minn) continue;
      if (std::abs(vectors.row(u).dot(vectors.row(v))) <= 1e-9)
        ortho.push_back({u, v});
      else
        bsep.push_back({u, v});
    }

  std::vector<double> maxpair = pair_weights(h, vectors);
  std::vector<double> l2term(h.edges.size(), 0.0);
  std::vector<int> arity(h.edges.size(), 0);
  for (size_t j = 0; j < h.edges.size(); ++j) {
    double minnorm = h.edges[j].empty() ? 0.0 : kInf;
    for (int v : h.edges[j]) minnorm = std::min(minnorm, std::sqrt(norm2[v]));
    l2term[j] = minnorm * std::sqrt(maxpair[j]);
    arity[j] = static_cast<int>(h.edges[j].size());
  }

  // NET variant: property 1 is exact on net points only; precompute once.
  std::vector<char> gate1(n, 1);
  NetStructure ns;
  double eps = 0.0;
  const bool net_variant = params.variant == SeparatorVariant::NET;
  if (net_variant) {
    std::vector<double> pw = maxpair;
    double total = 0.0;
    for (double w : pw) total += w;
    eps = params.eps_net > 0.0 ? params.eps_net : auto_eps_net(total, h.edges.size());
    ns = greedy_epsilon_net(h, shortest_path_metric(h, pw), eps, pw);
    std::fill(gate1.begin(), gate1.end(), 0);
    for (int v : ns.net) gate1[v] = 1;
  }
  Eigen::MatrixXd net_pts;
  if (net_variant) {
    net_pts.resize(ns.net.size(), vectors.cols());
    for (size_t i = 0; i < ns.net.size(); ++i) net_pts.row(i) = vectors.row(ns.net[i]);
  }

  std::vector<long long> sel(n, 0), co(ortho.size() + bsep.size(), 0), cut(h.edges.size(), 0);
  std::vector<char> in(n);
  for (int t = 0; t < trials; ++t) {
    // Golden-ratio stride keeps per-trial streams disjoint across base seeds.
    Rng rng(seed ^ (static_cast<uint64_t>(t) * 0x9E3779B97F4A7C15ull));
    std::fill(in.begin(), in.end(), 0);
    if (net_variant) {
      for (int c : word_sample(net_pts, params.m, rng))
        for (int v = 0; v < n; ++v)
          if (ns.d_sdp(ns.net[c], v) <= eps) in[v] = 1;
    } else {
      for (int v : word_sample(vectors, params.m, rng)) in[v] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (in[v]) ++sel[v];
    for (size_t i = 0; i < ortho.size(); ++i)
      if (in[ortho[i].first] && in[ortho[i].second]) ++co[i];
    for (size_t i = 0; i < bsep.size(); ++i)
      if (in[bsep[i].first] && in[bsep[i].second]) ++co[ortho.size() + i];
    for (size_t j = 0; j < h.edges.size(); ++j) {
      bool has_in = false, has_out = false;
      for (int v : h.edges[j]) (in[v] ? has_in : has_out) = true;
      if (has_in && has_out) ++cut[j];
    }
  }

  double p1_max = 0.0;
  bool p1_zero_ok = true;
  int p1_checked = 0;
  for (int v = 0; v < n; ++v) {
    double freq = sel[v] / T;
    if (norm2[v] <= 0.0) {
      if (freq != 0.0) p1_zero_ok = false;
      continue;
    }
    if (!gate1[v]) continue;
    ++p1_checked;
    double p = alpha * norm2[v];
    double sigma = std::sqrt(p * (1.0 - p) / T);
    if (sigma > 0.0) p1_max = std::max(p1_max, std::abs(freq - p) / sigma);
  }

  double p2_max_ratio = 0.0;
  bool p2_ok = true;
  for (size_t i = 0; i < ortho.size(); ++i) {
    auto [u, v] = ortho[i];
    double bound = alpha * std::min(norm2[u], norm2[v]) / params.m;
    double freq = co[i] / T;
    if (bound > 0.0) p2_max_ratio = std::max(p2_max_ratio, freq / bound);
    if (freq > bound + 3.0 * std::sqrt(bound * (1.0 - bound) / T)) p2_ok = false;
  }
  double bsep_max_ratio = 0.0;
  for (size_t i = 0; i < bsep.size(); ++i) {
    auto [u, v] = bsep[i];
    double bound = alpha * std::min(norm2[u], norm2[v]) / params.m;
    if (bound > 0.0) bsep_max_ratio = std::max(bsep_max_ratio, co[ortho.size() + i] / T / bound);
  }

  const double m = params.m, beta = params.beta, slack = params.distortion_slack;
  double ln_m = std::max(1.0, std::log(m));
  double lnln_m = std::max(1.0, std::log(std::max(1.0, std::log(m))));
  double log_scale;
  if (net_variant)
    log_scale = std::max(1.0, std::log(std::max(2.0, h.max_arity() * ns.total_weight)));
  else
    log_scale = std::max(1.0, std::log(static_cast<double>(n)));
  double cap_l22 = slack * (1.0 / beta) * m * ln_m * lnln_m * std::sqrt(log_scale / beta);

  double p3_max_distortion = 0.0;
  bool p3_ok = true, monotone_ok = true;
  int p3_edges = 0;
  for (size_t j = 0; j < h.edges.size(); ++j) {
    double freq = cut[j] / T;
    if (maxpair[j] <= 1e-15) {
      if (cut[j] != 0) monotone_ok = false;
      continue;
    }
    ++p3_edges;
    double bound;
    if (params.variant == SeparatorVariant::L2L22) {
      double dl2 = slack * m * ln_m * lnln_m *
                   std::sqrt(std::max(1.0, std::log(std::max(2.0, double(arity[j]))))) /
                   std::sqrt(beta);
      bound = alpha * (slack * m * maxpair[j] + dl2 * l2term[j]);
      p3_max_distortion = std::max(p3_max_distortion, freq / (alpha * maxpair[j]));
    } else {
      bound = alpha * cap_l22 * maxpair[j];
      p3_max_distortion = std::max(p3_max_distortion, freq / (alpha * maxpair[j]));
    }
    if (freq > bound + 3.0 * std::sqrt(std::max(freq * (1.0 - freq), 1.0 / T) / T)) p3_ok = false;
  }
  bool p1_ok = p1_max <= 3.0;

  Report rep;
  rep.add("trials", trials);
  rep.add("alpha", alpha);
  rep.add("m", params.m);
  rep.add("beta", params.beta);
  rep.add("variant", params.variant == SeparatorVariant::L22
                         ? "l22"
                         : (params.variant == SeparatorVariant::L2L22 ? "l2l22" : "net"));
  rep.add("prop1_checked", p1_checked);
  rep.add("prop1_max_sigmas", p1_max);
  rep.add("prop1_ok", p1_ok);
  rep.add("prop1_zero_ok", p1_zero_ok);
  rep.add("prop2_pairs", static_cast<long long>(ortho.size()));
  rep.add("prop2_max_ratio", p2_max_ratio);
  rep.add("prop2_ok", p2_ok);
  rep.add("bsep_pairs", static_cast<long long>(bsep.size()));
  rep.add("bsep_max_ratio", bsep_max_ratio);
  rep.add("prop3_edges", p3_edges);
  rep.add("prop3_max_distortion", p3_max_distortion);
  rep.add("prop3_cap", cap_l22);
  rep.add("prop3_ok", p3_ok);
  rep.add("cut_monotone_ok", monotone_ok);
  if (net_variant) {
    rep.add("net_points", static_cast<long long>(ns.net.size()));
    rep.add("net_eps", eps);
  }
  rep.add("all_ok", p1_ok && p1_zero_ok && p2_ok && p3_ok && monotone_ok);
  return rep;
}

}  // namespace sug
