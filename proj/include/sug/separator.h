#pragma once

// Random-projection samplers for hypergraph orthogonal separators, empirical
// validation of their defining properties, the hypergraph shortest-path
// metric, and greedy epsilon-nets backing the net-restricted sampler.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sug/io.h"
#include "sug/labelext.h"

namespace sug {

enum class SeparatorVariant { L22, L2L22, NET };

struct SeparatorParams {
  int m = 20;  // orthogonality parameter; callers typically use 10k
  double beta = 0.5;
  SeparatorVariant variant = SeparatorVariant::L22;
  int trials = 100000;          // default Monte-Carlo budget per estimate
  double distortion_slack = 8.0;  // slack constant on the empirical distortion caps
  double eps_net = 0.0;         // net covering radius; 0 picks M / (4 |E|)

  static SeparatorParams defaults_for(int k) {
    SeparatorParams p;
    p.m = 10 * k;
    return p;
  }
};

// One sampled separator. `alpha` is the probability scale 2^-ceil(log2 m);
// selection probability of a vertex is exactly alpha * |x_u|^2 for the word
// sampler (exact on net points only for the NET variant). The l2l22 variant
// additionally records, per hyperedge, the two cut-probability bound terms:
// the max pairwise squared distance and min-norm times max pairwise distance.
struct SeparatorSample {
  std::vector<int> subset;  // sorted
  double alpha = 0.0;
  uint64_t seed = 0;
  std::vector<double> l22_term;
  std::vector<double> l2_term;
};

// Shortest-path metric structure with its greedy net. d_sdp stores the
// sentinel value (2M + 1) for disconnected pairs so greedy comparisons stay
// finite; `total_weight` is M, the sum of hyperedge pair-weights.
struct NetStructure {
  Eigen::MatrixXd d_sdp;
  std::vector<int> net;
  double eps_net = 0.0;
  double total_weight = 0.0;
  double sentinel = 0.0;
};

// Per-hyperedge pair weight w(e) = max_{u,v in e} |x_u - x_v|^2.
std::vector<double> pair_weights(const WeightedHypergraph& h, const Eigen::MatrixXd& vectors);

// Probability scale of the word sampler for a given m: 2^-ceil(log2 m). Every
// SeparatorSample produced with this m records the same value in `alpha`.
double separator_alpha(int m);

// Word sampler: ceil(log2 m) Gaussian directions give every nonzero vertex a
// sign word; a uniform word and a uniform radius r in (0,1) select
// Gamma = {u : word(u) = word, |x_u|^2 >= r}. Pr[u in Gamma] = alpha |x_u|^2
// exactly. Deterministic per seed (directions drawn coordinate-major, then
// the word, then the radius). variant=NET samples over the greedy net of the
// shortest-path metric and inflates every selected net point by its covering
// ball. Throws std::invalid_argument on an empty or zero-dimensional input.
SeparatorSample sample_separator(const Eigen::MatrixXd& vectors, const WeightedHypergraph& h,
                                 const SeparatorParams& params, uint64_t seed);

// Same sampler with the per-hyperedge bound terms of the l2-l2^2 contract
// filled in.
SeparatorSample sample_separator_l2l22(const Eigen::MatrixXd& vectors,
                                       const WeightedHypergraph& h,
                                       const SeparatorParams& params, uint64_t seed);

// Monte-Carlo check of the separator contract over `trials` samples with
// per-trial derived seeds: per-vertex selection frequency vs alpha |x_u|^2
// (3-sigma bands), co-selection of orthogonal separated pairs vs
// alpha * min-norm^2 / m, per-hyperedge cut frequency vs the distortion cap,
// and the exact never-cut check for zero-diameter hyperedges. Keys include
// prop1_ok/prop2_ok/prop3_ok/cut_monotone_ok/all_ok.
Report estimate_properties(const Eigen::MatrixXd& vectors, const WeightedHypergraph& h,
                           const SeparatorParams& params, int trials, uint64_t seed);

// Shortest-path metric over hyperedge paths: d(i,j) = min over hyperedge
// sequences (consecutive ones intersecting, i in the first, j in the last) of
// the sum of pair weights. Disconnected pairs get +infinity.
Eigen::MatrixXd shortest_path_metric(const WeightedHypergraph& h,
                                     const std::vector<double>& pair_weight);

// Greedy farthest-first net: repeatedly add the point farthest from the net
// while that distance exceeds eps_net and remove its ball. Every vertex ends
// within eps_net of the net (sentinel distances count as one fresh point per
// component).
NetStructure greedy_epsilon_net(const WeightedHypergraph& h, const Eigen::MatrixXd& d_sdp,
                                double eps_net, const std::vector<double>& pair_weight);

}  // namespace sug
