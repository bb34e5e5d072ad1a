#pragma once

// Iterative rounding of the vector relaxation: threshold low-mass clouds,
// then repeatedly sample a hypergraph orthogonal separator, delete the
// clouds whose hyperedges it cuts, and harvest the uniquely selected labels
// until the hypergraph empties. Also the end-to-end solver pipeline
// (relaxation + rounding, optionally over an epsilon grid).

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sug/core.h"
#include "sug/io.h"
#include "sug/labelext.h"
#include "sug/sdp.h"
#include "sug/separator.h"

namespace sug {

enum class DeletionCause : uint8_t { threshold, heavy, boundary, leftover };

struct RoundingParams {
  SeparatorParams separator;  // m <= 0 derives 10k from the instance
  // Clouds whose cut-probability budget Delta(u) exceeds this are dropped
  // before the loop; Delta(u) multiplies the summed hyperedge diameters by
  // `heavy_distortion` (<= 0 uses the effective m).
  double heavy_threshold = 0.125;
  double heavy_distortion = 0.0;
  int iteration_cap_override = 0;  // > 0 replaces ceil((10/alpha) log(10 n))

  static RoundingParams defaults_for(int k) {
    RoundingParams p;
    p.separator = SeparatorParams::defaults_for(k);
    return p;
  }
};

// Loop state. The hypergraph itself never changes; the surviving
// sub-hypergraph is implied by `status`: a label vertex is present while its
// cloud is active, an edge vertex while both endpoint clouds are active, and
// hyperedge memberships are restricted to present vertices.
struct RoundingState {
  enum class Cloud : uint8_t { active, collected, deleted };

  const UGInstance* inst = nullptr;
  const WeightedHypergraph* h = nullptr;
  int n = 0, k = 0;
  int iteration = 0;
  int cap = 0;        // ceil((10/alpha) log(10 n)) unless overridden
  double alpha = 0.0; // sampler probability scale for the effective m

  std::vector<Cloud> status;          // per instance vertex
  std::vector<DeletionCause> cause;   // meaningful where status == deleted
  std::vector<std::pair<int, int>> collected;  // (vertex, label), harvest order
  int deleted_threshold = 0, deleted_heavy = 0, deleted_boundary = 0, deleted_leftover = 0;

  int active_clouds() const;
  bool vertex_present(int hyper_vertex) const;
  // Collected pairs as a sorted certificate with claimed_fraction = |C| / n.
  SolutionCertificate certificate() const;
};

// Instance vertices whose cloud mass sum_i |x_(a,i)|^2 is at least 1/2.
std::vector<int> threshold_vertices(const GramSolution& sol, const UGInstance& inst);

// Per-cloud deletion budget Delta(u) = D * sum_i maxpair_l22(E(u,i)), with
// hyperedge members restricted to the state's present vertices; the l2-l22
// variant adds D * sum_i min-norm * maxpair_l2. Inactive clouds get 0.
std::vector<double> cloud_cut_loads(const Eigen::MatrixXd& vectors, const RoundingState& state,
                                    const RoundingParams& params);

// Thresholds, prunes heavy clouds, and fixes the iteration cap. The
// hypergraph must be the label-extended hypergraph of `inst` (cloud metadata
// and per-constraint edge-vertex blocks); throws std::invalid_argument
// otherwise.
RoundingState make_rounding_state(const UGInstance& inst, const WeightedHypergraph& h,
                                  const GramSolution& sol, const RoundingParams& params);

// One loop iteration against a sampled separator: (a) delete every active
// cloud owning a label hyperedge cut by gamma in the current sub-hypergraph,
// which also drops the cloud's vertices from gamma; (b) harvest the clouds
// with exactly one label left in gamma; (c) retire harvested clouds. The
// sample may mention absent vertices; they are ignored.
void rounding_iteration(RoundingState& state, const SeparatorSample& gamma);

struct RoundingResult {
  SolutionCertificate certificate;
  int iterations = 0;
  int cap = 0;
  double alpha = 0.0;
  int deleted_threshold = 0, deleted_heavy = 0, deleted_boundary = 0, deleted_leftover = 0;
};

// Full rounding loop: per-iteration sampler seeds are drawn from a master
// stream seeded with `seed`, clouds still active at the cap are deleted as
// leftovers, and the returned certificate is verified against the instance
// (InternalError if any induced constraint fails -- never expected).
RoundingResult vertex_expansion_round(const GramSolution& sol, const WeightedHypergraph& h,
                                      const UGInstance& inst, const RoundingParams& params,
                                      uint64_t seed);

// Empirical Pr[cloud has exactly one label selected] per active cloud over
// `trials` fresh separator samples of the current sub-hypergraph. Inactive
// clouds get -1.
std::vector<double> unique_pick_frequencies(const Eigen::MatrixXd& vectors,
                                            const RoundingState& state,
                                            const SeparatorParams& params, int trials,
                                            uint64_t seed);

struct SolveConfig {
  SdpConfig sdp;
  RoundingParams rounding;  // separator.m <= 0 derives 10k
  int size_cap = 600;       // on n * k

  SolveConfig() {
    sdp.max_outer = 60;
    rounding.separator.m = 0;
  }
};

struct SolveResult {
  SolutionCertificate certificate;
  double epsilon = 0.0;
  double sdp_objective = 0.0;
  double fraction = 0.0;
  int iterations = 0;
  bool sdp_feasible = false;
  bool verified = false;
  RoundingResult rounding;
  Report report;
};

// Pipeline: label-extended graph -> symmetrized graph -> hypergraph ->
// relaxation -> rounding with the requested separator variant. Throws
// CapError when n * k exceeds cfg.size_cap. A relaxation that missed the
// feasibility tolerance is reported (sdp_feasible=false) but still rounded;
// the certificate is verified either way.
SolveResult solve_strong_ug(const UGInstance& inst, double epsilon, SeparatorVariant variant,
                            const SolveConfig& cfg, uint64_t seed);

// Runs the pipeline across epsilon in {0, 1/2, 1/4, 1/8, 1/16, 1/32} with
// independent per-point seeds and returns the best certificate (largest
// fraction, earliest grid point on ties).
SolveResult solve_strong_ug_auto(const UGInstance& inst, SeparatorVariant variant,
                                 const SolveConfig& cfg, uint64_t seed);

}  // namespace sug
