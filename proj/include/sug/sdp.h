#pragma once
#include <Eigen/Dense>
#include <vector>

#include "sug/core.h"
#include "sug/labelext.h"

namespace sug {

// Vector relaxation over the label-extended hypergraph: one vector per
// hypergraph vertex, objective sum_e w(e) * max_{u,v in e} ||x_u - x_v||^2,
// subject to
//   (1) total label-vertex mass  sum_(a,i) ||x_(a,i)||^2 = n(1-eps)
//   (2) per-cloud mass           sum_i ||x_(a,i)||^2 <= 1
//   (3) l2^2 triangle inequalities over all triples
//   (4) within-cloud orthogonality <x_(a,i), x_(a,j)> = 0
//   (5) 0 <= <x_u, x_v> <= min(||x_u||^2, ||x_v||^2), all norms <= 1.
struct SdpProblem {
  WeightedHypergraph h;
  double epsilon = 0.0;
  double mass_target = 0.0;  // n(1-eps), snapped to an integer when within 1e-9
  int n = 0, k = 0;
  int num_vertices = 0;      // label vertices first (n*k), then edge vertices
};

SdpProblem build_sdp(const WeightedHypergraph& h, double epsilon);

struct FeasibilityReport {
  double mass = 0.0;           // |label mass - target|
  double cloud_cap = 0.0;      // worst per-cloud overflow above 1
  double norm_cap = 0.0;       // worst vector norm above 1
  double orthogonality = 0.0;  // worst within-cloud inner product magnitude
  double box = 0.0;            // worst violation of 0 <= <u,v> <= min norms
  double triangle = 0.0;       // worst l2^2 triangle violation found

  double max_violation() const;
};

struct SdpConfig {
  double tolerance = 1e-6;
  int max_outer = 400;
  int inner_steps = 30;
  double rho = 1.0;            // splitting penalty, adapted during the run
  int triangle_cap = 120;      // exhaustive triple separation up to this size
  int triangle_sample = 4000;  // sampled triples per sweep above the cap
  double snap_threshold = 0.08;
  int dimension_cap = 0;       // 0: keep all eigenvalues above 1e-10 * max
};

struct GramSolution {
  Eigen::MatrixXd vectors;  // row v = x_v
  double objective = 0.0;
  FeasibilityReport residuals;
  bool feasible = false;
  int accepted_iterations = 0;
  int outer_iterations = 0;
  std::vector<double> objective_log;  // accepted objectives, non-increasing
};

double hypergraph_objective(const WeightedHypergraph& h, const Eigen::MatrixXd& vectors);

// Residuals of a candidate vector assignment. Triangle violations are checked
// exhaustively up to ~350 vertices, otherwise over all hyperedge-internal
// triples plus a fixed-seed random sample.
FeasibilityReport check_feasibility(const SdpProblem& p, const Eigen::MatrixXd& vectors);

// One-dimensional 0/1 solution reading off a satisfiable partial labeling:
// selected label vertices and fully-selected edge vertices sit at 1, the rest
// at the origin. All residuals are exactly zero and the objective counts the
// weighted boundary of the selection.
GramSolution witness_solution(const UGInstance& g, const SolutionCertificate& cert,
                              const WeightedHypergraph& h);

// Deterministic label-propagation + repair heuristic recovering an integral
// partial labeling directly from the hypergraph structure; used as a fallback
// upper bound inside the solver and exposed for tests.
SolutionCertificate greedy_certificate(const SdpProblem& p);

// Rebuilds the unique-games instance a label-extended hypergraph was derived
// from: edge vertices sit in per-constraint blocks of k triples, so the
// constraint permutations can be read back exactly (parallel constraints
// included). Throws std::invalid_argument when the hypergraph lacks cloud
// metadata or is not label-extended shaped.
UGInstance reconstruct_instance(const WeightedHypergraph& h);

// Best integral embedding the solver can construct: greedy, randomized
// insertion, and vote-repair candidates grown or trimmed to the (integral)
// mass target and polished by local search; when none reaches the target,
// the largest one is embedded with the mass deficit padded over unselected
// clouds. Residuals are exactly zero, so the point is always feasible. When
// the mass target is not integral the result is empty (feasible = false).
GramSolution integral_solution(const SdpProblem& p, uint64_t seed);

// First-order splitting solver: projected subgradient passes over the simple
// constraint families, one PSD eigenprojection per outer iteration, lazily
// separated triangle inequalities, and an integral snap polish. Deterministic
// for a fixed seed. The returned solution is the best accepted iterate
// (feasible within tolerance, objective non-increasing across acceptances),
// seeded with integral_solution as an upper bound.
GramSolution solve_sdp(const SdpProblem& p, const SdpConfig& cfg, uint64_t seed);

}  // namespace sug
