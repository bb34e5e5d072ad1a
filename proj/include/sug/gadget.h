#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "sug/core.h"
#include "sug/io.h"

namespace sug {

// Reversible 2k-state Markov chain used by the hardness reduction. States are
// k anchors s_0..s_{k-1} (ids 0..k-1) followed by k satellites t_0..t_{k-1}
// (ids k..2k-1); the satellites carry a caller-supplied g-regular expander.
// Symmetric weighted adjacency:
//   A(s_i,s_i) = 1-eps      A(s_i,t_i) = eps
//   A(t_i,t_i) = (g+1)*eps  A(t_i,t_j) = eps for expander edges {i,j}
// Row sums are deg(s_i) = 1 and deg(t_i) = 2(g+1)*eps, so the stationary
// measure of the walk P = D^-1 A is, exactly,
//   mu(s_i) = 1/(k*(1+2(g+1)*eps)),  mu(t_i) = 2(g+1)*eps/(k*(1+2(g+1)*eps)).
// Both labels i of s_i/t_i survive one step with probability >= 1/2, which is
// what makes the chain useful as a noise operator on label space.
struct MarkovGadget {
  int k = 0;
  Rational eps;
  int expander_degree = 0;  // g
  std::vector<std::pair<int, int>> expander_edges;
  double expander_gap = 0.0;  // 1 - lambda_2 of the expander's walk matrix A'/g

  Eigen::MatrixXd adjacency;         // 2k x 2k, symmetric, nonnegative
  Eigen::VectorXd degrees;           // row sums of adjacency
  Eigen::MatrixXd transition;        // P = D^-1 A, rows sum to 1
  std::vector<Rational> stationary;  // exact closed form above

  // Spectrum of the symmetrization N = D^-1/2 A D^-1/2 (equals P's spectrum),
  // sorted descending; eigenvalues(0) = 1. Column i of `eigenfunctions` is the
  // right eigenvector chi_i of P for eigenvalues(i), normalized so that
  // sum_x mu(x) chi_i(x) chi_j(x) = [i == j]; chi_0 is the all-ones vector.
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenfunctions;

  // Cumulative distributions used by the samplers.
  std::vector<double> stationary_cdf;
  Eigen::MatrixXd transition_cdf;

  int size() const { return 2 * k; }
  int s_vertex(int i) const { return i; }
  int t_vertex(int i) const { return k + i; }
  // Label carried by a state: psi(s_i) = psi(t_i) = i.
  int psi(int v) const { return v % k; }
  // Cyclic label shift that preserves the anchor/satellite split:
  // s_i -> s_{i+c mod k}, t_i -> t_{i+c mod k}. Any (possibly negative) c.
  int shift_vertex(int v, int c) const;

  // One draw from the stationary measure / one step of P from state v.
  int sample_stationary(Rng& rng) const;
  int sample_step(int v, Rng& rng) const;
};

// Edge list of the complete graph K_k (degree k-1), the default satellite
// expander for small k.
std::vector<std::pair<int, int>> complete_expander(int k);

// Builds the chain for a g-regular simple expander on {0..k-1}. Requires
// k >= 2 and eps in (0, 1]; throws std::invalid_argument on a non-regular,
// non-simple, or empty expander and on out-of-range parameters.
MarkovGadget build_gadget(int k, const Rational& eps,
                          const std::vector<std::pair<int, int>>& expander_edges);

struct SpectralReport {
  bool psd_ok = false;          // min eigenvalue of D^-1/2 A D^-1/2 >= -1e-9
  double min_eigenvalue = 0.0;
  double stationary_residual = 0.0;  // max_x |(mu^T P - mu^T)(x)|
  double spectral_gap = 0.0;         // 1 - second-largest |eigenvalue|
  double gap_bound = 0.0;  // min(eps/(10g), expander_gap * eps / 24)
  Report report;
};

// Certifies the chain's spectrum: positive semidefiniteness of the
// symmetrized adjacency, stationarity of the exact measure, and the spectral
// gap against its guaranteed lower bound. Throws InternalError if the gap
// falls more than 1e-9 below the bound.
SpectralReport spectral_report(const MarkovGadget& m);

struct IdentityCheck {
  bool ok = false;  // every residual <= 1e-9
  // For x ~ mu and y, y' independent one-step transitions from x:
  double one_step_diag = 0.0;   // max_i |E[chi_i(x) chi_i(y)] - lambda_i|
  double one_step_cross = 0.0;  // max_{i != j} |E[chi_i(x) chi_j(y)]|
  double two_step_diag = 0.0;   // max_i |E[chi_i(y) chi_i(y')] - lambda_i^2|
  double two_step_cross = 0.0;  // max_{i != j} |E[chi_i(y) chi_j(y')]|
  Report report;
};

// Verifies the one- and two-step correlation identities of the eigenfunctions
// by exact summation over all state pairs/triples (no sampling).
IdentityCheck eigenfunction_identity_check(const MarkovGadget& m);

// Function f : V_M^n -> {0..k-1} over gadget states, either a dense table
// indexed little-endian in base 2k or a dictator f(x) = psi(x_dictator) kept
// functional so large n stays cheap. Dense tables are capped at 10^6 entries.
struct LongCode {
  int n = 0;  // coordinate count
  int k = 0;  // label count; points live in {0..2k-1}^n
  int dictator = -1;
  std::vector<int> table;

  // point.size() == n, entries are state ids; no bounds checks (hot path).
  int eval(const std::vector<int>& point) const;
};

// The dictator on coordinate i (0 <= i < n), represented functionally.
LongCode dictator_table(int i, int n, const MarkovGadget& m);

// Dense copy of a code (evaluates it on every point). CapError over 10^6.
LongCode densify(const LongCode& code);

// Folded code f~(x) = f(x shifted by -psi(x_0)) + psi(x_0) mod k. The result
// satisfies f~(x shift r) = f~(x) + r mod k, takes each value with stationary
// probability exactly 1/k, and fixes dictators (which are returned unchanged,
// still functional). Dense inputs produce a dense table (CapError over 10^6).
LongCode fold(const LongCode& code, const MarkovGadget& m);

struct DictatorshipTestResult {
  int trials = 0;
  int accepted = 0;
  double acceptance = 0.0;
  double sigma_hat = 0.0;  // binomial standard error of `acceptance`
  Report report;
};

// Monte-Carlo d-query agreement test against per-vertex long codes (assumed
// folded). Each trial: pick a game vertex v uniformly, draw d incident
// neighbors w_1..w_d with repetition, a point x from the stationary product
// measure on V_M^n, one chain step y_j from x per neighbor, then per
// coordinate an extra step with probability eta; accept iff the d values
// f_{w_j}(constraint-composed y~_j) all agree. Requires n == ug.k, one code
// per vertex with matching (n, k), and every vertex to have a neighbor.
DictatorshipTestResult run_dictatorship_test(const MarkovGadget& m, const UGInstance& ug,
                                             const std::vector<LongCode>& codes, int d,
                                             double eta, int n, int trials, uint64_t seed);

}  // namespace sug
