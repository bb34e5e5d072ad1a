#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sug/rational.h"
#include "sug/rng.h"

namespace sug {

// A requested computation exceeds a hard size cap (CLI exit code 3).
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file or instance (CLI exit code 2).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal self-check failed; indicates a bug, never expected (CLI exit 4).
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bijection on {0,..,k-1}, stored as image[i] = pi(i).
struct Permutation {
  std::vector<int> image;

  Permutation() = default;
  explicit Permutation(std::vector<int> img) : image(std::move(img)) {}
  static Permutation identity(int k);
  static Permutation random(int k, Rng& rng);

  int k() const { return static_cast<int>(image.size()); }
  int operator()(int i) const { return image[i]; }
  bool valid() const;
  Permutation inverse() const;
  // compose(o)(i) = (*this)(o(i)).
  Permutation compose(const Permutation& o) const;
  bool operator==(const Permutation&) const = default;
};

// Unique-games constraint on edge (u,v): sigma(v) = pi(sigma(u)).
struct UGEdge {
  int u = 0, v = 0;
  Permutation pi;
};

struct UGInstance {
  int n = 0;  // vertices 0..n-1
  int k = 0;  // labels 0..k-1
  std::vector<UGEdge> edges;

  std::vector<int> degrees() const;
  int max_degree() const;
};

// d-ary constraint: satisfied by sigma iff some label c has
// sigma(vertices[j]) = pis[j](c) for all j.
struct HypUGEdge {
  Rational weight;
  std::vector<int> vertices;
  std::vector<Permutation> pis;
};

struct HypUGInstance {
  int n = 0;
  int k = 0;
  std::vector<HypUGEdge> hyperedges;

  Rational total_weight() const;
  int arity() const;  // common arity, -1 if mixed or empty
};

// Bipartite edge (u left, v right): sigma_R(v) = pi(sigma_L(u)).
struct SBUGEdge {
  int u = 0, v = 0;
  Permutation pi;
};

// Left-measured bipartite unique games. A left vertex is strongly satisfied
// by (sigma_L, sigma_R) when every incident edge holds; the instance value is
// the best reachable mu-measure of strongly satisfied left vertices.
struct SBUGInstance {
  int n_left = 0, n_right = 0;
  int k = 0;
  std::vector<SBUGEdge> edges;
  std::vector<Rational> mu;  // left measure, sums to 1

  std::vector<int> left_degrees() const;
  std::vector<int> right_degrees() const;
};

// Vertex subset plus one label per selected vertex; `subset` is sorted and
// `labels` is parallel to it.
struct SolutionCertificate {
  std::vector<int> subset;
  std::vector<int> labels;
  double claimed_fraction = 0.0;

  int label_of(int v) const;  // -1 when v is not selected
};

struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const;
};

std::vector<std::string> validate_instance(const UGInstance& g);
std::vector<std::string> validate_instance(const HypUGInstance& h);
std::vector<std::string> validate_instance(const SBUGInstance& b);

// Exact satisfied-weight fraction under a full labeling (1 when edgeless).
Rational evaluate_labeling(const UGInstance& g, const std::vector<int>& sigma);

struct InducedReport {
  bool satisfiable = false;
  int violated_edge = -1;  // an edge index witnessing failure, -1 if none
};

// Checks the certificate's labels against every edge with both endpoints in
// the subset.
InducedReport induced_satisfiable(const UGInstance& g, const SolutionCertificate& cert);

// Can SOME labeling of `subset` satisfy all induced edges?
bool subset_satisfiable(const UGInstance& g, const std::vector<int>& subset);

// Exhaustive strong value: largest vertex subset whose induced constraints
// are satisfiable; ties broken toward the lexicographically smallest subset,
// then the lexicographically smallest labeling. Caps: n <= 14, k <= 4.
SolutionCertificate brute_force_sval(const UGInstance& g, int max_n = 14, int max_k = 4);

struct Planted {
  UGInstance instance;
  SolutionCertificate certificate;     // the uncorrupted part with its labels
  std::vector<int> planted_labeling;   // full sigma*, all n vertices
  std::vector<int> corrupted;          // sorted corrupted vertex set B
};

// Near-regular random instance satisfiable on all but ceil(eps*n) vertices:
// `target_degree` rounds of random perfect matchings, constraints sampled
// uniformly among those consistent with a planted labeling, then every edge
// touching a random ceil(eps*n)-vertex set is re-randomized unconditionally.
Planted generate_planted(int n, int k, int target_degree, double eps, uint64_t seed);

}  // namespace sug
