#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "sug/sdp.h"

using namespace sug;

namespace {

std::vector<char> value_one_mask(const Eigen::MatrixXd& vectors) {
  std::vector<char> mask(vectors.rows(), 0);
  for (Eigen::Index v = 0; v < vectors.rows(); ++v)
    if (vectors.row(v).squaredNorm() > 0.5) mask[v] = 1;
  return mask;
}

}  // namespace

TEST_CASE("build_sdp snaps integral mass targets") {
  Planted p = generate_planted(8, 2, 2, 0.25, 3);
  WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
  SdpProblem prob = build_sdp(h, 0.25);
  CHECK(prob.mass_target == 6.0);  // exactly, despite 8 * 0.75 rounding
  CHECK(prob.n == 8);
  CHECK(prob.k == 2);
  CHECK(prob.num_vertices == h.num_vertices);
  CHECK_THROWS_AS(build_sdp(h, 1.5), std::invalid_argument);
  WeightedHypergraph bare;
  bare.num_vertices = 3;
  CHECK_THROWS_AS(build_sdp(bare, 0.0), std::invalid_argument);
}

TEST_CASE("witness of a fully satisfiable instance has objective zero") {
  Planted p = generate_planted(8, 2, 2, 0.0, 11);
  WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
  GramSolution w = witness_solution(p.instance, p.certificate, h);
  CHECK(w.objective == 0.0);
  CHECK(w.residuals.max_violation() == 0.0);
  CHECK(w.feasible);
  CHECK(w.vectors.cols() == 1);
}

TEST_CASE("witness residuals are exactly zero with corruption") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    Planted p = generate_planted(8, 3, 3, 0.25, seed);
    WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
    GramSolution w = witness_solution(p.instance, p.certificate, h);
    CHECK(w.residuals.mass == 0.0);
    CHECK(w.residuals.cloud_cap == 0.0);
    CHECK(w.residuals.norm_cap == 0.0);
    CHECK(w.residuals.orthogonality == 0.0);
    CHECK(w.residuals.box == 0.0);
    CHECK(w.residuals.triangle == 0.0);
    // Boundary bound: objective <= 2 * eps * n * k with eps = |B|/n.
    double eps_hat = static_cast<double>(p.corrupted.size()) / p.instance.n;
    CHECK(w.objective <= 2.0 * eps_hat * p.instance.n * p.instance.k + 1e-9);
  }
}

TEST_CASE("witness objective equals the weighted boundary of the selection") {
  Planted p = generate_planted(9, 2, 3, 0.3, 7);
  WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
  GramSolution w = witness_solution(p.instance, p.certificate, h);
  LabelExtendedGraph leg = build_label_extended_graph(p.instance);
  VertexWeightedGraph sym = build_symmetrized_graph(leg.graph);
  std::vector<char> mask = value_one_mask(w.vectors);
  CHECK(w.objective == doctest::Approx(hyperedge_cut_weight(h, mask)).epsilon(1e-12));
  CHECK(w.objective == doctest::Approx(symmetric_boundary_weight(sym, mask)).epsilon(1e-12));
  // Label vertices only contribute through the internal boundary: an
  // unselected label vertex has an all-zero hyperedge.
  Boundaries b = boundaries(sym.graph, mask);
  for (int j : hyperedge_boundary(h, mask))
    if (j < leg.graph.n) CHECK(mask[j] == 1);
  (void)b;
}

TEST_CASE("witness rejects unsatisfiable certificates") {
  UGInstance g;
  g.n = 2;
  g.k = 2;
  g.edges.push_back({0, 1, Permutation({1, 0})});
  WeightedHypergraph h = build_label_extended_hypergraph(g);
  SolutionCertificate bad;
  bad.subset = {0, 1};
  bad.labels = {0, 0};
  CHECK_THROWS_AS(witness_solution(g, bad, h), std::invalid_argument);
}

TEST_CASE("check_feasibility flags scaled and skewed solutions") {
  Planted p = generate_planted(6, 2, 2, 0.0, 5);
  WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
  SdpProblem prob = build_sdp(h, 0.0);
  GramSolution w = witness_solution(p.instance, p.certificate, h);
  CHECK(check_feasibility(prob, w.vectors).max_violation() == 0.0);

  Eigen::MatrixXd scaled = 1.5 * w.vectors;
  FeasibilityReport rep = check_feasibility(prob, scaled);
  CHECK(rep.norm_cap > 1.0);
  CHECK(rep.mass > 1.0);

  // Two equal unit vectors in one cloud violate orthogonality.
  Eigen::MatrixXd skew = w.vectors;
  skew.row(0).setOnes();
  skew.row(1).setOnes();
  rep = check_feasibility(prob, skew);
  CHECK(rep.orthogonality >= 1.0);
}

TEST_CASE("greedy certificate recovers satisfiable instances") {
  Planted p = generate_planted(10, 3, 3, 0.0, 21);
  WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
  SolutionCertificate cert = greedy_certificate(build_sdp(h, 0.0));
  CHECK(cert.subset.size() == 10);
  CHECK(induced_satisfiable(p.instance, cert).satisfiable);

  Planted q = generate_planted(9, 2, 2, 0.3, 4);
  WeightedHypergraph hq = build_label_extended_hypergraph(q.instance);
  SolutionCertificate cq = greedy_certificate(build_sdp(hq, 0.3));
  CHECK(induced_satisfiable(q.instance, cq).satisfiable);
}

TEST_CASE("reconstruct_instance round-trips through the hypergraph") {
  for (uint64_t seed : {3ull, 8ull, 15ull}) {
    Planted p = generate_planted(9, 3, 3, 0.2, seed);
    WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
    UGInstance back = reconstruct_instance(h);
    CHECK(back.n == p.instance.n);
    CHECK(back.k == p.instance.k);
    CHECK(back.edges.size() == p.instance.edges.size());
    WeightedHypergraph h2 = build_label_extended_hypergraph(back);
    CHECK(h2.edges == h.edges);
    CHECK(h2.weight == h.weight);
    // Semantics must agree on every labeling tried.
    Rng rng(seed);
    for (int t = 0; t < 20; ++t) {
      std::vector<int> sigma(p.instance.n);
      for (int& s : sigma) s = rng.index(p.instance.k);
      CHECK(evaluate_labeling(back, sigma) == evaluate_labeling(p.instance, sigma));
    }
  }

  WeightedHypergraph bare;
  bare.num_vertices = 2;
  bare.edges = {{0, 1}, {0, 1}};
  bare.weight = {1.0, 1.0};
  CHECK_THROWS_AS(reconstruct_instance(bare), std::invalid_argument);
}

TEST_CASE("solve_sdp reaches objective zero on satisfiable instances") {
  Planted p = generate_planted(8, 2, 2, 0.0, 31);
  WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
  SdpProblem prob = build_sdp(h, 0.0);
  GramSolution sol = solve_sdp(prob, SdpConfig{}, 1);
  CHECK(sol.feasible);
  CHECK(sol.objective <= 1e-9);
  CHECK(sol.residuals.max_violation() <= 1e-6);
  for (size_t i = 1; i < sol.objective_log.size(); ++i)
    CHECK(sol.objective_log[i] <= sol.objective_log[i - 1]);
}

TEST_CASE("solve_sdp beats the planted witness under corruption") {
  for (uint64_t seed : {2ull, 5ull}) {
    Planted p = generate_planted(8, 2, 2, 0.25, seed);
    WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
    double eps_hat = static_cast<double>(p.corrupted.size()) / p.instance.n;
    SdpProblem prob = build_sdp(h, eps_hat);
    GramSolution w = witness_solution(p.instance, p.certificate, h);
    GramSolution sol = solve_sdp(prob, SdpConfig{}, seed);
    CHECK(sol.feasible);
    CHECK(sol.residuals.max_violation() <= 1e-6);
    CHECK(sol.objective <= w.objective + 1e-4);
    for (size_t i = 1; i < sol.objective_log.size(); ++i)
      CHECK(sol.objective_log[i] <= sol.objective_log[i - 1]);
  }
}

TEST_CASE("solve_sdp is deterministic per seed") {
  Planted p = generate_planted(7, 2, 2, 0.3, 9);
  WeightedHypergraph h = build_label_extended_hypergraph(p.instance);
  SdpProblem prob = build_sdp(h, 2.0 / 7);
  SdpConfig cfg;
  cfg.max_outer = 60;
  GramSolution a = solve_sdp(prob, cfg, 17);
  GramSolution b = solve_sdp(prob, cfg, 17);
  CHECK(a.objective == b.objective);
  CHECK((a.vectors - b.vectors).norm() == 0.0);
}
