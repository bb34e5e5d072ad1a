#include "sug/rounding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sug/rng.h"

namespace sug {

namespace {

const char* variant_name(SeparatorVariant v) {
  switch (v) {
    case SeparatorVariant::L22: return "l22";
    case SeparatorVariant::L2L22: return "l2l22";
    default: return "net";
  }
}

int effective_m(const SeparatorParams& p, int k) { return p.m > 0 ? p.m : 10 * std::max(1, k); }

void require_label_extended(const UGInstance& inst, const WeightedHypergraph& h) {
  const int nk = inst.n * inst.k;
  if (h.n_instance != inst.n || h.k_instance != inst.k || !h.one_per_vertex ||
      static_cast<int>(h.edges.size()) != h.num_vertices ||
      h.num_vertices != nk + inst.k * static_cast<int>(inst.edges.size()))
    throw std::invalid_argument("hypergraph does not match the instance's label-extended form");
}

// Sub-hypergraph implied by the state: absent vertices become isolated
// singletons, present hyperedges keep only present members.
WeightedHypergraph induced_subhypergraph(const RoundingState& st) {
  WeightedHypergraph sub = *st.h;
  for (int x = 0; x < sub.num_vertices; ++x) {
    if (!st.vertex_present(x)) {
      sub.edges[x] = {x};
      continue;
    }
    auto& e = sub.edges[x];
    e.erase(std::remove_if(e.begin(), e.end(), [&](int m) { return !st.vertex_present(m); }),
            e.end());
  }
  return sub;
}

Eigen::MatrixXd masked_vectors(const Eigen::MatrixXd& vectors, const RoundingState& st) {
  Eigen::MatrixXd pts = vectors;
  for (int v = 0; v < static_cast<int>(pts.rows()); ++v)
    if (!st.vertex_present(v)) pts.row(v).setZero();
  return pts;
}

}  // namespace

int RoundingState::active_clouds() const {
  int c = 0;
  for (Cloud s : status)
    if (s == Cloud::active) ++c;
  return c;
}

bool RoundingState::vertex_present(int x) const {
  const int nk = n * k;
  if (x < nk) return status[x / k] == Cloud::active;
  const UGEdge& e = inst->edges[(x - nk) / k];
  return status[e.u] == Cloud::active && status[e.v] == Cloud::active;
}

SolutionCertificate RoundingState::certificate() const {
  std::vector<std::pair<int, int>> pairs = collected;
  std::sort(pairs.begin(), pairs.end());
  SolutionCertificate cert;
  for (auto& [v, i] : pairs) {
    cert.subset.push_back(v);
    cert.labels.push_back(i);
  }
  cert.claimed_fraction = n > 0 ? static_cast<double>(pairs.size()) / n : 0.0;
  return cert;
}

std::vector<int> threshold_vertices(const GramSolution& sol, const UGInstance& inst) {
  std::vector<int> keep;
  for (int a = 0; a < inst.n; ++a) {
    double mass = 0.0;
    for (int i = 0; i < inst.k; ++i) mass += sol.vectors.row(a * inst.k + i).squaredNorm();
    if (mass >= 0.5 - 1e-9) keep.push_back(a);
  }
  return keep;
}

std::vector<double> cloud_cut_loads(const Eigen::MatrixXd& vectors, const RoundingState& state,
                                    const RoundingParams& params) {
  const double d = params.heavy_distortion > 0.0
                       ? params.heavy_distortion
                       : static_cast<double>(effective_m(params.separator, state.k));
  const bool with_l2 = params.separator.variant == SeparatorVariant::L2L22;
  std::vector<double> load(state.n, 0.0);
  std::vector<int> members;
  for (int u = 0; u < state.n; ++u) {
    if (state.status[u] != RoundingState::Cloud::active) continue;
    for (int i = 0; i < state.k; ++i) {
      members.clear();
      for (int m : state.h->edges[u * state.k + i])
        if (state.vertex_present(m)) members.push_back(m);
      double maxpair = 0.0, minnorm = std::numeric_limits<double>::infinity();
      for (size_t a = 0; a < members.size(); ++a) {
        minnorm = std::min(minnorm, vectors.row(members[a]).norm());
        for (size_t b = a + 1; b < members.size(); ++b)
          maxpair = std::max(
              maxpair, (vectors.row(members[a]) - vectors.row(members[b])).squaredNorm());
      }
      load[u] += d * maxpair;
      if (with_l2 && !members.empty()) load[u] += d * minnorm * std::sqrt(maxpair);
    }
  }
  return load;
}

RoundingState make_rounding_state(const UGInstance& inst, const WeightedHypergraph& h,
                                  const GramSolution& sol, const RoundingParams& params) {
  require_label_extended(inst, h);
  if (sol.vectors.rows() != h.num_vertices)
    throw std::invalid_argument("one vector per hypergraph vertex required");

  RoundingState st;
  st.inst = &inst;
  st.h = &h;
  st.n = inst.n;
  st.k = inst.k;
  st.status.assign(inst.n, RoundingState::Cloud::active);
  st.cause.assign(inst.n, DeletionCause::threshold);

  std::vector<char> keep(inst.n, 0);
  for (int a : threshold_vertices(sol, inst)) keep[a] = 1;
  for (int a = 0; a < inst.n; ++a)
    if (!keep[a]) {
      st.status[a] = RoundingState::Cloud::deleted;
      st.cause[a] = DeletionCause::threshold;
      ++st.deleted_threshold;
    }

  std::vector<double> load = cloud_cut_loads(sol.vectors, st, params);
  for (int a = 0; a < inst.n; ++a)
    if (st.status[a] == RoundingState::Cloud::active && load[a] > params.heavy_threshold) {
      st.status[a] = RoundingState::Cloud::deleted;
      st.cause[a] = DeletionCause::heavy;
      ++st.deleted_heavy;
    }

  st.alpha = separator_alpha(effective_m(params.separator, inst.k));
  st.cap = params.iteration_cap_override > 0
               ? params.iteration_cap_override
               : static_cast<int>(
                     std::ceil((10.0 / st.alpha) * std::log(10.0 * std::max(1, inst.n))));
  return st;
}

void rounding_iteration(RoundingState& st, const SeparatorSample& gamma) {
  std::vector<char> in(st.h->num_vertices, 0);
  for (int v : gamma.subset)
    if (v >= 0 && v < st.h->num_vertices && st.vertex_present(v)) in[v] = 1;

  // (a) clouds with a cut label hyperedge, judged against the as-sampled state
  std::vector<int> doomed;
  for (int u = 0; u < st.n; ++u) {
    if (st.status[u] != RoundingState::Cloud::active) continue;
    bool cut = false;
    for (int i = 0; i < st.k && !cut; ++i) {
      bool inside = false, outside = false;
      for (int m : st.h->edges[u * st.k + i]) {
        if (!st.vertex_present(m)) continue;
        if (in[m])
          inside = true;
        else
          outside = true;
      }
      cut = inside && outside;
    }
    if (cut) doomed.push_back(u);
  }
  for (int u : doomed) {
    st.status[u] = RoundingState::Cloud::deleted;
    st.cause[u] = DeletionCause::boundary;
    ++st.deleted_boundary;
  }

  // (b) harvest clouds with exactly one label left in the updated sample
  std::vector<std::pair<int, int>> picked;
  for (int u = 0; u < st.n; ++u) {
    if (st.status[u] != RoundingState::Cloud::active) continue;
    int count = 0, label = -1;
    for (int i = 0; i < st.k; ++i)
      if (in[u * st.k + i]) {
        ++count;
        label = i;
      }
    if (count == 1) picked.emplace_back(u, label);
  }
  for (auto& [u, i] : picked) {
    st.status[u] = RoundingState::Cloud::collected;
    st.collected.emplace_back(u, i);
  }
  ++st.iteration;
}

RoundingResult vertex_expansion_round(const GramSolution& sol, const WeightedHypergraph& h,
                                      const UGInstance& inst, const RoundingParams& params,
                                      uint64_t seed) {
  RoundingParams eff = params;
  eff.separator.m = effective_m(params.separator, inst.k);
  RoundingState st = make_rounding_state(inst, h, sol, eff);

  Rng master(seed);
  const bool net = eff.separator.variant == SeparatorVariant::NET;
  while (st.active_clouds() > 0 && st.iteration < st.cap) {
    uint64_t s = master.next();
    SeparatorSample g;
    if (net) {
      WeightedHypergraph sub = induced_subhypergraph(st);
      g = sample_separator(masked_vectors(sol.vectors, st), sub, eff.separator, s);
    } else {
      g = sample_separator(sol.vectors, h, eff.separator, s);
    }
    if (g.alpha != st.alpha) throw InternalError("separator scale drifted mid-run");
    rounding_iteration(st, g);
  }
  for (int u = 0; u < st.n; ++u)
    if (st.status[u] == RoundingState::Cloud::active) {
      st.status[u] = RoundingState::Cloud::deleted;
      st.cause[u] = DeletionCause::leftover;
      ++st.deleted_leftover;
    }

  RoundingResult r;
  r.certificate = st.certificate();
  r.iterations = st.iteration;
  r.cap = st.cap;
  r.alpha = st.alpha;
  r.deleted_threshold = st.deleted_threshold;
  r.deleted_heavy = st.deleted_heavy;
  r.deleted_boundary = st.deleted_boundary;
  r.deleted_leftover = st.deleted_leftover;
  if (!induced_satisfiable(inst, r.certificate).satisfiable)
    throw InternalError("rounded certificate failed verification");
  return r;
}

std::vector<double> unique_pick_frequencies(const Eigen::MatrixXd& vectors,
                                            const RoundingState& state,
                                            const SeparatorParams& params, int trials,
                                            uint64_t seed) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  SeparatorParams p = params;
  p.m = effective_m(params, state.k);
  WeightedHypergraph sub = induced_subhypergraph(state);
  Eigen::MatrixXd pts = masked_vectors(vectors, state);
  std::vector<int> hits(state.n, 0);
  for (int t = 0; t < trials; ++t) {
    SeparatorSample g =
        sample_separator(pts, sub, p, seed ^ (static_cast<uint64_t>(t) * 0x9E3779B97F4A7C15ull));
    std::vector<char> in(state.h->num_vertices, 0);
    for (int v : g.subset) in[v] = 1;
    for (int u = 0; u < state.n; ++u) {
      if (state.status[u] != RoundingState::Cloud::active) continue;
      int count = 0;
      for (int i = 0; i < state.k; ++i)
        if (in[u * state.k + i]) ++count;
      if (count == 1) ++hits[u];
    }
  }
  std::vector<double> freq(state.n, -1.0);
  for (int u = 0; u < state.n; ++u)
    if (state.status[u] == RoundingState::Cloud::active)
      freq[u] = static_cast<double>(hits[u]) / trials;
  return freq;
}

SolveResult solve_strong_ug(const UGInstance& inst, double epsilon, SeparatorVariant variant,
                            const SolveConfig& cfg, uint64_t seed) {
  auto errs = validate_instance(inst);
  if (!errs.empty()) throw ParseError(errs.front());
  if (static_cast<long long>(inst.n) * inst.k > cfg.size_cap)
    throw CapError("instance exceeds the solver size cap");
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in [0, 1)");

  WeightedHypergraph h = build_label_extended_hypergraph(inst);
  SdpProblem p = build_sdp(h, epsilon);
  Rng master(seed);
  uint64_t sdp_seed = master.next(), round_seed = master.next();
  uint64_t integral_seed = master.next(), round_seed2 = master.next();
  GramSolution sol = solve_sdp(p, cfg.sdp, sdp_seed);

  RoundingParams rp = cfg.rounding;
  rp.separator.variant = variant;
  RoundingResult rr = vertex_expansion_round(sol, h, inst, rp, round_seed);
  const char* source = "sdp";

  // The minimum-objective SDP point is not always the best rounding input: a
  // fractional optimum can spread mass so that every cloud is pruned as heavy.
  // Round the integral embedding too and keep the better verified certificate;
  // the SDP objective reported below stays the stronger (smaller) bound.
  GramSolution integral = integral_solution(p, integral_seed);
  if (integral.vectors.size() > 0) {
    RoundingResult ri = vertex_expansion_round(integral, h, inst, rp, round_seed2);
    if (ri.certificate.claimed_fraction > rr.certificate.claimed_fraction + 1e-12) {
      rr = std::move(ri);
      source = "integral";
    }
  }

  // Last-resort candidate: a single vertex is satisfiable whenever some
  // label meets all its self-loops, so an empty certificate is never
  // necessary. Tiny frustrated instances can otherwise lose every cloud to
  // the heavy-pruning step.
  if (rr.certificate.subset.empty() && inst.n > 0) {
    for (int v = 0; v < inst.n && rr.certificate.subset.empty(); ++v)
      for (int c = 0; c < inst.k; ++c) {
        bool ok = true;
        for (const auto& e : inst.edges)
          if (e.u == v && e.v == v && e.pi(c) != c) ok = false;
        if (ok) {
          rr.certificate.subset = {v};
          rr.certificate.labels = {c};
          rr.certificate.claimed_fraction = 1.0 / inst.n;
          source = "single";
          break;
        }
      }
  }

  SolveResult out;
  out.certificate = rr.certificate;
  out.epsilon = epsilon;
  out.sdp_objective = sol.objective;
  out.fraction = rr.certificate.claimed_fraction;
  out.iterations = rr.iterations;
  out.sdp_feasible = sol.feasible;
  out.verified = induced_satisfiable(inst, rr.certificate).satisfiable;
  out.rounding = rr;

  out.report.add("epsilon", epsilon);
  out.report.add("variant", variant_name(variant));
  out.report.add("sdp_objective", out.sdp_objective);
  out.report.add("sdp_feasible", out.sdp_feasible);
  out.report.add("round_source", source);
  out.report.add("fraction", out.fraction);
  out.report.add("iterations", out.iterations);
  out.report.add("deleted_threshold", rr.deleted_threshold);
  out.report.add("deleted_heavy", rr.deleted_heavy);
  out.report.add("deleted_boundary", rr.deleted_boundary);
  out.report.add("deleted_leftover", rr.deleted_leftover);
  out.report.add("verified", out.verified);
  return out;
}

SolveResult solve_strong_ug_auto(const UGInstance& inst, SeparatorVariant variant,
                                 const SolveConfig& cfg, uint64_t seed) {
  static const double grid[] = {0.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
  Rng master(seed);
  SolveResult best;
  bool have = false;
  for (double e : grid) {
    uint64_t s = master.next();
    SolveResult r = solve_strong_ug(inst, e, variant, cfg, s);
    if (!have || r.fraction > best.fraction + 1e-12) {
      best = std::move(r);
      have = true;
    }
  }
  best.report.add("auto", true);
  return best;
}

}  // namespace sug
