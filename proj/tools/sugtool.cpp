// Command-line front end: solve unique-game and odd-cycle-transversal
// instances, generate planted instances, verify certificates, run instance
// reductions, and certify gadget chains. Exit codes: 0 success, 1 failed
// certificate verification, 2 parse or usage error, 3 size cap exceeded,
// 4 internal error (a self-check that should never fail).

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "sug/core.h"
#include "sug/gadget.h"
#include "sug/io.h"
#include "sug/oct.h"
#include "sug/reductions.h"
#include "sug/rounding.h"

namespace {

using namespace sug;

void emit_report(const Report& r, bool json, const std::string& report_path) {
  std::string text = json ? r.json() + "\n" : r.text();
  std::fputs(text.c_str(), stdout);
  if (!report_path.empty()) write_file(report_path, text);
}

SeparatorVariant parse_variant(const std::string& name) {
  if (name == "l22") return SeparatorVariant::L22;
  if (name == "l2l22") return SeparatorVariant::L2L22;
  if (name == "net") return SeparatorVariant::NET;
  throw std::invalid_argument("unknown separator variant: " + name);
}

void check_certificate_ranges(const UGInstance& g, const SolutionCertificate& cert) {
  if (cert.subset.size() != cert.labels.size())
    throw ParseError("certificate subset/label length mismatch");
  for (int v : cert.subset)
    if (v < 0 || v >= g.n) throw ParseError("certificate vertex out of range");
  for (int l : cert.labels)
    if (l < 0 || l >= g.k) throw ParseError("certificate label out of range");
}

struct SolveArgs {
  std::string in, out, report_path, variant = "l22";
  double epsilon = 0.0;
  bool auto_eps = false, epsilon_set = false, json = false;
  uint64_t seed = 0;
};

int cmd_solve(const SolveArgs& a) {
  if (!a.auto_eps && !a.epsilon_set)
    throw std::invalid_argument("solve needs --epsilon or --auto");
  UGInstance inst = parse_ug(read_file(a.in));
  SolveConfig cfg;
  SolveResult res = a.auto_eps
                        ? solve_strong_ug_auto(inst, parse_variant(a.variant), cfg, a.seed)
                        : solve_strong_ug(inst, a.epsilon, parse_variant(a.variant), cfg, a.seed);
  if (!a.out.empty()) write_file(a.out, serialize(res.certificate));
  emit_report(res.report, a.json, a.report_path);
  if (!res.verified) throw InternalError("emitted certificate failed verification");
  return 0;
}

struct OctArgs {
  std::string in, out, report_path;
  double epsilon = 0.0;
  bool auto_eps = false, epsilon_set = false, json = false;
  uint64_t seed = 0;
};

int cmd_oct(const OctArgs& a) {
  if (!a.auto_eps && !a.epsilon_set) throw std::invalid_argument("oct needs --epsilon or --auto");
  SimpleGraph g = parse_graph(read_file(a.in));
  SolveConfig cfg;
  OctResult res = a.auto_eps ? solve_oct_auto(g, cfg, a.seed)
                             : solve_oct(g, a.epsilon, cfg, a.seed);
  if (!a.out.empty()) {
    // the kept two-coloring as a certificate for the disequality encoding
    SolutionCertificate kept;
    for (int v = 0; v < g.n; ++v)
      if (res.coloring[v] >= 0) {
        kept.subset.push_back(v);
        kept.labels.push_back(res.coloring[v]);
      }
    kept.claimed_fraction = g.n > 0 ? 1.0 - res.fraction : 1.0;
    write_file(a.out, serialize(kept));
  }
  emit_report(res.report, a.json, a.report_path);
  return 0;
}

struct GenArgs {
  std::string out, report_path;
  int n = 0, k = 0, deg = 0;
  double eps = 0.0;
  bool json = false;
  uint64_t seed = 0;
};

int cmd_gen(const GenArgs& a) {
  Planted p = generate_planted(a.n, a.k, a.deg, a.eps, a.seed);
  write_file(a.out + ".ug", serialize(p.instance));
  write_file(a.out + ".cert", serialize(p.certificate));
  Report r;
  r.add("n", p.instance.n);
  r.add("k", p.instance.k);
  r.add("edges", static_cast<long long>(p.instance.edges.size()));
  r.add("corrupted", static_cast<long long>(p.corrupted.size()));
  r.add("planted_fraction", p.certificate.claimed_fraction);
  r.add("instance_file", a.out + ".ug");
  r.add("certificate_file", a.out + ".cert");
  emit_report(r, a.json, a.report_path);
  if (!induced_satisfiable(p.instance, p.certificate).satisfiable)
    throw InternalError("planted certificate failed verification");
  return 0;
}

struct VerifyArgs {
  std::string in, cert, report_path;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  UGInstance inst = parse_ug(read_file(a.in));
  SolutionCertificate cert = parse_cert(read_file(a.cert));
  check_certificate_ranges(inst, cert);
  InducedReport rep = induced_satisfiable(inst, cert);
  Report r;
  r.add("vertices", inst.n);
  r.add("edges", static_cast<long long>(inst.edges.size()));
  r.add("subset_size", static_cast<long long>(cert.subset.size()));
  r.add("fraction", inst.n > 0 ? static_cast<double>(cert.subset.size()) / inst.n : 1.0);
  r.add("satisfiable", rep.satisfiable);
  if (!rep.satisfiable) {
    const auto& e = inst.edges[rep.violated_edge];
    r.add("violated_edge", rep.violated_edge);
    r.add("violated_u", e.u);
    r.add("violated_v", e.v);
  }
  emit_report(r, a.json, a.report_path);
  return rep.satisfiable ? 0 : 1;
}

struct ReduceArgs {
  std::string stage, in, out, report_path;
  int ell = 0, cprime = 8;
  bool json = false, seed_set = false, ell_set = false;
  uint64_t seed = 0;
};

void add_trace(Report& r, const ReductionTrace& t, const std::string& prefix) {
  r.add(prefix + "stage", t.stage);
  r.add(prefix + "input_vertices", t.input_vertices);
  r.add(prefix + "output_vertices", t.output_vertices);
  r.add(prefix + "input_edges", t.input_edges);
  r.add(prefix + "output_edges", t.output_edges);
}

int cmd_reduce(const ReduceArgs& a) {
  Report r;
  std::string text = read_file(a.in);
  std::string serialized;
  auto need_sampling = [&] {
    if (!a.seed_set || !a.ell_set)
      throw std::invalid_argument("stage '" + a.stage + "' needs --seed and --ell");
  };
  if (a.stage == "uniformize") {
    auto res = uniformize_hypug(parse_hypug(text));
    add_trace(r, res.trace, "");
    serialized = serialize(res.instance);
  } else if (a.stage == "sbug") {
    auto res = hypug_to_sbug(parse_hypug(text));
    add_trace(r, res.trace, "");
    serialized = serialize(res.instance);
  } else if (a.stage == "sparsify") {
    need_sampling();
    auto res = sparsify_sbug(parse_sbug(text), a.ell, a.cprime, a.seed);
    add_trace(r, res.trace, "");
    serialized = serialize(res.instance);
  } else if (a.stage == "compose") {
    auto res = sbug_to_strong_ug(parse_sbug(text));
    add_trace(r, res.trace, "");
    serialized = serialize(res.instance);
  } else if (a.stage == "octify") {
    auto res = strong_ug_to_oct(parse_ug(text));
    add_trace(r, res.trace, "");
    serialized = serialize(res.instance);
  } else if (a.stage == "chain") {
    need_sampling();
    auto s1 = uniformize_hypug(parse_hypug(text));
    auto s2 = hypug_to_sbug(s1.instance);
    auto s3 = sparsify_sbug(s2.instance, a.ell, a.cprime, a.seed);
    auto s4 = sbug_to_strong_ug(s3.instance);
    add_trace(r, s1.trace, "uniformize.");
    add_trace(r, s2.trace, "sbug.");
    add_trace(r, s3.trace, "sparsify.");
    add_trace(r, s4.trace, "compose.");
    serialized = serialize(s4.instance);
  } else {
    throw std::invalid_argument("unknown reduction stage: " + a.stage);
  }
  write_file(a.out, serialized);
  r.add("out", a.out);
  emit_report(r, a.json, a.report_path);
  return 0;
}

struct GadgetArgs {
  std::string eps, expander = "complete", report_path;
  int k = 0;
  bool json = false;
};

int cmd_gadget_check(const GadgetArgs& a) {
  Rational eps = Rational::parse(a.eps);
  std::vector<std::pair<int, int>> edges;
  if (a.expander == "complete") {
    edges = complete_expander(a.k);
  } else {
    SimpleGraph g = parse_graph(read_file(a.expander));
    if (g.n != a.k)
      throw std::invalid_argument("expander file has " + std::to_string(g.n) +
                                  " vertices, expected k = " + std::to_string(a.k));
    edges = g.edges;
  }
  MarkovGadget m = build_gadget(a.k, eps, edges);
  SpectralReport sr = spectral_report(m);
  IdentityCheck ic = eigenfunction_identity_check(m);
  Report r;
  r.add("k", a.k);
  r.add("eps", eps.to_string());
  r.add("states", m.size());
  r.add("expander_degree", m.expander_degree);
  r.add("expander_gap", m.expander_gap);
  r.add("psd_ok", sr.psd_ok);
  r.add("min_eigenvalue", sr.min_eigenvalue);
  r.add("stationary_residual", sr.stationary_residual);
  r.add("spectral_gap", sr.spectral_gap);
  r.add("gap_bound", sr.gap_bound);
  r.add("identity_ok", ic.ok);
  r.add("one_step_diag", ic.one_step_diag);
  r.add("one_step_cross", ic.one_step_cross);
  r.add("two_step_diag", ic.two_step_diag);
  r.add("two_step_cross", ic.two_step_cross);
  emit_report(r, a.json, a.report_path);
  if (!sr.psd_ok || !ic.ok) throw InternalError("gadget certification failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong unique games toolkit"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve a unique-game instance");
  solve->add_option("--in", sa.in, "UG instance file")->required();
  auto* se = solve->add_option("--epsilon,--eps", sa.epsilon, "target corruption budget");
  solve->add_flag("--auto", sa.auto_eps, "scan the built-in epsilon grid")->excludes(se);
  solve->add_option("--seed", sa.seed, "random seed")->required();
  solve->add_option("--variant", sa.variant, "separator variant: l22, l2l22, net");
  solve->add_option("--out", sa.out, "write the certificate here");
  solve->add_option("--report", sa.report_path, "also write the report here");
  solve->add_flag("--json", sa.json, "emit the report as JSON");

  OctArgs oa;
  auto* oct = app.add_subcommand("oct", "odd cycle transversal of a graph");
  oct->add_option("--in", oa.in, "GRAPH file")->required();
  auto* oe = oct->add_option("--epsilon,--eps", oa.epsilon, "target deletion budget");
  oct->add_flag("--auto", oa.auto_eps, "scan the built-in epsilon grid")->excludes(oe);
  oct->add_option("--seed", oa.seed, "random seed")->required();
  oct->add_option("--out", oa.out, "write the kept two-coloring as a certificate");
  oct->add_option("--report", oa.report_path, "also write the report here");
  oct->add_flag("--json", oa.json, "emit the report as JSON");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a planted instance");
  gen->add_option("--n", ga.n, "vertices")->required();
  gen->add_option("--k", ga.k, "alphabet size")->required();
  gen->add_option("--deg", ga.deg, "target degree")->required();
  gen->add_option("--eps,--epsilon", ga.eps, "corrupted fraction")->required();
  gen->add_option("--seed", ga.seed, "random seed")->required();
  gen->add_option("--out", ga.out, "output prefix (.ug and .cert)")->required();
  gen->add_option("--report", ga.report_path, "also write the report here");
  gen->add_flag("--json", ga.json, "emit the report as JSON");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a certificate against an instance");
  verify->add_option("--in", va.in, "UG instance file")->required();
  verify->add_option("--cert", va.cert, "certificate file")->required();
  verify->add_option("--report", va.report_path, "also write the report here");
  verify->add_flag("--json", va.json, "emit the report as JSON");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "apply an instance reduction stage");
  reduce
      ->add_option("--stage", ra.stage,
                   "uniformize | sbug | sparsify | compose | octify | chain")
      ->required();
  reduce->add_option("--in", ra.in, "input instance file")->required();
  reduce->add_option("--out", ra.out, "output instance file")->required();
  auto* rs = reduce->add_option("--seed", ra.seed, "random seed (sampling stages)");
  auto* rl = reduce->add_option("--ell", ra.ell, "samples per right vertex (sampling stages)");
  reduce->add_option("--cprime", ra.cprime, "degree truncation factor");
  reduce->add_option("--report", ra.report_path, "also write the report here");
  reduce->add_flag("--json", ra.json, "emit the report as JSON");

  GadgetArgs gga;
  auto* gadget = app.add_subcommand("gadget-check", "certify a Markov chain gadget");
  gadget->add_option("--k", gga.k, "anchor count")->required();
  gadget->add_option("--eps", gga.eps, "leak probability (decimal or p/q)")->required();
  gadget->add_option("--expander", gga.expander, "'complete' or a GRAPH file on k vertices");
  gadget->add_option("--report", gga.report_path, "also write the report here");
  gadget->add_flag("--json", gga.json, "emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  sa.epsilon_set = se->count() > 0;
  oa.epsilon_set = oe->count() > 0;
  ra.seed_set = rs->count() > 0;
  ra.ell_set = rl->count() > 0;

  try {
    if (solve->parsed()) return cmd_solve(sa);
    if (oct->parsed()) return cmd_oct(oa);
    if (gen->parsed()) return cmd_gen(ga);
    if (verify->parsed()) return cmd_verify(va);
    if (reduce->parsed()) return cmd_reduce(ra);
    if (gadget->parsed()) return cmd_gadget_check(gga);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const CapError& e) {
    std::fprintf(stderr, "size cap: %s\n", e.what());
    return 3;
  } catch (const InternalError& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 2;
}
