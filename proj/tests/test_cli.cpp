#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include "sug/io.h"

namespace {

std::string tool() {
  const char* p = std::getenv("SUGTOOL_PATH");
  REQUIRE_MESSAGE(p != nullptr, "SUGTOOL_PATH must point at the sugtool binary");
  return p;
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "sugtool_cli_scratch";
  std::filesystem::create_directories(dir);
  return dir;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = tool() + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  RunResult r;
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Value of a line-anchored key=value pair, empty string when absent.
std::string value_of(const std::string& out, const std::string& key) {
  size_t pos = 0;
  while (pos < out.size()) {
    size_t end = out.find('\n', pos);
    if (end == std::string::npos) end = out.size();
    std::string line = out.substr(pos, end - pos);
    size_t eq = line.find('=');
    if (eq != std::string::npos && line.substr(0, eq) == key) return line.substr(eq + 1);
    pos = end + 1;
  }
  return "";
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

const char* kTriangle = "UG 2 3 3\n0 1 0 1\n1 2 0 1\n2 0 1 0\n";
const char* kWorkedHyp =
    "HYPUG 2 3 2\n2 3/4 0 1\n0 1\n1 0\n2 1/4 1 2\n1 0\n0 1\n";

}  // namespace

TEST_CASE("solve certifies the triangle and is deterministic") {
  sug::write_file(path("tri.ug"), kTriangle);
  std::string base = "solve --in " + path("tri.ug") + " --epsilon 0.34 --seed 7";
  auto r1 = run(base + " --out " + path("tri1.cert"));
  CHECK(r1.code == 0);
  CHECK(value_of(r1.out, "verified") == "true");
  CHECK(std::stod(value_of(r1.out, "fraction")) >= 1.0 / 3 - 1e-12);

  auto r2 = run(base + " --out " + path("tri2.cert"));
  CHECK(r2.out == r1.out);
  CHECK(sug::read_file(path("tri1.cert")) == sug::read_file(path("tri2.cert")));

  auto rj = run(base + " --json");
  CHECK(rj.code == 0);
  CHECK(rj.out.find("\"verified\": true") != std::string::npos);
}

TEST_CASE("generated instances verify and tampering is caught") {
  auto g = run("gen --n 40 --k 3 --deg 6 --eps 0.1 --seed 1 --out " + path("planted"));
  CHECK(g.code == 0);
  CHECK(value_of(g.out, "n") == "40");
  CHECK(value_of(g.out, "corrupted") == "4");

  auto v = run("verify --in " + path("planted.ug") + " --cert " + path("planted.cert"));
  CHECK(v.code == 0);
  CHECK(value_of(v.out, "satisfiable") == "true");
  CHECK(value_of(v.out, "fraction") == "0.9");

  // flip the first selected vertex's label to a different value
  std::string cert = sug::read_file(path("planted.cert"));
  size_t line = cert.find('\n') + 1;
  size_t space = cert.find(' ', line);
  char& label = cert[space + 1];
  label = label == '0' ? '1' : '0';
  sug::write_file(path("tampered.cert"), cert);
  auto t = run("verify --in " + path("planted.ug") + " --cert " + path("tampered.cert"));
  CHECK(t.code == 1);
  CHECK(value_of(t.out, "satisfiable") == "false");
  CHECK(!value_of(t.out, "violated_edge").empty());
  CHECK(!value_of(t.out, "violated_u").empty());

  sug::write_file(path("badrange.cert"), "CERT 1\n99 0\n");
  auto b = run("verify --in " + path("planted.ug") + " --cert " + path("badrange.cert"));
  CHECK(b.code == 2);
}

TEST_CASE("auto epsilon scan recovers a clean planted instance") {
  auto g = run("gen --n 12 --k 3 --deg 4 --eps 0 --seed 2 --out " + path("clean"));
  CHECK(g.code == 0);
  auto s = run("solve --in " + path("clean.ug") + " --auto --seed 11 --out " +
               path("clean.cert"));
  CHECK(s.code == 0);
  CHECK(value_of(s.out, "fraction") == "1");
  CHECK(value_of(s.out, "auto") == "true");
  auto v = run("verify --in " + path("clean.ug") + " --cert " + path("clean.cert"));
  CHECK(v.code == 0);
  CHECK(value_of(v.out, "fraction") == "1");
}

TEST_CASE("reduction stages compose through files") {
  sug::write_file(path("worked.hypug"), kWorkedHyp);
  auto u = run("reduce --stage uniformize --in " + path("worked.hypug") + " --out " +
               path("worked_u.hypug"));
  CHECK(u.code == 0);
  CHECK(value_of(u.out, "output_vertices") == "8");
  CHECK(value_of(u.out, "output_edges") == "16");
  CHECK(sug::read_file(path("worked_u.hypug")).rfind("HYPUG 2 8 16", 0) == 0);

  auto b = run("reduce --stage sbug --in " + path("worked_u.hypug") + " --out " +
               path("worked.sbug"));
  CHECK(b.code == 0);
  CHECK(value_of(b.out, "stage") == "bipartize");
  CHECK(value_of(b.out, "output_vertices") == "24");

  auto sp = run("reduce --stage sparsify --in " + path("worked.sbug") + " --out " +
                path("worked_sp.sbug") + " --seed 5 --ell 2");
  CHECK(sp.code == 0);
  CHECK(value_of(sp.out, "output_vertices") == "24");

  auto c = run("reduce --stage compose --in " + path("worked_sp.sbug") + " --out " +
               path("worked.ug"));
  CHECK(c.code == 0);
  CHECK(sug::read_file(path("worked.ug")).rfind("UG 2 16", 0) == 0);

  auto ch = run("reduce --stage chain --in " + path("worked.hypug") + " --out " +
                path("chain.ug") + " --seed 5 --ell 2");
  CHECK(ch.code == 0);
  CHECK(value_of(ch.out, "compose.output_vertices") == "16");
  CHECK(sug::read_file(path("chain.ug")) == sug::read_file(path("worked.ug")));

  sug::write_file(path("ntri.ug"), "UG 2 3 3\n0 1 1 0\n1 2 1 0\n2 0 1 0\n");
  auto oc = run("reduce --stage octify --in " + path("ntri.ug") + " --out " + path("ntri2.ug"));
  CHECK(oc.code == 0);
  CHECK(value_of(oc.out, "output_vertices") == "6");
  CHECK(value_of(oc.out, "output_edges") == "9");

  CHECK(run("reduce --stage sparsify --in " + path("worked.sbug") + " --out " +
            path("x.sbug"))
            .code == 2);
  CHECK(run("reduce --stage nosuch --in " + path("worked.hypug") + " --out " + path("x"))
            .code == 2);
}

TEST_CASE("oct deletes one vertex of an odd cycle") {
  sug::write_file(path("c5.graph"), "GRAPH 5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
  auto r = run("oct --in " + path("c5.graph") + " --epsilon 0.2 --seed 3 --out " +
               path("c5.cert"));
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "deleted_fraction") == "0.2");
  CHECK(value_of(r.out, "bipartite") == "true");
  CHECK(sug::read_file(path("c5.cert")).rfind("CERT 4", 0) == 0);
}

TEST_CASE("gadget-check certifies builtin and file expanders") {
  auto r = run("gadget-check --k 4 --eps 0.05 --expander complete");
  CHECK(r.code == 0);
  CHECK(value_of(r.out, "psd_ok") == "true");
  CHECK(value_of(r.out, "identity_ok") == "true");
  CHECK(value_of(r.out, "stationary_residual") == "0");

  sug::write_file(path("tri.graph"), "GRAPH 3 3\n0 1\n1 2\n2 0\n");
  auto f = run("gadget-check --k 3 --eps 1/10 --expander " + path("tri.graph"));
  CHECK(f.code == 0);
  CHECK(value_of(f.out, "expander_gap") == "1.5");
  CHECK(value_of(f.out, "psd_ok") == "true");

  CHECK(run("gadget-check --k 4 --eps 0.05 --expander " + path("tri.graph")).code == 2);
}

TEST_CASE("error paths map to documented exit codes") {
  sug::write_file(path("bad.ug"), "GARBAGE\n");
  CHECK(run("solve --in " + path("bad.ug") + " --epsilon 0.1 --seed 1").code == 2);
  CHECK(run("solve --in " + path("nonexistent.ug") + " --epsilon 0.1 --seed 1").code == 2);

  sug::write_file(path("tri.ug"), kTriangle);
  CHECK(run("solve --in " + path("tri.ug") + " --seed 1").code == 2);  // no epsilon
  CHECK(run("solve --in " + path("tri.ug") + " --epsilon 0.1").code == 2);  // no seed
  CHECK(run("nosuchcommand").code == 2);
  CHECK(run("--help").code == 0);

  auto g = run("gen --n 400 --k 3 --deg 4 --eps 0.1 --seed 1 --out " + path("big"));
  CHECK(g.code == 0);
  CHECK(run("solve --in " + path("big.ug") + " --epsilon 0.1 --seed 1").code == 3);
}
