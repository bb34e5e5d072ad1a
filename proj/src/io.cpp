#include "sug/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sug {

namespace {

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError(std::string("unexpected end of input, expected ") + what);
  return tok;
}

long long next_int(std::istream& in, const char* what) {
  std::string tok = next_token(in, what);
  try {
    size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad integer '") + tok + "' for " + what);
  }
}

Rational next_rational(std::istream& in, const char* what) {
  std::string tok = next_token(in, what);
  try {
    return Rational::parse(tok);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad number '") + tok + "' for " + what);
  }
}

double next_double(std::istream& in, const char* what) {
  std::string tok = next_token(in, what);
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad number '") + tok + "' for " + what);
  }
}

void expect_tag(std::istream& in, const char* tag) {
  std::string tok = next_token(in, tag);
  if (tok != tag) throw ParseError(std::string("expected '") + tag + "' header, got '" + tok + "'");
}

Permutation read_permutation(std::istream& in, int k) {
  std::vector<int> img(k);
  for (int i = 0; i < k; ++i) img[i] = static_cast<int>(next_int(in, "permutation entry"));
  Permutation p(std::move(img));
  if (!p.valid()) throw ParseError("constraint row is not a permutation");
  return p;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

UGInstance parse_ug(std::istream& in) {
  expect_tag(in, "UG");
  UGInstance g;
  g.k = static_cast<int>(next_int(in, "k"));
  g.n = static_cast<int>(next_int(in, "n"));
  long long m = next_int(in, "edge count");
  if (g.k < 1 || g.n < 0 || m < 0) throw ParseError("bad UG header sizes");
  for (long long i = 0; i < m; ++i) {
    UGEdge e;
    e.u = static_cast<int>(next_int(in, "edge endpoint"));
    e.v = static_cast<int>(next_int(in, "edge endpoint"));
    e.pi = read_permutation(in, g.k);
    g.edges.push_back(std::move(e));
  }
  auto errs = validate_instance(g);
  if (!errs.empty()) throw ParseError("invalid UG instance: " + errs.front());
  return g;
}

HypUGInstance parse_hypug(std::istream& in) {
  expect_tag(in, "HYPUG");
  HypUGInstance h;
  h.k = static_cast<int>(next_int(in, "k"));
  h.n = static_cast<int>(next_int(in, "n"));
  long long m = next_int(in, "hyperedge count");
  if (h.k < 1 || h.n < 0 || m < 0) throw ParseError("bad HYPUG header sizes");
  for (long long i = 0; i < m; ++i) {
    HypUGEdge e;
    int d = static_cast<int>(next_int(in, "hyperedge arity"));
    if (d < 1) throw ParseError("hyperedge arity must be positive");
    e.weight = next_rational(in, "hyperedge weight");
    e.vertices.resize(d);
    for (int j = 0; j < d; ++j) e.vertices[j] = static_cast<int>(next_int(in, "hyperedge vertex"));
    for (int j = 0; j < d; ++j) e.pis.push_back(read_permutation(in, h.k));
    h.hyperedges.push_back(std::move(e));
  }
  auto errs = validate_instance(h);
  if (!errs.empty()) throw ParseError("invalid HYPUG instance: " + errs.front());
  return h;
}

SBUGInstance parse_sbug(std::istream& in) {
  expect_tag(in, "SBUG");
  SBUGInstance b;
  b.k = static_cast<int>(next_int(in, "k"));
  b.n_left = static_cast<int>(next_int(in, "left size"));
  b.n_right = static_cast<int>(next_int(in, "right size"));
  long long m = next_int(in, "edge count");
  if (b.k < 1 || b.n_left < 0 || b.n_right < 0 || m < 0) throw ParseError("bad SBUG header sizes");
  for (long long i = 0; i < m; ++i) {
    SBUGEdge e;
    e.u = static_cast<int>(next_int(in, "left endpoint"));
    e.v = static_cast<int>(next_int(in, "right endpoint"));
    e.pi = read_permutation(in, b.k);
    b.edges.push_back(std::move(e));
  }
  for (int i = 0; i < b.n_left; ++i) b.mu.push_back(next_rational(in, "left measure"));
  auto errs = validate_instance(b);
  if (!errs.empty()) throw ParseError("invalid SBUG instance: " + errs.front());
  return b;
}

SolutionCertificate parse_cert(std::istream& in) {
  expect_tag(in, "CERT");
  SolutionCertificate c;
  long long s = next_int(in, "certificate size");
  if (s < 0) throw ParseError("bad CERT header");
  for (long long i = 0; i < s; ++i) {
    c.subset.push_back(static_cast<int>(next_int(in, "certificate vertex")));
    c.labels.push_back(static_cast<int>(next_int(in, "certificate label")));
  }
  for (size_t i = 1; i < c.subset.size(); ++i)
    if (c.subset[i] <= c.subset[i - 1]) throw ParseError("certificate vertices must be increasing");
  return c;
}

SimpleGraph parse_graph(std::istream& in) {
  expect_tag(in, "GRAPH");
  SimpleGraph g;
  g.n = static_cast<int>(next_int(in, "n"));
  long long m = next_int(in, "edge count");
  if (g.n < 0 || m < 0) throw ParseError("bad GRAPH header");
  for (long long i = 0; i < m; ++i) {
    int u = static_cast<int>(next_int(in, "edge endpoint"));
    int v = static_cast<int>(next_int(in, "edge endpoint"));
    if (u < 0 || u >= g.n || v < 0 || v >= g.n) throw ParseError("graph edge endpoint out of range");
    if (u == v) throw ParseError("self-loops are not allowed in graphs");
    g.edges.emplace_back(u, v);
  }
  return g;
}

Eigen::MatrixXd parse_vectors(std::istream& in) {
  expect_tag(in, "SDP");
  int r = static_cast<int>(next_int(in, "dimension"));
  int nv = static_cast<int>(next_int(in, "vector count"));
  if (r < 0 || nv < 0) throw ParseError("bad SDP header");
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(nv, r);
  for (int i = 0; i < nv; ++i) {
    int id = static_cast<int>(next_int(in, "vector id"));
    if (id < 0 || id >= nv) throw ParseError("vector id out of range");
    for (int j = 0; j < r; ++j) vectors(id, j) = next_double(in, "vector entry");
  }
  return vectors;
}

#define SUG_STRING_OVERLOAD(type, fn)            \
  type fn(const std::string& text) {             \
    std::istringstream in(text);                 \
    return fn(in);                               \
  }
SUG_STRING_OVERLOAD(UGInstance, parse_ug)
SUG_STRING_OVERLOAD(HypUGInstance, parse_hypug)
SUG_STRING_OVERLOAD(SBUGInstance, parse_sbug)
SUG_STRING_OVERLOAD(SolutionCertificate, parse_cert)
SUG_STRING_OVERLOAD(SimpleGraph, parse_graph)
SUG_STRING_OVERLOAD(Eigen::MatrixXd, parse_vectors)
#undef SUG_STRING_OVERLOAD

std::string serialize(const UGInstance& g) {
  std::ostringstream out;
  out << "UG " << g.k << ' ' << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& e : g.edges) {
    out << e.u << ' ' << e.v;
    for (int i = 0; i < g.k; ++i) out << ' ' << e.pi(i);
    out << '\n';
  }
  return out.str();
}

std::string serialize(const HypUGInstance& h) {
  std::ostringstream out;
  out << "HYPUG " << h.k << ' ' << h.n << ' ' << h.hyperedges.size() << '\n';
  for (const auto& e : h.hyperedges) {
    out << e.vertices.size() << ' ' << e.weight.to_string();
    for (int v : e.vertices) out << ' ' << v;
    out << '\n';
    for (const auto& p : e.pis) {
      for (int i = 0; i < h.k; ++i) out << (i ? " " : "") << p(i);
      out << '\n';
    }
  }
  return out.str();
}

std::string serialize(const SBUGInstance& b) {
  std::ostringstream out;
  out << "SBUG " << b.k << ' ' << b.n_left << ' ' << b.n_right << ' ' << b.edges.size() << '\n';
  for (const auto& e : b.edges) {
    out << e.u << ' ' << e.v;
    for (int i = 0; i < b.k; ++i) out << ' ' << e.pi(i);
    out << '\n';
  }
  for (int i = 0; i < b.n_left; ++i) out << (i ? " " : "") << b.mu[i].to_string();
  if (b.n_left) out << '\n';
  return out.str();
}

std::string serialize(const SolutionCertificate& c) {
  std::ostringstream out;
  out << "CERT " << c.subset.size() << '\n';
  for (size_t i = 0; i < c.subset.size(); ++i)
    out << c.subset[i] << ' ' << c.labels[i] << '\n';
  return out.str();
}

std::string serialize(const SimpleGraph& g) {
  std::ostringstream out;
  out << "GRAPH " << g.n << ' ' << g.edges.size() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

std::string serialize(const WeightedHypergraph& h) {
  std::ostringstream out;
  out << "HG " << h.num_vertices << ' ' << h.edges.size() << '\n';
  for (size_t j = 0; j < h.edges.size(); ++j) {
    out << h.edges[j].size() << ' ' << fmt_double(h.weight[j]);
    for (int v : h.edges[j]) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

std::string serialize_vectors(const Eigen::MatrixXd& vectors) {
  std::ostringstream out;
  out << "SDP " << vectors.cols() << ' ' << vectors.rows() << '\n';
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) out << ' ' << fmt_double(vectors(i, j));
    out << '\n';
  }
  return out.str();
}

void Report::add(const std::string& key, const std::string& value) {
  entries_.push_back({key, value, true});
}

void Report::add(const std::string& key, const char* value) { add(key, std::string(value)); }

void Report::add(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  entries_.push_back({key, buf, false});
}

void Report::add(const std::string& key, long long value) {
  entries_.push_back({key, std::to_string(value), false});
}

void Report::add(const std::string& key, bool value) {
  entries_.push_back({key, value ? "true" : "false", false});
}

std::string Report::text() const {
  std::string out;
  for (const auto& e : entries_) out += e.key + "=" + e.value + "\n";
  return out;
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  for (const auto& e : entries_) {
    if (e.quoted) {
      j[e.key] = e.value;
    } else if (e.value == "true" || e.value == "false") {
      j[e.key] = (e.value == "true");
    } else {
      try {
        size_t pos = 0;
        if (e.value.find_first_of(".eE") == std::string::npos) {
          long long v = std::stoll(e.value, &pos);
          if (pos == e.value.size()) {
            j[e.key] = v;
            continue;
          }
        }
        double v = std::stod(e.value, &pos);
        j[e.key] = pos == e.value.size() ? nlohmann::ordered_json(v)
                                         : nlohmann::ordered_json(e.value);
      } catch (const std::exception&) {
        j[e.key] = e.value;
      }
    }
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string sniff_format(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  if (in >> tok) return tok;
  return "";
}

}  // namespace sug
