#pragma once
#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "sug/core.h"
#include "sug/labelext.h"

namespace sug {

// Text formats. All files are whitespace-separated tokens beginning with a
// format tag. Weights are decimal fractions; exact "p/q" tokens are accepted
// and emitted for weights with no finite decimal expansion.
//
//   UG k n m        then m lines: u v p_0 .. p_{k-1}
//   HYPUG k n m     then per hyperedge: d w v_1 .. v_d, then d permutation rows
//   SBUG k nl nr m  then m lines: u v p_0 .. p_{k-1}, then nl measure tokens
//   CERT s          then s lines: v label
//   GRAPH n m       then m lines: u v
//   HG nv ne        then ne lines: arity weight v_1 .. v_arity
//   SDP r nv        then nv lines: id x_1 .. x_r

UGInstance parse_ug(std::istream& in);
HypUGInstance parse_hypug(std::istream& in);
SBUGInstance parse_sbug(std::istream& in);
SolutionCertificate parse_cert(std::istream& in);
SimpleGraph parse_graph(std::istream& in);
Eigen::MatrixXd parse_vectors(std::istream& in);

UGInstance parse_ug(const std::string& text);
HypUGInstance parse_hypug(const std::string& text);
SBUGInstance parse_sbug(const std::string& text);
SolutionCertificate parse_cert(const std::string& text);
SimpleGraph parse_graph(const std::string& text);
Eigen::MatrixXd parse_vectors(const std::string& text);

std::string serialize(const UGInstance& g);
std::string serialize(const HypUGInstance& h);
std::string serialize(const SBUGInstance& b);
std::string serialize(const SolutionCertificate& c);
std::string serialize(const SimpleGraph& g);
std::string serialize(const WeightedHypergraph& h);
std::string serialize_vectors(const Eigen::MatrixXd& vectors);

// Ordered key=value report, emitted as plain text or JSON.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long long value);
  void add(const std::string& key, int value) { add(key, static_cast<long long>(value)); }
  void add(const std::string& key, bool value);

  std::string text() const;
  std::string json() const;

 private:
  struct Entry {
    std::string key, value;
    bool quoted;
  };
  std::vector<Entry> entries_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// First token of a file ("UG", "CERT", ...), empty string if none.
std::string sniff_format(const std::string& text);

}  // namespace sug
