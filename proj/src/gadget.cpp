#include "sug/gadget.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sug {
namespace {

constexpr long long kDenseCap = 1000000;
constexpr uint64_t kTrialStride = 0x9E3779B97F4A7C15ull;

long long dense_size(int n, int k) {
  long long dom = 1;
  for (int c = 0; c < n; ++c) {
    dom *= 2LL * k;
    if (dom > kDenseCap) throw CapError("long-code table would exceed 10^6 entries");
  }
  return dom;
}

// Little-endian odometer over {0..base-1}^n; false once every point is spent.
bool advance(std::vector<int>& point, int base) {
  for (int& digit : point) {
    if (++digit < base) return true;
    digit = 0;
  }
  return false;
}

}  // namespace

int MarkovGadget::shift_vertex(int v, int c) const {
  const int base = v < k ? 0 : k;
  int idx = (v - base + c) % k;
  if (idx < 0) idx += k;
  return base + idx;
}

int MarkovGadget::sample_stationary(Rng& rng) const {
  const double u = rng.uniform();
  for (int v = 0; v < size(); ++v)
    if (u < stationary_cdf[v]) return v;
  return size() - 1;
}

int MarkovGadget::sample_step(int v, Rng& rng) const {
  const double u = rng.uniform();
  for (int j = 0; j < size(); ++j)
    if (u < transition_cdf(v, j)) return j;
  return size() - 1;
}

std::vector<std::pair<int, int>> complete_expander(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) edges.push_back({i, j});
  return edges;
}

MarkovGadget build_gadget(int k, const Rational& eps,
                          const std::vector<std::pair<int, int>>& expander_edges) {
  if (k < 2) throw std::invalid_argument("gadget: k must be at least 2");
  if (!(eps > Rational(0)) || eps > Rational(1))
    throw std::invalid_argument("gadget: eps must lie in (0, 1]");
  std::vector<int> deg(k, 0);
  std::vector<bool> seen(static_cast<size_t>(k) * k, false);
  for (const auto& [a, b] : expander_edges) {
    if (a < 0 || a >= k || b < 0 || b >= k)
      throw std::invalid_argument("gadget: expander edge endpoint out of range");
    if (a == b) throw std::invalid_argument("gadget: expander edges must not be self-loops");
    if (seen[static_cast<size_t>(a) * k + b])
      throw std::invalid_argument("gadget: duplicate expander edge");
    seen[static_cast<size_t>(a) * k + b] = seen[static_cast<size_t>(b) * k + a] = true;
    ++deg[a];
    ++deg[b];
  }
  const int g = deg[0];
  for (int v = 0; v < k; ++v)
    if (deg[v] != g) throw std::invalid_argument("gadget: expander must be regular");
  if (g == 0) throw std::invalid_argument("gadget: expander must have positive degree");

  MarkovGadget m;
  m.k = k;
  m.eps = eps;
  m.expander_degree = g;
  m.expander_edges = expander_edges;

  const int N = 2 * k;
  const double e = eps.to_double();
  m.adjacency = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < k; ++i) {
    m.adjacency(i, i) = 1.0 - e;
    m.adjacency(i, k + i) = m.adjacency(k + i, i) = e;
    m.adjacency(k + i, k + i) = (g + 1) * e;
  }
  for (const auto& [a, b] : expander_edges)
    m.adjacency(k + a, k + b) = m.adjacency(k + b, k + a) = e;

  m.degrees = m.adjacency.rowwise().sum();
  m.transition = m.degrees.cwiseInverse().asDiagonal() * m.adjacency;

  const Rational sat = Rational(2 * (g + 1)) * eps;  // exact satellite degree
  const Rational total = Rational(k) * (Rational(1) + sat);
  m.stationary.resize(N);
  for (int i = 0; i < k; ++i) {
    m.stationary[i] = Rational(1) / total;
    m.stationary[k + i] = sat / total;
  }

  Eigen::MatrixXd walk = Eigen::MatrixXd::Zero(k, k);
  for (const auto& [a, b] : expander_edges) walk(a, b) = walk(b, a) = 1.0 / g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> walk_es(walk);
  m.expander_gap = 1.0 - walk_es.eigenvalues()(k - 2);

  Eigen::VectorXd isq = m.degrees.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd sym = isq.asDiagonal() * m.adjacency * isq.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const double scale = std::sqrt(m.degrees.sum());
  m.eigenvalues.resize(N);
  m.eigenfunctions.resize(N, N);
  for (int i = 0; i < N; ++i) {
    m.eigenvalues(i) = es.eigenvalues()(N - 1 - i);
    Eigen::VectorXd chi = scale * isq.cwiseProduct(es.eigenvectors().col(N - 1 - i));
    Eigen::Index arg = 0;
    chi.cwiseAbs().maxCoeff(&arg);
    if (chi(arg) < 0.0) chi = -chi;
    m.eigenfunctions.col(i) = chi;
  }

  m.stationary_cdf.resize(N);
  double acc = 0.0;
  for (int v = 0; v < N; ++v) {
    acc += m.stationary[v].to_double();
    m.stationary_cdf[v] = acc;
  }
  m.stationary_cdf[N - 1] = 1.0;
  m.transition_cdf.resize(N, N);
  for (int v = 0; v < N; ++v) {
    acc = 0.0;
    for (int j = 0; j < N; ++j) {
      acc += m.transition(v, j);
      m.transition_cdf(v, j) = acc;
    }
    m.transition_cdf(v, N - 1) = 1.0;
  }
  return m;
}

SpectralReport spectral_report(const MarkovGadget& m) {
  const int N = m.size();
  SpectralReport r;
  r.min_eigenvalue = m.eigenvalues(N - 1);
  r.psd_ok = r.min_eigenvalue >= -1e-9;
  double second = 0.0;
  for (int i = 1; i < N; ++i) second = std::max(second, std::abs(m.eigenvalues(i)));
  r.spectral_gap = 1.0 - second;
  Eigen::VectorXd mu(N);
  for (int v = 0; v < N; ++v) mu(v) = m.stationary[v].to_double();
  r.stationary_residual = (m.transition.transpose() * mu - mu).cwiseAbs().maxCoeff();
  const double e = m.eps.to_double();
  r.gap_bound = std::min(e / (10.0 * m.expander_degree), m.expander_gap * e / 24.0);
  r.report.add("k", m.k);
  r.report.add("eps", m.eps.to_string());
  r.report.add("expander_degree", m.expander_degree);
  r.report.add("expander_gap", m.expander_gap);
  r.report.add("psd_ok", r.psd_ok);
  r.report.add("min_eigenvalue", r.min_eigenvalue);
  r.report.add("stationary_residual", r.stationary_residual);
  r.report.add("spectral_gap", r.spectral_gap);
  r.report.add("gap_bound", r.gap_bound);
  if (r.spectral_gap < r.gap_bound - 1e-9)
    throw InternalError("gadget spectral gap fell below its guaranteed bound");
  return r;
}

IdentityCheck eigenfunction_identity_check(const MarkovGadget& m) {
  const int N = m.size();
  Eigen::VectorXd mu(N);
  for (int v = 0; v < N; ++v) mu(v) = m.stationary[v].to_double();
  const Eigen::MatrixXd& chi = m.eigenfunctions;
  const Eigen::MatrixXd stepped = m.transition * chi;
  const Eigen::MatrixXd one = chi.transpose() * mu.asDiagonal() * stepped;
  const Eigen::MatrixXd two = stepped.transpose() * mu.asDiagonal() * stepped;
  IdentityCheck c;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) {
        const double lam = m.eigenvalues(i);
        c.one_step_diag = std::max(c.one_step_diag, std::abs(one(i, i) - lam));
        c.two_step_diag = std::max(c.two_step_diag, std::abs(two(i, i) - lam * lam));
      } else {
        c.one_step_cross = std::max(c.one_step_cross, std::abs(one(i, j)));
        c.two_step_cross = std::max(c.two_step_cross, std::abs(two(i, j)));
      }
    }
  c.ok = c.one_step_diag <= 1e-9 && c.one_step_cross <= 1e-9 && c.two_step_diag <= 1e-9 &&
         c.two_step_cross <= 1e-9;
  c.report.add("one_step_diag", c.one_step_diag);
  c.report.add("one_step_cross", c.one_step_cross);
  c.report.add("two_step_diag", c.two_step_diag);
  c.report.add("two_step_cross", c.two_step_cross);
  c.report.add("ok", c.ok);
  return c;
}

int LongCode::eval(const std::vector<int>& point) const {
  if (dictator >= 0) return point[dictator] % k;
  long long idx = 0, stride = 1;
  for (int c = 0; c < n; ++c) {
    idx += stride * point[c];
    stride *= 2LL * k;
  }
  return table[static_cast<size_t>(idx)];
}

LongCode dictator_table(int i, int n, const MarkovGadget& m) {
  if (n < 1) throw std::invalid_argument("long code needs at least one coordinate");
  if (i < 0 || i >= n) throw std::invalid_argument("dictator coordinate out of range");
  LongCode f;
  f.n = n;
  f.k = m.k;
  f.dictator = i;
  return f;
}

LongCode densify(const LongCode& code) {
  const long long dom = dense_size(code.n, code.k);
  if (code.dictator < 0 && static_cast<long long>(code.table.size()) != dom)
    throw std::invalid_argument("long-code table size mismatch");
  LongCode out;
  out.n = code.n;
  out.k = code.k;
  out.table.reserve(static_cast<size_t>(dom));
  std::vector<int> point(code.n, 0);
  do {
    out.table.push_back(code.eval(point));
  } while (advance(point, 2 * code.k));
  return out;
}

LongCode fold(const LongCode& code, const MarkovGadget& m) {
  if (code.k != m.k) throw std::invalid_argument("code and gadget label counts differ");
  if (code.n < 1) throw std::invalid_argument("folding needs at least one coordinate");
  if (code.dictator >= 0) return code;  // dictators are their own folds
  const long long dom = dense_size(code.n, code.k);
  if (static_cast<long long>(code.table.size()) != dom)
    throw std::invalid_argument("long-code table size mismatch");
  LongCode out;
  out.n = code.n;
  out.k = code.k;
  out.table.reserve(static_cast<size_t>(dom));
  std::vector<int> point(code.n, 0), shifted(code.n);
  do {
    const int c = m.psi(point[0]);
    for (int j = 0; j < code.n; ++j) shifted[j] = m.shift_vertex(point[j], -c);
    out.table.push_back((code.eval(shifted) + c) % code.k);
  } while (advance(point, 2 * code.k));
  return out;
}

DictatorshipTestResult run_dictatorship_test(const MarkovGadget& m, const UGInstance& ug,
                                             const std::vector<LongCode>& codes, int d,
                                             double eta, int n, int trials, uint64_t seed) {
  if (ug.n < 1) throw std::invalid_argument("dictatorship test needs a nonempty game");
  if (n != ug.k) throw std::invalid_argument("coordinate count must equal the game alphabet");
  if (static_cast<int>(codes.size()) != ug.n)
    throw std::invalid_argument("need exactly one long code per game vertex");
  for (const LongCode& f : codes)
    if (f.n != n || f.k != m.k)
      throw std::invalid_argument("long code dimensions do not match the test");
  if (d < 1) throw std::invalid_argument("test arity d must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  if (trials < 1) throw std::invalid_argument("trials must be positive");

  // adj[v] holds each neighbor w with the coordinate map of the constraint
  // between them: the composed point reads coordinate perm[c] of y~.
  struct Nbr {
    int w;
    std::vector<int> perm;
  };
  std::vector<std::vector<Nbr>> adj(ug.n);
  for (const UGEdge& e : ug.edges) {
    adj[e.u].push_back({e.v, e.pi.inverse().image});
    adj[e.v].push_back({e.u, e.pi.image});
  }
  for (int v = 0; v < ug.n; ++v)
    if (adj[v].empty())
      throw std::invalid_argument("dictatorship test needs every vertex to have a neighbor");

  DictatorshipTestResult res;
  res.trials = trials;
  std::vector<int> x(n), ytilde(n), composed(n);
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed + kTrialStride * static_cast<uint64_t>(t));
    const int v = rng.index(ug.n);
    const std::vector<Nbr>& nb = adj[v];
    for (int c = 0; c < n; ++c) x[c] = m.sample_stationary(rng);
    bool agree = true;
    int first = 0;
    for (int j = 0; j < d; ++j) {
      const Nbr& w = nb[rng.index(static_cast<int>(nb.size()))];
      for (int c = 0; c < n; ++c) {
        int z = m.sample_step(x[c], rng);
        if (eta > 0.0 && rng.uniform() < eta) z = m.sample_step(z, rng);
        ytilde[c] = z;
      }
      for (int c = 0; c < n; ++c) composed[c] = ytilde[w.perm[c]];
      const int val = codes[w.w].eval(composed);
      if (j == 0) {
        first = val;
      } else if (val != first) {
        agree = false;
        break;
      }
    }
    res.accepted += agree;
  }
  res.acceptance = static_cast<double>(res.accepted) / trials;
  res.sigma_hat = std::sqrt(std::max(res.acceptance * (1.0 - res.acceptance), 0.0) / trials);
  res.report.add("vertices", ug.n);
  res.report.add("alphabet", n);
  res.report.add("gadget_k", m.k);
  res.report.add("d", d);
  res.report.add("eta", eta);
  res.report.add("trials", trials);
  res.report.add("accepted", res.accepted);
  res.report.add("acceptance", res.acceptance);
  res.report.add("sigma_hat", res.sigma_hat);
  res.report.add("ci95_low", std::max(0.0, res.acceptance - 1.96 * res.sigma_hat));
  res.report.add("ci95_high", std::min(1.0, res.acceptance + 1.96 * res.sigma_hat));
  return res;
}

}  // namespace sug
