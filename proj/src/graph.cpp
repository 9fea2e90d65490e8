#include "netregret/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <queue>
#include <sstream>

#include "netregret/errors.hpp"

namespace netregret {

Graph::Graph(int n, std::vector<Edge> edges, std::string label)
    : n_(n), adj_(n > 0 ? n : 0), label_(std::move(label)) {
  if (n < 1) throw InvalidSizeError("graph needs at least one node");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidParameterError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range for n=" + std::to_string(n));
    if (u == v) throw InvalidParameterError("self-loop at node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw InvalidParameterError("duplicate edge");
  edges_ = std::move(edges);
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());

  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int v : adj_[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
  }
  if (reached != n)
    throw DisconnectedGraphError("graph is disconnected (" + std::to_string(reached) + " of " +
                                 std::to_string(n) + " nodes reachable from 0)");
  if (n == 1) {
    spectrum_.eigenvalues = {0.0};
    return;
  }
  spectrum_ = spectrum_of_laplacian(laplacian());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

Eigen::MatrixXd Graph::laplacian() const {
  Eigen::MatrixXi lap = Eigen::MatrixXi::Zero(n_, n_);
  for (auto [u, v] : edges_) {
    lap(u, v) -= 1;
    lap(v, u) -= 1;
    lap(u, u) += 1;
    lap(v, v) += 1;
  }
  return lap.cast<double>();
}

SpectralSummary spectrum_of_laplacian(const Eigen::MatrixXd& lap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InvalidParameterError("eigen-solve failed");
  const auto& ev = es.eigenvalues();  // ascending
  SpectralSummary s;
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
  const int n = static_cast<int>(ev.size());
  if (n >= 2 && std::abs(ev(1)) <= kZeroEigenTol)
    throw DisconnectedGraphError("Laplacian has a repeated zero eigenvalue");
  s.lambda1 = ev(n - 1);
  s.fiedler = n >= 2 ? ev(1) : 0.0;
  s.kappa = s.fiedler > 0 ? s.lambda1 / s.fiedler : 0.0;
  return s;
}

Graph build_clique(int n) {
  if (n < 2) throw InvalidSizeError("clique needs n >= 2");
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e), "clique:" + std::to_string(n));
}

Graph build_cycle(int n) {
  if (n < 3) throw InvalidSizeError("cycle needs n >= 3");
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
  return Graph(n, std::move(e), "cycle:" + std::to_string(n));
}

Graph build_grid2d(int m) {
  if (m < 2) throw InvalidSizeError("grid2d needs m >= 2");
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = i * m + j;
      if (j + 1 < m) e.emplace_back(v, v + 1);
      if (i + 1 < m) e.emplace_back(v, v + m);
    }
  return Graph(m * m, std::move(e), "grid2d:" + std::to_string(m));
}

Graph build_lattice(int m) {
  if (m < 2) throw InvalidSizeError("lattice needs m >= 2");
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = i * m + j;
      for (int jj = j + 1; jj < m; ++jj) e.emplace_back(v, i * m + jj);
      for (int ii = i + 1; ii < m; ++ii) e.emplace_back(v, ii * m + j);
    }
  return Graph(m * m, std::move(e), "lattice:" + std::to_string(m));
}

Graph build_two_cliques(int half, int bridges, Rng& rng) {
  if (half < 2) throw InvalidSizeError("two_cliques needs half >= 2");
  if (bridges < 1 || static_cast<long>(bridges) > static_cast<long>(half) * half)
    throw InvalidParameterError("bridges must lie in [1, half^2]");
  std::vector<Edge> e;
  for (int block = 0; block < 2; ++block)
    for (int u = 0; u < half; ++u)
      for (int v = u + 1; v < half; ++v) e.emplace_back(block * half + u, block * half + v);
  // Partial Fisher-Yates over the half*half candidate cross pairs.
  std::vector<int> cand(static_cast<std::size_t>(half) * half);
  for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = static_cast<int>(i);
  for (int k = 0; k < bridges; ++k) {
    std::size_t j = k + rng.below(cand.size() - k);
    std::swap(cand[k], cand[j]);
    e.emplace_back(cand[k] / half, half + cand[k] % half);
  }
  return Graph(2 * half, std::move(e),
               "two_cliques:" + std::to_string(half) + ":" + std::to_string(bridges));
}

std::vector<double> clique_eigenvalues(int n) {
  std::vector<double> ev(n, static_cast<double>(n));
  ev.back() = 0.0;
  return ev;
}

std::vector<double> cycle_eigenvalues(int n) {
  std::vector<double> ev;
  for (int k = 0; k < n; ++k) ev.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n));
  std::sort(ev.rbegin(), ev.rend());
  ev.back() = 0.0;
  return ev;
}

std::vector<double> path_eigenvalues(int m) {
  std::vector<double> ev;
  for (int i = 0; i < m; ++i)
    ev.push_back(2.0 * (1.0 - std::cos(std::numbers::pi * (m - 1 - i) / m)));
  return ev;  // i = 0 gives the largest, i = m-1 gives 0
}

std::vector<double> grid2d_eigenvalues(int m) {
  auto mu = path_eigenvalues(m);
  std::vector<double> ev;
  for (double a : mu)
    for (double b : mu) ev.push_back(a + b);
  std::sort(ev.rbegin(), ev.rend());
  ev.back() = 0.0;
  return ev;
}

StronglyRegular strongly_regular(double k, double m, double n) {
  StronglyRegular sr{k, m, n, 0, 0};
  double disc = std::sqrt((m - n) * (m - n) + 4.0 * (k - n));
  sr.r = (m - n + disc) / 2.0;
  sr.s = (m - n - disc) / 2.0;
  return sr;
}

StronglyRegular lattice_parameters(int m) {
  if (m < 3) throw InvalidSizeError("strongly-regular form of the lattice needs m >= 3");
  return strongly_regular(2.0 * m - 2.0, m - 2.0, 2.0);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n=" << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in, std::string label) {
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (n < 0) {
      if (line.compare(first, 2, "n=") != 0)
        throw IoError("edge list: expected header n=<N> on line " + std::to_string(lineno));
      n = std::stoi(line.substr(first + 2));
      continue;
    }
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u >> v)) throw IoError("edge list: bad pair on line " + std::to_string(lineno));
    edges.emplace_back(u, v);
  }
  if (n < 0) throw IoError("edge list: missing header n=<N>");
  return Graph(n, std::move(edges), std::move(label));
}

}  // namespace netregret
