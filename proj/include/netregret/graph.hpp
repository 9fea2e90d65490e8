#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "netregret/rng.hpp"

namespace netregret {

using Edge = std::pair<int, int>;  // always stored with first < second

struct SpectralSummary {
  std::vector<double> eigenvalues;  // descending
  double lambda1 = 0.0;
  double fiedler = 0.0;
  double kappa = 0.0;
};

inline constexpr double kZeroEigenTol = 1e-9;

/// Connected undirected simple graph. Edges are normalized to (min, max) and
/// kept sorted; that order is the canonical order used for edge sampling.
/// The spectrum is computed once at construction.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges, std::string label = "");

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  bool has_edge(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  /// D - A built from integer degree/adjacency counts.
  Eigen::MatrixXd laplacian() const;

  const SpectralSummary& spectrum() const { return spectrum_; }
  double lambda1() const { return spectrum_.lambda1; }
  double fiedler() const { return spectrum_.fiedler; }
  double kappa() const { return spectrum_.kappa; }

  const std::string& label() const { return label_; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  SpectralSummary spectrum_;
  std::string label_;
};

Graph build_clique(int n);
Graph build_cycle(int n);
Graph build_grid2d(int m);
/// m x m rook graph: (i, j) adjacent to every node in row i and column j.
Graph build_lattice(int m);
/// Two cliques {0..half-1}, {half..2half-1} plus `bridges` distinct cross
/// edges drawn uniformly without replacement.
Graph build_two_cliques(int half, int bridges, Rng& rng);

/// Eigen-solve of a Laplacian. Throws DisconnectedGraphError when more than
/// one eigenvalue is within kZeroEigenTol of zero.
SpectralSummary spectrum_of_laplacian(const Eigen::MatrixXd& lap);

// Closed-form Laplacian spectra, descending.
std::vector<double> clique_eigenvalues(int n);
std::vector<double> cycle_eigenvalues(int n);
std::vector<double> path_eigenvalues(int m);
std::vector<double> grid2d_eigenvalues(int m);

struct StronglyRegular {
  double k = 0, m = 0, n = 0;  // degree, common neighbours adjacent / non-adjacent
  double r = 0, s = 0;         // adjacency eigenvalues other than k
  double lambda1() const { return k - s; }
  double fiedler() const { return k - r; }
};

StronglyRegular strongly_regular(double k, double m, double n);
/// Parameters of the m x m rook graph (k = 2m-2, m' = m-2, n' = 2). Requires m >= 3.
StronglyRegular lattice_parameters(int m);

void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in, std::string label = "");

}  // namespace netregret
