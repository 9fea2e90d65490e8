#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "netregret/errors.hpp"
#include "netregret/graph.hpp"
#include "oracles.hpp"

using namespace netregret;

namespace {

std::vector<double> numeric_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.laplacian());
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + g.size());
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

void check_same(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

void check_edges(const Graph& g, oracle::Edges expected) {
  for (auto& e : expected)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(expected.begin(), expected.end());
  REQUIRE(g.edges().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(g.edges()[i] == expected[i]);
  for (int u = 0; u < g.size(); ++u)
    for (int v = 0; v < g.size(); ++v) {
      bool listed = std::find(expected.begin(), expected.end(), std::make_pair(std::min(u, v), std::max(u, v))) !=
                    expected.end();
      CHECK(g.has_edge(u, v) == (u != v && listed));
    }
}

}  // namespace

TEST_CASE("clique") {
  auto g3 = build_clique(3);
  CHECK(g3.edges().size() == 3);
  check_same(g3.spectrum().eigenvalues, {3, 3, 0}, 1e-12);
  auto g2 = build_clique(2);
  CHECK(g2.edges().size() == 1);
  check_same(g2.spectrum().eigenvalues, {2, 0}, 1e-12);
  auto g36 = build_clique(36);
  CHECK(g36.lambda1() == doctest::Approx(36.0));
  CHECK(g36.fiedler() == doctest::Approx(36.0));
  CHECK(g36.kappa() == doctest::Approx(1.0));
  check_same(g36.spectrum().eigenvalues, clique_eigenvalues(36), 1e-9);
  CHECK_THROWS_AS(build_clique(1), InvalidSizeError);
  check_edges(build_clique(4), {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("cycle") {
  auto c4 = build_cycle(4);
  check_same(c4.spectrum().eigenvalues, {4, 2, 2, 0}, 1e-12);
  check_same(c4.spectrum().eigenvalues, numeric_spectrum(c4), 1e-12);
  auto c8 = build_cycle(8);
  CHECK(c8.fiedler() == doctest::Approx(2 - 2 * std::cos(2 * std::numbers::pi / 8)));
  CHECK(c8.fiedler() == doctest::Approx(0.5858).epsilon(1e-4));
  for (int n = 3; n <= 40; ++n) {
    auto c = build_cycle(n);
    CHECK(c.fiedler() >= 8 * std::numbers::pi * std::numbers::pi / (5.0 * n * n));
    check_same(c.spectrum().eigenvalues, cycle_eigenvalues(n), 1e-9);
  }
  check_edges(build_cycle(5), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK_THROWS_AS(build_cycle(2), InvalidSizeError);
}

TEST_CASE("grid2d") {
  auto g2 = build_grid2d(2);
  check_same(g2.spectrum().eigenvalues, {4, 2, 2, 0}, 1e-12);
  CHECK(g2.kappa() == doctest::Approx(2.0));
  auto g6 = build_grid2d(6);
  CHECK(g6.lambda1() == doctest::Approx(4 - 4 * std::cos(5 * std::numbers::pi / 6)));
  CHECK(g6.fiedler() == doctest::Approx(2 - 2 * std::cos(std::numbers::pi / 6)));
  for (int m = 2; m <= 8; ++m) check_same(build_grid2d(m).spectrum().eigenvalues, grid2d_eigenvalues(m), 1e-9);
  // row-major: (i, j) -> 3i + j
  check_edges(build_grid2d(3), {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8},
                                {0, 3}, {3, 6}, {1, 4}, {4, 7}, {2, 5}, {5, 8}});
  CHECK((1 - std::cos(std::numbers::pi / 2)) / (2 - 2 * std::cos(std::numbers::pi / 2)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(build_grid2d(1), InvalidSizeError);
}

TEST_CASE("lattice") {
  auto l2 = build_lattice(2);
  for (int v = 0; v < 4; ++v) CHECK(l2.degree(v) == 2);
  check_same(l2.spectrum().eigenvalues, {4, 2, 2, 0}, 1e-12);
  auto l6 = build_lattice(6);
  CHECK(l6.edges().size() == 180);
  for (int v = 0; v < 36; ++v) CHECK(l6.degree(v) == 10);
  auto sr = lattice_parameters(6);
  CHECK(sr.r == doctest::Approx(4.0));
  CHECK(sr.s == doctest::Approx(-2.0));
  CHECK(l6.lambda1() == doctest::Approx(12.0));
  CHECK(l6.fiedler() == doctest::Approx(6.0));
  for (int m = 3; m <= 8; ++m) {
    auto g = build_lattice(m);
    auto p = lattice_parameters(m);
    CHECK(std::abs(g.lambda1() - p.lambda1()) < 1e-8);
    CHECK(std::abs(g.fiedler() - p.fiedler()) < 1e-8);
    // strong regularity: common neighbours m-2 when adjacent, 2 otherwise
    for (int u = 0; u < g.size(); ++u)
      for (int v = u + 1; v < g.size(); ++v) {
        int common = 0;
        for (int w = 0; w < g.size(); ++w) common += g.has_edge(u, w) && g.has_edge(v, w);
        CHECK(common == (g.has_edge(u, v) ? m - 2 : 2));
      }
  }
  check_edges(build_lattice(3), {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {6, 7}, {6, 8}, {7, 8},
                                 {0, 3}, {0, 6}, {3, 6}, {1, 4}, {1, 7}, {4, 7}, {2, 5}, {2, 8}, {5, 8}});
  CHECK_THROWS_AS(lattice_parameters(2), InvalidSizeError);
}

TEST_CASE("two cliques") {
  Rng rng(1);
  auto g = build_two_cliques(18, 1, rng);
  CHECK(g.edges().size() == 307);
  Rng rng2(2);
  auto small = build_two_cliques(2, 1, rng2);
  CHECK(small.edges().size() == 3);
  CHECK(small.fiedler() > 0);
  Rng rng3(3);
  auto full = build_two_cliques(3, 9, rng3);
  CHECK(full.edges().size() == 3 + 3 + 9);
  Rng rng4(4);
  CHECK_THROWS_AS(build_two_cliques(3, 10, rng4), InvalidParameterError);
  int cross = 0;
  Rng rng5(5);
  auto g5 = build_two_cliques(6, 7, rng5);
  for (auto [u, v] : g5.edges()) cross += (u < 6) != (v < 6);
  CHECK(cross == 7);
}

TEST_CASE("two cliques: mean fiedler grows with the bridge count") {
  std::vector<double> means;
  for (int bridges : {1, 2, 4, 8, 16}) {
    double s = 0;
    for (int seed = 0; seed < 20; ++seed) {
      Rng rng(hash_words({static_cast<std::uint64_t>(seed), 77}));
      s += build_two_cliques(18, bridges, rng).fiedler();
    }
    means.push_back(s / 20);
  }
  for (std::size_t i = 1; i < means.size(); ++i) CHECK(means[i] > means[i - 1]);
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(Graph(3, {{0, 1}}), DisconnectedGraphError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 1}, {1, 2}}), InvalidParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}, {1, 2}}), InvalidParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 3}}), InvalidParameterError);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(4, 4);
  lap << 1, -1, 0, 0, -1, 1, 0, 0, 0, 0, 1, -1, 0, 0, -1, 1;
  CHECK_THROWS_AS(spectrum_of_laplacian(lap), DisconnectedGraphError);
}

TEST_CASE("laplacian rows sum to zero and spectrum is nonnegative") {
  Rng rng(9);
  for (const Graph& g : {build_clique(7), build_cycle(9), build_grid2d(4), build_lattice(4),
                         build_two_cliques(5, 3, rng)}) {
    auto lap = g.laplacian();
    for (int i = 0; i < g.size(); ++i) CHECK(lap.row(i).sum() == 0.0);
    const auto& ev = g.spectrum().eigenvalues;
    CHECK(std::abs(ev.back()) < 1e-9);
    CHECK(ev[ev.size() - 2] > 1e-9);
    for (double x : ev) CHECK(x > -1e-9);
    CHECK(g.kappa() >= 1.0 - 1e-12);
  }
}

TEST_CASE("edge list round trip") {
  auto g = build_grid2d(3);
  std::stringstream ss;
  write_edge_list(ss, g);
  CHECK(ss.str().rfind("n=9\n", 0) == 0);
  auto h = read_edge_list(ss);
  CHECK(h.size() == 9);
  CHECK(h.edges() == g.edges());
  std::stringstream bad("0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad), IoError);
}
