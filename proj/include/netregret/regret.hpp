#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netregret/environment.hpp"
#include "netregret/simulation.hpp"

namespace netregret {

struct Comparator {
  Eigen::VectorXd x;
  double value = 0.0;  // sum over non-empty rounds of the network loss at x
};

/// Sum over non-empty rounds of (1/|S_t|) sum_{v in S_t} loss_t(v, .) as a
/// quadratic form, restricted to rounds [0, upto).
QuadraticForm cumulative_network_loss(const SimulationTrace& trace, long upto = -1);

/// Best fixed point in hindsight. Throws EmptyTraceError if no round had an
/// active agent.
Comparator comparator_solve(const SimulationTrace& trace);

struct Decomposition {
  double term_a = 0.0;
  double term_b = 0.0;
};

struct RegretReport {
  double realized_regret = 0.0;
  double cumulative_alg_loss = 0.0;
  Comparator comparator;
  std::map<std::string, double> bounds;
  std::optional<Decomposition> decomposition;
};

/// Network loss of the algorithm: sum_t (1/|S_t|) sum_{u in S_t}
/// (1/|S_t|) sum_{v in S_t} loss_t(v, x_t(u)).
double cumulative_alg_loss(const SimulationTrace& trace);

RegretReport network_regret(const SimulationTrace& trace);

/// Regret of every prefix t = 1..T, each against its own comparator.
std::vector<double> regret_series(const SimulationTrace& trace);

/// Replays the trace with the averaged dual zbar (zbar_{t+1} = zbar_t +
/// (1/N) sum_{v in S_t} s_t g_t(v), s_t the update scale of the round) and
/// accumulates
///   A = 3 sum_t sum_{u in S_t} L ||x_t(u) - xbar_t|| / |S_t|
///   B = sum_t sum_{v in S_t} <g_t(v), xbar_t - x*> / |S_t|
/// with xbar_t = ftrl_predict(zbar_t) and L = env lipschitz().
Decomposition decomposition_diagnostic(const SimulationTrace& trace, const Eigen::VectorXd& x_star);

struct BoundParams {
  int n = 1;
  long horizon = 1;
  double eta = 1.0;
  double d = 1.0;  // sqrt of D^2
  double l = 1.0;
  double mu = 1.0;
  double pbar = 1.0;
  double sigma_sq = 0.0;
  double pmin = 1.0;
  double p = 1.0;
  double q = 1.0;
  double rho = 0.0;
  double delta = 0.05;
  double kappa = 1.0;
};

/// Keys: first_bound, second_bound, third_bound, hp_bound, erdos_bound,
/// rate_diffp. Throws SpectralGapError when rho >= 1.
std::map<std::string, double> eval_bounds(const BoundParams& bp);

/// ((N - M + 1) D L / (2N)) sqrt(M T) with N = 4M.
double lower_bound_floor(int block, long horizon, double diameter, double lipschitz);

}  // namespace netregret
