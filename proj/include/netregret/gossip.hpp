#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netregret/activation.hpp"
#include "netregret/graph.hpp"

namespace netregret {

struct GossipMatrix {
  Eigen::MatrixXd w;
};

/// Default gossip step 1/lambda1(g).
double default_step(const Graph& g);

/// W = I - b Lap(S_t, E_t). Requires 0 < b <= 1/lambda1(g).
GossipMatrix build_gossip(const Graph& g, const RoundActivation& round, double b);

/// Returns an empty string when W is doubly stochastic (row and column sums
/// within tol), symmetric, nonnegative, zero off the active edges and the
/// identity on inactive rows; otherwise a description of the first failure.
std::string verify_gossip(const GossipMatrix& gm, const Graph& g, const RoundActivation& round,
                          double tol = 1e-12);

/// Exact rho^2 for uniform activation p, edge survival q and b = 1/lambda1.
double rho_closed_form(const Graph& g, double p, double q = 1.0);

/// 1 - b * pmin^2 * q * fiedler(g).
double rho_upper_bound(const Graph& g, double pmin, double b, double q = 1.0);

/// Second eigenvalue of a symmetric matrix that has the all-ones vector as an
/// eigenvector with eigenvalue 1 (evaluated on the complement of 1).
double second_eigenvalue(const Eigen::MatrixXd& m);

/// lambda_2 of the sample mean of W_i^2 over `draws` independent rounds.
/// Draw i uses the generator seeded with round_seed(seed, i).
double rho_empirical(const Graph& g, const ActivationModel& model, double b, int draws,
                     std::uint64_t seed);

struct RhoReport {
  std::optional<double> rho_sq_exact;
  double rho_sq_upper = 0.0;
  double rho_sq_empirical = 0.0;
  int draws = 0;
  double b = 0.0;
  double rho_over_gap = 0.0;  // rho / (1 - rho), exact when available
};

RhoReport rho_report(const Graph& g, const ActivationModel& model, double b, int draws,
                     std::uint64_t seed);

struct ContractionResult {
  std::vector<double> mean_sq_deviation;  // index l-1 for lag l
  std::vector<double> rho_pow;            // rho^(2l)
  int samples = 0;
};

/// Estimates E || W_l ... W_1 e_v - 1/N ||^2 for l = 1..horizon. Sample s uses
/// an independent chain seeded by round_seed(seed, s).
ContractionResult contraction_check(const Graph& g, const ActivationModel& model, double b, int v,
                                    int horizon, int samples, std::uint64_t seed, double rho_sq);

}  // namespace netregret
