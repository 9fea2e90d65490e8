#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "netregret/activation.hpp"
#include "netregret/environment.hpp"
#include "netregret/graph.hpp"
#include "netregret/learners.hpp"

namespace netregret {

struct RoundRecord {
  std::vector<int> active;         // S_t, ascending
  Eigen::MatrixXd predictions;     // |S_t| x d, row i belongs to active[i]
  Eigen::MatrixXd gradients;       // raw gradients at the predictions
  std::vector<double> local_losses;
  double gradient_scale = 1.0;     // factor applied to the gradients in the dual update
};

struct SimulationTrace {
  std::shared_ptr<const LossOracle> env;
  int agents = 0;
  long horizon = 0;
  double eta = 0.0;
  Regularizer reg;
  Algorithm algorithm = Algorithm::dftrl;
  std::vector<RoundRecord> rounds;  // one per t, empty rounds carry no rows
};

/// Draws S_t, E_t for t = 0..T-1; round t uses round_seed(stream_seed, t).
std::vector<RoundActivation> sample_trace(const ActivationModel& model, const Graph& g, long horizon,
                                          std::uint64_t stream_seed);

/// Runs one learner on a fixed activation trace.
SimulationTrace simulate(std::shared_ptr<const LossOracle> env, const Graph& g,
                         const std::vector<RoundActivation>& activations, Algorithm algorithm,
                         double eta, double b);

}  // namespace netregret
