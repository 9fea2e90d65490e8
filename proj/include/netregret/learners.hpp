#pragma once

#include <string>

#include <Eigen/Dense>

#include "netregret/activation.hpp"
#include "netregret/gossip.hpp"

namespace netregret {

/// psi(x) = 0.5 ||x||^2 on the ball of radius R (strong convexity mu = 1).
struct Regularizer {
  double radius = 1.0;
  double mu = 1.0;
  /// max psi - min psi over the ball.
  double diameter_sq() const { return 0.5 * radius * radius; }
};

/// argmin_{||x|| <= R} <z, x> + psi(x) / eta = -eta z clipped to the ball.
Eigen::VectorXd ftrl_predict(const Eigen::VectorXd& z, double eta, const Regularizer& reg);

enum class Algorithm { dftrl, dftrl_known_st, dogd };
enum class EtaRule { explicit_value, experiment_dftrl, experiment_dogd, theory_third_bound,
                     theory_general_pmin };

Algorithm parse_algorithm(const std::string& name);
std::string to_string(Algorithm a);
EtaRule parse_eta_rule(const std::string& name);
std::string to_string(EtaRule r);

struct LearnerConfig {
  std::string name;
  Algorithm algorithm = Algorithm::dftrl;
  EtaRule rule = EtaRule::experiment_dftrl;
  double eta = 0.0;  // used by EtaRule::explicit_value
};

struct EtaInputs {
  double p = 1.0;
  int n = 1;
  long horizon = 1;
  double d = 1.0;  // sqrt of the regularizer range D^2
  double l = 1.0;
  double mu = 1.0;
  double pmin = 1.0;
  double explicit_eta = 0.0;
};

double tune_eta(EtaRule rule, const EtaInputs& in);

/// Z <- W Z + G. Rows of Z and G are agents.
void dftrl_round(Eigen::MatrixXd& z, const GossipMatrix& w, const Eigen::MatrixXd& g);

/// dftrl_round with G scaled by N / |S_t|; does nothing when S_t is empty.
void dftrl_known_st_round(Eigen::MatrixXd& z, const RoundActivation& round, const GossipMatrix& w,
                          const Eigen::MatrixXd& g);

/// X <- Proj_ball(W X - eta G), row by row.
void dogd_round(Eigen::MatrixXd& x, const GossipMatrix& w, const Eigen::MatrixXd& g, double eta,
                const Regularizer& reg);

}  // namespace netregret
