#include "netregret/learners.hpp"

#include <algorithm>
#include <cmath>

#include "netregret/errors.hpp"

namespace netregret {

namespace {

void project_ball(Eigen::Ref<Eigen::VectorXd> x, double radius) {
  double norm = x.norm();
  if (norm > radius) x *= radius / norm;
}

void check_shapes(const Eigen::MatrixXd& state, const GossipMatrix& w, const Eigen::MatrixXd& g) {
  if (w.w.rows() != state.rows() || w.w.cols() != state.rows() || g.rows() != state.rows() ||
      g.cols() != state.cols())
    throw ShapeError("learner update: state " + std::to_string(state.rows()) + "x" +
                     std::to_string(state.cols()) + ", gossip " + std::to_string(w.w.rows()) +
                     "x" + std::to_string(w.w.cols()) + ", gradients " +
                     std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
}

}  // namespace

Eigen::VectorXd ftrl_predict(const Eigen::VectorXd& z, double eta, const Regularizer& reg) {
  Eigen::VectorXd x = (-eta / reg.mu) * z;
  project_ball(x, reg.radius);
  return x;
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "dftrl") return Algorithm::dftrl;
  if (name == "dftrl_known_st") return Algorithm::dftrl_known_st;
  if (name == "dogd") return Algorithm::dogd;
  throw ConfigError("unknown algorithm '" + name + "' (dftrl, dftrl_known_st, dogd)");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::dftrl: return "dftrl";
    case Algorithm::dftrl_known_st: return "dftrl_known_st";
    case Algorithm::dogd: return "dogd";
  }
  return "?";
}

EtaRule parse_eta_rule(const std::string& name) {
  if (name == "explicit") return EtaRule::explicit_value;
  if (name == "experiment_dftrl") return EtaRule::experiment_dftrl;
  if (name == "experiment_dogd") return EtaRule::experiment_dogd;
  if (name == "theory_third_bound") return EtaRule::theory_third_bound;
  if (name == "theory_general_pmin") return EtaRule::theory_general_pmin;
  throw ConfigError("unknown eta_rule '" + name + "'");
}

std::string to_string(EtaRule r) {
  switch (r) {
    case EtaRule::explicit_value: return "explicit";
    case EtaRule::experiment_dftrl: return "experiment_dftrl";
    case EtaRule::experiment_dogd: return "experiment_dogd";
    case EtaRule::theory_third_bound: return "theory_third_bound";
    case EtaRule::theory_general_pmin: return "theory_general_pmin";
  }
  return "?";
}

double tune_eta(EtaRule rule, const EtaInputs& in) {
  const double n = in.n;
  const double t = static_cast<double>(in.horizon);
  const double reach = std::min(in.p * n, std::sqrt(n));
  double eta = 0.0;
  switch (rule) {
    case EtaRule::explicit_value: eta = in.explicit_eta; break;
    case EtaRule::experiment_dftrl: eta = 1.0 / std::sqrt(in.p * reach * t); break;
    case EtaRule::experiment_dogd: eta = std::pow(n, -0.25) / std::sqrt(t); break;
    case EtaRule::theory_third_bound:
      eta = (in.d / in.l) * std::sqrt(in.mu) / (2.0 * std::sqrt(2.0 * in.p * reach * t));
      break;
    case EtaRule::theory_general_pmin:
      eta = in.d * std::sqrt(in.mu) * in.pmin / (in.l * std::sqrt(t));
      break;
  }
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw ConfigError("learning rate from rule " + to_string(rule) + " is not positive");
  return eta;
}

void dftrl_round(Eigen::MatrixXd& z, const GossipMatrix& w, const Eigen::MatrixXd& g) {
  check_shapes(z, w, g);
  Eigen::MatrixXd next = w.w * z;
  next += g;
  z = std::move(next);
}

void dftrl_known_st_round(Eigen::MatrixXd& z, const RoundActivation& round, const GossipMatrix& w,
                          const Eigen::MatrixXd& g) {
  if (round.active_nodes.empty()) return;
  const double scale = static_cast<double>(z.rows()) / static_cast<double>(round.active_nodes.size());
  dftrl_round(z, w, scale * g);
}

void dogd_round(Eigen::MatrixXd& x, const GossipMatrix& w, const Eigen::MatrixXd& g, double eta,
                const Regularizer& reg) {
  check_shapes(x, w, g);
  Eigen::MatrixXd next = w.w * x;
  next -= eta * g;
  for (Eigen::Index v = 0; v < next.rows(); ++v) {
    Eigen::VectorXd row = next.row(v).transpose();
    project_ball(row, reg.radius);
    next.row(v) = row.transpose();
  }
  x = std::move(next);
}

}  // namespace netregret
