#include "netregret/simulation.hpp"

#include "netregret/errors.hpp"
#include "netregret/gossip.hpp"

namespace netregret {

std::vector<RoundActivation> sample_trace(const ActivationModel& model, const Graph& g, long horizon,
                                          std::uint64_t stream_seed) {
  std::vector<RoundActivation> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (long t = 0; t < horizon; ++t) {
    Rng rng(round_seed(stream_seed, static_cast<std::uint64_t>(t)));
    out.push_back(sample_round(model, g, t, rng));
  }
  return out;
}

SimulationTrace simulate(std::shared_ptr<const LossOracle> env, const Graph& g,
                         const std::vector<RoundActivation>& activations, Algorithm algorithm,
                         double eta, double b) {
  if (!env) throw InvalidParameterError("simulate: no environment");
  if (env->agents() != g.size())
    throw ShapeError("environment has " + std::to_string(env->agents()) + " agents, graph has " +
                     std::to_string(g.size()) + " nodes");
  if (static_cast<long>(activations.size()) > env->horizon())
    throw ShapeError("activation trace longer than the environment horizon");
  if (!(eta > 0)) throw InvalidParameterError("learning rate must be positive");

  const int n = g.size();
  const int d = env->dim();
  SimulationTrace tr;
  tr.env = env;
  tr.agents = n;
  tr.horizon = static_cast<long>(activations.size());
  tr.eta = eta;
  tr.reg.radius = env->radius();
  tr.algorithm = algorithm;
  tr.rounds.resize(activations.size());

  // Dual accumulators for the FTRL variants, primal iterates for DOGD.
  Eigen::MatrixXd state = Eigen::MatrixXd::Zero(n, d);
  Eigen::MatrixXd grads(n, d);

  for (long t = 0; t < tr.horizon; ++t) {
    const auto& act = activations[static_cast<std::size_t>(t)];
    auto& rec = tr.rounds[static_cast<std::size_t>(t)];
    rec.active = act.active_nodes;
    if (act.active_nodes.empty()) continue;

    const int k = static_cast<int>(act.active_nodes.size());
    rec.predictions.resize(k, d);
    rec.gradients.resize(k, d);
    rec.local_losses.resize(k);
    grads.setZero();
    for (int i = 0; i < k; ++i) {
      const int v = act.active_nodes[i];
      Eigen::VectorXd x = algorithm == Algorithm::dogd
                              ? Eigen::VectorXd(state.row(v).transpose())
                              : ftrl_predict(state.row(v).transpose(), eta, tr.reg);
      Eigen::VectorXd gv = env->grad(t, v, x);
      rec.predictions.row(i) = x.transpose();
      rec.gradients.row(i) = gv.transpose();
      rec.local_losses[i] = env->eval(t, v, x);
      grads.row(v) = gv.transpose();
    }

    GossipMatrix w = build_gossip(g, act, b);
    switch (algorithm) {
      case Algorithm::dftrl:
        dftrl_round(state, w, grads);
        break;
      case Algorithm::dftrl_known_st:
        rec.gradient_scale = static_cast<double>(n) / k;
        dftrl_known_st_round(state, act, w, grads);
        break;
      case Algorithm::dogd:
        dogd_round(state, w, grads, eta, tr.reg);
        break;
    }
  }
  return tr;
}

}  // namespace netregret
