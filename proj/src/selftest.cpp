#include "netregret/selftest.hpp"

#include <cmath>
#include <sstream>

#include "netregret/gossip.hpp"
#include "netregret/harness.hpp"
#include "netregret/learners.hpp"
#include "netregret/regret.hpp"
#include "netregret/simulation.hpp"
#include "netregret/trust_region.hpp"

namespace netregret {

namespace {

SelfTestResult gossip_structure() {
  Rng graph_rng(7);
  std::vector<Graph> graphs = {build_clique(6), build_grid2d(3), build_cycle(7),
                               build_lattice(3), build_two_cliques(4, 2, graph_rng)};
  int checked = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (double p : {0.3, 0.7, 1.0})
      for (double q : {0.5, 1.0}) {
        const auto& g = graphs[gi];
        auto model = ActivationModel::uniform(g.size(), p, q);
        for (int i = 0; i < 50; ++i) {
          Rng rng(hash_words({gi, static_cast<std::uint64_t>(p * 10), static_cast<std::uint64_t>(q * 10),
                              static_cast<std::uint64_t>(i)}));
          auto round = sample_round(model, g, i, rng);
          auto w = build_gossip(g, round, default_step(g));
          std::string err = verify_gossip(w, g, round);
          if (!err.empty()) return {"gossip matrices", false, g.label() + ": " + err};
          ++checked;
        }
      }
  return {"gossip matrices", true, std::to_string(checked) + " sampled matrices"};
}

SelfTestResult rho_ordering() {
  for (const Graph& g : {build_clique(8), build_grid2d(4), build_lattice(4), build_cycle(9)})
    for (int i = 1; i <= 10; ++i) {
      double p = i / 10.0;
      double exact = rho_closed_form(g, p);
      double upper = rho_upper_bound(g, p, default_step(g));
      if (exact > upper + 1e-12) {
        std::ostringstream os;
        os << g.label() << " p=" << p << ": closed form " << exact << " above bound " << upper;
        return {"closed form below upper bound", false, os.str()};
      }
    }
  return {"closed form below upper bound", true, ""};
}

SelfTestResult trust_region_kkt() {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(6));
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = rng.normal();
    Eigen::MatrixXd a = m * m.transpose();
    if (trial % 4 == 0) a.setZero();
    Eigen::VectorXd b(d);
    for (int i = 0; i < d; ++i) b(i) = 3.0 * rng.normal();
    const double radius = 0.5 + rng.uniform();
    auto res = solve_trust_region(a, b, radius);
    double resid = ((a + res.multiplier * Eigen::MatrixXd::Identity(d, d)) * res.x - b).norm();
    double slack = res.multiplier * (radius - res.x.norm());
    if (res.x.norm() > radius * (1 + 1e-9) || resid > 1e-6 * (1 + b.norm()) || std::abs(slack) > 1e-8) {
      std::ostringstream os;
      os << "trial " << trial << ": residual " << resid << ", slack " << slack;
      return {"trust-region optimality conditions", false, os.str()};
    }
  }
  return {"trust-region optimality conditions", true, "200 instances"};
}

SelfTestResult run_checks() {
  ExperimentConfig cfg;
  cfg.graph = "grid2d:3";
  cfg.p = {0.6};
  cfg.horizon = 60;
  cfg.reps = 3;
  cfg.master_seed = 5;
  cfg.learners = {{"dftrl", Algorithm::dftrl, EtaRule::experiment_dftrl, 0.0},
                  {"dogd", Algorithm::dogd, EtaRule::experiment_dogd, 0.0}};
  auto first = run_experiment(cfg);
  auto second = run_experiment(cfg);
  std::ostringstream a, b;
  first.reports.write(a);
  second.reports.write(b);
  if (a.str() != b.str()) return {"small experiment", false, "repeat run differs"};
  for (const auto& run : first.runs) {
    const auto& dec = *run.report.decomposition;
    if (dec.term_a + dec.term_b < run.report.realized_regret - 1e-8)
      return {"small experiment", false, "decomposition inequality violated"};
  }
  return {"small experiment", true, "deterministic, decomposition holds"};
}

}  // namespace

std::vector<SelfTestResult> run_selftest() {
  std::vector<SelfTestResult> out;
  for (auto check : {gossip_structure, rho_ordering, trust_region_kkt, run_checks}) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"exception", false, e.what()});
    }
  }
  return out;
}

}  // namespace netregret
