#include "netregret/gossip.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netregret/errors.hpp"
#include "netregret/parallel.hpp"

namespace netregret {

namespace {

// Fixed block size for Monte-Carlo loops: partial sums are merged in block
// order, so results do not depend on the number of threads.
constexpr int kBlock = 50;

void check_step(const Graph& g, double b) {
  const double bmax = 1.0 / g.lambda1();
  if (!(b > 0.0) || b > bmax * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "gossip step b=" << b << " outside (0, 1/lambda1] = (0, " << bmax << "]";
    throw InvalidStepError(msg.str());
  }
}

// y = W x for the round's gossip matrix without forming W.
void apply_round(const RoundActivation& round, double b, Eigen::VectorXd& x) {
  Eigen::VectorXd y = x;
  for (auto [u, v] : round.active_edges) {
    double diff = x(u) - x(v);
    y(u) -= b * diff;
    y(v) += b * diff;
  }
  x = std::move(y);
}

}  // namespace

double default_step(const Graph& g) { return 1.0 / g.lambda1(); }

GossipMatrix build_gossip(const Graph& g, const RoundActivation& round, double b) {
  check_step(g, b);
  const int n = g.size();
  GossipMatrix gm{Eigen::MatrixXd::Identity(n, n)};
  for (auto [u, v] : round.active_edges) {
    gm.w(u, v) += b;
    gm.w(v, u) += b;
    gm.w(u, u) -= b;
    gm.w(v, v) -= b;
  }
  return gm;
}

std::string verify_gossip(const GossipMatrix& gm, const Graph& g, const RoundActivation& round,
                          double tol) {
  const auto& w = gm.w;
  const int n = g.size();
  std::ostringstream err;
  if (w.rows() != n || w.cols() != n) return "wrong shape";
  for (int i = 0; i < n; ++i) {
    if (std::abs(w.row(i).sum() - 1.0) > tol) {
      err << "row " << i << " sums to " << w.row(i).sum();
      return err.str();
    }
    if (std::abs(w.col(i).sum() - 1.0) > tol) {
      err << "column " << i << " sums to " << w.col(i).sum();
      return err.str();
    }
  }
  std::vector<char> active(n, 0);
  for (int v : round.active_nodes) active[v] = 1;
  Eigen::MatrixXi allowed = Eigen::MatrixXi::Zero(n, n);
  for (auto [u, v] : round.active_edges) {
    if (!active[u] || !active[v] || !g.has_edge(u, v)) {
      err << "active edge (" << u << "," << v << ") not inside the active subgraph";
      return err.str();
    }
    allowed(u, v) = allowed(v, u) = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (w(i, j) < -tol) {
        err << "negative entry at (" << i << "," << j << ")";
        return err.str();
      }
      if (w(i, j) != w(j, i)) {
        err << "asymmetric at (" << i << "," << j << ")";
        return err.str();
      }
      if (i != j && !allowed(i, j) && w(i, j) != 0.0) {
        err << "nonzero entry off the active edges at (" << i << "," << j << ")";
        return err.str();
      }
    }
  for (int v = 0; v < n; ++v)
    if (!active[v] && w(v, v) != 1.0) {
      err << "inactive node " << v << " does not keep an identity row";
      return err.str();
    }
  return {};
}

double rho_closed_form(const Graph& g, double p, double q) {
  const double pq = p * q;
  const double kappa = g.kappa();
  return 1.0 - (2.0 * p * pq / kappa) * (1.0 - (1.0 - pq) / g.lambda1() - pq / (2.0 * kappa));
}

double rho_upper_bound(const Graph& g, double pmin, double b, double q) {
  return 1.0 - b * pmin * pmin * q * g.fiedler();
}

double second_eigenvalue(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  if (n < 2) return 0.0;
  Eigen::MatrixXd proj =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd restricted = proj * m * proj;
  restricted = 0.5 * (restricted + restricted.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(n - 1);
}

double rho_empirical(const Graph& g, const ActivationModel& model, double b, int draws,
                     std::uint64_t seed) {
  if (draws < 1) throw InvalidParameterError("rho_empirical needs draws >= 1");
  check_step(g, b);
  const int n = g.size();
  const int blocks = (draws + kBlock - 1) / kBlock;
  std::vector<Eigen::MatrixXd> partial(blocks);
  parallel_for(blocks, [&](std::size_t blk) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    const int lo = static_cast<int>(blk) * kBlock;
    const int hi = std::min(draws, lo + kBlock);
    for (int i = lo; i < hi; ++i) {
      Rng rng(round_seed(seed, static_cast<std::uint64_t>(i)));
      auto round = sample_round(model, g, i, rng);
      Eigen::MatrixXd w = build_gossip(g, round, b).w;
      acc.noalias() += w * w;
    }
    partial[blk] = std::move(acc);
  });
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
  for (const auto& m : partial) mean += m;
  mean /= static_cast<double>(draws);
  return std::clamp(second_eigenvalue(mean), 0.0, 1.0);
}

RhoReport rho_report(const Graph& g, const ActivationModel& model, double b, int draws,
                     std::uint64_t seed) {
  RhoReport r;
  r.b = b;
  r.draws = draws;
  const bool exact_ok = model.is_uniform() && std::abs(b - default_step(g)) <= 1e-12 * b;
  if (exact_ok) r.rho_sq_exact = rho_closed_form(g, model.p.front(), model.q);
  r.rho_sq_upper = rho_upper_bound(g, model.pmin_bound(), b, model.q);
  r.rho_sq_empirical = rho_empirical(g, model, b, draws, seed);
  double rho_sq = r.rho_sq_exact.value_or(r.rho_sq_empirical);
  double rho = std::sqrt(std::max(0.0, rho_sq));
  r.rho_over_gap = rho < 1.0 ? rho / (1.0 - rho) : INFINITY;
  return r;
}

ContractionResult contraction_check(const Graph& g, const ActivationModel& model, double b, int v,
                                    int horizon, int samples, std::uint64_t seed, double rho_sq) {
  if (horizon < 1) throw InvalidParameterError("contraction_check needs horizon >= 1");
  if (samples < 1) throw InvalidParameterError("contraction_check needs samples >= 1");
  if (v < 0 || v >= g.size()) throw InvalidParameterError("node out of range");
  check_step(g, b);
  const int n = g.size();
  const int blocks = (samples + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> partial(blocks);
  parallel_for(blocks, [&](std::size_t blk) {
    std::vector<double> acc(horizon, 0.0);
    const int lo = static_cast<int>(blk) * kBlock;
    const int hi = std::min(samples, lo + kBlock);
    for (int s = lo; s < hi; ++s) {
      Rng rng(round_seed(seed, static_cast<std::uint64_t>(s)));
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      x(v) = 1.0;
      for (int l = 0; l < horizon; ++l) {
        auto round = sample_round(model, g, l, rng);
        apply_round(round, b, x);
        acc[l] += (x.array() - 1.0 / n).square().sum();
      }
    }
    partial[blk] = std::move(acc);
  });
  ContractionResult res;
  res.samples = samples;
  res.mean_sq_deviation.assign(horizon, 0.0);
  for (const auto& blk : partial)
    for (int l = 0; l < horizon; ++l) res.mean_sq_deviation[l] += blk[l];
  for (int l = 0; l < horizon; ++l) {
    res.mean_sq_deviation[l] /= samples;
    res.rho_pow.push_back(std::pow(rho_sq, l + 1));
  }
  return res;
}

}  // namespace netregret
