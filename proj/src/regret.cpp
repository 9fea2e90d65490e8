#include "netregret/regret.hpp"

#include <algorithm>
#include <cmath>

#include "netregret/errors.hpp"
#include "netregret/trust_region.hpp"

namespace netregret {

QuadraticForm cumulative_network_loss(const SimulationTrace& trace, long upto) {
  const auto& env = *trace.env;
  QuadraticForm q(env.dim());
  const long end = upto < 0 ? static_cast<long>(trace.rounds.size()) : upto;
  for (long t = 0; t < end; ++t) {
    const auto& rec = trace.rounds[static_cast<std::size_t>(t)];
    if (rec.active.empty()) continue;
    const double w = 1.0 / static_cast<double>(rec.active.size());
    for (int v : rec.active) env.accumulate_quadratic(t, v, w, q);
  }
  return q;
}

namespace {

double network_loss_at(const SimulationTrace& trace, const Eigen::VectorXd& x) {
  const auto& env = *trace.env;
  double total = 0.0;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const auto& rec = trace.rounds[t];
    if (rec.active.empty()) continue;
    double s = 0.0;
    for (int v : rec.active) s += env.eval(static_cast<long>(t), v, x);
    total += s / static_cast<double>(rec.active.size());
  }
  return total;
}

bool any_active(const SimulationTrace& trace) {
  return std::any_of(trace.rounds.begin(), trace.rounds.end(),
                     [](const RoundRecord& r) { return !r.active.empty(); });
}

}  // namespace

Comparator comparator_solve(const SimulationTrace& trace) {
  if (!any_active(trace)) throw EmptyTraceError("no round has an active agent");
  QuadraticForm q = cumulative_network_loss(trace);
  Comparator c;
  c.x = solve_trust_region(q.a, q.b, trace.env->radius()).x;
  c.value = network_loss_at(trace, c.x);
  return c;
}

double cumulative_alg_loss(const SimulationTrace& trace) {
  const auto& env = *trace.env;
  double total = 0.0;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const auto& rec = trace.rounds[t];
    if (rec.active.empty()) continue;
    const double k = static_cast<double>(rec.active.size());
    double round = 0.0;
    for (Eigen::Index i = 0; i < rec.predictions.rows(); ++i) {
      Eigen::VectorXd x = rec.predictions.row(i).transpose();
      for (int v : rec.active) round += env.eval(static_cast<long>(t), v, x);
    }
    total += round / (k * k);
  }
  return total;
}

RegretReport network_regret(const SimulationTrace& trace) {
  RegretReport r;
  r.comparator = comparator_solve(trace);
  r.cumulative_alg_loss = cumulative_alg_loss(trace);
  r.realized_regret = r.cumulative_alg_loss - r.comparator.value;
  return r;
}

std::vector<double> regret_series(const SimulationTrace& trace) {
  const auto& env = *trace.env;
  std::vector<double> out;
  out.reserve(trace.rounds.size());
  QuadraticForm q(env.dim());
  double alg = 0.0;
  bool seen = false;
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const auto& rec = trace.rounds[t];
    if (!rec.active.empty()) {
      seen = true;
      const double k = static_cast<double>(rec.active.size());
      double round = 0.0;
      for (Eigen::Index i = 0; i < rec.predictions.rows(); ++i) {
        Eigen::VectorXd x = rec.predictions.row(i).transpose();
        for (int v : rec.active) round += env.eval(static_cast<long>(t), v, x);
      }
      alg += round / (k * k);
      for (int v : rec.active) env.accumulate_quadratic(static_cast<long>(t), v, 1.0 / k, q);
    }
    if (!seen) {
      out.push_back(0.0);
      continue;
    }
    Eigen::VectorXd xs = solve_trust_region(q.a, q.b, env.radius()).x;
    out.push_back(alg - q.value(xs));
  }
  return out;
}

Decomposition decomposition_diagnostic(const SimulationTrace& trace, const Eigen::VectorXd& x_star) {
  const double lip = trace.env->lipschitz();
  const double n = static_cast<double>(trace.agents);
  Eigen::VectorXd zbar = Eigen::VectorXd::Zero(trace.env->dim());
  Decomposition dec;
  for (const auto& rec : trace.rounds) {
    if (rec.active.empty()) continue;
    const double k = static_cast<double>(rec.active.size());
    Eigen::VectorXd xbar = ftrl_predict(zbar, trace.eta, trace.reg);
    for (Eigen::Index i = 0; i < rec.predictions.rows(); ++i) {
      Eigen::VectorXd x = rec.predictions.row(i).transpose();
      Eigen::VectorXd g = rec.gradients.row(i).transpose();
      dec.term_a += 3.0 * lip * (x - xbar).norm() / k;
      dec.term_b += g.dot(xbar - x_star) / k;
    }
    zbar += (rec.gradient_scale / n) * rec.gradients.colwise().sum().transpose();
  }
  return dec;
}

std::map<std::string, double> eval_bounds(const BoundParams& bp) {
  if (!(bp.rho < 1.0)) throw SpectralGapError("rho >= 1: no spectral gap, bounds are vacuous");
  const double n = bp.n;
  const double t = static_cast<double>(bp.horizon);
  const double d2 = bp.d * bp.d;
  const double lmu = bp.l * bp.l / bp.mu;
  const double gap = bp.rho / (1.0 - bp.rho);
  const double sqrt_n = std::sqrt(n);
  std::map<std::string, double> out;

  out["first_bound"] =
      n * d2 / bp.eta +
      lmu * bp.eta *
          (bp.pbar * n + bp.pbar * (1.0 - bp.pbar) - bp.sigma_sq + 6.0 +
           3.0 * std::min(bp.pbar * n, sqrt_n) * gap) *
          t;
  out["second_bound"] =
      d2 / (bp.p * bp.eta) + lmu * bp.eta * (8.0 + 3.0 * std::min(bp.p * n, sqrt_n) * gap) * t;

  const double branch = (bp.p >= 1.0 / n && bp.p <= 1.0 / sqrt_n)
                            ? sqrt_n
                            : std::pow(n, 0.25) / std::sqrt(bp.p);
  out["third_bound"] =
      2.0 * std::sqrt(2.0) * (bp.d * bp.l / std::sqrt(bp.mu)) / (1.0 - bp.rho) * std::sqrt(t) * branch;

  const double rho_sq = bp.rho * bp.rho;
  out["hp_bound"] = n * (d2 / bp.eta + lmu * bp.eta * t) +
                    3.0 * bp.eta * t * n * lmu *
                        (3.0 / (1.0 - rho_sq) * std::log(n * t * t / bp.delta) + 3.0);

  out["rate_diffp"] = 12.0 * bp.d * bp.l * bp.kappa / bp.pmin * std::pow(n, 0.75) * std::sqrt(t / bp.mu);
  out["erdos_bound"] = bp.kappa / (bp.p * bp.q) *
                       std::min(sqrt_n, std::pow(n, 0.25) / std::sqrt(bp.p)) * std::sqrt(t);
  return out;
}

double lower_bound_floor(int block, long horizon, double diameter, double lipschitz) {
  const double n = 4.0 * block;
  return (n - block + 1.0) * diameter * lipschitz / (2.0 * n) *
         std::sqrt(static_cast<double>(block) * static_cast<double>(horizon));
}

}  // namespace netregret
