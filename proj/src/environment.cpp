#include "netregret/environment.hpp"

#include <algorithm>
#include <cmath>

#include "netregret/errors.hpp"
#include "netregret/rng.hpp"

namespace netregret {

RegressionEnv::RegressionEnv(int n, long horizon, std::uint64_t data_seed, int dim, double radius)
    : n_(n), horizon_(horizon), d_(dim), radius_(radius) {
  if (n < 2) throw InvalidSizeError("regression environment needs n >= 2");
  if (horizon < 1) throw InvalidSizeError("regression environment needs T >= 1");
  if (dim < 1 || !(radius > 0)) throw InvalidParameterError("dimension and radius must be positive");
  const std::size_t cells = static_cast<std::size_t>(horizon) * n;
  features_.resize(d_, static_cast<Eigen::Index>(cells));
  labels_.resize(cells);
  const std::uint64_t stream = hash_words({data_seed, static_cast<std::uint64_t>(Stream::data)});
  for (long t = 0; t < horizon; ++t)
    for (int v = 0; v < n; ++v) {
      Rng rng(hash_words({stream, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(v)}));
      const std::size_t k = index(t, v);
      for (int i = 0; i < d_; ++i) features_(i, static_cast<Eigen::Index>(k)) = rng.uniform(-1.0, 1.0);
      double noise = rng.normal();
      labels_[k] = v < noise_agents() ? noise : features_.col(static_cast<Eigen::Index>(k)).sum() + noise;
      double wn = features_.col(static_cast<Eigen::Index>(k)).norm();
      l_hat_ = std::max(l_hat_, (wn * radius_ + std::abs(labels_[k])) * wn);
    }
}

std::size_t RegressionEnv::index(long t, int v) const {
  return static_cast<std::size_t>(t) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
}

Eigen::Ref<const Eigen::VectorXd> RegressionEnv::features(long t, int v) const {
  return features_.col(static_cast<Eigen::Index>(index(t, v)));
}

double RegressionEnv::eval(long t, int v, const Eigen::VectorXd& x) const {
  double r = features(t, v).dot(x) - label(t, v);
  return 0.5 * r * r;
}

Eigen::VectorXd RegressionEnv::grad(long t, int v, const Eigen::VectorXd& x) const {
  auto w = features(t, v);
  return (w.dot(x) - label(t, v)) * w;
}

void RegressionEnv::accumulate_quadratic(long t, int v, double weight, QuadraticForm& q) const {
  auto w = features(t, v);
  double y = label(t, v);
  q.a.noalias() += weight * w * w.transpose();
  q.b += weight * y * w;
  q.c += weight * 0.5 * y * y;
}

AdversaryEnv::AdversaryEnv(int block, long horizon, double lipschitz_scale,
                           std::uint64_t eps_seed, double radius, int dim,
                           std::optional<std::vector<int>> eps_override)
    : m_(block), horizon_(horizon), l_(lipschitz_scale), radius_(radius), d_(dim) {
  if (block < 1) throw InvalidSizeError("adversary needs M >= 1");
  if (horizon < 1) throw InvalidSizeError("adversary needs T >= 1");
  if (dim < 1 || !(radius > 0) || !(lipschitz_scale > 0))
    throw InvalidParameterError("adversary dimension, radius and L must be positive");
  const std::size_t blocks = static_cast<std::size_t>((horizon + block - 1) / block);
  if (eps_override) {
    if (eps_override->size() < blocks)
      throw InvalidParameterError("sign override shorter than the number of blocks");
    for (int e : *eps_override)
      if (e != 1 && e != -1) throw InvalidParameterError("sign override entries must be +1 or -1");
    eps_.assign(eps_override->begin(), eps_override->begin() + static_cast<long>(blocks));
  } else {
    Rng rng(eps_seed);
    for (std::size_t k = 0; k < blocks; ++k) eps_.push_back(rng.rademacher());
  }
}

double AdversaryEnv::coefficient(long t, int v) const {
  return loaded(v) ? scale() * sign(t) * l_ : 0.0;
}

double AdversaryEnv::eval(long t, int v, const Eigen::VectorXd& x) const {
  return coefficient(t, v) * x(0);
}

Eigen::VectorXd AdversaryEnv::grad(long t, int v, const Eigen::VectorXd&) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(d_);
  g(0) = coefficient(t, v);
  return g;
}

void AdversaryEnv::accumulate_quadratic(long t, int v, double weight, QuadraticForm& q) const {
  q.b(0) -= weight * coefficient(t, v);
}

std::shared_ptr<const RegressionEnv> make_regression_env(int n, long horizon,
                                                         std::uint64_t data_seed) {
  return std::make_shared<const RegressionEnv>(n, horizon, data_seed);
}

std::shared_ptr<const AdversaryEnv> make_adversary_env(int block, long horizon, double lipschitz,
                                                       std::uint64_t eps_seed, double radius) {
  return std::make_shared<const AdversaryEnv>(block, horizon, lipschitz, eps_seed, radius);
}

}  // namespace netregret
