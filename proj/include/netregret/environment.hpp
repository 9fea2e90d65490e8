#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netregret {

/// 0.5 x^T A x - b^T x + c.
struct QuadraticForm {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  double c = 0.0;

  explicit QuadraticForm(int d) : a(Eigen::MatrixXd::Zero(d, d)), b(Eigen::VectorXd::Zero(d)) {}
  double value(const Eigen::VectorXd& x) const { return 0.5 * x.dot(a * x) - b.dot(x) + c; }
};

/// Per-round, per-agent convex losses on the Euclidean ball of radius().
/// Rounds are 0-based.
class LossOracle {
 public:
  virtual ~LossOracle() = default;

  virtual int dim() const = 0;
  virtual double radius() const = 0;
  /// Upper bound on ||grad(t, v, x)|| over all rounds, agents and ||x|| <= R.
  virtual double lipschitz() const = 0;
  virtual int agents() const = 0;
  virtual long horizon() const = 0;
  virtual std::string name() const = 0;

  virtual double eval(long t, int v, const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd grad(long t, int v, const Eigen::VectorXd& x) const = 0;
  /// q += weight * loss_t(v, .) written as a quadratic form.
  virtual void accumulate_quadratic(long t, int v, double weight, QuadraticForm& q) const = 0;
};

/// Squared loss 0.5 (<w_t(v), x> - y_t(v))^2 with features uniform on
/// [-1, 1]^d. Agents v < ceil(N/2) see pure standard-normal labels, the rest
/// see <w, 1> plus standard-normal noise. The sample for (t, v) comes from its
/// own stream, so a longer horizon extends a shorter one.
class RegressionEnv : public LossOracle {
 public:
  RegressionEnv(int n, long horizon, std::uint64_t data_seed, int dim = 10, double radius = 2.0);

  int dim() const override { return d_; }
  double radius() const override { return radius_; }
  double lipschitz() const override { return l_hat_; }
  int agents() const override { return n_; }
  long horizon() const override { return horizon_; }
  std::string name() const override { return "regression"; }

  double eval(long t, int v, const Eigen::VectorXd& x) const override;
  Eigen::VectorXd grad(long t, int v, const Eigen::VectorXd& x) const override;
  void accumulate_quadratic(long t, int v, double weight, QuadraticForm& q) const override;

  Eigen::Ref<const Eigen::VectorXd> features(long t, int v) const;
  double label(long t, int v) const { return labels_[index(t, v)]; }
  int noise_agents() const { return (n_ + 1) / 2; }

 private:
  std::size_t index(long t, int v) const;

  int n_;
  long horizon_;
  int d_;
  double radius_;
  Eigen::MatrixXd features_;  // d x (horizon * n), column t * n + v
  std::vector<double> labels_;
  double l_hat_ = 0.0;
};

/// Lower-bound construction on the cycle with N = 4M agents. Agents
/// 0..3M-1 have zero loss; agents 3M..4M-1 have
///   (N - M + 1) * eps_k * L * <e_1, x>,  k = t / M,
/// with eps_k independent Rademacher signs, one per block of M rounds.
class AdversaryEnv : public LossOracle {
 public:
  AdversaryEnv(int block, long horizon, double lipschitz_scale, std::uint64_t eps_seed,
               double radius = 1.0, int dim = 2,
               std::optional<std::vector<int>> eps_override = std::nullopt);

  int dim() const override { return d_; }
  double radius() const override { return radius_; }
  double lipschitz() const override { return scale() * l_; }
  int agents() const override { return 4 * m_; }
  long horizon() const override { return horizon_; }
  std::string name() const override { return "adversary"; }

  double eval(long t, int v, const Eigen::VectorXd& x) const override;
  Eigen::VectorXd grad(long t, int v, const Eigen::VectorXd& x) const override;
  void accumulate_quadratic(long t, int v, double weight, QuadraticForm& q) const override;

  int block() const { return m_; }
  double base_lipschitz() const { return l_; }
  /// N - M + 1.
  double scale() const { return 4.0 * m_ - m_ + 1.0; }
  bool loaded(int v) const { return v >= 3 * m_; }
  int sign(long t) const { return eps_[static_cast<std::size_t>(t / m_)]; }
  const std::vector<int>& signs() const { return eps_; }
  /// Coefficient c_t(v) with loss_t(v, x) = c_t(v) x_1.
  double coefficient(long t, int v) const;

 private:
  int m_;
  long horizon_;
  double l_;
  double radius_;
  int d_;
  std::vector<int> eps_;
};

std::shared_ptr<const RegressionEnv> make_regression_env(int n, long horizon,
                                                         std::uint64_t data_seed);
std::shared_ptr<const AdversaryEnv> make_adversary_env(int block, long horizon, double lipschitz,
                                                       std::uint64_t eps_seed, double radius = 1.0);

}  // namespace netregret
