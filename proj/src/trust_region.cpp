#include "netregret/trust_region.hpp"

#include <algorithm>
#include <cmath>

#include "netregret/errors.hpp"

namespace netregret {

TrustRegionResult solve_trust_region(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     double radius, double tol) {
  const auto d = b.size();
  if (a.rows() != d || a.cols() != d) throw ShapeError("trust region: A and b disagree in size");
  if (!(radius > 0)) throw InvalidParameterError("trust region: radius must be positive");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()));
  const Eigen::VectorXd lam = es.eigenvalues();  // ascending
  const Eigen::MatrixXd& q = es.eigenvectors();
  const Eigen::VectorXd beta = q.transpose() * b;

  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  const double eig_tol = 1e-12 * scale;
  const double beta_tol = 1e-12 * std::max(1.0, b.norm());
  const double lam_lo = std::max(0.0, -lam(0));

  auto x_of = [&](double mult) {
    Eigen::VectorXd y(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      double den = lam(i) + mult;
      y(i) = std::abs(den) <= eig_tol ? 0.0 : beta(i) / den;
    }
    return y;  // eigen coordinates
  };

  TrustRegionResult res;
  bool singular_pull = false;
  for (Eigen::Index i = 0; i < d; ++i)
    if (std::abs(lam(i) + lam_lo) <= eig_tol && std::abs(beta(i)) > beta_tol) singular_pull = true;

  if (!singular_pull) {
    Eigen::VectorXd y = x_of(lam_lo);
    double norm = y.norm();
    if (norm <= radius * (1.0 + tol)) {
      if (lam_lo > 0.0) {
        // Hard case: move along the bottom eigenvector to reach the boundary.
        double tau = std::sqrt(std::max(0.0, radius * radius - norm * norm));
        y(0) += tau;
        res.hard_case = true;
        res.on_boundary = true;
      }
      res.x = q * y;
      res.multiplier = lam_lo;
      return res;
    }
  }

  // ||x(lambda)|| = radius has a unique root above lam_lo.
  double lo = lam_lo;
  double hi = lam_lo + b.norm() / radius + scale;
  while (x_of(hi).norm() > radius) hi *= 2.0;
  double mult = hi;
  for (res.iterations = 1; res.iterations <= 500; ++res.iterations) {
    Eigen::VectorXd y = x_of(mult);
    double norm = y.norm();
    if (std::abs(norm - radius) <= tol * radius) break;
    if (norm > radius)
      lo = mult;
    else
      hi = mult;
    // d/dlambda ||y||^2 = -2 sum y_i^2 / (lam_i + lambda)
    double dsq = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      double den = lam(i) + mult;
      if (std::abs(den) > eig_tol) dsq += y(i) * y(i) / den;
    }
    // Newton on phi(lambda) = 1/||y|| - 1/radius.
    double step = dsq > 0 ? (norm - radius) / radius * (norm * norm) / dsq : 0.0;
    double next = mult + step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == mult) break;
    mult = next;
  }
  Eigen::VectorXd y = x_of(mult);
  res.x = q * y;
  // Remove the remaining radial error.
  double norm = res.x.norm();
  if (norm > 0) res.x *= radius / norm;
  res.multiplier = mult;
  res.on_boundary = true;
  return res;
}

}  // namespace netregret
