#pragma once

#include <Eigen/Dense>

namespace netregret {

struct TrustRegionResult {
  Eigen::VectorXd x;
  double multiplier = 0.0;  // lambda >= 0 with (A + lambda I) x = b
  bool on_boundary = false;
  bool hard_case = false;
  int iterations = 0;
};

/// Exact minimizer of 0.5 x^T A x - b^T x over ||x|| <= radius for symmetric
/// A (not necessarily definite). Uses the eigendecomposition of A and a
/// safeguarded Newton iteration on 1/||x(lambda)|| - 1/radius; stops when
/// | ||x|| - radius | <= tol * radius.
TrustRegionResult solve_trust_region(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     double radius, double tol = 1e-10);

}  // namespace netregret
