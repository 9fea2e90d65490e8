#include <doctest.h>

#include <cmath>

#include "netregret/environment.hpp"
#include "netregret/errors.hpp"
#include "netregret/rng.hpp"
#include "oracles.hpp"

using namespace netregret;

namespace {

Eigen::VectorXd random_in_ball(Rng& rng, int d, double r) {
  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i) x(i) = rng.normal();
  return x * (r * std::pow(rng.uniform(), 1.0 / d) / x.norm());
}

}  // namespace

TEST_CASE("regression data layout") {
  RegressionEnv env(7, 30, 5);
  CHECK(env.dim() == 10);
  CHECK(env.radius() == 2.0);
  CHECK(env.noise_agents() == 4);
  for (long t = 0; t < 30; ++t)
    for (int v = 0; v < 7; ++v) CHECK(env.features(t, v).cwiseAbs().maxCoeff() <= 1.0);
  // Prefix property: a longer horizon extends a shorter one.
  RegressionEnv longer(7, 60, 5);
  for (long t = 0; t < 30; ++t)
    for (int v = 0; v < 7; ++v) {
      CHECK(longer.label(t, v) == env.label(t, v));
      CHECK(longer.features(t, v) == env.features(t, v));
    }
  RegressionEnv again(7, 30, 5);
  CHECK(again.lipschitz() == env.lipschitz());
  CHECK(again.label(29, 6) == env.label(29, 6));
  RegressionEnv other(7, 30, 6);
  CHECK(other.label(0, 0) != env.label(0, 0));
}

TEST_CASE("regression labels: noise agents have no signal") {
  RegressionEnv env(10, 4000, 1);
  // Correlation between label and <w, 1> is zero for noise agents and large otherwise.
  auto corr = [&](int v) {
    double sxy = 0, sxx = 0, syy = 0;
    for (long t = 0; t < 4000; ++t) {
      double x = env.features(t, v).sum(), y = env.label(t, v);
      sxy += x * y;
      sxx += x * x;
      syy += y * y;
    }
    return sxy / std::sqrt(sxx * syy);
  };
  CHECK(std::abs(corr(0)) < 0.06);
  CHECK(std::abs(corr(4)) < 0.06);
  CHECK(corr(5) > 0.8);
  CHECK(corr(9) > 0.8);
}

TEST_CASE("regression gradients, convexity and Lipschitz bound") {
  RegressionEnv env(6, 40, 3);
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    long t = static_cast<long>(rng.below(40));
    int v = static_cast<int>(rng.below(6));
    Eigen::VectorXd x = random_in_ball(rng, 10, 2.0);
    auto f = [&](const Eigen::VectorXd& y) { return env.eval(t, v, y); };
    Eigen::VectorXd g = env.grad(t, v, x);
    Eigen::VectorXd fd = oracle::fd_gradient(f, x);
    CHECK((g - fd).norm() <= 1e-5 * std::max(1.0, g.norm()));
    CHECK(g.norm() <= env.lipschitz() + 1e-12);
    Eigen::VectorXd y = random_in_ball(rng, 10, 2.0);
    CHECK(f(0.5 * (x + y)) <= 0.5 * (f(x) + f(y)) + 1e-12);
    QuadraticForm q(10);
    env.accumulate_quadratic(t, v, 1.0, q);
    CHECK(std::abs(q.value(x) - f(x)) <= 1e-10 * std::max(1.0, f(x)));
  }
  // Zero residual gives a zero gradient.
  Eigen::VectorXd w = env.features(3, 4);
  Eigen::VectorXd x = w * (env.label(3, 4) / w.squaredNorm());
  CHECK(env.grad(3, 4, x).norm() < 1e-12);
}

TEST_CASE("cumulative quadratic is PSD") {
  RegressionEnv env(4, 10, 2);
  QuadraticForm q(10);
  for (long t = 0; t < 10; ++t)
    for (int v = 0; v < 4; ++v) env.accumulate_quadratic(t, v, 0.25, q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.a);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("adversary structure") {
  AdversaryEnv env(2, 9, 1.5, 42, 1.0);
  CHECK(env.agents() == 8);
  CHECK(env.signs().size() == 5);
  CHECK(env.scale() == 7.0);
  CHECK(env.lipschitz() == 7.0 * 1.5);
  Eigen::VectorXd x(2);
  x << 0.3, -0.4;
  for (long t = 0; t < 9; ++t)
    for (int v = 0; v < 8; ++v) {
      if (v < 6) {
        CHECK(env.eval(t, v, x) == 0.0);
        CHECK(env.grad(t, v, x).norm() == 0.0);
      } else {
        CHECK(env.eval(t, v, x) == doctest::Approx(7.0 * env.sign(t) * 1.5 * 0.3));
        CHECK(env.grad(t, v, x).norm() == doctest::Approx(env.lipschitz()));
      }
    }
  // t = 3 sits in block 1
  CHECK(env.sign(3) == env.signs()[1]);
  CHECK(env.sign(2) == env.signs()[1]);
  CHECK(env.sign(1) == env.signs()[0]);
  QuadraticForm q(2);
  env.accumulate_quadratic(4, 7, 0.5, q);
  CHECK(q.value(x) == doctest::Approx(0.5 * env.eval(4, 7, x)));
}

TEST_CASE("adversary signs") {
  AdversaryEnv forced(1, 4, 1.0, 0, 1.0, 2, std::vector<int>{1, -1, 1, 1});
  CHECK(forced.signs() == std::vector<int>{1, -1, 1, 1});
  CHECK_THROWS_AS(AdversaryEnv(1, 4, 1.0, 0, 1.0, 2, std::vector<int>{1, -1}), InvalidParameterError);
  CHECK_THROWS_AS(AdversaryEnv(1, 2, 1.0, 0, 1.0, 2, std::vector<int>{1, 0}), InvalidParameterError);
  // Signs are balanced over many blocks.
  AdversaryEnv many(1, 20000, 1.0, 3);
  long sum = 0;
  for (int e : many.signs()) sum += e;
  CHECK(std::abs(static_cast<double>(sum)) < 3 * std::sqrt(20000.0));
  CHECK_THROWS_AS(AdversaryEnv(0, 5, 1.0, 0), InvalidSizeError);
}
