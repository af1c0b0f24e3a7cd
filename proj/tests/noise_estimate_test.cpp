#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sgwt/errors.hpp"
#include "sgwt/laplacian.hpp"
#include "sgwt/noise_estimate.hpp"

using namespace sgwt;

TEST_CASE("constant signal gives zero") {
  const WeightedGraph g = oracle::random_graph(15, 0.3, 2);
  const LaplacianMatrix L(g);
  CHECK(estimate_sigma2(g, L, Eigen::VectorXd::Constant(15, -3.2)) == doctest::Approx(0.0));
}

TEST_CASE("(1, -1) on a unit edge gives 2") {
  const WeightedGraph g(2, {{0, 1, 1.0}});
  const LaplacianMatrix L(g);
  CHECK(estimate_sigma2(g, L, Eigen::Vector2d(1.0, -1.0)) == doctest::Approx(2.0));
}

TEST_CASE("agrees with f^T L f / Tr L from the dense oracle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WeightedGraph g = oracle::random_graph(10 + seed, 0.3, seed);
    const LaplacianMatrix L(g);
    const Eigen::MatrixXd Lref = oracle::laplacian(g);
    const Eigen::VectorXd f = Eigen::VectorXd::Random(static_cast<Eigen::Index>(g.num_nodes()));
    CHECK(estimate_sigma2(g, L, f) == doctest::Approx(f.dot(Lref * f) / Lref.trace()).epsilon(1e-12));
  }
}

TEST_CASE("mean estimate follows sigma^2 + f^T L f / Tr L") {
  const WeightedGraph g = oracle::random_graph(30, 0.15, 12);
  const LaplacianMatrix L(g);
  Eigen::VectorXd f(30);
  for (std::size_t v = 0; v < 30; ++v) f[static_cast<Eigen::Index>(v)] = std::sin(3.0 * g.coord(v)->x);
  const double bias = f.dot(oracle::laplacian(g) * f) / oracle::laplacian(g).trace();
  std::mt19937_64 rng(4);
  for (double sigma : {0.025, 0.1, 0.4}) {
    std::normal_distribution<double> normal(0.0, sigma);
    const int draws = 10000;
    double sum = 0, sq = 0;
    for (int k = 0; k < draws; ++k) {
      Eigen::VectorXd noisy = f;
      for (Eigen::Index i = 0; i < noisy.size(); ++i) noisy[i] += normal(rng);
      const double s = estimate_sigma2(g, L, noisy);
      sum += s;
      sq += s * s;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sq / draws - mean * mean) / draws);
    CAPTURE(sigma);
    CHECK(std::abs(mean - (sigma * sigma + bias)) <= 3.0 * se);
  }
}

TEST_CASE("edgeless graph and length mismatch") {
  const WeightedGraph empty(3, {});
  CHECK_THROWS_AS(estimate_sigma2(empty, LaplacianMatrix(empty), Eigen::VectorXd::Zero(3)), NumericalError);
  const WeightedGraph g(2, {{0, 1, 1.0}});
  CHECK_THROWS_AS(estimate_sigma2(g, LaplacianMatrix(g), Eigen::VectorXd::Zero(3)), ContractError);
}
