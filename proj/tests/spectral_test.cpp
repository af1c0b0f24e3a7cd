#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "sgwt/errors.hpp"
#include "sgwt/laplacian.hpp"
#include "sgwt/spectral.hpp"

using namespace sgwt;

namespace {

WeightedGraph path3() { return WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }

}  // namespace

TEST_CASE("P3 spectrum is {0, 1, 3}") {
  // det(L - x I) = -x (x - 1)(x - 3) for the unit path on three nodes.
  const SpectralDecomposition d{LaplacianMatrix(path3())};
  REQUIRE(d.size() == 3);
  CHECK(d.eigenvalues()[0] == 0.0);
  CHECK(d.eigenvalues()[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(d.eigenvalues()[2] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(d.lambda_max() == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("single unit edge has spectrum {0, 2}") {
  const SpectralDecomposition d{LaplacianMatrix(WeightedGraph(2, {{0, 1, 1.0}}))};
  CHECK(d.eigenvalues()[0] == 0.0);
  CHECK(d.eigenvalues()[1] == doctest::Approx(2.0));
}

TEST_CASE("functional calculus on P3") {
  const SpectralDecomposition d{LaplacianMatrix(path3())};
  const Eigen::Vector3d e0(1, 0, 0);
  const Eigen::VectorXd v = Eigen::Vector3d(0.3, -1.2, 2.0);

  CHECK((d.apply([](double) { return 1.0; }, v) - v).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::VectorXd col0 = d.apply([](double l) { return l; }, e0);
  CHECK((col0 - Eigen::Vector3d(1, -1, 0)).cwiseAbs().maxCoeff() < 1e-12);

  // Indicator of lambda = 0 projects onto constants.
  const Eigen::VectorXd p = apply_function_of_laplacian(d, [](double l) { return l == 0.0 ? 1.0 : 0.0; }, v);
  const Eigen::Matrix3d projector = Eigen::Matrix3d::Constant(1.0 / 3.0);
  CHECK((p - projector * v).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("decomposition properties on random graphs against Eigen's solver") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 5 + (seed * 7) % 150;
    const WeightedGraph g = oracle::random_graph(n, 0.1, seed);
    const LaplacianMatrix L(g);
    const SpectralDecomposition d(L);
    const oracle::Spectrum ref = oracle::spectrum(oracle::laplacian(g));
    CAPTURE(n);

    const Eigen::MatrixXd& U = d.eigenvectors();
    const auto N = static_cast<Eigen::Index>(n);
    CHECK((U.transpose() * U - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((d.eigenvalues() - ref.values).cwiseAbs().maxCoeff() <= 1e-9 * ref.values.maxCoeff());
    CHECK(d.eigenvalues()[0] == 0.0);
    for (Eigen::Index l = 1; l < N; ++l) CHECK(d.eigenvalues()[l] >= d.eigenvalues()[l - 1]);

    const Eigen::VectorXd v = Eigen::VectorXd::Random(N);
    const Eigen::VectorXd Lv = oracle::laplacian(g) * v;
    CHECK((d.apply([](double l) { return l; }, v) - Lv).cwiseAbs().maxCoeff() <= 1e-8);

    auto rho1 = [](double l) { return std::exp(-l); };
    auto rho2 = [](double l) { return 1.0 / (1.0 + l * l); };
    const Eigen::VectorXd chained = d.apply(rho2, d.apply(rho1, v));
    const Eigen::VectorXd product = d.apply([&](double l) { return rho1(l) * rho2(l); }, v);
    CHECK((chained - product).cwiseAbs().maxCoeff() <= 1e-8);

    CHECK((d.from_spectral(d.to_spectral(v)) - v).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("disconnected graph has one zero eigenvalue per component") {
  const WeightedGraph g(5, {{0, 1, 1.0}, {2, 3, 2.0}, {3, 4, 0.5}});
  const SpectralDecomposition d{LaplacianMatrix(g)};
  CHECK(d.eigenvalues()[0] == 0.0);
  CHECK(d.eigenvalues()[1] == 0.0);
  CHECK(d.eigenvalues()[2] > 0.1);
}

TEST_CASE("edgeless graph has the zero spectrum") {
  const SpectralDecomposition d{LaplacianMatrix(WeightedGraph(4, {}))};
  CHECK(d.eigenvalues().cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.lambda_max() == 0.0);
}

TEST_CASE("length mismatches are contract errors") {
  const SpectralDecomposition d{LaplacianMatrix(path3())};
  CHECK_THROWS_AS(d.to_spectral(Eigen::VectorXd::Zero(4)), ContractError);
  CHECK_THROWS_AS(d.apply_response(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Zero(3)), ContractError);
}
