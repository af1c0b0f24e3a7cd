#include "sgwt/spectral.hpp"

#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgwt/errors.hpp"

namespace sgwt {

namespace {

constexpr double kZeroClamp = 1e-9;
constexpr double kProbeTolerance = 1e-8;

// Relative residuals of L x = U diag(lambda) U^T x and U^T U x = x on two
// fixed probes; O(n^2).
bool decomposition_consistent(const Eigen::MatrixXd& L, const Eigen::VectorXd& lambda, const Eigen::MatrixXd& U) {
  const Eigen::Index n = L.rows();
  Eigen::MatrixXd probes(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    probes(i, 0) = 1.0 + static_cast<double>(i % 7) / 7.0;
    probes(i, 1) = std::sin(0.37 * static_cast<double>(i) + 0.1);
  }
  const double scale = std::max(L.cwiseAbs().rowwise().sum().maxCoeff(), 1.0);
  const Eigen::MatrixXd spectral = U.transpose() * probes;
  const Eigen::MatrixXd applied = U * (lambda.asDiagonal() * spectral);
  const Eigen::MatrixXd reference = L * probes;
  for (Eigen::Index k = 0; k < probes.cols(); ++k) {
    const double norm = probes.col(k).norm();
    if (!((applied.col(k) - reference.col(k)).norm() <= kProbeTolerance * scale * norm)) return false;
    if (!((U * spectral.col(k) - probes.col(k)).norm() <= kProbeTolerance * norm)) return false;
  }
  return true;
}

}  // namespace

SpectralDecomposition::SpectralDecomposition(const LaplacianMatrix& laplacian) {
  const Eigen::MatrixXd& L = laplacian.matrix();
  const Eigen::Index n = L.rows();
  eigenvectors_ = L;
  eigenvalues_.resize(n);
  if (n == 0) return;

  // dsyevd returns ascending eigenvalues and overwrites the input with the
  // orthonormal eigenvectors (column-major, matching Eigen's default).
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n), eigenvectors_.data(),
                     static_cast<lapack_int>(n), eigenvalues_.data());
  if (info != 0) {
    std::ostringstream msg;
    msg << "symmetric eigensolver failed (dsyevd info = " << info << ") on " << n << "x" << n
        << " Laplacian, trace = " << laplacian.trace() << ", max |L_ij| = " << L.cwiseAbs().maxCoeff();
    throw NumericalError(msg.str());
  }
  if (!decomposition_consistent(L, eigenvalues_, eigenvectors_)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
    backend_ = Backend::kEigenFallback;
  }

  const double scale = std::max(std::abs(eigenvalues_[n - 1]), 1.0);
  for (Eigen::Index l = 0; l < n; ++l) {
    double& lambda = eigenvalues_[l];
    if (std::abs(lambda) <= kZeroClamp * scale) {
      lambda = 0.0;
    } else if (lambda < 0.0) {
      std::ostringstream msg;
      msg << "Laplacian is not positive semi-definite: eigenvalue " << lambda << " at index " << l;
      throw NumericalError(msg.str());
    }
  }
}

Eigen::VectorXd SpectralDecomposition::to_spectral(const Eigen::VectorXd& v) const {
  if (v.size() != size()) throw ContractError("to_spectral: vector length mismatch");
  return eigenvectors_.transpose() * v;
}

Eigen::VectorXd SpectralDecomposition::from_spectral(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != size()) throw ContractError("from_spectral: vector length mismatch");
  return eigenvectors_ * coeffs;
}

Eigen::VectorXd SpectralDecomposition::apply_response(const Eigen::VectorXd& response,
                                                      const Eigen::VectorXd& v) const {
  if (response.size() != size()) throw ContractError("apply_response: response length mismatch");
  return from_spectral(response.cwiseProduct(to_spectral(v)));
}

SpectralDecomposition spectral_decomposition(const LaplacianMatrix& laplacian) {
  return SpectralDecomposition(laplacian);
}

}  // namespace sgwt
