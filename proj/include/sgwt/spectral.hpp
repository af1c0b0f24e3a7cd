#pragma once

#include <utility>

#include <Eigen/Dense>

#include "sgwt/laplacian.hpp"

namespace sgwt {

// Full eigendecomposition L = sum_l lambda_l chi_l chi_l^T with eigenvalues in
// ascending order. Eigenvalues within 1e-9 * lambda_max of zero are clamped
// to exactly 0 so that spectral filters evaluated at the bottom of the
// spectrum see lambda = 0.
//
// LAPACK dsyevd does the work. Its output is checked against L on two probe
// vectors; if the check fails (some OpenBLAS builds pick broken kernels on
// newer CPUs) the decomposition is recomputed with Eigen's solver.
class SpectralDecomposition {
 public:
  enum class Backend { kLapack, kEigenFallback };

  // Throws NumericalError when the eigensolver fails or L has an eigenvalue
  // below -1e-9 * lambda_max (not positive semi-definite).
  explicit SpectralDecomposition(const LaplacianMatrix& laplacian);

  Eigen::Index size() const { return eigenvalues_.size(); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  // Column l is the unit eigenvector paired with eigenvalues()[l].
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  double lambda_max() const { return eigenvalues_.size() ? eigenvalues_[eigenvalues_.size() - 1] : 0.0; }
  Backend backend() const { return backend_; }

  // Coordinates of v in the eigenbasis (chi^T v).
  Eigen::VectorXd to_spectral(const Eigen::VectorXd& v) const;
  // Inverse of to_spectral.
  Eigen::VectorXd from_spectral(const Eigen::VectorXd& coeffs) const;

  // rho(L) v, where rho is given by its values on the spectrum
  // (response[l] = rho(lambda_l)).
  Eigen::VectorXd apply_response(const Eigen::VectorXd& response, const Eigen::VectorXd& v) const;

  // rho(L) v for a scalar function rho defined on [0, lambda_max].
  template <typename Fn>
  Eigen::VectorXd apply(Fn&& rho, const Eigen::VectorXd& v) const {
    return apply_response(eigenvalues_.unaryExpr(std::forward<Fn>(rho)), v);
  }

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  Backend backend_ = Backend::kLapack;
};

SpectralDecomposition spectral_decomposition(const LaplacianMatrix& laplacian);

template <typename Fn>
Eigen::VectorXd apply_function_of_laplacian(const SpectralDecomposition& d, Fn&& rho,
                                            const Eigen::VectorXd& v) {
  return d.apply(std::forward<Fn>(rho), v);
}

}  // namespace sgwt
