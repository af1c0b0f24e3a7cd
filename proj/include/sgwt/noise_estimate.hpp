#pragma once

#include <Eigen/Dense>

#include "sgwt/graph.hpp"
#include "sgwt/laplacian.hpp"

namespace sgwt {

// Graph Von Neumann estimator of the noise variance:
//   sigma^2_hat = f~^T L f~ / Tr L = sum_{edges} w_ij (f~_i - f~_j)^2 / Tr L.
// Biased upward by f^T L f / Tr L for a non-constant clean signal f.
// Throws NumericalError on an edgeless graph (Tr L = 0).
double estimate_sigma2(const WeightedGraph& g, const LaplacianMatrix& L, const Eigen::VectorXd& noisy);

}  // namespace sgwt
