#pragma once

#include <Eigen/Dense>

#include "sgwt/graph.hpp"

namespace sgwt {

// Dense combinatorial Laplacian L = D - W.
class LaplacianMatrix {
 public:
  explicit LaplacianMatrix(const WeightedGraph& g);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  Eigen::Index size() const { return matrix_.rows(); }
  // Tr L, the sum of weighted degrees.
  double trace() const { return trace_; }

  // v^T L v.
  double quadratic_form(const Eigen::VectorXd& v) const;

 private:
  Eigen::MatrixXd matrix_;
  double trace_;
};

LaplacianMatrix laplacian(const WeightedGraph& g);

}  // namespace sgwt
