#include "sgwt/laplacian.hpp"

#include "sgwt/errors.hpp"

namespace sgwt {

LaplacianMatrix::LaplacianMatrix(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  matrix_ = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    matrix_(i, j) -= e.w;
    matrix_(j, i) -= e.w;
    matrix_(i, i) += e.w;
    matrix_(j, j) += e.w;
  }
  trace_ = matrix_.trace();
}

double LaplacianMatrix::quadratic_form(const Eigen::VectorXd& v) const {
  if (v.size() != size()) throw ContractError("quadratic_form: vector length mismatch");
  return v.dot(matrix_ * v);
}

LaplacianMatrix laplacian(const WeightedGraph& g) { return LaplacianMatrix(g); }

}  // namespace sgwt
