#include "sgwt/noise_estimate.hpp"

#include "sgwt/errors.hpp"

namespace sgwt {

double estimate_sigma2(const WeightedGraph& g, const LaplacianMatrix& L, const Eigen::VectorXd& noisy) {
  if (static_cast<std::size_t>(noisy.size()) != g.num_nodes() || L.size() != noisy.size()) {
    throw ContractError("estimate_sigma2: signal length does not match the graph");
  }
  if (!(L.trace() > 0.0)) throw NumericalError("estimate_sigma2: Tr L = 0, estimator undefined on an edgeless graph");
  // Edge sum instead of the dense quadratic form: non-negative by construction.
  double energy = 0.0;
  for (const auto& e : g.edges()) {
    const double d = noisy[static_cast<Eigen::Index>(e.i)] - noisy[static_cast<Eigen::Index>(e.j)];
    energy += e.w * d * d;
  }
  return energy / L.trace();
}

}  // namespace sgwt
