#pragma once

#include <cstddef>
#include <vector>

#include "sgwt/frame.hpp"
#include "sgwt/threshold.hpp"

namespace sgwt {

// Stein unbiased risk estimate of ||h(F~) - F||^2 under correlated noise
// Xi ~ N(0, sigma^2 W W^*):
//   SURE(h) = -n sigma^2 + ||h(F~) - F~||^2 + 2 sum_{i,j} Cov(Xi_i, Xi_j) d_j h_i(F~).
// total is always offset + fidelity_term + divergence_term.
struct SureValue {
  double total = 0.0;
  double fidelity_term = 0.0;
  double divergence_term = 0.0;
  double offset = 0.0;

  static SureValue from_terms(double offset, double fidelity, double divergence) {
    return {offset + fidelity + divergence, fidelity, divergence, offset};
  }
};

// Boundary convention shared by every SURE in this module: for t > 0 a
// coefficient (or block) survives iff its magnitude is strictly above t, so
// the one sitting exactly at t is counted as killed, like tau does. t = 0 is
// the identity and every coefficient survives.

// Coordinatewise SURE; only the diagonal variances enter.
// Throws ContractError for block plans or layout mismatches.
SureValue sure_coordinatewise(const WaveletCoefficients& c, const ThresholdPlan& plan, const NoiseCovariance& cov);

// Sufficient statistics of the block SURE: per block, ||F~||^2_B,
// sum_{i in B} V(Xi_i) and the quadratic form sum_{i,j in B} Cov(Xi_i, Xi_j) F~_i F~_j.
struct BlockStatistics {
  double sigma2 = 0.0;
  std::size_t nodes = 0;
  std::vector<double> norm2;
  std::vector<double> variance_sum;
  std::vector<double> covariance_form;
};

// The quadratic forms are evaluated in the eigenbasis,
// F_B^T psi_j(L)_BB F_B = sum_l psi_j(lambda_l) <chi_l|_B, F_B>^2, which costs n^2
// per scale regardless of block size.
BlockStatistics block_statistics(const WaveletCoefficients& c, const BlockPartition& partition,
                                 const SgwtFrame& frame, double sigma2);

SureValue sure_block(const BlockStatistics& stats, const std::vector<double>& thresholds, double beta);

// Throws ContractError unless plan.strategy() is kBlock.
SureValue sure_block(const WaveletCoefficients& c, const ThresholdPlan& plan, const SgwtFrame& frame, double sigma2);

// Coordinatewise thresholds minimizing SURE, one per group (a single group
// for kGlobal, one per scale for kLevelDependent). Each group is optimized
// independently over the candidates {0} U {|F~_i| : i in group}; ties go to
// the smaller threshold.
ThresholdPlan optimize_coordinatewise(const WaveletCoefficients& c, const NoiseCovariance& cov, ThresholdRule rule,
                                      Strategy grouping);

// Same candidate search, but minimizing the true coefficient-domain risk
// ||h(F~) - truth||^2. Needs the noiseless coefficients truth = W f.
ThresholdPlan optimize_coordinatewise_oracle(const WaveletCoefficients& c, const WaveletCoefficients& truth,
                                             ThresholdRule rule, Strategy grouping);

// One threshold shared by all blocks, searched on grid_points uniformly
// spaced values in [0, max block norm]. Ties go to the smaller threshold.
// Throws ParameterError if grid_points < 2, ContractError on an empty
// partition.
ThresholdPlan optimize_block_grid(const WaveletCoefficients& c, const SgwtFrame& frame, double sigma2,
                                  ThresholdRule rule, const BlockPartition& partition, std::size_t grid_points);

ThresholdPlan optimize_block_grid_oracle(const WaveletCoefficients& c, const WaveletCoefficients& truth,
                                         ThresholdRule rule, const BlockPartition& partition,
                                         std::size_t grid_points);

// The grid used by optimize_block_grid: k * t_max / (grid_points - 1).
std::vector<double> uniform_grid(double t_max, std::size_t grid_points);

// ||a - b||^2 over all coefficients.
double coefficient_risk(const WaveletCoefficients& a, const WaveletCoefficients& b);

}  // namespace sgwt
