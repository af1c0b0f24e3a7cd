#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "sgwt/frame.hpp"
#include "sgwt/sure.hpp"
#include "sgwt/threshold.hpp"

namespace sgwt::harness {

struct CurvePoint {
  double threshold = 0.0;
  double sure = 0.0;
  std::optional<double> risk;  // ||h(F~) - F||^2 when the truth is known
};

// SURE (and the true coefficient-domain risk if `truth` is given) of a
// uniform coordinatewise threshold at every value of `thresholds`.
std::vector<CurvePoint> sure_curve_coordinatewise(const WaveletCoefficients& c, const NoiseCovariance& cov,
                                                  ThresholdRule rule, const std::vector<double>& thresholds,
                                                  const WaveletCoefficients* truth = nullptr);

// Same for one threshold shared by all blocks of `partition`.
std::vector<CurvePoint> sure_curve_block(const WaveletCoefficients& c, const SgwtFrame& frame, double sigma2,
                                         ThresholdRule rule, const BlockPartition& partition,
                                         const std::vector<double>& thresholds,
                                         const WaveletCoefficients* truth = nullptr);

// "threshold,sure[,mse]" with a header row, full precision.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);

}  // namespace sgwt::harness
