#include "sgwt/harness/curve.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace sgwt::harness {

std::vector<CurvePoint> sure_curve_coordinatewise(const WaveletCoefficients& c, const NoiseCovariance& cov,
                                                  ThresholdRule rule, const std::vector<double>& thresholds,
                                                  const WaveletCoefficients* truth) {
  std::vector<CurvePoint> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto plan = ThresholdPlan::global(c.layout(), rule, t);
    CurvePoint point{t, sure_coordinatewise(c, plan, cov).total, std::nullopt};
    if (truth) point.risk = coefficient_risk(apply_plan(c, plan), *truth);
    curve.push_back(point);
  }
  return curve;
}

std::vector<CurvePoint> sure_curve_block(const WaveletCoefficients& c, const SgwtFrame& frame, double sigma2,
                                         ThresholdRule rule, const BlockPartition& partition,
                                         const std::vector<double>& thresholds, const WaveletCoefficients* truth) {
  const BlockStatistics stats = block_statistics(c, partition, frame, sigma2);
  std::vector<CurvePoint> curve;
  curve.reserve(thresholds.size());
  std::vector<double> per_block(partition.size());
  for (double t : thresholds) {
    std::fill(per_block.begin(), per_block.end(), t);
    CurvePoint point{t, sure_block(stats, per_block, rule.beta()).total, std::nullopt};
    if (truth) point.risk = coefficient_risk(apply_plan(c, ThresholdPlan::block(partition, rule, per_block)), *truth);
    curve.push_back(point);
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  const bool with_risk = !curve.empty() && curve.front().risk.has_value();
  out << (with_risk ? "threshold,sure,mse\n" : "threshold,sure\n") << std::setprecision(17);
  for (const auto& p : curve) {
    out << p.threshold << ',' << p.sure;
    if (with_risk) out << ',' << p.risk.value_or(0.0);
    out << '\n';
  }
}

}  // namespace sgwt::harness
