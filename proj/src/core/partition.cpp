#include "sgwt/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgwt/errors.hpp"

namespace sgwt {

PartitionOfUnity::PartitionOfUnity(double lambda_max, double b) : lambda_max_(lambda_max), b_(b) {
  if (!(b > 1.0) || !std::isfinite(b)) {
    throw ParameterError("partition base b must be > 1, got " + std::to_string(b));
  }
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw ParameterError("lambda_max must be > 0, got " + std::to_string(lambda_max));
  }
  const int j = static_cast<int>(std::floor(std::log(lambda_max) / std::log(b))) + 2;
  max_scale_ = std::max(j, 0);
}

double PartitionOfUnity::omega(double x) const {
  const double knee = 1.0 / b_;
  if (x <= knee) return 1.0;
  if (x >= 1.0) return 0.0;
  return (1.0 - x) / (1.0 - knee);
}

double PartitionOfUnity::psi(int j, double lambda) const {
  if (j < 0 || j > max_scale_) return 0.0;
  if (j == 0) return omega(lambda);
  const double coarse = omega(std::pow(b_, -j) * lambda);
  const double fine = omega(std::pow(b_, -j + 1) * lambda);
  return std::clamp(coarse - fine, 0.0, 1.0);
}

PartitionOfUnity build_partition(double lambda_max, double b) { return PartitionOfUnity(lambda_max, b); }

}  // namespace sgwt
