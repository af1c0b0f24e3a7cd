#pragma once

namespace sgwt {

// Partition of unity psi_0..psi_J on [0, lambda_max] generated by the
// piecewise linear cutoff omega (1 on [0, 1/b], linear down to 0 at 1):
//   psi_0(x) = omega(x),  psi_j(x) = omega(b^-j x) - omega(b^-(j-1) x).
// The scale count parameter is J = floor(log(lambda_max) / log(b)) + 2,
// clamped below at 0 for spectra shorter than 1/b.
class PartitionOfUnity {
 public:
  // Throws ParameterError unless lambda_max > 0 and b > 1.
  PartitionOfUnity(double lambda_max, double b);

  double base() const { return b_; }
  double lambda_max() const { return lambda_max_; }
  int max_scale() const { return max_scale_; }
  int scale_count() const { return max_scale_ + 1; }

  double omega(double x) const;
  // psi_j(lambda) in [0, 1]; zero for j outside [0, J].
  double psi(int j, double lambda) const;

 private:
  double lambda_max_;
  double b_;
  int max_scale_;
};

PartitionOfUnity build_partition(double lambda_max, double b);

}  // namespace sgwt
