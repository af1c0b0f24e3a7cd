#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sgwt/partition.hpp"
#include "sgwt/spectral.hpp"

namespace sgwt {

// Scale-major layout of n(J+1) wavelet coefficients: index = j * n + v.
struct CoefficientLayout {
  std::size_t nodes = 0;
  int max_scale = 0;

  std::size_t scale_count() const { return static_cast<std::size_t>(max_scale) + 1; }
  std::size_t size() const { return nodes * scale_count(); }
  std::size_t index(int scale, std::size_t node) const { return static_cast<std::size_t>(scale) * nodes + node; }
  int scale_of(std::size_t i) const { return static_cast<int>(i / nodes); }
  std::size_t node_of(std::size_t i) const { return i % nodes; }

  bool operator==(const CoefficientLayout&) const = default;
};

class WaveletCoefficients {
 public:
  WaveletCoefficients() = default;
  // Throws ContractError if values.size() != layout.size().
  WaveletCoefficients(CoefficientLayout layout, Eigen::VectorXd values);

  static WaveletCoefficients zeros(CoefficientLayout layout);

  const CoefficientLayout& layout() const { return layout_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

  // Coefficients of one scale (n entries).
  Eigen::VectorXd::ConstSegmentReturnType scale(int j) const;
  Eigen::VectorXd::SegmentReturnType scale(int j);

 private:
  CoefficientLayout layout_;
  Eigen::VectorXd values_;
};

// Diagonal of sigma^2 W W^*, i.e. the variances of the transformed noise.
struct NoiseCovariance {
  CoefficientLayout layout;
  double sigma2 = 0.0;
  Eigen::VectorXd variances;
};

// Tight frame {sqrt(psi_j)(L) delta_v}: analysis W, synthesis W^* with
// W^* W = Id. Immutable; the decomposition is shared between frames built
// on the same graph.
class SgwtFrame {
 public:
  SgwtFrame(std::shared_ptr<const SpectralDecomposition> decomposition, PartitionOfUnity partition);

  const SpectralDecomposition& decomposition() const { return *decomposition_; }
  const PartitionOfUnity& partition() const { return partition_; }
  std::size_t nodes() const { return layout_.nodes; }
  const CoefficientLayout& layout() const { return layout_; }

  // psi_j evaluated on the spectrum.
  const Eigen::VectorXd& psi_response(int j) const;

  WaveletCoefficients analyze(const Eigen::VectorXd& f) const;
  Eigen::VectorXd synthesize(const WaveletCoefficients& c) const;

  NoiseCovariance coefficient_variances(double sigma2) const;

  // sigma^2 (psi_j(L))_{u mod n, v mod n} for u, v in `block`. All indices
  // must lie in one scale; throws ContractError otherwise.
  Eigen::MatrixXd block_covariance(std::span<const std::size_t> block, double sigma2) const;

 private:
  std::shared_ptr<const SpectralDecomposition> decomposition_;
  PartitionOfUnity partition_;
  CoefficientLayout layout_;
  std::vector<Eigen::VectorXd> psi_;       // per scale, on the spectrum
  std::vector<Eigen::VectorXd> sqrt_psi_;  // per scale, on the spectrum
  Eigen::VectorXd unit_variances_;         // diag(W W^*)
};

// Builds L, its decomposition and the partition in one go.
SgwtFrame make_frame(const WeightedGraph& g, double b = 2.0);

// Text form: "n <n>" / "J <J>" header, then one value per line in
// scale-major order.
void write_coefficients(std::ostream& out, const WaveletCoefficients& c);
WaveletCoefficients read_coefficients(std::istream& in);

}  // namespace sgwt
