#include "sgwt/frame.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "sgwt/errors.hpp"

namespace sgwt {

WaveletCoefficients::WaveletCoefficients(CoefficientLayout layout, Eigen::VectorXd values)
    : layout_(layout), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != layout_.size()) {
    throw ContractError("coefficient vector has length " + std::to_string(values_.size()) +
                        ", layout expects " + std::to_string(layout_.size()));
  }
}

WaveletCoefficients WaveletCoefficients::zeros(CoefficientLayout layout) {
  return WaveletCoefficients(layout, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.size())));
}

Eigen::VectorXd::ConstSegmentReturnType WaveletCoefficients::scale(int j) const {
  const auto n = static_cast<Eigen::Index>(layout_.nodes);
  return values_.segment(j * n, n);
}

Eigen::VectorXd::SegmentReturnType WaveletCoefficients::scale(int j) {
  const auto n = static_cast<Eigen::Index>(layout_.nodes);
  return values_.segment(j * n, n);
}

SgwtFrame::SgwtFrame(std::shared_ptr<const SpectralDecomposition> decomposition,
                     PartitionOfUnity partition)
    : decomposition_(std::move(decomposition)), partition_(partition) {
  if (!decomposition_) throw ContractError("SgwtFrame: null decomposition");
  layout_ = {static_cast<std::size_t>(decomposition_->size()), partition_.max_scale()};

  const Eigen::VectorXd& lambda = decomposition_->eigenvalues();
  const Eigen::MatrixXd squared = decomposition_->eigenvectors().cwiseAbs2();
  const auto n = static_cast<Eigen::Index>(layout_.nodes);
  unit_variances_.resize(static_cast<Eigen::Index>(layout_.size()));
  for (int j = 0; j <= partition_.max_scale(); ++j) {
    Eigen::VectorXd response = lambda.unaryExpr([&](double l) { return partition_.psi(j, l); });
    unit_variances_.segment(j * n, n) = squared * response;
    sqrt_psi_.push_back(response.cwiseSqrt());
    psi_.push_back(std::move(response));
  }
}

const Eigen::VectorXd& SgwtFrame::psi_response(int j) const {
  if (j < 0 || j > partition_.max_scale()) throw ContractError("psi_response: scale out of range");
  return psi_[static_cast<std::size_t>(j)];
}

WaveletCoefficients SgwtFrame::analyze(const Eigen::VectorXd& f) const {
  if (static_cast<std::size_t>(f.size()) != layout_.nodes) {
    throw ContractError("analyze: signal has length " + std::to_string(f.size()) + ", graph has " +
                        std::to_string(layout_.nodes) + " nodes");
  }
  const auto n = static_cast<Eigen::Index>(layout_.nodes);
  const auto scales = static_cast<Eigen::Index>(layout_.scale_count());
  const Eigen::VectorXd spectral = decomposition_->to_spectral(f);
  Eigen::MatrixXd filtered(n, scales);
  for (Eigen::Index j = 0; j < scales; ++j) {
    filtered.col(j) = sqrt_psi_[static_cast<std::size_t>(j)].cwiseProduct(spectral);
  }
  Eigen::MatrixXd blocks = decomposition_->eigenvectors() * filtered;
  // Column-major storage of `blocks` is exactly the scale-major layout.
  return WaveletCoefficients(layout_, Eigen::Map<const Eigen::VectorXd>(blocks.data(), n * scales));
}

Eigen::VectorXd SgwtFrame::synthesize(const WaveletCoefficients& c) const {
  if (!(c.layout() == layout_)) throw ContractError("synthesize: coefficient layout does not match frame");
  const auto n = static_cast<Eigen::Index>(layout_.nodes);
  const auto scales = static_cast<Eigen::Index>(layout_.scale_count());
  const Eigen::Map<const Eigen::MatrixXd> blocks(c.values().data(), n, scales);
  const Eigen::MatrixXd spectral = decomposition_->eigenvectors().transpose() * blocks;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < scales; ++j) {
    sum += sqrt_psi_[static_cast<std::size_t>(j)].cwiseProduct(spectral.col(j));
  }
  return decomposition_->from_spectral(sum);
}

NoiseCovariance SgwtFrame::coefficient_variances(double sigma2) const {
  if (!(sigma2 >= 0.0)) throw ParameterError("noise variance must be >= 0");
  return NoiseCovariance{layout_, sigma2, sigma2 * unit_variances_};
}

Eigen::MatrixXd SgwtFrame::block_covariance(std::span<const std::size_t> block, double sigma2) const {
  if (block.empty()) return Eigen::MatrixXd(0, 0);
  const int scale = layout_.scale_of(block[0]);
  const auto n = static_cast<Eigen::Index>(layout_.nodes);
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(block.size()), n);
  for (std::size_t k = 0; k < block.size(); ++k) {
    if (block[k] >= layout_.size()) throw ContractError("block_covariance: index out of range");
    if (layout_.scale_of(block[k]) != scale) {
      throw ContractError("block_covariance: block mixes scales " + std::to_string(scale) + " and " +
                          std::to_string(layout_.scale_of(block[k])));
    }
    rows.row(static_cast<Eigen::Index>(k)) =
        decomposition_->eigenvectors().row(static_cast<Eigen::Index>(layout_.node_of(block[k])));
  }
  const Eigen::MatrixXd weighted = rows * psi_[static_cast<std::size_t>(scale)].asDiagonal();
  return sigma2 * (weighted * rows.transpose());
}

SgwtFrame make_frame(const WeightedGraph& g, double b) {
  auto decomposition = std::make_shared<const SpectralDecomposition>(LaplacianMatrix(g));
  const double lambda_max = decomposition->lambda_max();
  return SgwtFrame(std::move(decomposition), build_partition(lambda_max, b));
}

void write_coefficients(std::ostream& out, const WaveletCoefficients& c) {
  out << "n " << c.layout().nodes << '\n' << "J " << c.layout().max_scale << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < c.values().size(); ++i) out << c.values()[i] << '\n';
}

WaveletCoefficients read_coefficients(std::istream& in) {
  auto header = [&](const char* key) -> long long {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ss(line);
      std::string k;
      long long value = -1;
      if (!(ss >> k >> value) || k != key || value < 0) {
        throw FormatError(std::string("coefficient file: expected header '") + key + " <int>'");
      }
      return value;
    }
    throw FormatError(std::string("coefficient file: missing header '") + key + "'");
  };
  CoefficientLayout layout;
  layout.nodes = static_cast<std::size_t>(header("n"));
  layout.max_scale = static_cast<int>(header("J"));

  Eigen::VectorXd values(static_cast<Eigen::Index>(layout.size()));
  Eigen::Index k = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (k >= values.size()) throw FormatError("coefficient file: more values than n(J+1)");
    try {
      std::size_t pos = 0;
      values[k] = std::stod(line, &pos);
      if (line.find_first_not_of(" \t\r", pos) != std::string::npos) throw FormatError("trailing text");
    } catch (const std::exception&) {
      throw FormatError("coefficient file: invalid value '" + line + "'");
    }
    ++k;
  }
  if (k != values.size()) {
    throw FormatError("coefficient file: expected " + std::to_string(values.size()) + " values, got " +
                      std::to_string(k));
  }
  return WaveletCoefficients(layout, std::move(values));
}

}  // namespace sgwt
