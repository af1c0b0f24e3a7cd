#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>

#include <Eigen/Dense>

#include "sgwt/graph.hpp"

namespace sgwt::harness {

// f(v) = sin(x_v). Throws ContractError if some node has no coordinates.
Eigen::VectorXd sine_signal(const WeightedGraph& g);

// Standard normal stream that is reproducible across platforms and standard
// library implementations: std::mt19937_64 (fully specified by the standard)
// feeds 53-bit uniforms u = (x >> 11) * 2^-53 into the Box-Muller transform
//   z0 = sqrt(-2 ln(1 - u1)) cos(2 pi u2),  z1 = sqrt(-2 ln(1 - u1)) sin(2 pi u2),
// and both outputs are used in order.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// f + sigma * z with z drawn from GaussianStream(seed).
Eigen::VectorXd add_noise(const Eigen::VectorXd& f, double sigma, std::uint64_t seed);

// 10 log10(||reference||^2 / ||reference - estimate||^2); +infinity when the
// estimate is exact. Throws ContractError for a zero reference.
double snr_db(const Eigen::VectorXd& reference, const Eigen::VectorXd& estimate);

// One real per line in node order; '#' comment lines and blank lines skipped.
Eigen::VectorXd read_signal(std::istream& in);
Eigen::VectorXd read_signal_file(const std::filesystem::path& path);
void write_signal(std::ostream& out, const Eigen::VectorXd& f);

}  // namespace sgwt::harness
