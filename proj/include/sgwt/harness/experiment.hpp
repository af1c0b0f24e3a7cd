#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sgwt/frame.hpp"
#include "sgwt/graph.hpp"
#include "sgwt/laplacian.hpp"
#include "sgwt/threshold.hpp"

namespace sgwt::harness {

// How the thresholds of a method are chosen.
enum class SigmaMode {
  kOracleMse,           // minimize the true risk (needs the clean signal)
  kSureKnownSigma,      // minimize SURE with the true sigma
  kSureEstimatedSigma,  // minimize SURE with the Von Neumann estimate
};

std::string_view to_string(SigmaMode mode);
SigmaMode parse_sigma_mode(std::string_view name);

struct MethodSpec {
  Strategy strategy = Strategy::kLevelDependent;
  double beta = 2.0;
  SigmaMode mode = SigmaMode::kSureKnownSigma;
  std::optional<BlockSpec> blocks;  // block strategy only

  // e.g. "level-b2-sure-known-sigma", "block-b2-oracle-mse-count25".
  std::string id() const;
};

struct ExperimentConfig {
  std::string graph;                 // edge-list path or builtin:... source
  std::optional<std::string> coords;
  std::string signal = "sine";       // "sine" or a signal file path
  std::vector<double> sigma_levels;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  std::vector<MethodSpec> methods;
  std::size_t grid_points = 2000;
  double b = 2.0;

  // Throws ParameterError on an unusable configuration.
  void validate() const;
};

// Flat "key = value" format, '#' comments. Relative paths are resolved
// against `base_dir`. Keys: graph, coords, signal, sigma, replicates, seed,
// strategies, betas, modes, block_mode (size|count), block_values, methods,
// grid_points, b. See README for details.
ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Graph, Laplacian, frame and clean signal; built once per configuration.
struct ExperimentData {
  std::shared_ptr<const WeightedGraph> graph;
  std::shared_ptr<const LaplacianMatrix> laplacian;
  std::shared_ptr<const SgwtFrame> frame;
  Eigen::VectorXd signal;
};

ExperimentData prepare_experiment(const ExperimentConfig& cfg);

struct ReplicateResult {
  std::size_t replicate = 0;
  double sigma = 0.0;
  std::string method;
  double snr_in = 0.0;
  double snr_out = 0.0;
  double sigma_hat = 0.0;
  std::vector<double> thresholds;
  double sure_at_optimum = 0.0;  // SURE of the chosen plan with the method's sigma (true sigma for the oracle)
  double mse_at_optimum = 0.0;   // ||h(F~) - W f||^2
  std::size_t kept = 0;          // nonzero coefficients after thresholding
};

struct AggregateRow {
  std::string method;
  double sigma = 0.0;
  std::size_t count = 0;
  double snr_in_mean = 0.0, snr_in_sd = 0.0;
  double snr_out_mean = 0.0, snr_out_sd = 0.0;
  double sigma_hat_mean = 0.0, sigma_hat_sd = 0.0;
};

struct ExperimentResult {
  std::vector<ReplicateResult> rows;     // replicate-major, then sigma, then method
  std::vector<AggregateRow> aggregate;   // sigma-major, then method (config order)

  const AggregateRow* find(const std::string& method, double sigma) const;
};

// Replicate r uses noise seed cfg.seed + r for every sigma and method, so
// all methods see the same draw. Replicates run on up to `threads` workers;
// the output order does not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const ExperimentData& data, unsigned threads = 1);
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 1);

void write_results_csv(std::ostream& out, const ExperimentResult& result);
void write_aggregate_csv(std::ostream& out, const ExperimentResult& result);

}  // namespace sgwt::harness
