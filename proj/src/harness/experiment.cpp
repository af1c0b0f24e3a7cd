#include "sgwt/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "sgwt/errors.hpp"
#include "sgwt/harness/graph_source.hpp"
#include "sgwt/harness/signals.hpp"
#include "sgwt/noise_estimate.hpp"
#include "sgwt/sure.hpp"

namespace sgwt::harness {

std::string_view to_string(SigmaMode mode) {
  switch (mode) {
    case SigmaMode::kOracleMse: return "oracle-mse";
    case SigmaMode::kSureKnownSigma: return "sure-known-sigma";
    case SigmaMode::kSureEstimatedSigma: return "sure-estimated-sigma";
  }
  return "?";
}

SigmaMode parse_sigma_mode(std::string_view name) {
  if (name == "oracle-mse" || name == "oracle") return SigmaMode::kOracleMse;
  if (name == "sure-known-sigma" || name == "known") return SigmaMode::kSureKnownSigma;
  if (name == "sure-estimated-sigma" || name == "estimated") return SigmaMode::kSureEstimatedSigma;
  throw ParameterError("unknown sigma mode '" + std::string(name) + "'");
}

std::string MethodSpec::id() const {
  std::ostringstream out;
  out << to_string(strategy) << "-b" << beta << '-' << to_string(mode);
  if (blocks) out << '-' << blocks->label();
  return out.str();
}

void ExperimentConfig::validate() const {
  if (graph.empty()) throw ParameterError("experiment: no graph source");
  if (replicates < 1) throw ParameterError("experiment: replicates must be >= 1");
  if (sigma_levels.empty()) throw ParameterError("experiment: no sigma levels");
  for (double s : sigma_levels) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("experiment: sigma levels must be >= 0");
  }
  if (methods.empty()) throw ParameterError("experiment: no methods");
  for (const auto& m : methods) {
    ThresholdRule{m.beta};
    if (m.strategy == Strategy::kBlock && !m.blocks) throw ParameterError("experiment: block method without blocks");
  }
  if (grid_points < 2) throw ParameterError("experiment: grid_points must be >= 2");
  if (!(b > 1.0)) throw ParameterError("experiment: b must be > 1");
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

template <typename T>
T parse_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) {
    throw FormatError("config: bad value '" + text + "' for key '" + key + "'");
  }
  return value;
}

std::string resolve(const std::string& path, const std::filesystem::path& base_dir) {
  if (path.rfind("builtin:", 0) == 0 || base_dir.empty()) return path;
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (base_dir / p).string();
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::vector<Strategy> strategies;
  std::vector<double> betas;
  std::vector<SigmaMode> modes;
  std::vector<std::string> explicit_methods;
  BlockSpec::Kind block_kind = BlockSpec::Kind::kSize;
  std::vector<std::size_t> block_values;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) throw FormatError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "graph") {
      cfg.graph = resolve(value, base_dir);
    } else if (key == "coords") {
      cfg.coords = resolve(value, base_dir);
    } else if (key == "signal") {
      cfg.signal = value == "sine" ? value : resolve(value, base_dir);
    } else if (key == "sigma") {
      cfg.sigma_levels.clear();
      for (const auto& s : split_list(value)) cfg.sigma_levels.push_back(parse_value<double>(s, key));
    } else if (key == "replicates") {
      cfg.replicates = parse_value<std::size_t>(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_value<std::uint64_t>(value, key);
    } else if (key == "strategies") {
      for (const auto& s : split_list(value)) strategies.push_back(parse_strategy(s));
    } else if (key == "betas") {
      for (const auto& s : split_list(value)) betas.push_back(parse_value<double>(s, key));
    } else if (key == "modes") {
      for (const auto& s : split_list(value)) modes.push_back(parse_sigma_mode(s));
    } else if (key == "methods") {
      explicit_methods = split_list(value);
    } else if (key == "block_mode") {
      if (value != "size" && value != "count") throw FormatError("config: block_mode must be 'size' or 'count'");
      block_kind = value == "size" ? BlockSpec::Kind::kSize : BlockSpec::Kind::kCount;
    } else if (key == "block_values") {
      for (const auto& s : split_list(value)) block_values.push_back(parse_value<std::size_t>(s, key));
    } else if (key == "grid_points") {
      cfg.grid_points = parse_value<std::size_t>(value, key);
    } else if (key == "b") {
      cfg.b = parse_value<double>(value, key);
    } else {
      throw FormatError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  auto add_method = [&](Strategy s, double beta, SigmaMode mode) {
    if (s != Strategy::kBlock) {
      cfg.methods.push_back({s, beta, mode, std::nullopt});
      return;
    }
    if (block_values.empty()) throw FormatError("config: block strategy requires block_values");
    for (std::size_t v : block_values) cfg.methods.push_back({s, beta, mode, BlockSpec{block_kind, v}});
  };
  if (!explicit_methods.empty()) {
    for (const auto& m : explicit_methods) {
      const auto parts = split_list(m, ':');
      if (parts.size() != 3) throw FormatError("config: method '" + m + "' must be strategy:beta:mode");
      add_method(parse_strategy(parts[0]), parse_value<double>(parts[1], "methods"), parse_sigma_mode(parts[2]));
    }
  } else {
    if (strategies.empty() || betas.empty() || modes.empty()) {
      throw FormatError("config: give either 'methods' or all of 'strategies', 'betas', 'modes'");
    }
    for (Strategy s : strategies)
      for (double beta : betas)
        for (SigmaMode mode : modes) add_method(s, beta, mode);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config '" + path.string() + "'");
  return parse_experiment_config(in, path.parent_path());
}

ExperimentData prepare_experiment(const ExperimentConfig& cfg) {
  ExperimentData data;
  data.graph = std::make_shared<const WeightedGraph>(load_graph_source(cfg.graph, cfg.coords));
  data.laplacian = std::make_shared<const LaplacianMatrix>(*data.graph);
  auto decomposition = std::make_shared<const SpectralDecomposition>(*data.laplacian);
  const double lambda_max = decomposition->lambda_max();
  data.frame = std::make_shared<const SgwtFrame>(std::move(decomposition), build_partition(lambda_max, cfg.b));
  data.signal = cfg.signal == "sine" ? sine_signal(*data.graph) : read_signal_file(cfg.signal);
  if (static_cast<std::size_t>(data.signal.size()) != data.graph->num_nodes()) {
    throw ContractError("experiment: signal length does not match the graph");
  }
  return data;
}

const AggregateRow* ExperimentResult::find(const std::string& method, double sigma) const {
  for (const auto& row : aggregate) {
    if (row.method == method && row.sigma == sigma) return &row;
  }
  return nullptr;
}

namespace {

struct ReplicateContext {
  const ExperimentConfig& cfg;
  const ExperimentData& data;
  const WaveletCoefficients& truth;
  const std::map<std::string, BlockPartition>& partitions;
};

std::vector<ReplicateResult> run_replicate(const ReplicateContext& ctx, std::size_t replicate) {
  const SgwtFrame& frame = *ctx.data.frame;
  const Eigen::VectorXd& clean = ctx.data.signal;
  std::vector<ReplicateResult> rows;
  for (double sigma : ctx.cfg.sigma_levels) {
    const Eigen::VectorXd noisy = add_noise(clean, sigma, ctx.cfg.seed + replicate);
    const WaveletCoefficients coeffs = frame.analyze(noisy);
    const double sigma2_hat = estimate_sigma2(*ctx.data.graph, *ctx.data.laplacian, noisy);
    const double snr_in = snr_db(clean, noisy);

    for (const auto& method : ctx.cfg.methods) {
      const ThresholdRule rule(method.beta);
      const double sigma2 = method.mode == SigmaMode::kSureEstimatedSigma ? sigma2_hat : sigma * sigma;
      const bool oracle = method.mode == SigmaMode::kOracleMse;

      std::optional<ThresholdPlan> plan;
      double sure = 0.0;
      if (method.strategy == Strategy::kBlock) {
        const BlockPartition& partition = ctx.partitions.at(method.blocks->label());
        plan = oracle ? optimize_block_grid_oracle(coeffs, ctx.truth, rule, partition, ctx.cfg.grid_points)
                      : optimize_block_grid(coeffs, frame, sigma2, rule, partition, ctx.cfg.grid_points);
        sure = sure_block(coeffs, *plan, frame, sigma2).total;
      } else {
        plan = oracle ? optimize_coordinatewise_oracle(coeffs, ctx.truth, rule, method.strategy)
                      : optimize_coordinatewise(coeffs, frame.coefficient_variances(sigma2), rule, method.strategy);
        sure = sure_coordinatewise(coeffs, *plan, frame.coefficient_variances(sigma2)).total;
      }

      const WaveletCoefficients estimate = apply_plan(coeffs, *plan);
      const auto& t = plan->thresholds();
      // With every threshold at 0 the estimator is the identity and W^* W = Id.
      const bool identity = std::all_of(t.begin(), t.end(), [](double x) { return x == 0.0; });
      const Eigen::VectorXd denoised = identity ? noisy : frame.synthesize(estimate);

      ReplicateResult row;
      row.replicate = replicate;
      row.sigma = sigma;
      row.method = method.id();
      row.snr_in = snr_in;
      row.snr_out = snr_db(clean, denoised);
      row.sigma_hat = std::sqrt(sigma2_hat);
      row.thresholds = t;
      row.sure_at_optimum = sure;
      row.mse_at_optimum = coefficient_risk(estimate, ctx.truth);
      row.kept = static_cast<std::size_t>((estimate.values().array() != 0.0).count());
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void mean_sd(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  sd = 0.0;
  // Also covers a column that is +inf throughout (exact reconstructions).
  if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) return;
  for (double x : xs) sd += (x - mean) * (x - mean);
  sd = std::sqrt(sd / static_cast<double>(xs.size() - 1));
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const ExperimentData& data, unsigned threads) {
  cfg.validate();
  const WaveletCoefficients truth = data.frame->analyze(data.signal);
  std::map<std::string, BlockPartition> partitions;
  for (const auto& m : cfg.methods) {
    if (m.blocks) partitions.try_emplace(m.blocks->label(), data.frame->layout(), *m.blocks);
  }
  const ReplicateContext ctx{cfg, data, truth, partitions};

  std::vector<std::vector<ReplicateResult>> per_replicate(cfg.replicates);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::size_t failed_replicate = 0;
  auto worker = [&] {
    for (std::size_t r = next++; r < cfg.replicates; r = next++) {
      try {
        per_replicate[r] = run_replicate(ctx, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure || r < failed_replicate) {
          failure = std::current_exception();
          failed_replicate = r;
        }
        next = cfg.replicates;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.replicates)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw Error("replicate " + std::to_string(failed_replicate) + ": " + e.what());
    }
  }

  ExperimentResult result;
  for (auto& rows : per_replicate) {
    for (auto& row : rows) result.rows.push_back(std::move(row));
  }
  for (double sigma : cfg.sigma_levels) {
    for (const auto& m : cfg.methods) {
      const std::string id = m.id();
      std::vector<double> snr_in, snr_out, sigma_hat;
      for (const auto& row : result.rows) {
        if (row.method != id || row.sigma != sigma) continue;
        snr_in.push_back(row.snr_in);
        snr_out.push_back(row.snr_out);
        sigma_hat.push_back(row.sigma_hat);
      }
      AggregateRow agg;
      agg.method = id;
      agg.sigma = sigma;
      agg.count = snr_out.size();
      mean_sd(snr_in, agg.snr_in_mean, agg.snr_in_sd);
      mean_sd(snr_out, agg.snr_out_mean, agg.snr_out_sd);
      mean_sd(sigma_hat, agg.sigma_hat_mean, agg.sigma_hat_sd);
      result.aggregate.push_back(std::move(agg));
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  return run_experiment(cfg, prepare_experiment(cfg), threads);
}

void write_results_csv(std::ostream& out, const ExperimentResult& result) {
  out << "replicate,sigma,method,snr_in,snr_out,sigma_hat,sure_at_optimum,mse_at_optimum,kept,thresholds\n";
  out << std::setprecision(17);
  for (const auto& row : result.rows) {
    out << row.replicate << ',' << row.sigma << ',' << row.method << ',' << row.snr_in << ',' << row.snr_out << ','
        << row.sigma_hat << ',' << row.sure_at_optimum << ',' << row.mse_at_optimum << ',' << row.kept << ',';
    for (std::size_t g = 0; g < row.thresholds.size(); ++g) out << (g ? ";" : "") << row.thresholds[g];
    out << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const ExperimentResult& result) {
  out << "method,sigma,replicates,snr_in_mean,snr_in_sd,snr_out_mean,snr_out_sd,sigma_hat_mean,sigma_hat_sd\n";
  out << std::setprecision(17);
  for (const auto& row : result.aggregate) {
    out << row.method << ',' << row.sigma << ',' << row.count << ',' << row.snr_in_mean << ',' << row.snr_in_sd << ','
        << row.snr_out_mean << ',' << row.snr_out_sd << ',' << row.sigma_hat_mean << ',' << row.sigma_hat_sd << '\n';
  }
}

}  // namespace sgwt::harness
