// sgwt: command-line front end for spectral graph wavelet denoising.
//
//   sgwt transform      --graph G --signal f.txt --out c.txt [--inverse]
//   sgwt denoise        --graph G --signal noisy.txt --out fhat.txt --strategy level --beta 2 --sigma auto
//   sgwt estimate-sigma --graph G --signal noisy.txt
//   sgwt benchmark      --config exp.cfg --seed 1 --out aggregate.csv
//   sgwt sure-curve     --graph G --signal noisy.txt --sigma 0.1 --out curve.csv
//
// Exit status: 0 success, 1 usage error, 2 data or numerical error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "sgwt/errors.hpp"
#include "sgwt/frame.hpp"
#include "sgwt/harness/curve.hpp"
#include "sgwt/harness/experiment.hpp"
#include "sgwt/harness/graph_source.hpp"
#include "sgwt/harness/signals.hpp"
#include "sgwt/laplacian.hpp"
#include "sgwt/noise_estimate.hpp"
#include "sgwt/sure.hpp"
#include "sgwt/threshold.hpp"

namespace {

using namespace sgwt;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt6(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << x;
  return out.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << std::setprecision(17);
  return out;
}

struct GraphArgs {
  std::string graph;
  std::string coords;
  double b = 2.0;
};

void add_graph_options(CLI::App* cmd, GraphArgs& args) {
  cmd->add_option("--graph", args.graph, "Edge-list file or builtin:grid:RxC / builtin:rgg:N:R:SEED / builtin:er:N:P:SEED")
      ->required();
  cmd->add_option("--coords", args.coords, "Node coordinate file (i x y per line)");
  cmd->add_option("--b", args.b, "Dilation base of the partition of unity")->capture_default_str();
}

WeightedGraph load_graph(const GraphArgs& args) {
  return harness::load_graph_source(args.graph, args.coords.empty() ? std::nullopt
                                                                    : std::optional<std::string>(args.coords));
}

struct Setup {
  std::shared_ptr<const WeightedGraph> graph;
  std::shared_ptr<const LaplacianMatrix> laplacian;
  std::shared_ptr<const SgwtFrame> frame;
};

Setup build_setup(const GraphArgs& args) {
  Setup s;
  s.graph = std::make_shared<const WeightedGraph>(load_graph(args));
  s.laplacian = std::make_shared<const LaplacianMatrix>(*s.graph);
  auto decomposition = std::make_shared<const SpectralDecomposition>(*s.laplacian);
  const double lambda_max = decomposition->lambda_max();
  s.frame = std::make_shared<const SgwtFrame>(std::move(decomposition), build_partition(lambda_max, args.b));
  return s;
}

Eigen::VectorXd load_signal(const std::string& path, std::size_t n) {
  Eigen::VectorXd f = harness::read_signal_file(path);
  if (static_cast<std::size_t>(f.size()) != n) {
    throw FormatError("signal '" + path + "' has " + std::to_string(f.size()) + " values, graph has " +
                      std::to_string(n) + " nodes");
  }
  return f;
}

// "auto" or a non-negative real.
double resolve_sigma2(const std::string& sigma, const Setup& s, const Eigen::VectorXd& noisy, bool& estimated) {
  estimated = sigma == "auto";
  if (estimated) return estimate_sigma2(*s.graph, *s.laplacian, noisy);
  std::istringstream in(sigma);
  double value = 0.0;
  if (!(in >> value) || !(in >> std::ws).eof() || !(value >= 0.0) || !std::isfinite(value)) {
    throw UsageError("--sigma must be 'auto' or a non-negative number, got '" + sigma + "'");
  }
  return value * value;
}

struct ThresholdArgs {
  std::string strategy = "level";
  double beta = 2.0;
  std::size_t block_size = 0;
  std::size_t block_count = 0;
  std::size_t grid_points = 2000;
  std::string sigma = "auto";
};

void add_threshold_options(CLI::App* cmd, ThresholdArgs& args, bool coordinatewise_only_global) {
  auto* strategy = cmd->add_option("--strategy", args.strategy, "global, level or block")->capture_default_str();
  strategy->check(coordinatewise_only_global ? CLI::IsMember({"global", "block"})
                                             : CLI::IsMember({"global", "level", "block"}));
  cmd->add_option("--beta", args.beta, "Threshold exponent (1 soft, 2 James-Stein)")->capture_default_str();
  auto* size = cmd->add_option("--block-size", args.block_size, "Coefficients per block");
  auto* count = cmd->add_option("--block-count", args.block_count, "Blocks per scale");
  size->excludes(count);
  count->excludes(size);
  cmd->add_option("--grid-points", args.grid_points, "Grid size for the block threshold search")
      ->capture_default_str();
  cmd->add_option("--sigma", args.sigma, "Noise level: 'auto' (graph Von Neumann estimate) or a value")
      ->capture_default_str();
}

BlockPartition make_partition(const ThresholdArgs& args, const CoefficientLayout& layout) {
  if (args.block_size == 0 && args.block_count == 0) {
    throw UsageError("--strategy block needs --block-size or --block-count");
  }
  const BlockSpec spec = args.block_size ? BlockSpec{BlockSpec::Kind::kSize, args.block_size}
                                         : BlockSpec{BlockSpec::Kind::kCount, args.block_count};
  return BlockPartition(layout, spec);
}

int run_transform(const GraphArgs& g, const std::string& signal, const std::string& out_path, bool inverse) {
  const Setup s = build_setup(g);
  auto out = open_output(out_path);
  if (inverse) {
    std::ifstream in(signal);
    if (!in) throw FormatError("cannot open '" + signal + "'");
    const WaveletCoefficients c = read_coefficients(in);
    if (!(c.layout() == s.frame->layout())) {
      throw FormatError("coefficient file layout (n, J) does not match the frame built on this graph");
    }
    harness::write_signal(out, s.frame->synthesize(c));
  } else {
    write_coefficients(out, s.frame->analyze(load_signal(signal, s.graph->num_nodes())));
  }
  std::cout << (inverse ? "synthesized " : "analyzed ") << s.graph->num_nodes() << " nodes, "
            << s.frame->layout().scale_count() << " scales -> " << out_path << '\n';
  return 0;
}

int run_denoise(const GraphArgs& g, const ThresholdArgs& t, const std::string& signal, const std::string& out_path,
                const std::string& truth_path, const std::string& plan_out) {
  const Setup s = build_setup(g);
  const Eigen::VectorXd noisy = load_signal(signal, s.graph->num_nodes());
  bool estimated = false;
  const double sigma2 = resolve_sigma2(t.sigma, s, noisy, estimated);
  const ThresholdRule rule(t.beta);
  const Strategy strategy = parse_strategy(t.strategy);
  const WaveletCoefficients c = s.frame->analyze(noisy);

  std::optional<ThresholdPlan> plan;
  SureValue sure;
  if (strategy == Strategy::kBlock) {
    BlockPartition partition = make_partition(t, s.frame->layout());
    plan = optimize_block_grid(c, *s.frame, sigma2, rule, partition, t.grid_points);
    sure = sure_block(c, *plan, *s.frame, sigma2);
  } else {
    const NoiseCovariance cov = s.frame->coefficient_variances(sigma2);
    plan = optimize_coordinatewise(c, cov, rule, strategy);
    sure = sure_coordinatewise(c, *plan, cov);
  }
  const auto& th = plan->thresholds();
  const bool identity = std::all_of(th.begin(), th.end(), [](double x) { return x == 0.0; });
  const Eigen::VectorXd denoised = identity ? noisy : s.frame->synthesize(apply_plan(c, *plan));

  auto out = open_output(out_path);
  harness::write_signal(out, denoised);
  if (!plan_out.empty()) {
    auto plan_file = open_output(plan_out);
    write_plan(plan_file, *plan);
  }

  std::cout << "strategy " << to_string(strategy) << ", beta " << fmt6(t.beta) << '\n';
  std::cout << "sigma " << fmt6(std::sqrt(sigma2)) << (estimated ? " (estimated)" : " (given)") << '\n';
  if (strategy == Strategy::kBlock) {
    std::cout << "blocks " << plan->group_count() << " (" << plan->blocks()->spec()->label() << "), threshold "
              << fmt6(th.front()) << '\n';
  } else if (strategy == Strategy::kGlobal) {
    std::cout << "threshold " << fmt6(th.front()) << '\n';
  } else {
    for (std::size_t j = 0; j < th.size(); ++j) std::cout << "scale " << j << " threshold " << fmt6(th[j]) << '\n';
  }
  std::cout << "SURE " << fmt6(sure.total) << '\n';
  if (!truth_path.empty()) {
    const Eigen::VectorXd truth = load_signal(truth_path, s.graph->num_nodes());
    std::cout << "SNR in " << fmt6(harness::snr_db(truth, noisy)) << " dB, out "
              << fmt6(harness::snr_db(truth, denoised)) << " dB\n";
  }
  return 0;
}

int run_estimate_sigma(const GraphArgs& g, const std::string& signal) {
  const WeightedGraph graph = load_graph(g);
  const LaplacianMatrix L(graph);
  const Eigen::VectorXd noisy = load_signal(signal, graph.num_nodes());
  std::cout << fmt6(std::sqrt(estimate_sigma2(graph, L, noisy))) << '\n';
  return 0;
}

int run_benchmark(const std::string& config_path, std::uint64_t seed, const std::string& out_path,
                  const std::string& rows_path, unsigned threads) {
  harness::ExperimentConfig cfg = harness::load_experiment_config(config_path);
  cfg.seed = seed;
  const harness::ExperimentResult result = harness::run_experiment(cfg, threads);

  if (!out_path.empty()) {
    auto out = open_output(out_path);
    harness::write_aggregate_csv(out, result);
  }
  if (!rows_path.empty()) {
    auto out = open_output(rows_path);
    harness::write_results_csv(out, result);
  }
  std::cout << "sigma  method  replicates  snr_in  snr_out (sd)  sigma_hat\n";
  for (const auto& row : result.aggregate) {
    std::cout << fmt6(row.sigma) << "  " << row.method << "  " << row.count << "  " << fmt6(row.snr_in_mean) << "  "
              << fmt6(row.snr_out_mean) << " (" << fmt6(row.snr_out_sd) << ")  " << fmt6(row.sigma_hat_mean) << '\n';
  }
  return 0;
}

int run_sure_curve(const GraphArgs& g, const ThresholdArgs& t, const std::string& signal,
                   const std::string& clean_path, double noise, std::optional<std::uint64_t> seed,
                   const std::string& out_path) {
  const Setup s = build_setup(g);
  const std::size_t n = s.graph->num_nodes();
  Eigen::VectorXd noisy;
  std::optional<WaveletCoefficients> truth;
  if (!clean_path.empty()) truth = s.frame->analyze(load_signal(clean_path, n));
  if (!signal.empty()) {
    noisy = load_signal(signal, n);
  } else {
    if (clean_path.empty() || noise < 0.0) {
      throw UsageError("sure-curve needs --signal, or --clean with --noise and --seed");
    }
    if (!seed) throw UsageError("--seed is required when sure-curve draws noise");
    noisy = harness::add_noise(load_signal(clean_path, n), noise, *seed);
  }
  bool estimated = false;
  const double sigma2 = resolve_sigma2(t.sigma, s, noisy, estimated);
  const ThresholdRule rule(t.beta);
  const WaveletCoefficients c = s.frame->analyze(noisy);
  const WaveletCoefficients* truth_ptr = truth ? &*truth : nullptr;

  std::vector<harness::CurvePoint> curve;
  if (parse_strategy(t.strategy) == Strategy::kBlock) {
    const BlockPartition partition = make_partition(t, s.frame->layout());
    double t_max = 0.0;
    for (const auto& block : partition.blocks()) {
      double norm2 = 0.0;
      for (std::size_t i : block) norm2 += c[i] * c[i];
      t_max = std::max(t_max, std::sqrt(norm2));
    }
    curve = harness::sure_curve_block(c, *s.frame, sigma2, rule, partition, uniform_grid(t_max, t.grid_points),
                                      truth_ptr);
  } else {
    const double t_max = c.values().cwiseAbs().maxCoeff();
    curve = harness::sure_curve_coordinatewise(c, s.frame->coefficient_variances(sigma2), rule,
                                               uniform_grid(t_max, t.grid_points), truth_ptr);
  }
  auto out = open_output(out_path);
  harness::write_curve_csv(out, curve);

  const auto best = std::min_element(curve.begin(), curve.end(),
                                     [](const auto& a, const auto& b) { return a.sure < b.sure; });
  std::cout << curve.size() << " points -> " << out_path << "; SURE minimum " << fmt6(best->sure) << " at t = "
            << fmt6(best->threshold) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral graph wavelet denoising with SURE-selected thresholds"};
  app.require_subcommand(1, 1);

  GraphArgs graph_args;
  ThresholdArgs threshold_args;
  ThresholdArgs curve_args;
  std::string signal, out, truth, plan_out, config, rows_out, clean;
  bool inverse = false;
  std::uint64_t seed = 0;
  double noise = -1.0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto* transform = app.add_subcommand("transform", "Analysis W f (or synthesis W* c with --inverse)");
  add_graph_options(transform, graph_args);
  transform->add_option("--signal", signal, "Input signal, or coefficient file with --inverse")->required();
  transform->add_option("--out", out, "Output file")->required();
  transform->add_flag("--inverse", inverse, "Synthesize a signal from coefficients");

  auto* denoise = app.add_subcommand("denoise", "Threshold the wavelet coefficients of a noisy signal");
  add_graph_options(denoise, graph_args);
  add_threshold_options(denoise, threshold_args, false);
  denoise->add_option("--signal", signal, "Noisy signal")->required();
  denoise->add_option("--out", out, "Denoised signal")->required();
  denoise->add_option("--truth", truth, "Clean signal; reports SNR in/out");
  denoise->add_option("--plan-out", plan_out, "Write the selected threshold plan");

  auto* estimate = app.add_subcommand("estimate-sigma", "Graph Von Neumann estimate of the noise level");
  add_graph_options(estimate, graph_args);
  estimate->add_option("--signal", signal, "Noisy signal")->required();

  auto* benchmark = app.add_subcommand("benchmark", "Monte Carlo denoising experiment from a config file");
  benchmark->add_option("--config", config, "Experiment config (key = value)")->required()->check(CLI::ExistingFile);
  benchmark->add_option("--seed", seed, "Base noise seed (replicate r uses seed + r)")->required();
  benchmark->add_option("--out", out, "Aggregate CSV");
  benchmark->add_option("--rows-out", rows_out, "Per-replicate CSV");
  benchmark->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* curve = app.add_subcommand("sure-curve", "SURE (and MSE) as a function of one shared threshold");
  add_graph_options(curve, graph_args);
  curve_args.strategy = "global";
  add_threshold_options(curve, curve_args, true);
  curve->add_option("--signal", signal, "Noisy signal");
  curve->add_option("--clean", clean, "Clean signal; adds the MSE column");
  curve->add_option("--noise", noise, "Draw noise of this level around --clean (needs --seed)");
  auto* curve_seed = curve->add_option("--seed", seed, "Noise seed");
  curve->add_option("--out", out, "Curve CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*transform) return run_transform(graph_args, signal, out, inverse);
    if (*denoise) return run_denoise(graph_args, threshold_args, signal, out, truth, plan_out);
    if (*estimate) return run_estimate_sigma(graph_args, signal);
    if (*benchmark) return run_benchmark(config, seed, out, rows_out, threads);
    if (*curve) {
      return run_sure_curve(graph_args, curve_args, signal, clean, noise,
                            curve_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
