#include "sgwt/sure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sgwt/errors.hpp"

namespace sgwt {

namespace {

double power(double x, double beta) { return beta == 1.0 ? x : beta == 2.0 ? x * x : std::pow(x, beta); }

void require_same_layout(const CoefficientLayout& a, const CoefficientLayout& b, const char* what) {
  if (!(a == b)) throw ContractError(std::string(what) + ": coefficient layouts differ");
}

// One coefficient of a thresholding group, with everything the candidate
// sweep needs.
struct Entry {
  double magnitude;  // |F~_i|
  double noisy;      // F~_i
  double variance;   // V(Xi_i), SURE only
  double truth;      // F_i, oracle only
};

struct Candidate {
  double threshold = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

// Evaluates a piecewise objective at t = 0 and at every distinct magnitude
// in the group, using prefix sums over coefficients killed by t (magnitude
// <= t) and suffix sums over survivors (magnitude > t). Returns the smallest
// threshold attaining the minimum.
class CandidateSweep {
 public:
  CandidateSweep(std::vector<Entry> entries, double beta) : entries_(std::move(entries)), beta_(beta) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& x, const Entry& y) { return x.magnitude < y.magnitude; });
  }

  Candidate minimize_sure() const {
    const std::size_t m = entries_.size();
    // killed_sq[k]: sum_{i<k} F~_i^2; survivors from k contribute
    //   t^{2 beta} a^{2 - 2 beta} (fidelity) and 2 V (1 + (beta - 1) t^beta a^-beta).
    std::vector<double> killed_sq(m + 1, 0.0);
    std::vector<double> tail_fid(m + 1, 0.0), tail_var(m + 1, 0.0), tail_var_ratio(m + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k) killed_sq[k + 1] = killed_sq[k] + entries_[k].noisy * entries_[k].noisy;
    for (std::size_t k = m; k-- > 0;) {
      const Entry& e = entries_[k];
      const bool positive = e.magnitude > 0.0;
      tail_fid[k] = tail_fid[k + 1] + (positive ? std::pow(e.magnitude, 2.0 - 2.0 * beta_) : 0.0);
      tail_var[k] = tail_var[k + 1] + e.variance;
      tail_var_ratio[k] = tail_var_ratio[k + 1] + (positive ? e.variance / power(e.magnitude, beta_) : 0.0);
    }
    Candidate best{0.0, 2.0 * tail_var[0]};
    sweep([&](double t, std::size_t s) {
      const double tb = power(t, beta_);
      const double fid = killed_sq[s] + tb * tb * tail_fid[s];
      const double div = 2.0 * (tail_var[s] + (beta_ - 1.0) * tb * tail_var_ratio[s]);
      return fid + div;
    }, best);
    return best;
  }

  Candidate minimize_risk() const {
    const std::size_t m = entries_.size();
    // Killed coefficients cost F_i^2; a survivor costs
    //   (e_i - F~_i r)^2 = e_i^2 - 2 r e_i F~_i + r^2 F~_i^2,  e_i = F~_i - F_i, r = t^beta a^-beta.
    std::vector<double> killed_truth(m + 1, 0.0);
    std::vector<double> tail_err(m + 1, 0.0), tail_cross(m + 1, 0.0), tail_fid(m + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k) killed_truth[k + 1] = killed_truth[k] + entries_[k].truth * entries_[k].truth;
    for (std::size_t k = m; k-- > 0;) {
      const Entry& e = entries_[k];
      const double err = e.noisy - e.truth;
      const bool positive = e.magnitude > 0.0;
      tail_err[k] = tail_err[k + 1] + err * err;
      tail_cross[k] = tail_cross[k + 1] + (positive ? err * e.noisy / power(e.magnitude, beta_) : 0.0);
      tail_fid[k] = tail_fid[k + 1] + (positive ? std::pow(e.magnitude, 2.0 - 2.0 * beta_) : 0.0);
    }
    Candidate best{0.0, tail_err[0]};
    sweep([&](double t, std::size_t s) {
      const double tb = power(t, beta_);
      return killed_truth[s] + tail_err[s] - 2.0 * tb * tail_cross[s] + tb * tb * tail_fid[s];
    }, best);
    return best;
  }

 private:
  // Calls objective(t, s) for every distinct positive magnitude t, where s is
  // the first index with magnitude > t.
  template <typename Objective>
  void sweep(Objective&& objective, Candidate& best) const {
    const std::size_t m = entries_.size();
    for (std::size_t k = 0; k < m; ++k) {
      const double t = entries_[k].magnitude;
      if (t <= 0.0) continue;
      if (k + 1 < m && entries_[k + 1].magnitude == t) continue;
      const double value = objective(t, k + 1);
      if (value < best.value) best = {t, value};
    }
  }

  std::vector<Entry> entries_;
  double beta_;
};

std::vector<std::vector<std::size_t>> coordinate_groups(const CoefficientLayout& layout, Strategy grouping) {
  std::vector<std::vector<std::size_t>> groups;
  if (grouping == Strategy::kGlobal) {
    groups.emplace_back(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) groups[0][i] = i;
  } else if (grouping == Strategy::kLevelDependent) {
    for (int j = 0; j <= layout.max_scale; ++j) {
      auto& g = groups.emplace_back();
      for (std::size_t v = 0; v < layout.nodes; ++v) g.push_back(layout.index(j, v));
    }
  } else {
    throw ContractError("coordinatewise optimization needs the global or level-dependent grouping");
  }
  return groups;
}

ThresholdPlan make_coordinate_plan(const CoefficientLayout& layout, ThresholdRule rule, Strategy grouping,
                                   std::vector<double> thresholds) {
  if (grouping == Strategy::kGlobal) return ThresholdPlan::global(layout, rule, thresholds.at(0));
  return ThresholdPlan::level_dependent(layout, rule, std::move(thresholds));
}

}  // namespace

SureValue sure_coordinatewise(const WaveletCoefficients& c, const ThresholdPlan& plan, const NoiseCovariance& cov) {
  if (!plan.is_coordinatewise()) throw ContractError("sure_coordinatewise: plan uses the block strategy");
  require_same_layout(c.layout(), plan.layout(), "sure_coordinatewise");
  require_same_layout(c.layout(), cov.layout, "sure_coordinatewise");
  const double beta = plan.rule().beta();
  double fidelity = 0.0;
  double divergence = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double t = plan.threshold_for(i);
    const double x = c[i];
    const double v = cov.variances[static_cast<Eigen::Index>(i)];
    const double a = std::abs(x);
    if (t == 0.0) {
      divergence += v;
    } else if (a > t) {
      const double r = power(t / a, beta);
      fidelity += x * x * r * r;
      divergence += v * (1.0 + (beta - 1.0) * r);
    } else {
      fidelity += x * x;
    }
  }
  const double offset = -static_cast<double>(c.layout().nodes) * cov.sigma2;
  return SureValue::from_terms(offset, fidelity, 2.0 * divergence);
}

BlockStatistics block_statistics(const WaveletCoefficients& c, const BlockPartition& partition, const SgwtFrame& frame,
                                 double sigma2) {
  require_same_layout(c.layout(), frame.layout(), "block_statistics");
  require_same_layout(c.layout(), partition.layout(), "block_statistics");
  const CoefficientLayout& layout = c.layout();
  const std::size_t nb = partition.size();
  BlockStatistics stats;
  stats.sigma2 = sigma2;
  stats.nodes = layout.nodes;
  stats.norm2.assign(nb, 0.0);
  stats.variance_sum.assign(nb, 0.0);
  stats.covariance_form.assign(nb, 0.0);

  const NoiseCovariance cov = frame.coefficient_variances(sigma2);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i : partition.block(b)) {
      stats.norm2[b] += c[i] * c[i];
      stats.variance_sum[b] += cov.variances[static_cast<Eigen::Index>(i)];
    }
  }

  const Eigen::MatrixXd& U = frame.decomposition().eigenvectors();
  const auto n = static_cast<Eigen::Index>(layout.nodes);
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> local_of(nb, kUnset);
  for (int j = 0; j <= layout.max_scale; ++j) {
    // Local column for every block living on scale j.
    std::vector<std::size_t> column(layout.nodes);
    std::vector<std::size_t> block_ids;
    for (std::size_t v = 0; v < layout.nodes; ++v) {
      const std::size_t b = partition.block_of(layout.index(j, v));
      if (local_of[b] == kUnset) {
        local_of[b] = block_ids.size();
        block_ids.push_back(b);
      }
      column[v] = local_of[b];
    }
    // projections(l, col) = <chi_l restricted to the block, F~_block>
    RowMajor projections = RowMajor::Zero(n, static_cast<Eigen::Index>(block_ids.size()));
    const auto coeffs = c.scale(j);
    for (Eigen::Index l = 0; l < n; ++l) {
      auto row = projections.row(l);
      for (Eigen::Index v = 0; v < n; ++v) {
        row[static_cast<Eigen::Index>(column[static_cast<std::size_t>(v)])] += U(v, l) * coeffs[v];
      }
    }
    const Eigen::VectorXd& psi = frame.psi_response(j);
    const Eigen::VectorXd forms = projections.cwiseAbs2().transpose() * psi;
    for (std::size_t k = 0; k < block_ids.size(); ++k) {
      stats.covariance_form[block_ids[k]] = sigma2 * forms[static_cast<Eigen::Index>(k)];
    }
  }
  return stats;
}

SureValue sure_block(const BlockStatistics& stats, const std::vector<double>& thresholds, double beta) {
  if (thresholds.size() != stats.norm2.size()) throw ContractError("sure_block: one threshold per block required");
  double fidelity = 0.0;
  double divergence = 0.0;
  for (std::size_t b = 0; b < thresholds.size(); ++b) {
    const double t = thresholds[b];
    const double n2 = stats.norm2[b];
    if (t == 0.0) {
      divergence += stats.variance_sum[b];
      continue;
    }
    const double norm = std::sqrt(n2);
    if (norm > t) {
      const double r = power(t / norm, beta);
      fidelity += r * r * n2;
      divergence += (1.0 - r) * stats.variance_sum[b] + beta * r * stats.covariance_form[b] / n2;
    } else {
      fidelity += n2;
    }
  }
  const double offset = -static_cast<double>(stats.nodes) * stats.sigma2;
  return SureValue::from_terms(offset, fidelity, 2.0 * divergence);
}

SureValue sure_block(const WaveletCoefficients& c, const ThresholdPlan& plan, const SgwtFrame& frame, double sigma2) {
  if (plan.strategy() != Strategy::kBlock) throw ContractError("sure_block: plan is not a block plan");
  const BlockStatistics stats = block_statistics(c, *plan.blocks(), frame, sigma2);
  return sure_block(stats, plan.thresholds(), plan.rule().beta());
}

ThresholdPlan optimize_coordinatewise(const WaveletCoefficients& c, const NoiseCovariance& cov, ThresholdRule rule,
                                      Strategy grouping) {
  require_same_layout(c.layout(), cov.layout, "optimize_coordinatewise");
  std::vector<double> thresholds;
  for (const auto& group : coordinate_groups(c.layout(), grouping)) {
    std::vector<Entry> entries;
    entries.reserve(group.size());
    for (std::size_t i : group) {
      entries.push_back({std::abs(c[i]), c[i], cov.variances[static_cast<Eigen::Index>(i)], 0.0});
    }
    thresholds.push_back(CandidateSweep(std::move(entries), rule.beta()).minimize_sure().threshold);
  }
  return make_coordinate_plan(c.layout(), rule, grouping, std::move(thresholds));
}

ThresholdPlan optimize_coordinatewise_oracle(const WaveletCoefficients& c, const WaveletCoefficients& truth,
                                             ThresholdRule rule, Strategy grouping) {
  require_same_layout(c.layout(), truth.layout(), "optimize_coordinatewise_oracle");
  std::vector<double> thresholds;
  for (const auto& group : coordinate_groups(c.layout(), grouping)) {
    std::vector<Entry> entries;
    entries.reserve(group.size());
    for (std::size_t i : group) entries.push_back({std::abs(c[i]), c[i], 0.0, truth[i]});
    thresholds.push_back(CandidateSweep(std::move(entries), rule.beta()).minimize_risk().threshold);
  }
  return make_coordinate_plan(c.layout(), rule, grouping, std::move(thresholds));
}

std::vector<double> uniform_grid(double t_max, std::size_t grid_points) {
  if (grid_points < 2) throw ParameterError("grid search needs at least 2 points");
  std::vector<double> grid(grid_points);
  const double step = t_max / static_cast<double>(grid_points - 1);
  for (std::size_t k = 0; k + 1 < grid_points; ++k) grid[k] = static_cast<double>(k) * step;
  grid.back() = t_max;
  return grid;
}

namespace {

template <typename Objective>
double grid_minimizer(const std::vector<double>& grid, Objective&& objective) {
  double best_t = grid.front();
  double best_value = objective(best_t);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double value = objective(grid[k]);
    if (value < best_value) {
      best_value = value;
      best_t = grid[k];
    }
  }
  return best_t;
}

double max_block_norm(const std::vector<double>& norm2) {
  double m = 0.0;
  for (double v : norm2) m = std::max(m, v);
  return std::sqrt(m);
}

}  // namespace

ThresholdPlan optimize_block_grid(const WaveletCoefficients& c, const SgwtFrame& frame, double sigma2,
                                  ThresholdRule rule, const BlockPartition& partition, std::size_t grid_points) {
  if (grid_points < 2) throw ParameterError("grid search needs at least 2 points");
  if (partition.size() == 0) throw ContractError("optimize_block_grid: empty partition");
  const BlockStatistics stats = block_statistics(c, partition, frame, sigma2);
  const auto grid = uniform_grid(max_block_norm(stats.norm2), grid_points);
  std::vector<double> thresholds(partition.size());
  const double t = grid_minimizer(grid, [&](double t) {
    std::fill(thresholds.begin(), thresholds.end(), t);
    return sure_block(stats, thresholds, rule.beta()).total;
  });
  return ThresholdPlan::uniform_block(partition, rule, t);
}

ThresholdPlan optimize_block_grid_oracle(const WaveletCoefficients& c, const WaveletCoefficients& truth,
                                         ThresholdRule rule, const BlockPartition& partition,
                                         std::size_t grid_points) {
  if (grid_points < 2) throw ParameterError("grid search needs at least 2 points");
  if (partition.size() == 0) throw ContractError("optimize_block_grid_oracle: empty partition");
  require_same_layout(c.layout(), truth.layout(), "optimize_block_grid_oracle");
  require_same_layout(c.layout(), partition.layout(), "optimize_block_grid_oracle");
  const std::size_t nb = partition.size();
  std::vector<double> norm2(nb, 0.0), cross(nb, 0.0), truth2(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i : partition.block(b)) {
      norm2[b] += c[i] * c[i];
      cross[b] += c[i] * truth[i];
      truth2[b] += truth[i] * truth[i];
    }
  }
  const auto grid = uniform_grid(max_block_norm(norm2), grid_points);
  const double beta = rule.beta();
  const double t = grid_minimizer(grid, [&](double t) {
    double risk = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const double f = shrink_factor(std::sqrt(norm2[b]), t, beta);
      risk += f * f * norm2[b] - 2.0 * f * cross[b] + truth2[b];
    }
    return risk;
  });
  return ThresholdPlan::uniform_block(partition, rule, t);
}

double coefficient_risk(const WaveletCoefficients& a, const WaveletCoefficients& b) {
  require_same_layout(a.layout(), b.layout(), "coefficient_risk");
  return (a.values() - b.values()).squaredNorm();
}

}  // namespace sgwt
