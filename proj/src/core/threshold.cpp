#include "sgwt/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "sgwt/errors.hpp"

namespace sgwt {

ThresholdRule::ThresholdRule(double beta) : beta_(beta) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    throw ParameterError("threshold exponent beta must lie in [1, inf), got " + std::to_string(beta));
  }
}

double shrink_factor(double magnitude, double t, double beta) {
  if (t == 0.0) return 1.0;
  if (magnitude <= t) return 0.0;
  const double ratio = t / magnitude;
  return 1.0 - (beta == 1.0 ? ratio : beta == 2.0 ? ratio * ratio : std::pow(ratio, beta));
}

double tau(double x, double t, double beta) { return x * shrink_factor(std::abs(x), t, beta); }

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kGlobal: return "global";
    case Strategy::kLevelDependent: return "level";
    case Strategy::kBlock: return "block";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "global") return Strategy::kGlobal;
  if (name == "level" || name == "level-dependent") return Strategy::kLevelDependent;
  if (name == "block") return Strategy::kBlock;
  throw ParameterError("unknown strategy '" + std::string(name) + "'");
}

std::size_t BlockSpec::block_size(std::size_t nodes) const {
  if (value == 0) throw ParameterError("block size/count must be positive");
  if (kind == Kind::kSize) return value;
  return (nodes + value - 1) / value;
}

std::string BlockSpec::label() const {
  return (kind == Kind::kSize ? "size" : "count") + std::to_string(value);
}

BlockPartition::BlockPartition(CoefficientLayout layout, const BlockSpec& spec) : layout_(layout), spec_(spec) {
  const std::size_t s = std::max<std::size_t>(spec.block_size(layout.nodes), 1);
  for (int j = 0; j <= layout.max_scale; ++j) {
    for (std::size_t start = 0; start < layout.nodes; start += s) {
      std::vector<std::size_t> block;
      for (std::size_t v = start; v < std::min(start + s, layout.nodes); ++v) block.push_back(layout.index(j, v));
      blocks_.push_back(std::move(block));
    }
  }
  index_blocks();
}

BlockPartition::BlockPartition(CoefficientLayout layout, std::vector<std::vector<std::size_t>> blocks)
    : layout_(layout), blocks_(std::move(blocks)) {
  index_blocks();
}

void BlockPartition::index_blocks() {
  constexpr std::size_t kUnowned = static_cast<std::size_t>(-1);
  owner_.assign(layout_.size(), kUnowned);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw ContractError("block " + std::to_string(b) + " is empty");
    const int scale = layout_.scale_of(blocks_[b].front());
    for (std::size_t i : blocks_[b]) {
      if (i >= layout_.size()) throw ContractError("block index " + std::to_string(i) + " out of range");
      if (layout_.scale_of(i) != scale) {
        throw ContractError("block " + std::to_string(b) + " spans more than one scale");
      }
      if (owner_[i] != kUnowned) throw ContractError("index " + std::to_string(i) + " in two blocks");
      owner_[i] = b;
    }
  }
  for (std::size_t i = 0; i < owner_.size(); ++i) {
    if (owner_[i] == kUnowned) throw ContractError("index " + std::to_string(i) + " not covered by any block");
  }
}

ThresholdPlan::ThresholdPlan(Strategy strategy, ThresholdRule rule, CoefficientLayout layout,
                             std::vector<double> thresholds, std::optional<BlockPartition> blocks)
    : strategy_(strategy), rule_(rule), layout_(layout), thresholds_(std::move(thresholds)), blocks_(std::move(blocks)) {
  for (double t : thresholds_) {
    if (!(t >= 0.0) || std::isnan(t)) throw ParameterError("thresholds must be non-negative");
  }
}

ThresholdPlan ThresholdPlan::global(CoefficientLayout layout, ThresholdRule rule, double t) {
  return ThresholdPlan(Strategy::kGlobal, rule, layout, {t}, std::nullopt);
}

ThresholdPlan ThresholdPlan::level_dependent(CoefficientLayout layout, ThresholdRule rule,
                                             std::vector<double> per_scale) {
  if (per_scale.size() != layout.scale_count()) {
    throw ContractError("level-dependent plan needs " + std::to_string(layout.scale_count()) + " thresholds, got " +
                        std::to_string(per_scale.size()));
  }
  return ThresholdPlan(Strategy::kLevelDependent, rule, layout, std::move(per_scale), std::nullopt);
}

ThresholdPlan ThresholdPlan::block(BlockPartition partition, ThresholdRule rule, std::vector<double> per_block) {
  if (per_block.size() != partition.size()) {
    throw ContractError("block plan needs " + std::to_string(partition.size()) + " thresholds, got " +
                        std::to_string(per_block.size()));
  }
  const CoefficientLayout layout = partition.layout();
  return ThresholdPlan(Strategy::kBlock, rule, layout, std::move(per_block), std::move(partition));
}

ThresholdPlan ThresholdPlan::uniform_block(BlockPartition partition, ThresholdRule rule, double t) {
  std::vector<double> per_block(partition.size(), t);
  return block(std::move(partition), rule, std::move(per_block));
}

std::size_t ThresholdPlan::group_of(std::size_t index) const {
  switch (strategy_) {
    case Strategy::kGlobal: return 0;
    case Strategy::kLevelDependent: return static_cast<std::size_t>(layout_.scale_of(index));
    case Strategy::kBlock: return blocks_->block_of(index);
  }
  return 0;
}

WaveletCoefficients apply_plan(const WaveletCoefficients& c, const ThresholdPlan& plan) {
  if (!(c.layout() == plan.layout())) throw ContractError("apply_plan: plan layout does not match coefficients");
  const double beta = plan.rule().beta();
  WaveletCoefficients out = WaveletCoefficients::zeros(c.layout());
  if (plan.is_coordinatewise()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      out.values()[static_cast<Eigen::Index>(i)] = tau(c[i], plan.threshold_for(i), beta);
    }
    return out;
  }
  const BlockPartition& partition = *plan.blocks();
  for (std::size_t b = 0; b < partition.size(); ++b) {
    double norm2 = 0.0;
    for (std::size_t i : partition.block(b)) norm2 += c[i] * c[i];
    const double factor = shrink_factor(std::sqrt(norm2), plan.thresholds()[b], beta);
    for (std::size_t i : partition.block(b)) out.values()[static_cast<Eigen::Index>(i)] = factor * c[i];
  }
  return out;
}

void write_plan(std::ostream& out, const ThresholdPlan& plan) {
  out << "strategy " << to_string(plan.strategy()) << '\n';
  out << std::setprecision(17);
  out << "beta " << plan.rule().beta() << '\n';
  out << "n " << plan.layout().nodes << '\n' << "J " << plan.layout().max_scale << '\n';
  if (plan.blocks()) {
    const auto& spec = plan.blocks()->spec();
    if (!spec) throw ContractError("write_plan: block plan without a BlockSpec cannot be serialized");
    out << "blocks " << (spec->kind == BlockSpec::Kind::kSize ? "size" : "count") << ' ' << spec->value << '\n';
  }
  for (std::size_t g = 0; g < plan.group_count(); ++g) out << g << ' ' << plan.thresholds()[g] << '\n';
}

ThresholdPlan read_plan(std::istream& in) {
  std::string line;
  std::optional<Strategy> strategy;
  std::optional<double> beta;
  CoefficientLayout layout;
  bool have_n = false;
  bool have_j = false;
  std::optional<BlockSpec> spec;
  std::vector<std::pair<std::size_t, double>> groups;

  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    bool ok = true;
    if (key == "strategy") {
      std::string name;
      ok = static_cast<bool>(ss >> name);
      if (ok) strategy = parse_strategy(name);
    } else if (key == "beta") {
      double b = 0.0;
      ok = static_cast<bool>(ss >> b);
      beta = b;
    } else if (key == "n") {
      ok = static_cast<bool>(ss >> layout.nodes);
      have_n = true;
    } else if (key == "J") {
      ok = static_cast<bool>(ss >> layout.max_scale);
      have_j = true;
    } else if (key == "blocks") {
      std::string kind;
      BlockSpec s;
      ok = static_cast<bool>(ss >> kind >> s.value) && (kind == "size" || kind == "count");
      s.kind = kind == "size" ? BlockSpec::Kind::kSize : BlockSpec::Kind::kCount;
      spec = s;
    } else {
      std::size_t g = 0;
      double t = 0.0;
      std::istringstream row(line);
      ok = static_cast<bool>(row >> g >> t);
      if (ok && g != groups.size()) throw FormatError("plan: group ids must be consecutive from 0");
      groups.emplace_back(g, t);
    }
    if (!ok) throw FormatError("plan: malformed line '" + line + "'");
  }
  if (!strategy || !beta || !have_n || !have_j) throw FormatError("plan: missing strategy/beta/n/J header");

  std::vector<double> thresholds;
  for (const auto& [g, t] : groups) thresholds.push_back(t);
  const ThresholdRule rule(*beta);
  switch (*strategy) {
    case Strategy::kGlobal:
      if (thresholds.size() != 1) throw FormatError("plan: global strategy needs exactly one group");
      return ThresholdPlan::global(layout, rule, thresholds[0]);
    case Strategy::kLevelDependent:
      return ThresholdPlan::level_dependent(layout, rule, std::move(thresholds));
    case Strategy::kBlock:
      if (!spec) throw FormatError("plan: block strategy needs a 'blocks' line");
      return ThresholdPlan::block(BlockPartition(layout, *spec), rule, std::move(thresholds));
  }
  throw FormatError("plan: unknown strategy");
}

}  // namespace sgwt
