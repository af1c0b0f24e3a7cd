#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgwt/frame.hpp"

namespace sgwt {

// Shrinkage family tau(x, t) = x * max(1 - t^beta / |x|^beta, 0).
// beta = 1 is soft thresholding, beta = 2 James-Stein. Hard thresholding
// (beta = infinity) is not a member.
class ThresholdRule {
 public:
  // Throws ParameterError unless 1 <= beta < infinity.
  explicit ThresholdRule(double beta);

  static ThresholdRule soft() { return ThresholdRule(1.0); }
  static ThresholdRule james_stein() { return ThresholdRule(2.0); }

  double beta() const { return beta_; }

 private:
  double beta_;
};

// max(1 - (t / magnitude)^beta, 0). A zero threshold leaves everything
// untouched (factor 1, including magnitude 0); a positive threshold kills a
// zero magnitude.
double shrink_factor(double magnitude, double t, double beta);

double tau(double x, double t, double beta);

enum class Strategy { kGlobal, kLevelDependent, kBlock };

std::string_view to_string(Strategy s);
// Accepts "global", "level" / "level-dependent", "block".
Strategy parse_strategy(std::string_view name);

// How blocks are cut inside each scale: fixed block size, or a fixed number
// of blocks per scale (block size ceil(n / count)). Either way blocks are
// contiguous runs of node indices and the last one may be shorter.
struct BlockSpec {
  enum class Kind { kSize, kCount };
  Kind kind = Kind::kSize;
  std::size_t value = 1;

  std::size_t block_size(std::size_t nodes) const;
  std::string label() const;  // "size25" / "count25"
};

// Partition of the coefficient indices into blocks that each live inside a
// single scale.
class BlockPartition {
 public:
  BlockPartition(CoefficientLayout layout, const BlockSpec& spec);
  // Validates that `blocks` partition {0, ..., layout.size() - 1}, are
  // non-empty and never straddle two scales (ContractError otherwise).
  BlockPartition(CoefficientLayout layout, std::vector<std::vector<std::size_t>> blocks);

  const CoefficientLayout& layout() const { return layout_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t index) const { return owner_[index]; }
  const std::optional<BlockSpec>& spec() const { return spec_; }

 private:
  void index_blocks();

  CoefficientLayout layout_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> owner_;
  std::optional<BlockSpec> spec_;
};

// Strategy, rule and resolved thresholds (one per group). Groups are: a
// single group (global), one per scale (level-dependent) or one per block.
class ThresholdPlan {
 public:
  static ThresholdPlan global(CoefficientLayout layout, ThresholdRule rule, double t);
  static ThresholdPlan level_dependent(CoefficientLayout layout, ThresholdRule rule,
                                       std::vector<double> per_scale);
  static ThresholdPlan block(BlockPartition partition, ThresholdRule rule, std::vector<double> per_block);
  static ThresholdPlan uniform_block(BlockPartition partition, ThresholdRule rule, double t);

  Strategy strategy() const { return strategy_; }
  const ThresholdRule& rule() const { return rule_; }
  const CoefficientLayout& layout() const { return layout_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  std::size_t group_count() const { return thresholds_.size(); }
  std::size_t group_of(std::size_t index) const;
  double threshold_for(std::size_t index) const { return thresholds_[group_of(index)]; }
  // Present only for the block strategy.
  const std::optional<BlockPartition>& blocks() const { return blocks_; }

  bool is_coordinatewise() const { return strategy_ != Strategy::kBlock; }

 private:
  ThresholdPlan(Strategy strategy, ThresholdRule rule, CoefficientLayout layout, std::vector<double> thresholds,
                std::optional<BlockPartition> blocks);

  Strategy strategy_;
  ThresholdRule rule_;
  CoefficientLayout layout_;
  std::vector<double> thresholds_;
  std::optional<BlockPartition> blocks_;
};

// Coordinatewise plans pass every coefficient through tau with its group's
// threshold; block plans scale a whole block by its shrink factor.
WaveletCoefficients apply_plan(const WaveletCoefficients& c, const ThresholdPlan& plan);

// Text form:
//   strategy <global|level|block>
//   beta <beta>
//   n <n>
//   J <J>
//   blocks <size|count> <value>     (block strategy only)
//   <group-id> <threshold>          (one line per group)
// Block plans round-trip only when built from a BlockSpec.
void write_plan(std::ostream& out, const ThresholdPlan& plan);
ThresholdPlan read_plan(std::istream& in);

}  // namespace sgwt
