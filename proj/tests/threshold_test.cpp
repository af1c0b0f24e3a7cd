#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "sgwt/errors.hpp"
#include "sgwt/threshold.hpp"

using namespace sgwt;

TEST_CASE("tau: direct values") {
  CHECK(tau(3.0, 2.0, 1.0) == doctest::Approx(1.0));
  CHECK(tau(3.0, 2.0, 2.0) == doctest::Approx(5.0 / 3.0));
  CHECK(tau(-3.0, 2.0, 1.0) == doctest::Approx(-1.0));
  CHECK(tau(2.0, 2.0, 1.0) == 0.0);
  CHECK(tau(0.5, 2.0, 2.0) == 0.0);
  for (double x : {-4.0, -0.1, 0.0, 0.3, 7.0})
    for (double beta : {1.0, 1.5, 2.0, 3.0}) CHECK(tau(x, 0.0, beta) == x);
}

TEST_CASE("tau matches the oracle and shrinks monotonically") {
  for (double beta : {1.0, 1.3, 2.0, 4.0})
    for (double t : {0.0, 0.2, 1.0, 2.5})
      for (int k = -50; k <= 50; ++k) {
        const double x = 0.13 * k;
        const double y = tau(x, t, beta);
        CHECK(y == doctest::Approx(oracle::tau(x, t, beta)).epsilon(1e-14));
        CHECK(std::abs(y) <= std::abs(x));
        CHECK(y * x >= 0.0);
      }
}

TEST_CASE("threshold rule range") {
  CHECK(ThresholdRule::soft().beta() == 1.0);
  CHECK(ThresholdRule::james_stein().beta() == 2.0);
  CHECK(ThresholdRule(7.5).beta() == 7.5);
  CHECK_THROWS_AS(ThresholdRule(0.99), ParameterError);
  CHECK_THROWS_AS(ThresholdRule(std::numeric_limits<double>::infinity()), ParameterError);
  CHECK_THROWS_AS(ThresholdRule(std::nan("")), ParameterError);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("global") == Strategy::kGlobal);
  CHECK(parse_strategy("level") == Strategy::kLevelDependent);
  CHECK(parse_strategy("level-dependent") == Strategy::kLevelDependent);
  CHECK(parse_strategy("block") == Strategy::kBlock);
  CHECK(to_string(Strategy::kBlock) == "block");
  CHECK_THROWS_AS(parse_strategy("hard"), ParameterError);
}

TEST_CASE("block partitions cut contiguous runs inside each scale") {
  const CoefficientLayout layout{10, 2};
  const BlockPartition by_size(layout, BlockSpec{BlockSpec::Kind::kSize, 4});
  CHECK(by_size.size() == 9);  // 4 + 4 + 2 per scale
  CHECK(by_size.block(2) == std::vector<std::size_t>{8, 9});
  CHECK(by_size.block(3).front() == 10);
  CHECK(by_size.block_of(13) == 3);

  const BlockPartition by_count(layout, BlockSpec{BlockSpec::Kind::kCount, 3});
  CHECK(by_count.size() == 9);  // size ceil(10 / 3) = 4
  CHECK(by_count.block(0).size() == 4);
  CHECK(BlockSpec{BlockSpec::Kind::kCount, 25}.label() == "count25");
  CHECK(BlockSpec{BlockSpec::Kind::kSize, 7}.label() == "size7");

  const BlockPartition oversized(layout, BlockSpec{BlockSpec::Kind::kSize, 50});
  CHECK(oversized.size() == 3);
  CHECK_THROWS_AS(BlockPartition(layout, BlockSpec{BlockSpec::Kind::kSize, 0}), ParameterError);
}

TEST_CASE("explicit block lists are validated") {
  const CoefficientLayout layout{2, 1};
  CHECK_NOTHROW(BlockPartition(layout, std::vector<std::vector<std::size_t>>{{0, 1}, {3}, {2}}));
  CHECK_THROWS_AS(BlockPartition(layout, std::vector<std::vector<std::size_t>>{{0, 1}, {2}}), ContractError);
  CHECK_THROWS_AS(BlockPartition(layout, std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}}), ContractError);
  CHECK_THROWS_AS(BlockPartition(layout, std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2, 3}}), ContractError);
  CHECK_THROWS_AS(BlockPartition(layout, std::vector<std::vector<std::size_t>>{{0, 1}, {}, {2, 3}}), ContractError);
  CHECK_THROWS_AS(BlockPartition(layout, std::vector<std::vector<std::size_t>>{{0, 1}, {2, 9}}), ContractError);
}

TEST_CASE("block of (3, 4): norm 5") {
  const CoefficientLayout layout{2, 0};
  const WaveletCoefficients c(layout, Eigen::Vector2d(3.0, 4.0));
  const BlockPartition one_block(layout, BlockSpec{BlockSpec::Kind::kSize, 2});
  const auto soft = ThresholdRule::soft();

  const WaveletCoefficients killed = apply_plan(c, ThresholdPlan::uniform_block(one_block, soft, 5.0));
  CHECK(killed.values().cwiseAbs().maxCoeff() == 0.0);

  const WaveletCoefficients half = apply_plan(c, ThresholdPlan::uniform_block(one_block, soft, 2.5));
  CHECK(half[0] == doctest::Approx(1.5));
  CHECK(half[1] == doctest::Approx(2.0));
}

TEST_CASE("apply_plan endpoints and monotone shrinkage") {
  const CoefficientLayout layout{6, 2};
  Eigen::VectorXd values(18);
  for (Eigen::Index i = 0; i < 18; ++i) values[i] = std::sin(1.7 * static_cast<double>(i)) * (1 + i % 4);
  const WaveletCoefficients c(layout, values);
  const double above = values.cwiseAbs().maxCoeff() * 10.0;
  const ThresholdRule js = ThresholdRule::james_stein();
  const BlockPartition blocks(layout, BlockSpec{BlockSpec::Kind::kSize, 4});

  const std::vector<ThresholdPlan> identity{ThresholdPlan::global(layout, js, 0.0),
                                            ThresholdPlan::level_dependent(layout, js, {0.0, 0.0, 0.0}),
                                            ThresholdPlan::uniform_block(blocks, js, 0.0)};
  for (const auto& plan : identity) CHECK((apply_plan(c, plan).values() - values).cwiseAbs().maxCoeff() == 0.0);

  const std::vector<ThresholdPlan> kill{ThresholdPlan::global(layout, js, above),
                                        ThresholdPlan::level_dependent(layout, js, {above, above, above}),
                                        ThresholdPlan::uniform_block(blocks, js, above)};
  for (const auto& plan : kill) CHECK(apply_plan(c, plan).values().cwiseAbs().maxCoeff() == 0.0);

  const std::vector<ThresholdPlan> mid{ThresholdPlan::global(layout, js, 1.1),
                                       ThresholdPlan::level_dependent(layout, js, {0.3, 1.0, 2.0}),
                                       ThresholdPlan::block(blocks, ThresholdRule::soft(),
                                                            std::vector<double>(blocks.size(), 1.7))};
  for (const auto& plan : mid) {
    const WaveletCoefficients out = apply_plan(c, plan);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(out[i]) <= std::abs(c[i]));
  }
}

TEST_CASE("plan construction errors") {
  const CoefficientLayout layout{4, 1};
  const auto rule = ThresholdRule::soft();
  CHECK_THROWS_AS(ThresholdPlan::level_dependent(layout, rule, {1.0}), ContractError);
  CHECK_THROWS_AS(ThresholdPlan::global(layout, rule, -1.0), ParameterError);
  const BlockPartition blocks(layout, BlockSpec{BlockSpec::Kind::kSize, 2});
  CHECK_THROWS_AS(ThresholdPlan::block(blocks, rule, {1.0}), ContractError);
  const WaveletCoefficients other = WaveletCoefficients::zeros({5, 1});
  CHECK_THROWS_AS(apply_plan(other, ThresholdPlan::global(layout, rule, 1.0)), ContractError);
}

TEST_CASE("plan text round trip") {
  const CoefficientLayout layout{9, 3};
  const std::vector<ThresholdPlan> plans{
      ThresholdPlan::global(layout, ThresholdRule(1.5), 0.123456789012345),
      ThresholdPlan::level_dependent(layout, ThresholdRule::james_stein(), {0.0, 0.1, 1.0 / 3.0, 2.0}),
      ThresholdPlan::uniform_block(BlockPartition(layout, BlockSpec{BlockSpec::Kind::kCount, 2}),
                                   ThresholdRule::soft(), 0.75)};
  for (const auto& plan : plans) {
    std::stringstream buf;
    write_plan(buf, plan);
    const ThresholdPlan back = read_plan(buf);
    CHECK(back.strategy() == plan.strategy());
    CHECK(back.rule().beta() == plan.rule().beta());
    CHECK(back.layout() == plan.layout());
    CHECK(back.thresholds() == plan.thresholds());
    if (plan.blocks()) CHECK(back.blocks()->blocks() == plan.blocks()->blocks());
  }
  std::istringstream bad("strategy global\nbeta 1\nn 2\n0 1\n");
  CHECK_THROWS_AS(read_plan(bad), FormatError);
  std::istringstream gap("strategy level\nbeta 1\nn 2\nJ 1\n0 1\n2 1\n");
  CHECK_THROWS_AS(read_plan(gap), FormatError);
}
