#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "chromest/errors.hpp"
#include "chromest/estimate.hpp"
#include "chromest/exact_oracle.hpp"
#include "oracles.hpp"

namespace {

using namespace chromest;

EstimateOptions options(std::uint64_t samples, std::uint64_t seed = 1, unsigned workers = 1) {
  EstimateOptions o;
  o.samples = samples;
  o.seed = seed;
  o.workers = workers;
  return o;
}

TEST(BcEstimate, KiteWithinOnePercent) {
  const Graph kite = gen_kite();
  const double truth[] = {1, 5, 8, 4};
  for (auto variant : {BcVariant::plain, BcVariant::improved}) {
    auto o = options(100000, 7);
    o.variant = variant;
    o.ordering = OrderingKind::input;
    const auto r = bc_estimate(kite, o);
    ASSERT_EQ(r.coefficients.size(), 4u);
    EXPECT_EQ(r.samples, 100000u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.coefficients[i].mean.to_double(), truth[i], 0.01 * truth[i]);
  }
}

TEST(BcEstimate, EdgeCountIsExactWithZeroVariance) {
  const Graph g = chromest::testing::random_connected_graph(10, 24, 5);
  const auto r = bc_estimate(g, options(2000));
  EXPECT_EQ(r.coefficients[1].mean, LogNumber::from_double(24.0));
  EXPECT_TRUE(r.coefficients[1].variance.is_zero());
  EXPECT_FALSE(r.coefficients[1].variance_precision_loss);
  EXPECT_TRUE(r.coefficients[1].converged);
}

TEST(BcEstimate, PowerCoefficientsCarrySigns) {
  const Graph kite = gen_kite();
  auto o = options(1000);
  o.ordering = OrderingKind::input;
  const auto r = bc_estimate(kite, o);  // improved + this order: zero variance
  const auto p = r.power_coefficients();
  ASSERT_EQ(p.size(), 5u);
  EXPECT_TRUE(p[0].is_zero());
  EXPECT_EQ(p[3].sign(), -1);
  EXPECT_EQ(p[4].sign(), 1);
  EXPECT_NEAR(p[1].to_double(), -4.0, 1e-12);
}

TEST(Estimate, ReproducibleForFixedSeedAndWorkers) {
  const Graph g = gen_er(12, 0.4, 3);
  for (unsigned workers : {1u, 4u}) {
    const auto a = bc_estimate(g, options(3001, 11, workers));
    const auto b = bc_estimate(g, options(3001, 11, workers));
    EXPECT_EQ(a.samples, 3001u);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
      EXPECT_EQ(a.coefficients[i].mean, b.coefficients[i].mean);
      EXPECT_EQ(a.coefficients[i].variance, b.coefficients[i].variance);
    }
    EXPECT_EQ(a.trace_counts, b.trace_counts);
  }
}

TEST(Estimate, WorkerCountsAgreeStatistically) {
  const Graph g = gen_wheel(8);
  const auto truth = formula_family(FormulaFamily::wheel, 8);
  for (unsigned workers : {1u, 3u}) {
    const auto r = bc_estimate(g, options(40000, 2, workers));
    for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
      const double t = boost::multiprecision::abs(truth[8 - i]).convert_to<double>();
      EXPECT_NEAR(r.coefficients[i].mean.to_double(), t, 0.02 * t);
    }
  }
}

TEST(Estimate, TraceShape) {
  const auto r = ff_estimate(gen_path(5), options(5000));
  ASSERT_EQ(r.snapshot_every, 5u);
  ASSERT_EQ(r.trace_counts.size(), 1000u);
  EXPECT_EQ(r.trace_counts.back(), 5000u);
  EXPECT_EQ(r.trace_means.front().size(), 5u);
  for (std::size_t k = 1; k < r.trace_counts.size(); ++k) EXPECT_GT(r.trace_counts[k], r.trace_counts[k - 1]);
}

TEST(FfEstimate, PathLevels) {
  const auto r = ff_estimate(gen_path(4), options(100000, 5));
  const double truth[] = {1, 3, 1, 0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.coefficients[i].mean.to_double(), truth[i], 0.02 * truth[i] + 1e-12);
  const auto conv = r.power_conversion();
  EXPECT_NEAR(conv.coeffs[4].to_double(), 1.0, 1e-12);
  EXPECT_NEAR(conv.coeffs[3].to_double(), -3.0, 0.03);
}

TEST(Estimate, Errors) {
  const Graph split(4, {{0, 1}, {2, 3}});
  EXPECT_THROW(bc_estimate(split, options(10)), GraphError);
  EXPECT_THROW(bc_estimate(gen_kite(), options(0)), std::invalid_argument);
  EXPECT_THROW(ff_estimate(Graph(0, {}), options(10)), GraphError);
  EXPECT_THROW(bc_estimate(gen_kite(), options(10)).power_conversion(), std::logic_error);
}

}  // namespace
