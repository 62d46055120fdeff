#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "chromest/exact_oracle.hpp"
#include "chromest/metrics.hpp"

namespace {

using namespace chromest;

std::vector<LogNumber> logs(std::vector<double> v) {
  std::vector<LogNumber> out;
  for (double x : v) out.push_back(LogNumber::from_double(x));
  return out;
}

TEST(ArcError, IdenticalVectorsGiveZero) {
  const auto v = logs({1, 5, 8, 4});
  EXPECT_EQ(arc_error(std::span<const LogNumber>(v), std::span<const LogNumber>(v)).value, 0.0);
}

TEST(ArcError, KiteOutcomeAgainstTruth) {
  // mean(0, 0, 0.5/8, 1.5/4) = 0.109375
  const auto t = logs({1, 5, 8, 4}), a = logs({1, 5, 7.5, 2.5});
  const auto e = arc_error(std::span<const LogNumber>(t), std::span<const LogNumber>(a));
  EXPECT_NEAR(e.value, 0.109375, 1e-14);
  EXPECT_EQ(e.compared, 4u);
}

TEST(ArcError, ZeroTruthIsSkipped) {
  const ExactPolynomial kite = exact_deletion_contraction(gen_kite());
  auto approx = kite.to_log();
  approx[2] = LogNumber::from_double(9);  // 12.5% off
  const auto e = arc_error(kite, approx);
  EXPECT_EQ(e.skipped, 1u);
  EXPECT_EQ(e.compared, 4u);
  EXPECT_NEAR(e.value, 0.125 / 4, 1e-14);
  EXPECT_THROW(arc_error(kite, logs({1, 2})), std::invalid_argument);
}

TEST(RelEvalError, KnownValues) {
  const ExactPolynomial kite = exact_deletion_contraction(gen_kite());
  EXPECT_LE(rel_eval_error(kite, kite.to_log(), 5.0), 1e-14);
  // P(5) = 180; x^4 - 5x^3 + 7.5x^2 - 2.5x at 5 is 175.
  const auto approx = logs({0, -2.5, 7.5, -5, 1});
  EXPECT_NEAR(rel_eval_error(kite, approx, 5.0), 5.0 / 180.0, 1e-13);
  EXPECT_THROW(rel_eval_error(kite, approx, 2.0), std::domain_error);  // P(2) = 0
  EXPECT_THROW(rel_eval_error(kite, approx, 0.0), std::invalid_argument);
}

TEST(CoefficientRelErrors, NanWhereTruthIsZero) {
  const auto t = logs({0, 4, 8}), a = logs({1, 5, 8});
  const auto e = coefficient_rel_errors(t, a);
  EXPECT_TRUE(std::isnan(e[0]));
  EXPECT_NEAR(e[1], 0.25, 1e-15);
  EXPECT_EQ(e[2], 0.0);
}

}  // namespace
