#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "chromest/exact_polynomial.hpp"
#include "chromest/exact_oracle.hpp"
#include "chromest/log_number.hpp"
#include "chromest/rng.hpp"

namespace {

using namespace chromest;

double rel_diff(const Rational& exact, const LogNumber& approx) {
  const LogNumber e = to_log_number(exact);
  if (e.is_zero()) return approx.is_zero() ? 0.0 : INFINITY;
  const LogNumber d = e - approx;
  return d.is_zero() ? 0.0 : std::exp(d.log_magnitude() - e.log_magnitude());
}

TEST(LogNumber, ZeroAndSigns) {
  EXPECT_TRUE(LogNumber{}.is_zero());
  EXPECT_TRUE(LogNumber::from_double(0.0).is_zero());
  EXPECT_EQ(LogNumber::from_double(-3.0).sign(), -1);
  EXPECT_DOUBLE_EQ(LogNumber::from_double(-3.0).to_double(), -3.0);
  EXPECT_DOUBLE_EQ((LogNumber::from_double(-3.0) * LogNumber::from_double(-2.0)).to_double(), 6.0);
  EXPECT_DOUBLE_EQ((LogNumber::from_double(3.0) / LogNumber::from_double(-2.0)).to_double(), -1.5);
  EXPECT_TRUE((LogNumber{} * LogNumber::from_double(5.0)).is_zero());
  EXPECT_THROW(LogNumber::one() / LogNumber{}, std::domain_error);
  EXPECT_THROW(LogNumber::from_double(NAN), std::domain_error);
}

TEST(LogNumber, SignedAddition) {
  const auto a = LogNumber::from_double(3.0), b = LogNumber::from_double(-5.0);
  EXPECT_NEAR((a + b).to_double(), -2.0, 1e-15);
  EXPECT_NEAR((b + a).to_double(), -2.0, 1e-15);
  EXPECT_NEAR((a - b).to_double(), 8.0, 1e-14);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((a + LogNumber{}), a);
  // Difference of nearly equal numbers keeps its sign and relative accuracy.
  const auto big = LogNumber::from_double(1.0 + 1e-6), one = LogNumber::one();
  EXPECT_NEAR((big - one).to_double(), 1e-6, 1e-15);
  EXPECT_EQ((one - big).sign(), -1);
}

TEST(LogNumber, HugeMagnitudesStayFinite) {
  const auto x = LogNumber::from_log(5000.0);
  const auto y = x * x;
  EXPECT_DOUBLE_EQ(y.log_magnitude(), 10000.0);
  EXPECT_NEAR((x + x).log_magnitude(), 5000.0 + std::log(2.0), 1e-12);
  EXPECT_TRUE(std::isinf(x.to_double()));
}

TEST(LogNumber, Ordering) {
  EXPECT_LT(LogNumber::from_double(-5.0), LogNumber::from_double(-1.0));
  EXPECT_LT(LogNumber::from_double(-1.0), LogNumber{});
  EXPECT_LT(LogNumber{}, LogNumber::from_double(1e-300));
  EXPECT_LT(LogNumber::from_double(2.0), LogNumber::from_double(3.0));
}

// Random pairs of doubles spread over 600 decades. Opposite-sign pairs are
// drawn with a magnitude ratio of at least 2 so the exact sum is not a
// catastrophic cancellation.
TEST(LogNumber, AdditionMatchesExactRationals) {
  Rng rng(11);
  for (int trial = 0; trial < 5000; ++trial) {
    const double ea = rng.uniform01() * 600.0 - 300.0;
    const double eb = ea - (rng.uniform01() * 40.0);
    const bool opposite = rng.uniform_index(2) == 1;
    const double a = std::pow(10.0, ea) * (rng.uniform_index(2) ? 1 : -1);
    double b = std::pow(10.0, eb) * (opposite ? (a > 0 ? -1 : 1) : (a > 0 ? 1 : -1));
    if (opposite && std::fabs(b) > std::fabs(a) / 2) b /= 2;
    if (a == 0.0 || b == 0.0) continue;
    const Rational exact = Rational(a) + Rational(b);
    const LogNumber sum = LogNumber::from_double(a) + LogNumber::from_double(b);
    ASSERT_LE(rel_diff(exact, sum), 1e-12) << a << " + " << b;
  }
}

TEST(LogNumber, FactorialTable) {
  LogFactorials lf(200);
  EXPECT_DOUBLE_EQ(lf(0), 0.0);
  EXPECT_DOUBLE_EQ(lf(1), 0.0);
  for (int k : {2, 5, 10, 50, 170, 200}) EXPECT_NEAR(lf(static_cast<std::size_t>(k)), std::lgamma(k + 1.0), 1e-12 * k);
}

TEST(LogNumber, BigIntConversion) {
  BigInt huge = 1;
  for (int i = 0; i < 3000; ++i) huge *= 3;
  const LogNumber l = to_log_number(huge);
  EXPECT_NEAR(l.log_magnitude(), 3000 * std::log(3.0), 1e-9);
  EXPECT_EQ(to_log_number(BigInt(-7)).sign(), -1);
  EXPECT_NEAR(to_log_number(Rational(1, 3)).to_double(), 1.0 / 3.0, 1e-16);
}

TEST(Horner, MatchesExactEvaluationOnPositiveCoefficients) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t degree = 1 + rng.uniform_index(25);
    std::vector<BigInt> c(degree + 1);
    for (auto& v : c) v = static_cast<long long>(rng.uniform_index(1'000'000));
    c.back() = 1;
    const ExactPolynomial p(c);
    const long long num = 1 + static_cast<long long>(rng.uniform_index(1000));
    const Rational x(num, 37);
    const LogNumber lx = to_log_number(x);
    ASSERT_LE(rel_diff(p.evaluate(x), horner(p.to_log(), lx)), 1e-10);
  }
}

// Alternating coefficients cancel, so the attainable accuracy is eps times
// the condition number kappa = sum |a_k| x^k / |P(x)|. Below kappa = 1e4 the
// flat 1e-10 bound applies; W_30 at x = 5 has kappa near 5e10.
TEST(Horner, MatchesExactEvaluationOnChromaticPolynomials) {
  const std::vector<ExactPolynomial> polys{
      formula_family(FormulaFamily::wheel, 10), formula_family(FormulaFamily::wheel, 30),
      formula_family(FormulaFamily::cycle, 12), formula_family(FormulaFamily::complete, 8),
      exact_deletion_contraction(gen_kite())};
  for (const auto& p : polys)
    for (int x : {5, 10, 15, 20, 25, 30}) {
      const Rational rx(x);
      Rational scale = 0;
      for (int k = 0; k <= p.degree(); ++k) {
        Rational term = boost::multiprecision::abs(Rational(p[k]));
        for (int j = 0; j < k; ++j) term *= rx;
        scale += term;
      }
      const LogNumber h = horner(p.to_log(), LogNumber::from_double(x));
      const Rational exact = p.evaluate(rx);
      if (exact == 0) {  // K_8 below x = 8
        EXPECT_LE(h.abs().to_double() / to_log_number(scale).to_double(), 1e-13) << p << " at " << x;
        continue;
      }
      const double kappa = (to_log_number(scale) / to_log_number(boost::multiprecision::abs(exact))).to_double();
      const double err = rel_diff(exact, h);
      EXPECT_LE(err, 1e-13 * kappa) << p << " at " << x;
      if (kappa <= 1e4) {
        EXPECT_LE(err, 1e-10) << p << " at " << x;
      }
    }
}

}  // namespace
