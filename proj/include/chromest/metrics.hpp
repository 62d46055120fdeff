#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "chromest/exact_polynomial.hpp"
#include "chromest/log_number.hpp"

namespace chromest {

/// |P_true(x) - P_approx(x)| / |P_true(x)|. The true value is computed in
/// exact rationals (a double x converts exactly); the approximation, indexed
/// by power, is evaluated by log-space Horner.
inline double rel_eval_error(const ExactPolynomial& truth, const std::vector<LogNumber>& approx, double x) {
  if (!(x > 0) || !std::isfinite(x)) throw std::invalid_argument("rel_eval_error: x must be positive and finite");
  const Rational exact = truth.evaluate(Rational(x));
  if (exact == 0) throw std::domain_error("rel_eval_error: true polynomial vanishes at x");
  const LogNumber t = to_log_number(exact);
  const LogNumber diff = t - horner(approx, LogNumber::from_double(x));
  if (diff.is_zero()) return 0.0;
  return std::exp(diff.log_magnitude() - t.log_magnitude());
}

struct ArcError {
  double value = 0.0;
  /// Coefficients left out because the true value is exactly zero.
  std::size_t skipped = 0;
  std::size_t compared = 0;
};

/// Average relative coefficient error: mean over i of |t_i - a_i| / |t_i|,
/// leaving out positions where t_i == 0.
inline ArcError arc_error(std::span<const LogNumber> truth, std::span<const LogNumber> approx) {
  if (truth.size() != approx.size()) throw std::invalid_argument("arc_error: length mismatch");
  ArcError out;
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i].is_zero()) {
      ++out.skipped;
      continue;
    }
    const LogNumber d = truth[i] - approx[i];
    total += d.is_zero() ? 0.0 : std::exp(d.log_magnitude() - truth[i].log_magnitude());
    ++out.compared;
  }
  out.value = out.compared == 0 ? 0.0 : total / static_cast<double>(out.compared);
  return out;
}

inline ArcError arc_error(const ExactPolynomial& truth, const std::vector<LogNumber>& approx) {
  const auto t = truth.to_log(approx.size());
  if (t.size() != approx.size()) throw std::invalid_argument("arc_error: length mismatch");
  return arc_error(std::span<const LogNumber>(t), std::span<const LogNumber>(approx));
}

/// Per-coefficient |t_i - a_i| / |t_i| (NaN where t_i == 0).
inline std::vector<double> coefficient_rel_errors(std::span<const LogNumber> truth, std::span<const LogNumber> approx) {
  if (truth.size() != approx.size()) throw std::invalid_argument("coefficient_rel_errors: length mismatch");
  std::vector<double> out(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i].is_zero()) {
      out[i] = std::nan("");
      continue;
    }
    const LogNumber d = truth[i] - approx[i];
    out[i] = d.is_zero() ? 0.0 : std::exp(d.log_magnitude() - truth[i].log_magnitude());
  }
  return out;
}

}  // namespace chromest
