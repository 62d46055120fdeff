#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace chromest {

/// Signed real number stored as (sign, natural log of magnitude).
///
/// Coefficients of chromatic polynomials overflow double long before the
/// graphs get interesting (the middle coefficient of a 100-cycle is ~1e29, a
/// 500-vertex graph goes far past 1e308), so every estimate in the library is
/// carried in this form. sign == 0 is the exact zero and its log magnitude is
/// never read.
class LogNumber {
 public:
  constexpr LogNumber() = default;

  static LogNumber zero() { return {}; }
  static LogNumber one() { return from_log(0.0); }

  static LogNumber from_log(double log_magnitude, int sign = 1) {
    if (sign == 0) return {};
    if (!std::isfinite(log_magnitude)) {
      if (log_magnitude == -std::numeric_limits<double>::infinity()) return {};
      throw std::domain_error("LogNumber: non-finite log magnitude");
    }
    LogNumber r;
    r.sign_ = sign > 0 ? 1 : -1;
    r.log_ = log_magnitude;
    return r;
  }

  static LogNumber from_double(double value) {
    if (std::isnan(value) || std::isinf(value)) throw std::domain_error("LogNumber: non-finite value");
    if (value == 0.0) return {};
    return from_log(std::log(std::fabs(value)), value > 0 ? 1 : -1);
  }

  int sign() const noexcept { return sign_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  /// Natural log of |value|; -inf for zero.
  double log_magnitude() const noexcept {
    return sign_ == 0 ? -std::numeric_limits<double>::infinity() : log_;
  }
  double log10_magnitude() const noexcept { return log_magnitude() * std::numbers::log10e; }

  /// Linear value; overflows to +-inf for huge magnitudes.
  double to_double() const noexcept { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_); }

  LogNumber abs() const noexcept {
    LogNumber r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  LogNumber operator-() const noexcept {
    LogNumber r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  LogNumber& operator*=(const LogNumber& o) noexcept {
    if (sign_ == 0 || o.sign_ == 0) {
      *this = {};
    } else {
      sign_ *= o.sign_;
      log_ += o.log_;
    }
    return *this;
  }

  LogNumber& operator/=(const LogNumber& o) {
    if (o.sign_ == 0) throw std::domain_error("LogNumber: division by zero");
    if (sign_ != 0) {
      sign_ *= o.sign_;
      log_ -= o.log_;
    }
    return *this;
  }

  LogNumber& operator+=(const LogNumber& o);
  LogNumber& operator-=(const LogNumber& o) { return *this += -o; }

  friend LogNumber operator*(LogNumber a, const LogNumber& b) noexcept { return a *= b; }
  friend LogNumber operator/(LogNumber a, const LogNumber& b) { return a /= b; }
  friend LogNumber operator+(LogNumber a, const LogNumber& b) { return a += b; }
  friend LogNumber operator-(LogNumber a, const LogNumber& b) { return a -= b; }

  /// Bitwise-identical representation (same sign, same log).
  friend bool operator==(const LogNumber& a, const LogNumber& b) noexcept {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_ == b.log_);
  }

  /// Value comparison.
  friend bool operator<(const LogNumber& a, const LogNumber& b) noexcept {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.log_ < b.log_ : a.log_ > b.log_;
  }

  friend std::ostream& operator<<(std::ostream& os, const LogNumber& x) {
    if (x.sign_ == 0) return os << "0";
    return os << (x.sign_ < 0 ? "-" : "+") << "exp(" << x.log_ << ")";
  }

 private:
  int sign_ = 0;
  double log_ = 0.0;
};

/// Sign-aware log-sum-exp.
///
/// Equal signs add magnitudes; opposite signs subtract the smaller from the
/// larger and keep the larger's sign. Exactly cancelling operands (or a
/// difference below double resolution) give zero.
inline LogNumber log_add(const LogNumber& a, const LogNumber& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const bool a_larger = a.log_magnitude() >= b.log_magnitude();
  const LogNumber& hi = a_larger ? a : b;
  const LogNumber& lo = a_larger ? b : a;
  const double d = lo.log_magnitude() - hi.log_magnitude();  // <= 0
  if (hi.sign() == lo.sign()) return LogNumber::from_log(hi.log_magnitude() + std::log1p(std::exp(d)), hi.sign());
  if (d == 0.0) return LogNumber::zero();
  // log(1 - e^d): expm1 branch is accurate when d is near 0, log1p when it is very negative.
  const double rest = d > -std::numbers::ln2 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d));
  if (!std::isfinite(rest)) return LogNumber::zero();
  return LogNumber::from_log(hi.log_magnitude() + rest, hi.sign());
}

inline LogNumber& LogNumber::operator+=(const LogNumber& o) { return *this = log_add(*this, o); }

/// ln(k!) for k in [0, max], built once by summing ln(j) in extended precision.
class LogFactorials {
 public:
  explicit LogFactorials(std::size_t max = 0) { reserve(max); }

  void reserve(std::size_t max) {
    if (table_.empty()) table_.push_back(0.0L);
    while (table_.size() <= max) {
      const auto j = static_cast<long double>(table_.size());
      table_.push_back(table_.back() + std::log(j));
    }
  }

  double operator()(std::size_t k) const {
    if (k >= table_.size()) throw std::out_of_range("LogFactorials: table too small");
    return static_cast<double>(table_[k]);
  }

  std::size_t max() const noexcept { return table_.size() - 1; }

 private:
  std::vector<long double> table_;
};

/// Horner evaluation of sum_k coeffs[k] * x^k with LogNumber arithmetic
/// (coefficient index = power).
inline LogNumber horner(const std::vector<LogNumber>& coeffs, const LogNumber& x) {
  LogNumber acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace chromest
