#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chromest/log_number.hpp"

namespace chromest {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Nearest LogNumber to an arbitrary-precision integer.
inline LogNumber to_log_number(const BigInt& v) {
  if (v == 0) return {};
  const int sign = v < 0 ? -1 : 1;
  const BigInt mag = boost::multiprecision::abs(v);
  const auto msb = static_cast<long>(boost::multiprecision::msb(mag));
  if (msb < 900) return LogNumber::from_log(std::log(mag.convert_to<double>()), sign);
  const long shift = msb - 60;
  const BigInt top = mag >> shift;
  return LogNumber::from_log(std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2, sign);
}

inline LogNumber to_log_number(const Rational& v) {
  if (v == 0) return {};
  return to_log_number(boost::multiprecision::numerator(v)) /
         to_log_number(boost::multiprecision::denominator(v));
}

/// Polynomial with exact integer coefficients, constant term first.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static ExactPolynomial constant(BigInt c) { return ExactPolynomial(std::vector<BigInt>{std::move(c)}); }

  /// x^k
  static ExactPolynomial monomial(std::size_t k) {
    std::vector<BigInt> c(k + 1);
    c[k] = 1;
    return ExactPolynomial(std::move(c));
  }

  /// x - a
  static ExactPolynomial linear(const BigInt& a) { return ExactPolynomial(std::vector<BigInt>{-a, 1}); }

  /// x (x-1) ... (x-t+1)
  static ExactPolynomial falling_factorial(std::size_t t) {
    ExactPolynomial p = constant(1);
    for (std::size_t j = 0; j < t; ++j) p = p * linear(j);
    return p;
  }

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of x^k (zero beyond the degree).
  BigInt operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }

  BigInt evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
  }

  /// Coefficients as LogNumbers, index = power. Padded with zeros to `size` if larger.
  std::vector<LogNumber> to_log(std::size_t size = 0) const {
    std::vector<LogNumber> out(std::max(size, coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] = to_log_number(coeffs_[k]);
    return out;
  }

  /// Coefficients from x^degree down to x^0.
  std::vector<std::string> descending_strings() const {
    std::vector<std::string> out;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out.push_back(it->str());
    if (out.empty()) out.push_back("0");
    return out;
  }

  friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    return ExactPolynomial(std::move(c));
  }

  friend ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
    return ExactPolynomial(std::move(c));
  }

  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return ExactPolynomial(std::move(c));
  }

  friend bool operator==(const ExactPolynomial&, const ExactPolynomial&) = default;

  friend std::ostream& operator<<(std::ostream& os, const ExactPolynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
      const BigInt& c = p.coeffs_[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      const BigInt mag = boost::multiprecision::abs(c);
      if (mag != 1 || k == 0) os << mag;
      if (k > 0) os << "x";
      if (k > 1) os << "^" << k;
      first = false;
    }
    return os;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// Builds sum_i (-1)^i b_i x^(n-i) from broken-circuit counts b_0..b_{n-1}.
inline ExactPolynomial polynomial_from_nbc_counts(const std::vector<BigInt>& b) {
  const std::size_t n = b.size();
  std::vector<BigInt> c(n + 1);
  for (std::size_t i = 0; i < n; ++i) c[n - i] = (i % 2 == 0) ? b[i] : BigInt(-b[i]);
  return ExactPolynomial(std::move(c));
}

}  // namespace chromest
