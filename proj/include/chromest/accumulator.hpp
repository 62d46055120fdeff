#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "chromest/log_number.hpp"

namespace chromest {

/// Running (count, sum) pair recorded at a fixed cadence.
struct Snapshot {
  std::uint64_t count = 0;
  LogNumber sum;

  LogNumber mean() const {
    return count == 0 ? LogNumber{} : sum / LogNumber::from_log(std::log(static_cast<double>(count)));
  }
};

/// Variance together with a flag that is set when the subtraction
/// sum_sq - sum^2/count lost (almost) all significant digits.
struct VarianceEstimate {
  LogNumber value;
  bool precision_loss = false;
};

/// Streaming mean/variance of nonnegative samples kept entirely in log space.
///
/// Stores sum(x) and sum(x^2) as LogNumbers so that two accumulators merge by
/// plain addition. When snapshot_every > 0 a (count, sum) pair is appended
/// every snapshot_every pushes; merged histories are combined index by index,
/// which yields the running mean of the interleaved stream.
///
/// A stream whose samples are all bitwise equal reports that value as its
/// mean and an exact zero variance, free of summation round-off.
class SampleAccumulator {
 public:
  /// Relative size below which sum_sq - sum^2/count is treated as zero.
  static constexpr double kCancellationFloor = 1e-12;

  explicit SampleAccumulator(std::uint64_t snapshot_every = 0) : snapshot_every_(snapshot_every) {}

  void push(const LogNumber& x) {
    if (x.sign() < 0) throw std::invalid_argument("SampleAccumulator: negative sample");
    if (count_ == 0) first_ = x;
    constant_ = constant_ && x == first_;
    ++count_;
    sum_ += x;
    sum_sq_ += x * x;
    if (snapshot_every_ != 0 && count_ % snapshot_every_ == 0) history_.push_back({count_, sum_});
  }

  void merge(const SampleAccumulator& other) {
    if (other.snapshot_every_ != snapshot_every_ && !other.history_.empty() && !history_.empty())
      throw std::invalid_argument("SampleAccumulator::merge: snapshot cadences differ");
    if (snapshot_every_ == 0) snapshot_every_ = other.snapshot_every_;
    if (count_ == 0) first_ = other.first_;
    constant_ = constant_ && other.constant_ && (other.count_ == 0 || other.first_ == first_);

    const std::size_t len = std::max(history_.size(), other.history_.size());
    std::vector<Snapshot> merged(len);
    for (std::size_t i = 0; i < len; ++i) {
      const Snapshot a = at_or_last(history_, i);
      const Snapshot b = at_or_last(other.history_, i);
      merged[i] = {a.count + b.count, a.sum + b.sum};
    }
    history_ = std::move(merged);
    count_ += other.count_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
  }

  std::uint64_t count() const noexcept { return count_; }
  const LogNumber& sum() const noexcept { return sum_; }
  const LogNumber& sum_of_squares() const noexcept { return sum_sq_; }
  std::uint64_t snapshot_every() const noexcept { return snapshot_every_; }
  const std::vector<Snapshot>& history() const noexcept { return history_; }

  LogNumber mean() const { return is_constant() ? first_ : Snapshot{count_, sum_}.mean(); }

  /// True when at least one sample was seen and all samples were equal.
  bool is_constant() const noexcept { return count_ > 0 && constant_; }

  /// Unbiased sample variance (sum_sq - sum^2/count) / (count - 1).
  VarianceEstimate variance() const {
    if (count_ < 2 || is_constant()) return {};
    const LogNumber n = LogNumber::from_log(std::log(static_cast<double>(count_)));
    const LogNumber centered = sum_sq_ - sum_ * sum_ / n;
    if (centered.is_zero()) return {};
    const bool tiny = centered.log_magnitude() - sum_sq_.log_magnitude() < std::log(kCancellationFloor);
    if (tiny || centered.sign() < 0) return {LogNumber{}, true};
    return {centered / LogNumber::from_log(std::log(static_cast<double>(count_ - 1))), false};
  }

  std::vector<LogNumber> mean_history() const {
    std::vector<LogNumber> out;
    out.reserve(history_.size());
    for (const auto& s : history_) out.push_back(s.mean());
    return out;
  }

 private:
  static Snapshot at_or_last(const std::vector<Snapshot>& h, std::size_t i) {
    if (h.empty()) return {};
    return i < h.size() ? h[i] : h.back();
  }

  std::uint64_t snapshot_every_ = 0;
  std::uint64_t count_ = 0;
  LogNumber sum_;
  LogNumber sum_sq_;
  std::vector<Snapshot> history_;
  LogNumber first_;
  bool constant_ = true;
};

inline SampleAccumulator merge(SampleAccumulator a, const SampleAccumulator& b) {
  a.merge(b);
  return a;
}

/// True when every snapshot in the trailing window stays within
/// tolerance * |current mean| of the current (last) mean.
///
/// The window covers the last ceil(window_fraction * size) snapshots, and
/// at least two. Needs two or more snapshots; otherwise false.
inline bool convergence_check(std::span<const LogNumber> history, double window_fraction = 0.1,
                              double tolerance = 0.01) {
  if (history.size() < 2) return false;
  const auto want = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(history.size())));
  const std::size_t window = std::clamp<std::size_t>(want, 2, history.size());
  const LogNumber& current = history.back();
  const double log_tol = std::log(tolerance);
  for (std::size_t i = history.size() - window; i < history.size(); ++i) {
    const LogNumber diff = history[i] - current;
    if (diff.is_zero()) continue;
    if (current.is_zero()) return false;
    if (diff.log_magnitude() - current.log_magnitude() > log_tol) return false;
  }
  return true;
}

}  // namespace chromest
