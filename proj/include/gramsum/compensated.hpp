#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace gramsum {

/// Kahan-Babuska-Neumaier accumulator. Unlike plain Kahan it stays exact
/// when an addend is larger than the running sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double x) : sum_(x) {}

  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) {
    *this += other.sum_;
    *this += other.comp_;
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Pairwise combination of partial sums. The tree shape depends only on
/// parts.size(), so the result is independent of how the parts were produced.
inline CompensatedSum pairwise_combine(std::span<const CompensatedSum> parts) {
  if (parts.empty()) return {};
  if (parts.size() == 1) return parts.front();
  const std::size_t mid = parts.size() / 2;
  CompensatedSum left = pairwise_combine(parts.first(mid));
  left += pairwise_combine(parts.subspan(mid));
  return left;
}

}  // namespace gramsum
