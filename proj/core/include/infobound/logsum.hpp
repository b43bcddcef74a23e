#ifndef INFOBOUND_LOGSUM_HPP
#define INFOBOUND_LOGSUM_HPP

#include <cmath>
#include <limits>
#include <span>

namespace infobound {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Compensated (Kahan) accumulator for linear-domain sums.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// log(exp(a) + exp(b)) without leaving the log domain.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

/// Max-shifted log-sum-exp over a range; empty or all -inf input gives -inf.
inline double log_sum_exp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) {
    if (x > hi) hi = x;
  }
  if (hi == kNegInf) return kNegInf;
  KahanSum acc;
  for (double x : xs) {
    if (x != kNegInf) acc.add(std::exp(x - hi));
  }
  return hi + std::log(acc.value());
}

}  // namespace infobound

#endif  // INFOBOUND_LOGSUM_HPP
