#ifndef FPATTACK_STATS_HPP
#define FPATTACK_STATS_HPP

#include <cmath>
#include <cstdint>

namespace fpattack {

// Welford accumulator for mean and unbiased sample variance.
class RunningStat {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::int64_t count() const { return count_; }
  double mean() const { return mean_; }

  double sample_variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double sample_sd() const { return std::sqrt(sample_variance()); }

  // Standard error of the mean: sample sd / sqrt(count).
  double standard_error() const {
    return count_ > 0 ? sample_sd() / std::sqrt(static_cast<double>(count_)) : 0.0;
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct RateEstimate {
  double rate = 0.0;
  double ci95 = 0.0;  // normal-approximation half-width
};

inline RateEstimate binomial_rate(std::int64_t successes, std::int64_t trials) {
  RateEstimate r;
  if (trials <= 0) return r;
  r.rate = static_cast<double>(successes) / static_cast<double>(trials);
  r.ci95 = 1.96 * std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(trials));
  return r;
}

}  // namespace fpattack

#endif
