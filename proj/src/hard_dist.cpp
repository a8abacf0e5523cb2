#include "fpattack/hard_dist.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fpattack {

namespace {

void check_n(long n) {
  if (n < 1) throw std::invalid_argument("bias distribution: n must be >= 1, got " + std::to_string(n));
}

}  // namespace

double bias_support_bound(long n) {
  check_n(n);
  return 1.0 - 2.0 / (5.0 * static_cast<double>(n) + 1.0);
}

double bias_density(double p, long n) {
  check_n(n);
  const double bound = bias_support_bound(n);
  if (!(std::abs(p) <= bound + 1e-12)) {
    throw std::domain_error("bias_density: p outside support [-" + std::to_string(bound) + ", " +
                            std::to_string(bound) + "]");
  }
  return 1.0 / (std::log(5.0 * static_cast<double>(n)) * (1.0 - p * p));
}

double bias_cdf(double p, long n) {
  check_n(n);
  const double bound = bias_support_bound(n);
  if (p <= -bound) return 0.0;
  if (p >= bound) return 1.0;
  const double log5n = std::log(5.0 * static_cast<double>(n));
  return (std::log1p(p) - std::log1p(-p)) / (2.0 * log5n) + 0.5;
}

double sample_bias(long n, Rng& rng) {
  check_n(n);
  const double lim = std::log(5.0 * static_cast<double>(n));
  const double t = rng.uniform(-lim, lim);
  return std::tanh(0.5 * t);
}

std::vector<std::int8_t> sample_column(double p, long n, Rng& rng) {
  check_n(n);
  if (!(p >= -1.0 && p <= 1.0)) throw std::domain_error("sample_column: p must lie in [-1, 1]");
  std::vector<std::int8_t> col(static_cast<std::size_t>(n));
  for (auto& v : col) v = rng.sign_with_mean(p);
  return col;
}

HardInstance sample_instance(long n, long d, Rng& rng) {
  check_n(n);
  if (d < 1) throw std::invalid_argument("sample_instance: d must be >= 1, got " + std::to_string(d));
  HardInstance inst;
  inst.codebook = SignMatrix(n, d);
  inst.reference.resize(static_cast<std::size_t>(d));
  inst.biases.resize(static_cast<std::size_t>(d));
  for (long j = 0; j < d; ++j) {
    const double p = sample_bias(n, rng);
    inst.biases[static_cast<std::size_t>(j)] = p;
    auto col = inst.codebook.column(j);
    for (long i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = rng.sign_with_mean(p);
    inst.reference[static_cast<std::size_t>(j)] = rng.sign_with_mean(p);
  }
  return inst;
}

}  // namespace fpattack
