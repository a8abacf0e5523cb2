#include "fpattack/fp_lemma.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fpattack/errors.hpp"
#include "fpattack/hard_dist.hpp"
#include "fpattack/stats.hpp"

namespace fpattack {

namespace {

long sum_of(std::span<const std::int8_t> column) {
  long s = 0;
  for (auto v : column) s += v;
  return s;
}

}  // namespace

LemmaAdversary mean_adversary() {
  LemmaAdversary a;
  a.name = "identity";
  a.evaluate = [](std::span<const std::int8_t> col, Rng&) {
    return static_cast<double>(sum_of(col)) / static_cast<double>(col.size());
  };
  return a;
}

LemmaAdversary majority_adversary() {
  LemmaAdversary a;
  a.name = "majority";
  a.evaluate = [](std::span<const std::int8_t> col, Rng&) {
    return sum_of(col) >= 0 ? 1.0 : -1.0;
  };
  return a;
}

LemmaAdversary parity_corrected_adversary() {
  LemmaAdversary a;
  a.name = "parity-corrected";
  a.evaluate = [](std::span<const std::int8_t> col, Rng&) {
    long minus = 0;
    for (auto v : col) minus += (v < 0);
    if (minus == 0) return 1.0;
    if (minus == static_cast<long>(col.size())) return -1.0;
    return (minus % 2 == 0) ? 1.0 : -1.0;
  };
  return a;
}

LemmaAdversary noisy_majority_adversary(double flip_probability) {
  if (!(flip_probability >= 0.0 && flip_probability <= 0.1)) {
    throw std::invalid_argument("noisy_majority_adversary: flip probability must lie in [0, 0.1]");
  }
  LemmaAdversary a;
  a.name = "noisy-majority";
  a.deterministic = false;
  a.robust = true;
  a.evaluate = [flip_probability](std::span<const std::int8_t> col, Rng& rng) {
    const double maj = sum_of(col) >= 0 ? 1.0 : -1.0;
    return rng.uniform() < flip_probability ? -maj : maj;
  };
  return a;
}

double lemma_statistic(double f_value, std::span<const std::int8_t> column, double p) {
  if (!(std::abs(f_value) <= 1.0 + 1e-9)) {
    throw ContractViolation("lemma_statistic: adversary value " + std::to_string(f_value) +
                            " outside [-1, 1]");
  }
  double s = 0.0;
  for (auto v : column) s += static_cast<double>(v) - p;
  return f_value * s;
}

double lemma_bound(long n, bool robust) {
  const double base = 1.0 / std::log(5.0 * static_cast<double>(n));
  return robust ? 0.4 * base : base;
}

EstimateReport estimate_lemma_expectation(const LemmaAdversary& adversary, long n,
                                          std::int64_t trials, Rng& rng) {
  if (trials <= 0) throw std::invalid_argument("estimate_lemma_expectation: trials must be positive");
  RunningStat stat;
  for (std::int64_t t = 0; t < trials; ++t) {
    const double p = sample_bias(n, rng);
    const auto column = sample_column(p, n, rng);
    const double f = adversary.evaluate(column, rng);
    stat.add(lemma_statistic(f, column, p));
  }
  EstimateReport report;
  report.mean = stat.mean();
  report.standard_error = stat.standard_error();
  report.trials = trials;
  report.bound = lemma_bound(n, adversary.robust);
  return report;
}

double oracle_lemma_expectation(const LemmaAdversary& adversary, long n, long quadrature_nodes) {
  if (n < 1) throw std::invalid_argument("oracle_lemma_expectation: n must be >= 1");
  if (n > 12) throw BudgetExceeded("oracle_lemma_expectation: 2^n enumeration capped at n = 12");
  if (quadrature_nodes < 1) throw std::invalid_argument("oracle_lemma_expectation: need >= 1 node");
  if (!adversary.deterministic) {
    throw std::invalid_argument("oracle_lemma_expectation: adversary must be deterministic");
  }

  const long size = 1L << n;
  std::vector<double> f_of(static_cast<std::size_t>(size));
  std::vector<int> plus_count(static_cast<std::size_t>(size));
  std::vector<std::int8_t> column(static_cast<std::size_t>(n));
  Rng dummy(0);
  for (long mask = 0; mask < size; ++mask) {
    int plus = 0;
    for (long i = 0; i < n; ++i) {
      const bool bit = (mask >> i) & 1;
      column[static_cast<std::size_t>(i)] = bit ? std::int8_t{1} : std::int8_t{-1};
      plus += bit;
    }
    const double f = adversary.evaluate(column, dummy);
    if (!(std::abs(f) <= 1.0 + 1e-9)) {
      throw ContractViolation("oracle_lemma_expectation: adversary value outside [-1, 1]");
    }
    f_of[static_cast<std::size_t>(mask)] = f;
    plus_count[static_cast<std::size_t>(mask)] = plus;
  }

  const double lim = std::log(5.0 * static_cast<double>(n));
  const double dt = 2.0 * lim / static_cast<double>(quadrature_nodes);
  std::vector<double> pow_plus(static_cast<std::size_t>(n) + 1);
  std::vector<double> pow_minus(static_cast<std::size_t>(n) + 1);
  double total = 0.0;
  for (long node = 0; node < quadrature_nodes; ++node) {
    const double t = -lim + (static_cast<double>(node) + 0.5) * dt;
    const double p = std::tanh(0.5 * t);
    const double q_plus = 0.5 * (1.0 + p);
    const double q_minus = 0.5 * (1.0 - p);
    pow_plus[0] = pow_minus[0] = 1.0;
    for (long i = 1; i <= n; ++i) {
      pow_plus[static_cast<std::size_t>(i)] = pow_plus[static_cast<std::size_t>(i - 1)] * q_plus;
      pow_minus[static_cast<std::size_t>(i)] = pow_minus[static_cast<std::size_t>(i - 1)] * q_minus;
    }
    double inner = 0.0;
    for (long mask = 0; mask < size; ++mask) {
      const int plus = plus_count[static_cast<std::size_t>(mask)];
      const double prob = pow_plus[static_cast<std::size_t>(plus)] *
                          pow_minus[static_cast<std::size_t>(n - plus)];
      const double col_sum = static_cast<double>(2 * plus - n);
      inner += f_of[static_cast<std::size_t>(mask)] * (col_sum - static_cast<double>(n) * p) * prob;
    }
    total += inner;
  }
  // The outer variable is uniform on an interval of length 2*lim.
  return total * dt / (2.0 * lim);
}

}  // namespace fpattack
