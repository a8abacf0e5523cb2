#ifndef FPATTACK_FP_LEMMA_HPP
#define FPATTACK_FP_LEMMA_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "fpattack/rng.hpp"

namespace fpattack {

// Fingerprinting-lemma estimator: for any adversary f mapping a sign column
// to [-1,1] with f(1,...,1) = 1 and f(-1,...,-1) = -1, the expectation of
// f(x) * sum_i (x_i - p) over the hard column distribution is at least
// 1/ln(5n).  Randomized adversaries that only hit the boundary values with
// probability >= 0.9 still clear 0.4/ln(5n).

struct LemmaAdversary {
  std::string name;
  // Maps one column (entries +/-1) to a value in [-1, 1].
  std::function<double(std::span<const std::int8_t>, Rng&)> evaluate;
  bool deterministic = true;  // quadrature oracle requires a deterministic map
  bool robust = false;        // true: judged against 0.4/ln(5n) instead of 1/ln(5n)
};

// Stock adversaries.
LemmaAdversary mean_adversary();                        // f(x) = (sum x_i)/n; identity at n = 1
LemmaAdversary majority_adversary();                    // sign of the sum, ties -> +1
LemmaAdversary parity_corrected_adversary();            // product of entries, endpoints forced
LemmaAdversary noisy_majority_adversary(double flip_probability = 0.1);

// f * sum_i (x_i - p).  Throws ContractViolation when |f| > 1 (tiny float
// slack allowed); range of the result is [-2n, 2n].
double lemma_statistic(double f_value, std::span<const std::int8_t> column, double p);

struct EstimateReport {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t trials = 0;
  double bound = 0.0;  // 1/ln(5n), or 0.4/ln(5n) for robust adversaries
};

double lemma_bound(long n, bool robust);

// Monte Carlo estimate over fresh columns; one bias + one column per trial.
EstimateReport estimate_lemma_expectation(const LemmaAdversary& adversary, long n,
                                          std::int64_t trials, Rng& rng);

// Independent deterministic route: enumerate all 2^n columns and integrate
// over the bias parameter with a midpoint rule, uniform in t on
// [-ln(5n), ln(5n)] (the parameterization in which the bias is drawn).
// n <= 12 (BudgetExceeded beyond); adversary must be deterministic.
double oracle_lemma_expectation(const LemmaAdversary& adversary, long n, long quadrature_nodes = 20000);

}  // namespace fpattack

#endif
