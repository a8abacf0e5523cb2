#ifndef FPATTACK_HARD_DIST_HPP
#define FPATTACK_HARD_DIST_HPP

#include <cstdint>
#include <vector>

#include "fpattack/rng.hpp"
#include "fpattack/sign_matrix.hpp"

namespace fpattack {

// Column-bias distribution and the hard input distribution built from it.
//
// A bias p is drawn by sampling t uniformly on [-ln(5n), ln(5n)] and setting
// p = tanh(t/2), giving density 1 / (ln(5n) * (1-p^2)) supported on
// |p| <= 1 - 2/(5n+1).  A hard instance is an n x d sign matrix plus a
// reference row, all columns mutually independent given their biases and
// every entry of column j having mean p_j.

// Largest attainable |p| for a given n: 1 - 2/(5n+1).
double bias_support_bound(long n);

// Density of the bias distribution at p.  Throws std::domain_error outside
// the support, std::invalid_argument for n < 1.
double bias_density(double p, long n);

// CDF of the bias distribution at p (clamped to [0,1] at the support edges).
double bias_cdf(double p, long n);

double sample_bias(long n, Rng& rng);

// One length-n column of independent signs with common mean p.
std::vector<std::int8_t> sample_column(double p, long n, Rng& rng);

struct HardInstance {
  SignMatrix codebook;                 // n x d
  std::vector<std::int8_t> reference;  // length d, same per-column biases
  std::vector<double> biases;          // length d
};

// Draws biases, codebook and reference column by column.
HardInstance sample_instance(long n, long d, Rng& rng);

}  // namespace fpattack

#endif
