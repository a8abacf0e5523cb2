#ifndef FPATTACK_PAP_HPP
#define FPATTACK_PAP_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fpattack/rng.hpp"
#include "fpattack/sign_matrix.hpp"

namespace fpattack {

// Padding-and-permuting transform: append pad_len all-(+1) columns and
// pad_len all-(-1) columns to an n x d0 sign matrix, then permute the
// columns.  Extraction un-permutes a length-d answer and keeps the first
// d0 coordinates.  Column indices are 0-based.

struct MarkedColumns {
  std::vector<long> plus;   // columns that read +1 in every row
  std::vector<long> minus;  // columns that read -1 in every row
};

MarkedColumns marked_columns(const SignMatrix& x);

// Agreement of q with at least 90% of each marked set; empty sets are
// vacuously satisfied.  Real-valued q agrees on a column only when the
// entry equals the mark exactly (mechanism outputs here are hard signs).
bool strongly_agrees(std::span<const double> q, const SignMatrix& x);
bool strongly_agrees(std::span<const std::int8_t> q, const SignMatrix& x);

// Column permutation on [0..d); forward maps source position to target
// position.  The inverse is kept alongside so applying the permutation can
// walk targets sequentially.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> forward);
  Permutation(std::vector<std::uint32_t> forward, std::vector<std::uint32_t> inverse);

  static Permutation identity(long d);
  static Permutation random(long d, Rng& rng);  // Fisher-Yates, uniform

  long size() const { return static_cast<long>(forward_.size()); }
  std::uint32_t target_of(long source) const { return forward_[static_cast<std::size_t>(source)]; }
  std::uint32_t source_of(long target) const { return inverse_[static_cast<std::size_t>(target)]; }
  const std::vector<std::uint32_t>& forward() const { return forward_; }
  Permutation inverted() const { return Permutation(inverse_, forward_); }

 private:
  std::vector<std::uint32_t> forward_;
  std::vector<std::uint32_t> inverse_;
};

struct PaddingPlan {
  long long d0 = 0;       // source width
  long long pad_len = 0;  // columns per constant block
  long long total = 0;    // d0 + 2*pad_len
};

// pad_len = ceil(d0 / (2*alpha)).
PaddingPlan padding_plan_from_d0(long long d0, double alpha);
// pad_len = ceil((1-alpha)*d/2); throws std::invalid_argument when no
// source width is left.
PaddingPlan padding_plan_from_total(long long d, double alpha);

struct PapInstance {
  SignMatrix padded;   // n x (d0 + 2*pad_len)
  Permutation perm;
  long long d0 = 0;
  long long pad_len = 0;
};

PapInstance pap_transform(const SignMatrix& x, long long pad_len, Permutation perm);
PapInstance pap_transform(const SignMatrix& x, long long pad_len, Rng& rng);

// Sampler for the permutation used by the transform at large widths: source
// columns land on a uniform subset of targets in uniform order; pad columns
// fill the rest, +1 block before -1 block in scan order.  Identical pad
// columns make the induced padded matrix and extraction map distributed
// exactly as under a uniform permutation, at one sequential pass.
Permutation random_placement_permutation(long long d0, long long pad_len, Rng& rng);

std::vector<double> extract(std::span<const double> q_full, const Permutation& perm, long long d0);
std::vector<std::int8_t> extract(std::span<const std::int8_t> q_full, const Permutation& perm, long long d0);

// Repeated-run correlation check on a fixed source matrix: runs the black
// box (PAP + mechanism + extraction composed by the caller) `repetitions`
// times; for each marked column of x records the frequency of matching the
// mark.  Verdict: every marked column's frequency >= 0.9.
struct CorrelationReport {
  std::vector<long> columns;      // marked columns of x, plus then minus
  std::vector<double> frequency;  // matching frequency per column
  bool verdict = false;
  long repetitions = 0;
};

CorrelationReport strong_correlation_estimate(
    const std::function<std::vector<double>(Rng&)>& black_box, const SignMatrix& x,
    long repetitions, Rng& rng);

// k-block embedding: block `slot` (1-based) is y; every other block is a
// fresh PAP of a fresh hard instance with the same row count (reference
// row discarded), under its own fresh permutation.
SignMatrix k_copy_embed(const SignMatrix& y, long slot, long k, long long pad_len, long long d0,
                        Rng& rng);

}  // namespace fpattack

#endif
