#ifndef FPATTACK_FP_CODE_HPP
#define FPATTACK_FP_CODE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fpattack/rng.hpp"
#include "fpattack/sign_matrix.hpp"

namespace fpattack {

// Fingerprinting code: generation draws a codebook and a private reference
// row from the hard distribution; tracing accuses the first user whose
// answer correlation beats the reference by more than 0.2*d/(n*ln(5n)).
// User indices are 1-based throughout ([1..n]); column indices are 0-based.

// ceil(c * n^2 * ln^2(20n) * ln(20n/beta)).  Throws std::invalid_argument
// unless n >= 1, beta in (0,1), c > 0.
long long code_length(long n, double beta, double c = 200.0);

struct Codebook {
  SignMatrix matrix;  // n x d
};

struct TraceKey {
  std::vector<std::int8_t> reference;  // length d
};

struct TraceResult {
  std::optional<long> accused;  // 1-based user index
};

std::pair<Codebook, TraceKey> generate(long n, double beta, Rng& rng,
                                       std::optional<long long> d_override = std::nullopt);

// Scans users in increasing index order; first score above threshold wins.
// answer entries must lie in [-1, 1] and match the codebook width.
TraceResult trace(const Codebook& code, const TraceKey& key, std::span<const double> answer);
double trace_threshold(long n, long long d);
double user_score(const Codebook& code, const TraceKey& key, std::span<const double> answer, long user);

// True when every column of the answer matches some coalition row there.
bool is_feasible(const Codebook& code, const std::vector<long>& coalition,
                 std::span<const std::int8_t> answer);

// Text format: header "n d seed", then n codebook rows and one reference
// row, entries "1"/"-1" space-separated.  Round-trips byte-exactly.
struct StoredCode {
  Codebook code;
  TraceKey key;
  std::uint64_t seed = 0;
};

void save_code(std::ostream& out, const Codebook& code, const TraceKey& key, std::uint64_t seed);
StoredCode load_code(std::istream& in);

}  // namespace fpattack

#endif
