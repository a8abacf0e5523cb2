#ifndef FPATTACK_RNG_HPP
#define FPATTACK_RNG_HPP

#include <array>
#include <cstdint>

namespace fpattack {

// Deterministic random source: xoshiro256++ seeded through splitmix64.
// Every sampling routine in the library takes one of these explicitly; two
// runs from equal seeds produce identical bit streams.  derive() gives
// statistically independent child streams from (seed, stream, substream),
// so per-trial generators do not depend on execution order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

  std::uint64_t next();

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  // Uniform integer in [0, n), unbiased. n must be positive.
  long index(long n);

  // +1 with probability (1+p)/2, else -1.  p in [-1, 1]; exact at p = +/-1.
  std::int8_t sign_with_mean(double p);

  // Standard normal via Box-Muller (pairs cached).
  double gaussian();

  // Child generator derived from the parent's stream state.
  Rng split();

 private:
  Rng() = default;
  std::array<std::uint64_t, 4> s_{};
  double spare_gauss_ = 0.0;
  bool has_spare_gauss_ = false;
};

}  // namespace fpattack

#endif
