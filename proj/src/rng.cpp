#include "fpattack/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fpattack {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) word = splitmix64(x);
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
  std::uint64_t x = seed;
  std::uint64_t a = splitmix64(x);
  x ^= stream * 0xd1342543de82ef95ULL + 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(x);
  x ^= substream * 0xaf251af3b0f025b5ULL + 0x2545f4914f6cdd1dULL;
  std::uint64_t c = splitmix64(x);
  Rng r(a ^ rotl(b, 17) ^ rotl(c, 41));
  return r;
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

long Rng::index(long n) {
  if (n <= 0) throw std::invalid_argument("Rng::index: n must be positive");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  // Lemire's multiply-shift with rejection; unbiased.
  std::uint64_t x = next();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (-bound) % bound;
    while (low < threshold) {
      x = next();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<long>(m >> 64);
}

std::int8_t Rng::sign_with_mean(double p) {
  return uniform() < 0.5 * (1.0 + p) ? std::int8_t{1} : std::int8_t{-1};
}

double Rng::gaussian() {
  if (has_spare_gauss_) {
    has_spare_gauss_ = false;
    return spare_gauss_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_gauss_ = r * std::sin(theta);
  has_spare_gauss_ = true;
  return r * std::cos(theta);
}

Rng Rng::split() {
  const std::uint64_t a = next();
  const std::uint64_t b = next();
  return Rng(a ^ rotl(b, 32) ^ 0x6a09e667f3bcc909ULL);
}

}  // namespace fpattack
