#include "fpattack/pap.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fpattack/hard_dist.hpp"

namespace fpattack {

MarkedColumns marked_columns(const SignMatrix& x) {
  MarkedColumns mc;
  const long n = x.rows();
  for (long j = 0; j < x.cols(); ++j) {
    const auto col = x.column(j);
    const std::int8_t first = col[0];
    bool constant = true;
    for (long i = 1; i < n; ++i) {
      if (col[static_cast<std::size_t>(i)] != first) {
        constant = false;
        break;
      }
    }
    if (!constant) continue;
    (first > 0 ? mc.plus : mc.minus).push_back(j);
  }
  return mc;
}

namespace {

template <typename T>
bool strongly_agrees_impl(std::span<const T> q, const SignMatrix& x) {
  if (q.size() != static_cast<std::size_t>(x.cols())) {
    throw std::invalid_argument("strongly_agrees: vector length does not match column count");
  }
  const MarkedColumns mc = marked_columns(x);
  for (int b : {+1, -1}) {
    const auto& cols = b > 0 ? mc.plus : mc.minus;
    if (cols.empty()) continue;
    long agree = 0;
    for (long j : cols) agree += (static_cast<double>(q[static_cast<std::size_t>(j)]) == static_cast<double>(b));
    if (static_cast<double>(agree) < 0.9 * static_cast<double>(cols.size())) return false;
  }
  return true;
}

}  // namespace

bool strongly_agrees(std::span<const double> q, const SignMatrix& x) {
  return strongly_agrees_impl(q, x);
}
bool strongly_agrees(std::span<const std::int8_t> q, const SignMatrix& x) {
  return strongly_agrees_impl(q, x);
}

namespace {

std::vector<std::uint32_t> invert(const std::vector<std::uint32_t>& forward) {
  std::vector<std::uint32_t> inv(forward.size(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t s = 0; s < forward.size(); ++s) {
    const std::uint32_t t = forward[s];
    if (t >= forward.size() || inv[t] != std::numeric_limits<std::uint32_t>::max()) {
      throw std::invalid_argument("Permutation: forward array is not a bijection");
    }
    inv[t] = static_cast<std::uint32_t>(s);
  }
  return inv;
}

}  // namespace

Permutation::Permutation(std::vector<std::uint32_t> forward)
    : forward_(std::move(forward)), inverse_(invert(forward_)) {}

Permutation::Permutation(std::vector<std::uint32_t> forward, std::vector<std::uint32_t> inverse)
    : forward_(std::move(forward)), inverse_(std::move(inverse)) {}

Permutation Permutation::identity(long d) {
  std::vector<std::uint32_t> f(static_cast<std::size_t>(d));
  std::iota(f.begin(), f.end(), 0u);
  return Permutation(f, f);
}

Permutation Permutation::random(long d, Rng& rng) {
  if (d < 0 || d > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("Permutation::random: size out of range");
  }
  std::vector<std::uint32_t> f(static_cast<std::size_t>(d));
  std::iota(f.begin(), f.end(), 0u);
  for (long i = d - 1; i > 0; --i) {
    const long j = rng.index(i + 1);
    std::swap(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
  }
  return Permutation(std::move(f));
}

PaddingPlan padding_plan_from_d0(long long d0, double alpha) {
  if (d0 < 1) throw std::invalid_argument("padding_plan: d0 must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("padding_plan: alpha must lie in (0, 1]");
  PaddingPlan plan;
  plan.d0 = d0;
  plan.pad_len = static_cast<long long>(std::ceil(static_cast<double>(d0) / (2.0 * alpha)));
  plan.total = plan.d0 + 2 * plan.pad_len;
  return plan;
}

PaddingPlan padding_plan_from_total(long long d, double alpha) {
  if (d < 1) throw std::invalid_argument("padding_plan: d must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("padding_plan: alpha must lie in (0, 1]");
  PaddingPlan plan;
  plan.pad_len = static_cast<long long>(std::ceil((1.0 - alpha) * static_cast<double>(d) / 2.0));
  plan.d0 = d - 2 * plan.pad_len;
  plan.total = d;
  if (plan.d0 < 1) {
    throw std::invalid_argument("padding_plan: no source width left at d = " + std::to_string(d) +
                                ", alpha = " + std::to_string(alpha));
  }
  return plan;
}

PapInstance pap_transform(const SignMatrix& x, long long pad_len, Permutation perm) {
  if (pad_len < 0) throw std::invalid_argument("pap_transform: pad_len must be >= 0");
  const long n = x.rows();
  const long long d0 = x.cols();
  const long long d = d0 + 2 * pad_len;
  if (perm.size() != d) {
    throw std::invalid_argument("pap_transform: permutation size " + std::to_string(perm.size()) +
                                " does not match padded width " + std::to_string(d));
  }
  PapInstance inst;
  inst.d0 = d0;
  inst.pad_len = pad_len;
  inst.padded = SignMatrix(n, static_cast<long>(d));
  // Walk targets in order (sequential writes); sources are the small matrix
  // or a constant block.
  for (long long t = 0; t < d; ++t) {
    const long long s = perm.source_of(static_cast<long>(t));
    auto dst = inst.padded.column(static_cast<long>(t));
    if (s < d0) {
      const auto src = x.column(static_cast<long>(s));
      std::memcpy(dst.data(), src.data(), static_cast<std::size_t>(n));
    } else {
      const std::int8_t v = s < d0 + pad_len ? std::int8_t{1} : std::int8_t{-1};
      std::memset(dst.data(), static_cast<unsigned char>(v), static_cast<std::size_t>(n));
    }
  }
  inst.perm = std::move(perm);
  return inst;
}

PapInstance pap_transform(const SignMatrix& x, long long pad_len, Rng& rng) {
  return pap_transform(x, pad_len, random_placement_permutation(x.cols(), pad_len, rng));
}

Permutation random_placement_permutation(long long d0, long long pad_len, Rng& rng) {
  const long long d = d0 + 2 * pad_len;
  if (d0 < 0 || pad_len < 0 || d > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("random_placement_permutation: width out of range");
  }
  // Uniform order of the source columns among themselves.
  std::vector<std::uint32_t> order(static_cast<std::size_t>(d0));
  std::iota(order.begin(), order.end(), 0u);
  for (long long i = d0 - 1; i > 0; --i) {
    const long j = rng.index(static_cast<long>(i) + 1);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  std::vector<std::uint32_t> forward(static_cast<std::size_t>(d));
  std::vector<std::uint32_t> inverse(static_cast<std::size_t>(d));
  long long source_left = d0;
  long long plus_left = pad_len;
  long long minus_left = pad_len;
  std::uint32_t next_plus = static_cast<std::uint32_t>(d0);
  std::uint32_t next_minus = static_cast<std::uint32_t>(d0 + pad_len);
  std::size_t next_source = 0;
  for (long long t = 0; t < d; ++t) {
    const long long left = d - t;
    std::uint32_t s;
    // Each target slot draws its class with the hypergeometric leftover
    // probabilities, so class positions are a uniform partition.
    const double u = rng.uniform();
    if (u * static_cast<double>(left) < static_cast<double>(source_left)) {
      s = order[next_source++];
      --source_left;
    } else if ((u * static_cast<double>(left) - static_cast<double>(source_left)) <
               static_cast<double>(plus_left)) {
      s = next_plus++;
      --plus_left;
    } else {
      s = next_minus++;
      --minus_left;
    }
    inverse[static_cast<std::size_t>(t)] = s;
    forward[s] = static_cast<std::uint32_t>(t);
  }
  if (source_left != 0 || plus_left != 0 || minus_left != 0) {
    throw std::logic_error("random_placement_permutation: class counts did not drain");
  }
  return Permutation(std::move(forward), std::move(inverse));
}

namespace {

template <typename T>
std::vector<T> extract_impl(std::span<const T> q_full, const Permutation& perm, long long d0) {
  if (q_full.size() != static_cast<std::size_t>(perm.size())) {
    throw std::invalid_argument("extract: answer length does not match permutation size");
  }
  if (d0 < 0 || d0 > perm.size()) throw std::invalid_argument("extract: d0 out of range");
  std::vector<T> out(static_cast<std::size_t>(d0));
  for (long long j = 0; j < d0; ++j) {
    out[static_cast<std::size_t>(j)] = q_full[perm.target_of(static_cast<long>(j))];
  }
  return out;
}

}  // namespace

std::vector<double> extract(std::span<const double> q_full, const Permutation& perm, long long d0) {
  return extract_impl(q_full, perm, d0);
}
std::vector<std::int8_t> extract(std::span<const std::int8_t> q_full, const Permutation& perm,
                                 long long d0) {
  return extract_impl(q_full, perm, d0);
}

CorrelationReport strong_correlation_estimate(
    const std::function<std::vector<double>(Rng&)>& black_box, const SignMatrix& x,
    long repetitions, Rng& rng) {
  if (repetitions < 1) throw std::invalid_argument("strong_correlation_estimate: repetitions must be >= 1");
  const MarkedColumns mc = marked_columns(x);
  CorrelationReport report;
  report.repetitions = repetitions;
  std::vector<std::int8_t> target;
  for (long j : mc.plus) {
    report.columns.push_back(j);
    target.push_back(1);
  }
  for (long j : mc.minus) {
    report.columns.push_back(j);
    target.push_back(-1);
  }
  std::vector<long> hits(report.columns.size(), 0);
  for (long r = 0; r < repetitions; ++r) {
    const std::vector<double> q = black_box(rng);
    if (q.size() != static_cast<std::size_t>(x.cols())) {
      throw std::invalid_argument("strong_correlation_estimate: black box returned wrong length");
    }
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      hits[c] += (q[static_cast<std::size_t>(report.columns[c])] == static_cast<double>(target[c]));
    }
  }
  report.frequency.resize(hits.size());
  report.verdict = true;
  for (std::size_t c = 0; c < hits.size(); ++c) {
    report.frequency[c] = static_cast<double>(hits[c]) / static_cast<double>(repetitions);
    if (report.frequency[c] < 0.9) report.verdict = false;
  }
  return report;
}

SignMatrix k_copy_embed(const SignMatrix& y, long slot, long k, long long pad_len, long long d0,
                        Rng& rng) {
  if (k < 1) throw std::invalid_argument("k_copy_embed: k must be >= 1");
  if (slot < 1 || slot > k) throw std::invalid_argument("k_copy_embed: slot outside [1..k]");
  const long long d = d0 + 2 * pad_len;
  if (y.cols() != d) {
    throw std::invalid_argument("k_copy_embed: y width " + std::to_string(y.cols()) +
                                " does not match d0 + 2*pad_len = " + std::to_string(d));
  }
  const long n0 = y.rows();
  SignMatrix out(k * n0, static_cast<long>(d));
  for (long block = 1; block <= k; ++block) {
    const long row0 = (block - 1) * n0;
    if (block == static_cast<long>(slot)) {
      for (long long j = 0; j < d; ++j) {
        auto dst = out.column(static_cast<long>(j));
        const auto src = y.column(static_cast<long>(j));
        std::memcpy(dst.data() + row0, src.data(), static_cast<std::size_t>(n0));
      }
    } else {
      HardInstance decoy = sample_instance(n0, static_cast<long>(d0), rng);
      const PapInstance padded = pap_transform(decoy.codebook, pad_len, rng);
      for (long long j = 0; j < d; ++j) {
        auto dst = out.column(static_cast<long>(j));
        const auto src = padded.padded.column(static_cast<long>(j));
        std::memcpy(dst.data() + row0, src.data(), static_cast<std::size_t>(n0));
      }
    }
  }
  return out;
}

}  // namespace fpattack
