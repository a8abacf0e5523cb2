#include "fpattack/fp_code.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fpattack/hard_dist.hpp"

namespace fpattack {

long long code_length(long n, double beta, double c) {
  if (n < 1) throw std::invalid_argument("code_length: n must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("code_length: beta must lie in (0,1)");
  if (!(c > 0.0)) throw std::invalid_argument("code_length: c must be positive");
  const double nn = static_cast<double>(n);
  const double log_users = std::log(20.0 * nn);
  const double value = c * nn * nn * log_users * log_users * std::log(20.0 * nn / beta);
  return static_cast<long long>(std::ceil(value));
}

std::pair<Codebook, TraceKey> generate(long n, double beta, Rng& rng,
                                       std::optional<long long> d_override) {
  if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("generate: beta must lie in (0,1)");
  const long long d = d_override ? *d_override : code_length(n, beta);
  if (d < 1) throw std::invalid_argument("generate: code length must be >= 1");
  HardInstance inst = sample_instance(n, static_cast<long>(d), rng);
  return {Codebook{std::move(inst.codebook)}, TraceKey{std::move(inst.reference)}};
}

double trace_threshold(long n, long long d) {
  return 0.2 * static_cast<double>(d) / (static_cast<double>(n) * std::log(5.0 * static_cast<double>(n)));
}

namespace {

void check_answer(const Codebook& code, const TraceKey& key, std::span<const double> answer) {
  const auto d = static_cast<std::size_t>(code.matrix.cols());
  if (answer.size() != d) {
    throw std::invalid_argument("trace: answer length " + std::to_string(answer.size()) +
                                " does not match code length " + std::to_string(d));
  }
  if (key.reference.size() != d) {
    throw std::invalid_argument("trace: reference length does not match code length");
  }
  for (double v : answer) {
    if (!(v >= -1.0 && v <= 1.0)) {
      throw std::invalid_argument("trace: answer entry " + std::to_string(v) + " outside [-1, 1]");
    }
  }
}

}  // namespace

double user_score(const Codebook& code, const TraceKey& key, std::span<const double> answer, long user) {
  const long n = code.matrix.rows();
  if (user < 1 || user > n) throw std::invalid_argument("user_score: user index outside [1..n]");
  const long long d = code.matrix.cols();
  double s = 0.0;
  const long i = user - 1;
  for (long long j = 0; j < d; ++j) {
    const double diff = static_cast<double>(code.matrix.at(i, static_cast<long>(j))) -
                        static_cast<double>(key.reference[static_cast<std::size_t>(j)]);
    s += answer[static_cast<std::size_t>(j)] * diff;
  }
  return s;
}

TraceResult trace(const Codebook& code, const TraceKey& key, std::span<const double> answer) {
  check_answer(code, key, answer);
  const long n = code.matrix.rows();
  const long long d = code.matrix.cols();
  const double threshold = trace_threshold(n, d);

  // One pass over columns keeps the codebook reads sequential; n running
  // scores instead of n row scans.
  std::vector<double> scores(static_cast<std::size_t>(n), 0.0);
  for (long long j = 0; j < d; ++j) {
    const double q = answer[static_cast<std::size_t>(j)];
    if (q == 0.0) continue;
    const double zq = q * static_cast<double>(key.reference[static_cast<std::size_t>(j)]);
    const auto col = code.matrix.column(static_cast<long>(j));
    for (long i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] += q * static_cast<double>(col[static_cast<std::size_t>(i)]) - zq;
    }
  }
  for (long i = 0; i < n; ++i) {
    if (scores[static_cast<std::size_t>(i)] > threshold) return TraceResult{i + 1};
  }
  return TraceResult{std::nullopt};
}

bool is_feasible(const Codebook& code, const std::vector<long>& coalition,
                 std::span<const std::int8_t> answer) {
  if (coalition.empty()) throw std::invalid_argument("is_feasible: coalition must be nonempty");
  const long n = code.matrix.rows();
  for (long user : coalition) {
    if (user < 1 || user > n) throw std::invalid_argument("is_feasible: coalition index outside [1..n]");
  }
  const long long d = code.matrix.cols();
  if (answer.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("is_feasible: answer length does not match code length");
  }
  for (long long j = 0; j < d; ++j) {
    bool matched = false;
    for (long user : coalition) {
      if (code.matrix.at(user - 1, static_cast<long>(j)) == answer[static_cast<std::size_t>(j)]) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

void save_code(std::ostream& out, const Codebook& code, const TraceKey& key, std::uint64_t seed) {
  const long n = code.matrix.rows();
  const long long d = code.matrix.cols();
  if (key.reference.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("save_code: reference length does not match code length");
  }
  out << n << ' ' << d << ' ' << seed << '\n';
  std::string line;
  line.reserve(static_cast<std::size_t>(d) * 3);
  for (long i = 0; i <= n; ++i) {
    line.clear();
    for (long long j = 0; j < d; ++j) {
      const std::int8_t v = i < n ? code.matrix.at(i, static_cast<long>(j))
                                  : key.reference[static_cast<std::size_t>(j)];
      if (j > 0) line.push_back(' ');
      if (v < 0) line.push_back('-');
      line.push_back('1');
    }
    line.push_back('\n');
    out << line;
  }
}

StoredCode load_code(std::istream& in) {
  long n = 0;
  long long d = 0;
  std::uint64_t seed = 0;
  if (!(in >> n >> d >> seed)) throw std::runtime_error("load_code: bad header");
  if (n < 1 || d < 1) throw std::runtime_error("load_code: invalid dimensions in header");
  StoredCode stored;
  stored.seed = seed;
  stored.code.matrix = SignMatrix(n, static_cast<long>(d));
  stored.key.reference.resize(static_cast<std::size_t>(d));
  for (long i = 0; i <= n; ++i) {
    for (long long j = 0; j < d; ++j) {
      int v = 0;
      if (!(in >> v) || (v != 1 && v != -1)) {
        throw std::runtime_error("load_code: bad entry at row " + std::to_string(i) + " column " +
                                 std::to_string(j));
      }
      if (i < n) {
        stored.code.matrix.at(i, static_cast<long>(j)) = static_cast<std::int8_t>(v);
      } else {
        stored.key.reference[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(v);
      }
    }
  }
  return stored;
}

}  // namespace fpattack
