#include "fpattack/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fpattack/errors.hpp"

namespace fpattack {

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> exact_average(const PointSet& points) {
  if (points.rows() < 1) throw std::invalid_argument("exact_average: need at least one point");
  std::vector<double> mean(static_cast<std::size_t>(points.cols()), 0.0);
  points.add_column_sums(mean);
  const double inv = 1.0 / static_cast<double>(points.rows());
  for (double& m : mean) m *= inv;
  return mean;
}

std::vector<double> gaussian_average(const PointSet& points, double sigma, Rng& rng) {
  if (sigma < 0.0) throw std::invalid_argument("gaussian_average: sigma must be >= 0");
  std::vector<double> mean = exact_average(points);
  for (double& m : mean) m += sigma * rng.gaussian();
  return mean;
}

namespace {

double distance_squared_to(const PointSet& points, long i, std::span<const double> center) {
  double s = 0.0;
  for (long j = 0; j < points.cols(); ++j) {
    const double diff = points.at(i, j) - center[static_cast<std::size_t>(j)];
    s += diff * diff;
  }
  return s;
}

long nearest_center(const PointSet& points, long i, const std::vector<std::vector<double>>& centers) {
  long best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = distance_squared_to(points, i, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<long>(c);
    }
  }
  return best;
}

}  // namespace

std::vector<std::vector<double>> lloyd_kmeans(const PointSet& points, long k_centers,
                                              long iterations, Rng& rng) {
  const long n = points.rows();
  if (k_centers < 1 || k_centers > n) {
    throw std::invalid_argument("lloyd_kmeans: k_centers must lie in [1, n]");
  }
  if (iterations < 0) throw std::invalid_argument("lloyd_kmeans: iterations must be >= 0");

  // Distinct random indices via a partial shuffle.
  std::vector<long> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0L);
  for (long i = 0; i < k_centers; ++i) {
    const long j = i + rng.index(n - i);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  std::vector<std::vector<double>> centers;
  centers.reserve(static_cast<std::size_t>(k_centers));
  for (long c = 0; c < k_centers; ++c) centers.push_back(points.point(idx[static_cast<std::size_t>(c)]));

  std::vector<long> assignment(static_cast<std::size_t>(n), 0);
  for (long it = 0; it < iterations; ++it) {
    for (long i = 0; i < n; ++i) assignment[static_cast<std::size_t>(i)] = nearest_center(points, i, centers);
    for (long c = 0; c < k_centers; ++c) {
      std::vector<double> sum(static_cast<std::size_t>(points.cols()), 0.0);
      long count = 0;
      for (long i = 0; i < n; ++i) {
        if (assignment[static_cast<std::size_t>(i)] != c) continue;
        ++count;
        for (long j = 0; j < points.cols(); ++j) sum[static_cast<std::size_t>(j)] += points.at(i, j);
      }
      if (count == 0) continue;  // empty cluster keeps its center
      for (double& v : sum) v /= static_cast<double>(count);
      const double norm = l2_norm(sum);
      if (norm > 1.0) {
        for (double& v : sum) v /= norm;
      }
      centers[static_cast<std::size_t>(c)] = std::move(sum);
    }
  }
  return centers;
}

double clustering_cost(const PointSet& points, const std::vector<std::vector<double>>& centers,
                       double z) {
  if (centers.empty()) throw std::invalid_argument("clustering_cost: need at least one center");
  if (!(z >= 1.0)) throw std::invalid_argument("clustering_cost: z must be >= 1");
  double total = 0.0;
  for (long i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : centers) best = std::min(best, distance_squared_to(points, i, c));
    total += std::pow(best, 0.5 * z);
  }
  return total;
}

std::vector<double> power_iteration_top_vector(const PointSet& points, long iterations, Rng& rng) {
  const long n = points.rows();
  const long d = points.cols();
  if (n < 1 || d < 1) throw std::invalid_argument("power_iteration_top_vector: empty matrix");
  if (iterations < 0) throw std::invalid_argument("power_iteration_top_vector: iterations must be >= 0");
  bool any_nonzero = false;
  for (long i = 0; i < n && !any_nonzero; ++i) {
    for (long j = 0; j < d; ++j) {
      if (points.at(i, j) != 0.0) {
        any_nonzero = true;
        break;
      }
    }
  }
  if (!any_nonzero) throw ContractViolation("power_iteration_top_vector: zero matrix");

  std::vector<double> v(static_cast<std::size_t>(d));
  std::vector<double> xv(static_cast<std::size_t>(n));
  auto randomize = [&] {
    for (double& x : v) x = rng.gaussian();
    const double norm = l2_norm(v);
    for (double& x : v) x /= norm;
  };
  randomize();
  for (long it = 0; it < iterations; ++it) {
    points.multiply(v, xv);
    std::vector<double> next(static_cast<std::size_t>(d));
    points.multiply_transposed(xv, next);
    const double norm = l2_norm(next);
    if (norm == 0.0) {
      // Start landed in the null space; draw again.
      randomize();
      continue;
    }
    for (double& x : next) x /= norm;
    v = std::move(next);
  }
  return v;
}

}  // namespace fpattack
