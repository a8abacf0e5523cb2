#ifndef FPATTACK_MECHANISMS_HPP
#define FPATTACK_MECHANISMS_HPP

#include <span>
#include <vector>

#include "fpattack/points.hpp"
#include "fpattack/rng.hpp"

namespace fpattack {

// Non-private estimators used as attack targets.  All of them read a
// PointSet (n points in R^d) and none of them sees codebook internals.

// Exact column mean.
std::vector<double> exact_average(const PointSet& points);

// Column mean plus iid N(0, sigma^2) noise.
std::vector<double> gaussian_average(const PointSet& points, double sigma, Rng& rng);

// Lloyd iterations with uniform random distinct-index initialization.
// Points are expected inside the unit ball; centers are clipped back onto
// it after every mean step.  iterations = 0 returns the initialization.
std::vector<std::vector<double>> lloyd_kmeans(const PointSet& points, long k_centers,
                                              long iterations, Rng& rng);

// sum over points of min-center distance^z.
double clustering_cost(const PointSet& points, const std::vector<std::vector<double>>& centers,
                       double z);

// Power iteration v <- normalize(X^T (X v)) from a random unit start.
// Throws ContractViolation on an all-zero matrix.
std::vector<double> power_iteration_top_vector(const PointSet& points, long iterations, Rng& rng);

double l2_norm(std::span<const double> v);

}  // namespace fpattack

#endif
