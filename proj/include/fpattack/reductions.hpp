#ifndef FPATTACK_REDUCTIONS_HPP
#define FPATTACK_REDUCTIONS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fpattack/points.hpp"
#include "fpattack/rng.hpp"
#include "fpattack/sign_matrix.hpp"

namespace fpattack {

// Wrappers turning accuracy guarantees of standard estimators into sign
// vectors that strongly agree with well-marked inputs.  Each wrapper treats
// its estimator as a black box and only post-processes the output.

// sign with sign(0) = +1.
inline double hard_sign(double v) { return v < 0.0 ? -1.0 : 1.0; }
std::vector<double> hard_signs(const std::vector<double>& v);

struct WeaklyAccurateMechanism {
  std::string name;
  long expected_rows = 0;  // 0: any row count accepted
  std::function<std::vector<double>(const SignMatrix&, Rng&)> apply;
};

struct ReductionParams {
  double lambda = 1.0;
  double alpha = 0.0;
  double gamma = 0.0;
  long k = 1;
  double z = 2.0;
  double xi = 0.0;
  long m = 0;  // clustering subsample size

  // alpha = 1/(40*lambda^2 + 1), gamma = sqrt(2*alpha*d).
  static ReductionParams averaging(double lambda, long long d);
  // alpha = 1/(160*(2*lambda)^(2/z)), m = k*floor(1 + 40^(z/2)*2*xi/k).
  static ReductionParams clustering(double lambda, long k, double z, double xi);
  // alpha = 1/(4000*lambda^2), gamma = sqrt(2*alpha/(1-2*alpha)).
  static ReductionParams svd(double lambda);
};

// estimator(gamma, points, rng) approximates the mean of the points to
// within lambda*gamma in l2.
using AveragingEstimator = std::function<std::vector<double>(double, const PointSet&, Rng&)>;
WeaklyAccurateMechanism averaging_adversary(AveragingEstimator estimator, double lambda);

// clusterer(points, k_centers, rng) returns k_centers centers inside the
// unit ball.  The wrapper scales the m input rows by 1/sqrt(d), appends
// n - m zero points, asks for k+1 centers and returns the signs of a
// uniformly random one.
using Clusterer =
    std::function<std::vector<std::vector<double>>(const PointSet&, long, Rng&)>;
WeaklyAccurateMechanism clustering_adversary(Clusterer clusterer, long k, double z, double lambda,
                                             double xi, long n);

// estimator(gamma, points, rng) returns an approximate top right singular
// vector (unit norm within 1e-6) of the row-scaled matrix.  Exactly one of
// the returned pair is guaranteed useful, so callers attack both.
using SvdEstimator = std::function<std::vector<double>(double, const PointSet&, Rng&)>;
std::pair<WeaklyAccurateMechanism, WeaklyAccurateMechanism> svd_adversary(SvdEstimator estimator,
                                                                          double lambda);

}  // namespace fpattack

#endif
