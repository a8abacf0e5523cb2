#include "fpattack/reductions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fpattack/errors.hpp"
#include "fpattack/mechanisms.hpp"

namespace fpattack {

std::vector<double> hard_signs(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = hard_sign(v[i]);
  return out;
}

ReductionParams ReductionParams::averaging(double lambda, long long d) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("ReductionParams: lambda must be >= 1");
  if (d < 1) throw std::invalid_argument("ReductionParams: d must be >= 1");
  ReductionParams p;
  p.lambda = lambda;
  p.alpha = 1.0 / (40.0 * lambda * lambda + 1.0);
  p.gamma = std::sqrt(2.0 * p.alpha * static_cast<double>(d));
  return p;
}

ReductionParams ReductionParams::clustering(double lambda, long k, double z, double xi) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("ReductionParams: lambda must be >= 1");
  if (k < 1) throw std::invalid_argument("ReductionParams: k must be >= 1");
  if (!(z >= 1.0)) throw std::invalid_argument("ReductionParams: z must be >= 1");
  if (!(xi >= 0.0)) throw std::invalid_argument("ReductionParams: xi must be >= 0");
  ReductionParams p;
  p.lambda = lambda;
  p.k = k;
  p.z = z;
  p.xi = xi;
  p.alpha = 1.0 / (160.0 * std::pow(2.0 * lambda, 2.0 / z));
  p.m = k * static_cast<long>(std::floor(1.0 + std::pow(40.0, 0.5 * z) * 2.0 * xi / static_cast<double>(k)));
  return p;
}

ReductionParams ReductionParams::svd(double lambda) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("ReductionParams: lambda must be >= 1");
  ReductionParams p;
  p.lambda = lambda;
  p.alpha = 1.0 / (4000.0 * lambda * lambda);
  p.gamma = std::sqrt(2.0 * p.alpha / (1.0 - 2.0 * p.alpha));
  return p;
}

WeaklyAccurateMechanism averaging_adversary(AveragingEstimator estimator, double lambda) {
  if (!estimator) throw std::invalid_argument("averaging_adversary: estimator must be callable");
  if (!(lambda >= 1.0)) throw std::invalid_argument("averaging_adversary: lambda must be >= 1");
  WeaklyAccurateMechanism mech;
  mech.name = "averaging";
  mech.apply = [estimator = std::move(estimator), lambda](const SignMatrix& x, Rng& rng) {
    const ReductionParams p = ReductionParams::averaging(lambda, x.cols());
    const PointSet points = PointSet::scaled_signs(x, 1.0);
    std::vector<double> estimate = estimator(p.gamma, points, rng);
    if (estimate.size() != static_cast<std::size_t>(x.cols())) {
      throw ContractViolation("averaging estimator returned length " +
                              std::to_string(estimate.size()) + ", expected " +
                              std::to_string(x.cols()));
    }
    return hard_signs(estimate);
  };
  return mech;
}

WeaklyAccurateMechanism clustering_adversary(Clusterer clusterer, long k, double z, double lambda,
                                             double xi, long n) {
  if (!clusterer) throw std::invalid_argument("clustering_adversary: clusterer must be callable");
  const ReductionParams p = ReductionParams::clustering(lambda, k, z, xi);
  if (p.m > n) {
    throw std::invalid_argument("clustering_adversary: subsample size m = " + std::to_string(p.m) +
                                " exceeds point budget n = " + std::to_string(n));
  }
  WeaklyAccurateMechanism mech;
  mech.name = "clustering";
  mech.expected_rows = p.m;
  mech.apply = [clusterer = std::move(clusterer), p, n](const SignMatrix& x, Rng& rng) {
    if (x.rows() != p.m) {
      throw std::invalid_argument("clustering mechanism expects " + std::to_string(p.m) +
                                  " rows, got " + std::to_string(x.rows()));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.cols()));
    const PointSet points = PointSet::scaled_signs(x, scale, n - p.m);
    const auto centers = clusterer(points, p.k + 1, rng);
    if (centers.size() != static_cast<std::size_t>(p.k + 1)) {
      throw ContractViolation("clusterer returned " + std::to_string(centers.size()) +
                              " centers, expected " + std::to_string(p.k + 1));
    }
    for (const auto& c : centers) {
      if (c.size() != static_cast<std::size_t>(x.cols())) {
        throw ContractViolation("clusterer returned a center of wrong dimension");
      }
      if (l2_norm(c) > 1.0 + 1e-9) {
        throw ContractViolation("clusterer returned a center outside the unit ball");
      }
    }
    const long j = rng.index(p.k + 1);
    return hard_signs(centers[static_cast<std::size_t>(j)]);
  };
  return mech;
}

std::pair<WeaklyAccurateMechanism, WeaklyAccurateMechanism> svd_adversary(SvdEstimator estimator,
                                                                          double lambda) {
  if (!estimator) throw std::invalid_argument("svd_adversary: estimator must be callable");
  const ReductionParams p = ReductionParams::svd(lambda);
  auto run_estimator = [estimator = std::move(estimator), p](const SignMatrix& x, Rng& rng) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(x.cols()));
    const PointSet points = PointSet::scaled_signs(x, scale);
    std::vector<double> v = estimator(p.gamma, points, rng);
    if (v.size() != static_cast<std::size_t>(x.cols())) {
      throw ContractViolation("svd estimator returned length " + std::to_string(v.size()) +
                              ", expected " + std::to_string(x.cols()));
    }
    const double norm = l2_norm(v);
    if (std::abs(norm - 1.0) > 1e-6) {
      throw ContractViolation("svd estimator output norm " + std::to_string(norm) +
                              " is not within 1e-6 of 1");
    }
    return v;
  };
  WeaklyAccurateMechanism plain;
  plain.name = "svd";
  plain.apply = [run_estimator](const SignMatrix& x, Rng& rng) {
    return hard_signs(run_estimator(x, rng));
  };
  WeaklyAccurateMechanism negated;
  negated.name = "svd-negated";
  negated.apply = [run_estimator](const SignMatrix& x, Rng& rng) {
    std::vector<double> q = hard_signs(run_estimator(x, rng));
    for (double& v : q) v = -v;
    return q;
  };
  return {std::move(plain), std::move(negated)};
}

}  // namespace fpattack
