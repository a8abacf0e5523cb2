#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fpattack/hard_dist.hpp"
#include "fpattack/rng.hpp"
#include "fpattack/stats.hpp"
#include "test_util.hpp"

using fpattack::Rng;

TEST_SUITE_BEGIN("hard_dist");

TEST_CASE("support bound formula") {
  CHECK(fpattack::bias_support_bound(1) == doctest::Approx(1.0 - 2.0 / 6.0));
  CHECK(fpattack::bias_support_bound(4) == doctest::Approx(1.0 - 2.0 / 21.0));
  CHECK(fpattack::bias_support_bound(100) == doctest::Approx(1.0 - 2.0 / 501.0));
}

TEST_CASE("density point values at n=1") {
  // 1 / (ln5 * (1 - p^2)): at p=0 that is 1/ln5; at p=2/3 it is 9/(5 ln5).
  const double ln5 = std::log(5.0);
  CHECK(fpattack::bias_density(0.0, 1) == doctest::Approx(1.0 / ln5).epsilon(1e-12));
  CHECK(fpattack::bias_density(2.0 / 3.0, 1) == doctest::Approx(9.0 / (5.0 * ln5)).epsilon(1e-12));
  CHECK(fpattack::bias_density(-2.0 / 3.0, 1) == doctest::Approx(9.0 / (5.0 * ln5)).epsilon(1e-12));
}

TEST_CASE("density rejects out-of-support points and bad n") {
  CHECK_THROWS_AS(fpattack::bias_density(0.9, 1), std::domain_error);
  CHECK_THROWS_AS(fpattack::bias_density(-0.9, 1), std::domain_error);
  CHECK_THROWS_AS(fpattack::bias_density(1.5, 4), std::domain_error);
  CHECK_THROWS_AS(fpattack::bias_density(0.0, 0), std::invalid_argument);
}

TEST_CASE("density integrates to one") {
  for (long n : {1L, 4L, 16L, 64L}) {
    const double lim = fpattack::bias_support_bound(n);
    const double total = test_util::adaptive_simpson(
        [n](double p) { return fpattack::bias_density(p, n); }, -lim, lim, 1e-9);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("cdf endpoints and midpoint") {
  for (long n : {1L, 8L}) {
    const double lim = fpattack::bias_support_bound(n);
    CHECK(fpattack::bias_cdf(-lim, n) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fpattack::bias_cdf(lim, n) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fpattack::bias_cdf(0.0, n) == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK(fpattack::bias_cdf(-2.0, 3) == 0.0);
  CHECK(fpattack::bias_cdf(2.0, 3) == 1.0);
}

TEST_CASE("cdf matches integrated density") {
  const long n = 4;
  const double lim = fpattack::bias_support_bound(n);
  for (double p : {-0.5, -0.1, 0.2, 0.7}) {
    const double integral = test_util::adaptive_simpson(
        [n](double q) { return fpattack::bias_density(q, n); }, -lim, p, 1e-10);
    CHECK(fpattack::bias_cdf(p, n) == doctest::Approx(integral).epsilon(1e-7));
  }
}

TEST_CASE("sampled biases stay in support and pass a KS test") {
  for (long n : {1L, 16L}) {
    Rng rng(100 + n);
    const double lim = fpattack::bias_support_bound(n);
    std::vector<double> samples;
    samples.reserve(100000);
    for (int i = 0; i < 100000; ++i) {
      const double p = fpattack::sample_bias(n, rng);
      REQUIRE(std::abs(p) <= lim + 1e-12);
      samples.push_back(p);
    }
    const double ks = test_util::ks_statistic(
        samples, [n](double p) { return fpattack::bias_cdf(p, n); });
    // 1.63 / sqrt(1e5) ~ 0.0051 is the 1% critical value; allow slack.
    CHECK(ks < 0.01);
  }
}

TEST_CASE("sample_column entries have the requested mean") {
  Rng rng(200);
  for (double p : {-0.7, 0.0, 0.4}) {
    fpattack::RunningStat stat;
    for (int i = 0; i < 20000; ++i) {
      const auto col = fpattack::sample_column(p, 3, rng);
      REQUIRE(col.size() == 3);
      for (const auto v : col) stat.add(v);
    }
    CHECK(std::abs(stat.mean() - p) < 5.0 * stat.standard_error());
  }
}

TEST_CASE("sample_column is exact at p = +/-1 and validates p") {
  Rng rng(201);
  for (int i = 0; i < 100; ++i) {
    for (const auto v : fpattack::sample_column(1.0, 4, rng)) CHECK(v == 1);
    for (const auto v : fpattack::sample_column(-1.0, 4, rng)) CHECK(v == -1);
  }
  CHECK_THROWS_AS(fpattack::sample_column(1.5, 2, rng), std::domain_error);
}

TEST_CASE("instance shape and reference row share the column biases") {
  Rng rng(202);
  const long n = 2;
  const long d = 10000;
  const auto inst = fpattack::sample_instance(n, d, rng);
  REQUIRE(inst.codebook.rows() == n);
  REQUIRE(inst.codebook.cols() == d);
  REQUIRE(inst.reference.size() == static_cast<std::size_t>(d));
  REQUIRE(inst.biases.size() == static_cast<std::size_t>(d));

  // Each row, and the reference, should track the bias: E[x_j * p_j] = p_j^2 > 0.
  fpattack::RunningStat row0;
  fpattack::RunningStat ref;
  for (long j = 0; j < d; ++j) {
    row0.add(inst.codebook.at(0, j) * inst.biases[static_cast<std::size_t>(j)]);
    ref.add(inst.reference[static_cast<std::size_t>(j)] * inst.biases[static_cast<std::size_t>(j)]);
  }
  CHECK(row0.mean() > 0.1);
  CHECK(ref.mean() > 0.1);
}

TEST_CASE("rows are correlated through the bias but independent given it") {
  Rng rng(203);
  const long d = 40000;
  const auto inst = fpattack::sample_instance(2, d, rng);

  // Unconditional row correlation E[x0 x1] = E[p^2] > 0.1 for n = 2.
  fpattack::RunningStat prod;
  for (long j = 0; j < d; ++j) {
    prod.add(inst.codebook.at(0, j) * inst.codebook.at(1, j));
  }
  CHECK(prod.mean() > 0.1);

  // Conditional independence: among columns with |p| < 0.1 the product mean
  // should be near p^2 <= 0.01, far below the unconditional correlation.
  fpattack::RunningStat small_bias_prod;
  for (long j = 0; j < d; ++j) {
    if (std::abs(inst.biases[static_cast<std::size_t>(j)]) < 0.1) {
      small_bias_prod.add(inst.codebook.at(0, j) * inst.codebook.at(1, j));
    }
  }
  CHECK(std::abs(small_bias_prod.mean()) < 0.01 + 5.0 * small_bias_prod.standard_error());
}

TEST_SUITE_END();
