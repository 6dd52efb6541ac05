#include <doctest.h>

#include <cmath>

#include "racgap/rng.hpp"
#include "racgap/stats.hpp"

using namespace racgap;

TEST_CASE("azuma bound closed-form values") {
  CHECK(azuma_lower(0.80, 10000, 0.05) == doctest::Approx(0.787761265846596).epsilon(1e-12));
  CHECK(azuma_lower(0.80, 4000000000LL, 0.05) == doctest::Approx(0.80).epsilon(1e-4));
  CHECK(azuma_lower(0.01, 10, 0.05) == 0.0);  // clamped
  CHECK_THROWS_AS(azuma_lower(0.8, 100, 0.0), std::domain_error);
  CHECK_THROWS_AS(azuma_lower(0.8, 100, 1.0), std::domain_error);
  CHECK_THROWS_AS(azuma_lower(0.8, 0, 0.05), std::domain_error);
  CHECK_THROWS_AS(azuma_lower(1.2, 100, 0.05), std::domain_error);
}

TEST_CASE("azuma bound is monotone in n and alpha") {
  double previous = 0.0;
  for (std::int64_t n : {100, 200, 400, 800, 1600}) {
    const double value = azuma_lower(0.8, n, 0.05);
    CHECK(value > previous);
    previous = value;
  }
  previous = 0.0;
  for (double alpha : {0.01, 0.05, 0.1, 0.2}) {
    const double value = azuma_lower(0.8, 1000, alpha);
    CHECK(value > previous);
    previous = value;
  }
}

TEST_CASE("bias interval closed-form values") {
  const BiasEstimate est = bias_interval(1100, 2000, 0.05);
  CHECK(est.eps_hat == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(est.delta == doctest::Approx(0.030368073095415258).epsilon(1e-12));
  CHECK(est.eps_max == doctest::Approx(0.08036807309541526).epsilon(1e-12));
  CHECK(est.n == 2000);

  CHECK(bias_interval(500, 1000, 0.05).eps_hat == doctest::Approx(0.0));
  CHECK(bias_interval(20, 20, 0.05).eps_max == doctest::Approx(0.5));  // clamped
  CHECK_THROWS_AS(bias_interval(0, 0, 0.05), std::domain_error);
  CHECK_THROWS_AS(bias_interval(5, 4, 0.05), std::domain_error);
}

TEST_CASE("azuma coverage on IID Bernoulli data") {
  const double alpha = 0.05;
  const std::int64_t n = 5000;
  const int reps = 2000;
  for (double p : {0.6, 0.75, 0.85}) {
    Rng rng(static_cast<std::uint64_t>(1000 * p));
    int covered = 0;
    for (int rep = 0; rep < reps; ++rep) {
      std::int64_t hits = 0;
      for (std::int64_t t = 0; t < n; ++t) hits += rng.bernoulli(p);
      const double s_hat = static_cast<double>(hits) / static_cast<double>(n);
      covered += azuma_lower(s_hat, n, alpha) <= p;
    }
    CHECK(static_cast<double>(covered) / reps >= 1 - alpha - 0.01);
  }
}

TEST_CASE("azuma coverage holds for a history-dependent classical process") {
  // Conditional mean depends on the previous outcome but never exceeds the
  // ceiling; the bound certifies the per-run average conditional mean, so
  // the ceiling remains covered.
  const double ceiling = 0.8;
  const double alpha = 0.05;
  const std::int64_t n = 5000;
  const int reps = 2000;
  Rng rng(99);
  int covered = 0;
  for (int rep = 0; rep < reps; ++rep) {
    std::int64_t hits = 0;
    int last = 0;
    for (std::int64_t t = 0; t < n; ++t) {
      const double mu = ceiling * (last ? 1.0 : 0.65);
      const int x = rng.bernoulli(mu) ? 1 : 0;
      hits += x;
      last = x;
    }
    const double s_hat = static_cast<double>(hits) / static_cast<double>(n);
    covered += azuma_lower(s_hat, n, alpha) <= ceiling;
  }
  CHECK(static_cast<double>(covered) / reps >= 1 - alpha - 0.01);
}

TEST_CASE("bias interval coverage") {
  const double beta = 0.05;
  const double q = 0.55;
  const std::int64_t n = 2000;
  const int reps = 2000;
  Rng rng(7);
  int covered = 0;
  for (int rep = 0; rep < reps; ++rep) {
    std::int64_t zeros = 0;
    for (std::int64_t t = 0; t < n; ++t) zeros += rng.bernoulli(q);
    const BiasEstimate est = bias_interval(zeros, n, beta);
    covered += std::abs((q - 0.5) - est.eps_hat) <= est.delta;
  }
  CHECK(static_cast<double>(covered) / reps >= 1 - beta - 0.01);
}
