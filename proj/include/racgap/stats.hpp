#pragma once

#include <cstdint>

namespace racgap {

struct ConfidenceParams {
  double alpha = 0.05;  // score-bound significance
  double beta = 0.05;   // bias-interval significance
};

void validate(const ConfidenceParams& params);

// Hoeffding interval for the query bias plus the worst-case bound fed to
// the robust ceiling: eps_max = min(|eps_hat| + delta, 1/2).
struct BiasEstimate {
  double eps_hat = 0.0;
  double delta = 0.0;
  double eps_max = 0.0;
  std::int64_t n = 0;
};

// Azuma-Hoeffding lower confidence bound
//   max(0, s_hat - sqrt(ln(1/alpha) / (2n))).
// Valid for bounded increments under the natural filtration, so it covers
// memoryful and adaptive devices, not just IID ones.
double azuma_lower(double s_hat, std::int64_t n, double alpha);

// eps_hat = n0/n - 1/2, delta = sqrt(ln(2/beta) / (2n)).
BiasEstimate bias_interval(std::int64_t n0, std::int64_t n, double beta);

}  // namespace racgap
