#include "racgap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace racgap {

void validate(const ConfidenceParams& params) {
  if (!(params.alpha > 0 && params.alpha < 1)) {
    throw std::invalid_argument("confidence: alpha must be in (0,1)");
  }
  if (!(params.beta > 0 && params.beta < 1)) {
    throw std::invalid_argument("confidence: beta must be in (0,1)");
  }
}

double azuma_lower(double s_hat, std::int64_t n, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::domain_error("azuma_lower: alpha must be in (0,1)");
  if (n < 1) throw std::domain_error("azuma_lower: n must be >= 1");
  if (!(s_hat >= 0 && s_hat <= 1)) throw std::domain_error("azuma_lower: s_hat must be in [0,1]");
  const double penalty = std::sqrt(std::log(1.0 / alpha) / (2.0 * static_cast<double>(n)));
  return std::max(0.0, s_hat - penalty);
}

BiasEstimate bias_interval(std::int64_t n0, std::int64_t n, double beta) {
  if (n < 1) throw std::domain_error("bias_interval: n must be >= 1");
  if (n0 < 0 || n0 > n) throw std::domain_error("bias_interval: n0 must be in [0, n]");
  if (!(beta > 0 && beta < 1)) throw std::domain_error("bias_interval: beta must be in (0,1)");
  BiasEstimate est;
  est.n = n;
  est.eps_hat = static_cast<double>(n0) / static_cast<double>(n) - 0.5;
  est.delta = std::sqrt(std::log(2.0 / beta) / (2.0 * static_cast<double>(n)));
  est.eps_max = std::min(std::abs(est.eps_hat) + est.delta, 0.5);
  return est;
}

}  // namespace racgap
