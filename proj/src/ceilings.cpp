#include "racgap/ceilings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace racgap {

void validate(const PamTask& task) {
  if (task.n_a < 1 || task.n_y < 1 || task.n_b < 1 || task.n_m < 1) {
    throw std::invalid_argument("pam task: alphabet sizes must be >= 1");
  }
  const auto n_cells = static_cast<std::size_t>(task.n_a) * task.n_y;
  if (task.coeffs.size() != n_cells * task.n_b) {
    throw std::invalid_argument("pam task: coeffs must have n_a*n_y*n_b entries");
  }
  if (task.input_law.size() != n_cells) {
    throw std::invalid_argument("pam task: input_law must have n_a*n_y entries");
  }
  double total = 0.0;
  for (double p : task.input_law) {
    if (p < 0) throw std::invalid_argument("pam task: input_law entries must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("pam task: input_law must sum to 1");
  }
}

double rac_effective_ceiling(double eps) {
  if (std::abs(eps) > 0.5) throw std::domain_error("rac_effective_ceiling: |eps| must be <= 1/2");
  return 0.75 + std::abs(eps) / 2.0;
}

double robust_ceiling(double eps_max) {
  if (eps_max < 0 || eps_max > 0.5) {
    throw std::domain_error("robust_ceiling: eps_max must be in [0, 1/2]");
  }
  return 0.75 + eps_max / 2.0;
}

double nonstationary_ceiling(std::span<const double> bias_schedule) {
  if (bias_schedule.empty()) throw std::domain_error("nonstationary_ceiling: empty schedule");
  double sum = 0.0;
  for (double eps : bias_schedule) {
    if (std::abs(eps) > 0.5 + 1e-12) {
      throw std::domain_error("nonstationary_ceiling: |eps_t| must be <= 1/2");
    }
    sum += 0.75 + std::abs(eps) / 2.0;
  }
  return sum / static_cast<double>(bias_schedule.size());
}

double strategy_score(const PamTask& task, const DeterministicStrategy& strategy) {
  if (static_cast<int>(strategy.encoder.size()) != task.n_a ||
      static_cast<int>(strategy.decoder.size()) != task.n_m * task.n_y) {
    throw std::invalid_argument("strategy_score: table sizes do not match the task");
  }
  double score = 0.0;
  for (int a = 0; a < task.n_a; ++a) {
    const int m = strategy.encoder[static_cast<std::size_t>(a)];
    if (m < 0 || m >= task.n_m) throw std::invalid_argument("strategy_score: encoder entry out of range");
    for (int y = 0; y < task.n_y; ++y) {
      const int b = strategy.decoder[static_cast<std::size_t>(m) * task.n_y + y];
      if (b < 0 || b >= task.n_b) throw std::invalid_argument("strategy_score: decoder entry out of range");
      score += task.law(a, y) * task.coeff(a, y, b);
    }
  }
  return score;
}

EnumerationResult pam_ceiling_enumerate(const PamTask& task) {
  validate(task);
  const int n_cells = task.n_m * task.n_y;
  const double n_enc = std::pow(static_cast<double>(task.n_m), task.n_a);
  const double n_dec = std::pow(static_cast<double>(task.n_b), n_cells);
  const double count = n_enc * n_dec;
  if (!(count <= 1e7)) {
    std::ostringstream msg;
    msg << "pam_ceiling_enumerate: " << count
        << " deterministic strategies exceed the 1e7 enumeration guard";
    throw capacity_error(msg.str(), count);
  }

  DeterministicStrategy current;
  current.encoder.assign(static_cast<std::size_t>(task.n_a), 0);
  current.decoder.assign(static_cast<std::size_t>(n_cells), 0);

  EnumerationResult best;
  best.value = -std::numeric_limits<double>::infinity();

  bool decoders_left = true;
  while (decoders_left) {
    std::fill(current.encoder.begin(), current.encoder.end(), 0);
    bool encoders_left = true;
    while (encoders_left) {
      double score = 0.0;
      for (int a = 0; a < task.n_a; ++a) {
        const int m = current.encoder[static_cast<std::size_t>(a)];
        for (int y = 0; y < task.n_y; ++y) {
          const int b = current.decoder[static_cast<std::size_t>(m) * task.n_y + y];
          score += task.law(a, y) * task.coeff(a, y, b);
        }
      }
      if (score > best.value) {
        best.value = score;
        best.argmax = current;
      }
      // Odometer increment, digit 0 least significant.
      int d = 0;
      while (d < task.n_a && ++current.encoder[static_cast<std::size_t>(d)] == task.n_m) {
        current.encoder[static_cast<std::size_t>(d++)] = 0;
      }
      encoders_left = d < task.n_a;
    }
    int d = 0;
    while (d < n_cells && ++current.decoder[static_cast<std::size_t>(d)] == task.n_b) {
      current.decoder[static_cast<std::size_t>(d++)] = 0;
    }
    decoders_left = d < n_cells;
  }
  return best;
}

PamTask rac_task(double eps) {
  if (std::abs(eps) > 0.5) throw std::domain_error("rac_task: |eps| must be <= 1/2");
  PamTask task;
  task.n_a = 4;
  task.n_y = 2;
  task.n_b = 2;
  task.n_m = 2;
  task.coeffs.assign(4 * 2 * 2, 0.0);
  task.input_law.assign(4 * 2, 0.0);
  for (int a = 0; a < 4; ++a) {
    const int a0 = (a >> 1) & 1;
    const int a1 = a & 1;
    for (int y = 0; y < 2; ++y) {
      const int queried = y == 0 ? a0 : a1;
      task.coeffs[(static_cast<std::size_t>(a) * 2 + y) * 2 + queried] = 1.0;
      task.input_law[static_cast<std::size_t>(a) * 2 + y] =
          0.25 * (y == 0 ? 0.5 + eps : 0.5 - eps);
    }
  }
  return task;
}

}  // namespace racgap
