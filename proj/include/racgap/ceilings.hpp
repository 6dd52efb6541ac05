#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace racgap {

// Finite prepare-and-measure task: preparation alphabet A, query alphabet
// Y, output alphabet B, message bound |M|, score coefficients c[a][y][b]
// stored (a,y,b)-major and joint input law pi[a][y] stored (a,y)-major.
struct PamTask {
  int n_a = 1;
  int n_y = 1;
  int n_b = 1;
  int n_m = 1;
  std::vector<double> coeffs;
  std::vector<double> input_law;

  double coeff(int a, int y, int b) const {
    return coeffs[(static_cast<std::size_t>(a) * n_y + y) * n_b + b];
  }
  double law(int a, int y) const {
    return input_law[static_cast<std::size_t>(a) * n_y + y];
  }
};

void validate(const PamTask& task);

// Deterministic encoder f: A -> M and decoder g: M x Y -> B; decoder cells
// are indexed m*n_y + y.
struct DeterministicStrategy {
  std::vector<int> encoder;
  std::vector<int> decoder;
};

struct EnumerationResult {
  double value = 0.0;
  DeterministicStrategy argmax;
};

// Thrown when the strategy space exceeds the enumeration guard.
class capacity_error : public std::runtime_error {
 public:
  capacity_error(const std::string& what, double strategy_count)
      : std::runtime_error(what), strategy_count(strategy_count) {}
  double strategy_count;
};

// 3/4 + |eps|/2, the bias-enlarged classical ceiling of the 2->1 RAC.
double rac_effective_ceiling(double eps);

// 3/4 + eps_max/2: worst case of the effective ceiling over |eps| <= eps_max.
double robust_ceiling(double eps_max);

// Mean over the schedule of the per-round effective ceiling: the score of
// the per-round-optimal classical strategy that knows the schedule. This
// is the most conservative classical benchmark for a drifting input law.
double nonstationary_ceiling(std::span<const double> bias_schedule);

// Expected score of one deterministic strategy under the task's input law.
double strategy_score(const PamTask& task, const DeterministicStrategy& strategy);

// Exact maximum over all deterministic encoder/decoder pairs. Pairs are
// scanned with the decoder as the most significant counter (cell m*n_y+y
// as digit, cell 0 least significant; encoder digit a likewise) and the
// first strict improvement is kept, so the reported argmax is
// deterministic. Guard: n_m^n_a * n_b^(n_m*n_y) <= 1e7, else
// capacity_error carrying the computed count.
EnumerationResult pam_ceiling_enumerate(const PamTask& task);

// The 2->1 RAC folded into a PamTask: a = 2*a0 + a1, success coefficients
// c=1 iff b equals the queried bit, pi(a,y) = (1/4)*Pr(y) with
// Pr(y=0) = 1/2 + eps.
PamTask rac_task(double eps);

}  // namespace racgap
