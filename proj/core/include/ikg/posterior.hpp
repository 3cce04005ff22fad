#pragma once

#include <span>
#include <vector>

#include "ikg/model.hpp"

namespace ikg {

// Independent conjugate Gaussian posteriors per (arm, measure) under the
// non-informative prior: after T pulls the posterior is
// N(sample mean, noise_var / T).  The state carries the precision-weighted
// recursion explicitly so one update is O(m) regardless of history.
struct PosteriorState {
  // k x m, row per arm.
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> var;
  std::vector<std::vector<double>> noise_var;  // fixed copies of sigma_ij^2
  std::vector<long> pulls;
  long round = 0;

  static PosteriorState from_instance(const ProblemInstance& instance);

  int num_arms() const { return static_cast<int>(mean.size()); }
  int num_measures() const {
    return mean.empty() ? 0 : static_cast<int>(mean[0].size());
  }

  // Conjugate update of one arm with one sample vector.  The first pull sets
  // mean = sample, var = noise_var exactly; later pulls use the
  // precision-weighted recursion.  Rows of other arms are untouched.
  void update(int arm, std::span<const double> sample);
};

// Posterior variance of (arm, measure) after one more hypothetical pull
// (next_var), plus the variance of the induced posterior-mean shift when the
// pull outcome is drawn from the arm's sampling distribution centered at the
// current posterior mean (mean_shift_var).  Their sum is the variance that
// acquisition formulas substitute for the current posterior variance of the
// arm being looked at.
struct LookaheadVariance {
  double next_var = 0.0;
  double mean_shift_var = 0.0;
  double total() const { return next_var + mean_shift_var; }
};

LookaheadVariance lookahead_variance(const PosteriorState& state, int arm,
                                     int measure);

// What the experimenter would report if sampling stopped now.
struct TargetEstimate {
  GoalKind kind = GoalKind::best_arm;
  int best_arm = -1;            // best_arm goal
  std::vector<int> good_arms;   // epsilon_good goal, sorted ascending
  std::vector<int> feasible_arms;  // feasibility goal, sorted ascending
};

// Selection from the current posterior means; ties resolve to the lowest
// arm index.
TargetEstimate target_estimate(const PosteriorState& state, const Goal& goal,
                               int ranking_measure);

// Ground-truth target computed from the instance's true means.
TargetEstimate true_target(const ProblemInstance& instance);

bool same_target(const TargetEstimate& a, const TargetEstimate& b);

}  // namespace ikg
