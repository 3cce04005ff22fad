#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ikg/rng.hpp"

namespace ikg {

// One alternative: true mean and sampling noise std per measure.  Samples are
// independent Gaussians across measures and across arms.
struct ArmSpec {
  std::vector<double> means;
  std::vector<double> noise_stds;
};

enum class GoalKind { best_arm, epsilon_good, feasibility };

std::string goal_name(GoalKind kind);

// Identification target.  epsilon applies to epsilon_good; thresholds (one
// per measure, constraints mean <= threshold) apply to feasibility.
// Greater-or-equal constraints are handled by negating the measure and the
// threshold when the instance is built, so only one constraint direction
// exists internally.
struct Goal {
  GoalKind kind = GoalKind::best_arm;
  double epsilon = 0.0;
  std::vector<double> thresholds;

  static Goal best_arm() { return {GoalKind::best_arm, 0.0, {}}; }
  static Goal epsilon_good(double eps) {
    return {GoalKind::epsilon_good, eps, {}};
  }
  static Goal feasibility(std::vector<double> thresholds) {
    return {GoalKind::feasibility, 0.0, std::move(thresholds)};
  }
};

struct ProblemInstance {
  std::vector<ArmSpec> arms;
  Goal goal;
  int ranking_measure = 0;  // measure used to rank arms for best-arm goals

  int num_arms() const { return static_cast<int>(arms.size()); }
  int num_measures() const {
    return arms.empty() ? 0 : static_cast<int>(arms[0].means.size());
  }

  // Throws std::invalid_argument on violations: fewer than two arms, ragged
  // measure counts, non-positive noise, bad ranking index, goal/measure
  // mismatches, or a non-unique best arm for ranking goals.
  void validate() const;
};

// Draws one sample vector (all measures) from the given arm.  The span form
// avoids an allocation in hot loops.
void draw_sample(const ProblemInstance& instance, int arm, GaussianRng& rng,
                 std::span<double> out);
std::vector<double> draw_sample(const ProblemInstance& instance, int arm,
                                GaussianRng& rng);

}  // namespace ikg
