#include "ikg/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ikg {

std::string goal_name(GoalKind kind) {
  switch (kind) {
    case GoalKind::best_arm: return "bai";
    case GoalKind::epsilon_good: return "eps_good";
    case GoalKind::feasibility: return "feasible";
  }
  throw std::logic_error("unhandled goal kind");
}

void ProblemInstance::validate() const {
  if (arms.size() < 2) {
    throw std::invalid_argument("instance needs at least two arms");
  }
  const std::size_t m = arms[0].means.size();
  if (m == 0) {
    throw std::invalid_argument("arms need at least one measure");
  }
  for (std::size_t i = 0; i < arms.size(); ++i) {
    const ArmSpec& a = arms[i];
    if (a.means.size() != m || a.noise_stds.size() != m) {
      throw std::invalid_argument("arm " + std::to_string(i) +
                                  ": inconsistent measure count");
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (!(a.noise_stds[j] > 0.0) || !std::isfinite(a.noise_stds[j])) {
        throw std::invalid_argument("arm " + std::to_string(i) +
                                    ": noise std must be positive and finite");
      }
      if (!std::isfinite(a.means[j])) {
        throw std::invalid_argument("arm " + std::to_string(i) +
                                    ": mean must be finite");
      }
    }
  }
  if (ranking_measure < 0 || ranking_measure >= static_cast<int>(m)) {
    throw std::invalid_argument("ranking_measure out of range");
  }
  switch (goal.kind) {
    case GoalKind::best_arm:
    case GoalKind::epsilon_good: {
      if (goal.kind == GoalKind::epsilon_good && !(goal.epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
      }
      // The best arm must be unique for the ranking goals to be well posed.
      double best = arms[0].means[ranking_measure];
      int best_count = 1;
      for (std::size_t i = 1; i < arms.size(); ++i) {
        double mu = arms[i].means[ranking_measure];
        if (mu > best) {
          best = mu;
          best_count = 1;
        } else if (mu == best) {
          ++best_count;
        }
      }
      if (best_count != 1) {
        throw std::invalid_argument("true best arm is not unique");
      }
      if (goal.kind == GoalKind::epsilon_good) {
        // A mean exactly epsilon below the best has zero identification rate.
        for (std::size_t i = 0; i < arms.size(); ++i) {
          if (arms[i].means[ranking_measure] == best - goal.epsilon) {
            throw std::invalid_argument(
                "arm " + std::to_string(i) +
                " sits exactly at the epsilon boundary");
          }
        }
      }
      break;
    }
    case GoalKind::feasibility: {
      if (goal.thresholds.size() != m) {
        throw std::invalid_argument(
            "feasibility needs one threshold per measure");
      }
      for (double g : goal.thresholds) {
        if (!std::isfinite(g)) {
          throw std::invalid_argument("thresholds must be finite");
        }
      }
      // A mean exactly on a threshold has zero identification rate.
      for (std::size_t i = 0; i < arms.size(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (arms[i].means[j] == goal.thresholds[j]) {
            throw std::invalid_argument(
                "arm " + std::to_string(i) +
                " sits exactly on a feasibility threshold");
          }
        }
      }
      break;
    }
  }
}

void draw_sample(const ProblemInstance& instance, int arm, GaussianRng& rng,
                 std::span<double> out) {
  const ArmSpec& a = instance.arms[arm];
  for (std::size_t j = 0; j < a.means.size(); ++j) {
    out[j] = rng.normal(a.means[j], a.noise_stds[j]);
  }
}

std::vector<double> draw_sample(const ProblemInstance& instance, int arm,
                                GaussianRng& rng) {
  std::vector<double> out(instance.arms[arm].means.size());
  draw_sample(instance, arm, rng, out);
  return out;
}

}  // namespace ikg
