#include "ikg/posterior.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ikg {

PosteriorState PosteriorState::from_instance(const ProblemInstance& instance) {
  instance.validate();
  const int k = instance.num_arms();
  const int m = instance.num_measures();
  PosteriorState s;
  s.mean.assign(k, std::vector<double>(m, 0.0));
  s.var.assign(k, std::vector<double>(
                      m, std::numeric_limits<double>::infinity()));
  s.noise_var.assign(k, std::vector<double>(m, 0.0));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      double sd = instance.arms[i].noise_stds[j];
      s.noise_var[i][j] = sd * sd;
    }
  }
  s.pulls.assign(k, 0);
  s.round = 0;
  return s;
}

void PosteriorState::update(int arm, std::span<const double> sample) {
  if (arm < 0 || arm >= num_arms()) {
    throw std::invalid_argument("update: arm index out of range");
  }
  if (static_cast<int>(sample.size()) != num_measures()) {
    throw std::invalid_argument("update: sample has wrong measure count");
  }
  if (pulls[arm] == 0) {
    // First update from the non-informative prior.
    for (int j = 0; j < num_measures(); ++j) {
      mean[arm][j] = sample[j];
      var[arm][j] = noise_var[arm][j];
    }
  } else {
    // Precision-weighted mean; the variance takes the recursion's exact
    // solution noise_var / T so the closed form holds bit-for-bit.
    double next_pulls = static_cast<double>(pulls[arm] + 1);
    for (int j = 0; j < num_measures(); ++j) {
      double prior_prec = 1.0 / var[arm][j];
      double noise_prec = 1.0 / noise_var[arm][j];
      mean[arm][j] = (prior_prec * mean[arm][j] + noise_prec * sample[j]) /
                     (prior_prec + noise_prec);
      var[arm][j] = noise_var[arm][j] / next_pulls;
    }
  }
  ++pulls[arm];
  ++round;
}

LookaheadVariance lookahead_variance(const PosteriorState& state, int arm,
                                     int measure) {
  if (state.pulls[arm] == 0) {
    throw std::invalid_argument("lookahead_variance: arm never pulled");
  }
  double v = state.var[arm][measure];
  double nv = state.noise_var[arm][measure];
  double next = 1.0 / (1.0 / v + 1.0 / nv);
  // The one-step posterior mean moves by (next/noise) times the sample
  // deviation, and the sample is modeled as N(current mean, noise_var).
  double shift = next / nv * next;
  return {next, shift};
}

namespace {

int argmax_mean(const std::vector<std::vector<double>>& mean, int measure) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(mean.size()); ++i) {
    if (mean[i][measure] > mean[best][measure]) best = i;
  }
  return best;
}

TargetEstimate target_from_means(const std::vector<std::vector<double>>& mean,
                                 const Goal& goal, int ranking_measure) {
  TargetEstimate t;
  t.kind = goal.kind;
  switch (goal.kind) {
    case GoalKind::best_arm:
      t.best_arm = argmax_mean(mean, ranking_measure);
      break;
    case GoalKind::epsilon_good: {
      int best = argmax_mean(mean, ranking_measure);
      double cutoff = mean[best][ranking_measure] - goal.epsilon;
      for (int i = 0; i < static_cast<int>(mean.size()); ++i) {
        if (mean[i][ranking_measure] > cutoff) t.good_arms.push_back(i);
      }
      break;
    }
    case GoalKind::feasibility:
      for (int i = 0; i < static_cast<int>(mean.size()); ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < goal.thresholds.size(); ++j) {
          if (mean[i][j] > goal.thresholds[j]) {
            ok = false;
            break;
          }
        }
        if (ok) t.feasible_arms.push_back(i);
      }
      break;
  }
  return t;
}

}  // namespace

TargetEstimate target_estimate(const PosteriorState& state, const Goal& goal,
                               int ranking_measure) {
  for (int i = 0; i < state.num_arms(); ++i) {
    if (state.pulls[i] == 0) {
      throw std::invalid_argument("target_estimate: arm never pulled");
    }
  }
  return target_from_means(state.mean, goal, ranking_measure);
}

TargetEstimate true_target(const ProblemInstance& instance) {
  std::vector<std::vector<double>> means;
  means.reserve(instance.arms.size());
  for (const ArmSpec& a : instance.arms) means.push_back(a.means);
  return target_from_means(means, instance.goal, instance.ranking_measure);
}

bool same_target(const TargetEstimate& a, const TargetEstimate& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case GoalKind::best_arm: return a.best_arm == b.best_arm;
    case GoalKind::epsilon_good: return a.good_arms == b.good_arms;
    case GoalKind::feasibility: return a.feasible_arms == b.feasible_arms;
  }
  return false;
}

}  // namespace ikg
