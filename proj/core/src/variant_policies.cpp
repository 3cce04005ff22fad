#include "ikg/variant_policies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "policy_detail.hpp"

namespace ikg {

FeasibilityContext make_feasibility_context(const PosteriorState& state,
                                            const Goal& goal) {
  if (goal.kind != GoalKind::feasibility) {
    throw std::invalid_argument("feasibility context needs a feasibility goal");
  }
  if (static_cast<int>(goal.thresholds.size()) != state.num_measures()) {
    throw std::invalid_argument("threshold count does not match measures");
  }
  const int k = state.num_arms();
  const int m = state.num_measures();
  FeasibilityContext ctx;
  ctx.thresholds = goal.thresholds;
  ctx.feasible.resize(k);
  ctx.satisfied.resize(k);
  ctx.violated.resize(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      if (state.mean[i][j] <= goal.thresholds[j]) {
        ctx.satisfied[i].push_back(j);
      } else {
        ctx.violated[i].push_back(j);
      }
    }
    ctx.feasible[i] = ctx.violated[i].empty() ? 1 : 0;
  }
  return ctx;
}

double ikg_epsilon_value(const PosteriorState& state, int arm, double epsilon,
                         int ranking_measure) {
  detail::require_all_pulled(state);
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("epsilon must be non-negative");
  }
  int best = detail::posterior_best(state, ranking_measure);
  return detail::ikg_value_shifted(state, arm, best, epsilon, ranking_measure);
}

double ikg_feasibility_value(const PosteriorState& state, int arm,
                             const FeasibilityContext& ctx) {
  detail::require_all_pulled(state);
  const auto& mean = state.mean[arm];
  const auto& var = state.var[arm];
  if (ctx.feasible[arm]) {
    // Every measure can independently push the arm across its threshold.
    double total = 0.0;
    for (int j = 0; j < state.num_measures(); ++j) {
      double gap = ctx.thresholds[j] - mean[j];
      double v_next = lookahead_variance(state, arm, j).total();
      double a = gap * gap / (2.0 * var[j]);
      double b = gap * gap / (2.0 * v_next);
      total += detail::exp_diff(a, b);
    }
    return total;
  }
  // Infeasible arms flip only if every violated measure recrosses, so the
  // exponents add up before the single exponentiation.
  double a = 0.0;
  double b = 0.0;
  for (int j : ctx.violated[arm]) {
    double gap = mean[j] - ctx.thresholds[j];
    double v_next = lookahead_variance(state, arm, j).total();
    a += gap * gap / (2.0 * var[j]);
    b += gap * gap / (2.0 * v_next);
  }
  return detail::exp_diff(a, b);
}

int select_arm_variant(PolicyKind kind, const PosteriorState& state,
                       const Goal& goal, int ranking_measure) {
  detail::require_all_pulled(state);
  const int k = state.num_arms();
  int pick = 0;
  double pick_value = -std::numeric_limits<double>::infinity();
  if (kind == PolicyKind::ikg_epsilon) {
    if (goal.kind != GoalKind::epsilon_good) {
      throw std::invalid_argument("ikg_eps needs an epsilon_good goal");
    }
    int best = detail::posterior_best(state, ranking_measure);
    for (int i = 0; i < k; ++i) {
      double v = detail::ikg_value_shifted(state, i, best, goal.epsilon,
                                           ranking_measure);
      if (v > pick_value) {
        pick_value = v;
        pick = i;
      }
    }
    return pick;
  }
  if (kind == PolicyKind::ikg_feasibility) {
    FeasibilityContext ctx = make_feasibility_context(state, goal);
    for (int i = 0; i < k; ++i) {
      double v = ikg_feasibility_value(state, i, ctx);
      if (v > pick_value) {
        pick_value = v;
        pick = i;
      }
    }
    return pick;
  }
  throw std::invalid_argument("select_arm_variant handles ikg_eps and ikg_f");
}

}  // namespace ikg
