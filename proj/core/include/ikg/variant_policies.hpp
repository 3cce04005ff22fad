#pragma once

#include "ikg/policies.hpp"
#include "ikg/posterior.hpp"

namespace ikg {

// Posterior classification of arms against the feasibility thresholds,
// rebuilt from scratch each round.  Arm i is currently-feasible when every
// posterior mean sits at or below its threshold; otherwise the measures above
// threshold are its violated set.
struct FeasibilityContext {
  std::vector<double> thresholds;
  std::vector<char> feasible;               // per arm
  std::vector<std::vector<int>> satisfied;  // measures at/below threshold
  std::vector<std::vector<int>> violated;   // measures above threshold
};

FeasibilityContext make_feasibility_context(const PosteriorState& state,
                                            const Goal& goal);

// iKG acquisition for epsilon-good identification: same structure as
// ikg_value with every mean gap shifted by +epsilon.  Recovers ikg_value as
// epsilon -> 0.
double ikg_epsilon_value(const PosteriorState& state, int arm, double epsilon,
                         int ranking_measure);

// iKG acquisition for feasibility: expected drop in the misclassification
// bound for `arm`.  Currently-feasible arms sum per-measure terms;
// currently-infeasible arms contribute one term whose exponent aggregates the
// violated measures.
double ikg_feasibility_value(const PosteriorState& state, int arm,
                             const FeasibilityContext& ctx);

// Next arm under iKG-epsilon or iKG-feasibility (deterministic argmax, lowest
// index on ties).
int select_arm_variant(PolicyKind kind, const PosteriorState& state,
                       const Goal& goal, int ranking_measure);

}  // namespace ikg
