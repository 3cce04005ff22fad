#pragma once

#include <string>

#include "ikg/posterior.hpp"
#include "ikg/rng.hpp"

namespace ikg {

enum class PolicyKind {
  equal_allocation,
  kg,
  ei,
  ttei,
  ikg,
  ikg_epsilon,
  ikg_feasibility,
};

std::string policy_name(PolicyKind kind);
PolicyKind policy_from_name(const std::string& name);

struct PolicyChoice {
  PolicyKind kind = PolicyKind::ikg;
  double ttei_beta = 0.5;  // leader probability, ttei only

  // Stable id used when deriving replication seeds; independent of the order
  // policies appear in a config.
  std::uint64_t seed_id() const { return static_cast<std::uint64_t>(kind); }
};

// One-step value of pulling `arm`: expected drop in the large-deviations
// bound on misidentifying the best arm.  Every arm must have been pulled at
// least once.  Differences of exponentials are evaluated in expm1 form, so
// nearly-equal exponents do not cancel.
double ikg_value(const PosteriorState& state, int arm, int ranking_measure);

// Classic knowledge gradient: expected gain in the posterior best mean after
// one pull, s * f(-|gap|/s) with s^2 the variance reduction of the pull.
double kg_value(const PosteriorState& state, int arm, int ranking_measure);

// Expected improvement over the current best posterior mean; the incumbent
// arm is scored against the second-best mean.
double ei_value(const PosteriorState& state, int arm, int ranking_measure);

// Next arm for the best-arm policies (equal allocation, KG, EI, TTEI, iKG).
// Ties resolve to the lowest index.  rng drives only TTEI's leader coin.
int select_arm(const PolicyChoice& policy, const PosteriorState& state,
               int ranking_measure, GaussianRng& rng);

}  // namespace ikg
