#include "ikg/policies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ikg/normal.hpp"
#include "policy_detail.hpp"

namespace ikg {

std::string policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::equal_allocation: return "equal";
    case PolicyKind::kg: return "kg";
    case PolicyKind::ei: return "ei";
    case PolicyKind::ttei: return "ttei";
    case PolicyKind::ikg: return "ikg";
    case PolicyKind::ikg_epsilon: return "ikg_eps";
    case PolicyKind::ikg_feasibility: return "ikg_f";
  }
  throw std::logic_error("unhandled policy kind");
}

PolicyKind policy_from_name(const std::string& name) {
  if (name == "equal") return PolicyKind::equal_allocation;
  if (name == "kg") return PolicyKind::kg;
  if (name == "ei") return PolicyKind::ei;
  if (name == "ttei") return PolicyKind::ttei;
  if (name == "ikg") return PolicyKind::ikg;
  if (name == "ikg_eps") return PolicyKind::ikg_epsilon;
  if (name == "ikg_f") return PolicyKind::ikg_feasibility;
  throw std::invalid_argument("unknown policy: " + name);
}

namespace detail {

void require_all_pulled(const PosteriorState& state) {
  for (int i = 0; i < state.num_arms(); ++i) {
    if (state.pulls[i] == 0) {
      throw std::invalid_argument("acquisition needs every arm pulled once");
    }
  }
}

int posterior_best(const PosteriorState& state, int measure) {
  int best = 0;
  for (int i = 1; i < state.num_arms(); ++i) {
    if (state.mean[i][measure] > state.mean[best][measure]) best = i;
  }
  return best;
}

// exp(-a) - exp(-b) for 0 <= a <= b without cancellation when a and b are
// close: exp(-a) * (1 - exp(a - b)).
double exp_diff(double a, double b) {
  return -std::exp(-a) * std::expm1(a - b);
}

// Shared by the plain and epsilon-shifted variants; epsilon = 0 gives plain.
double ikg_value_shifted(const PosteriorState& state, int arm, int best,
                         double epsilon, int measure) {
  const auto& mean = state.mean;
  const auto& var = state.var;
  double mu_best = mean[best][measure];
  double v_best = var[best][measure];
  if (arm != best) {
    double gap = mean[arm][measure] - mu_best + epsilon;
    double v = var[arm][measure];
    double v_next = lookahead_variance(state, arm, measure).total();
    double a = gap * gap / (2.0 * (v + v_best));
    double b = gap * gap / (2.0 * (v_next + v_best));
    return exp_diff(a, b);
  }
  // Pulling the incumbent tightens its side of every pairwise comparison.
  double v_best_next = lookahead_variance(state, best, measure).total();
  double total = 0.0;
  for (int i = 0; i < state.num_arms(); ++i) {
    if (i == best) continue;
    double gap = mean[i][measure] - mu_best + epsilon;
    double v = var[i][measure];
    double a = gap * gap / (2.0 * (v + v_best));
    double b = gap * gap / (2.0 * (v + v_best_next));
    total += exp_diff(a, b);
  }
  return total;
}

double kg_value_impl(const PosteriorState& state, int arm, int measure) {
  double v = state.var[arm][measure];
  double nv = state.noise_var[arm][measure];
  // One pull shrinks the posterior variance by s^2 = v^2 / (v + nv); s is
  // the std of the posterior-mean move under the predictive distribution.
  double s = v / std::sqrt(v + nv);
  double best_other = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < state.num_arms(); ++i) {
    if (i != arm && state.mean[i][measure] > best_other) {
      best_other = state.mean[i][measure];
    }
  }
  double gap = state.mean[arm][measure] - best_other;
  return s * norm_expected_positive_part(-std::abs(gap) / s);
}

double ei_value_impl(const PosteriorState& state, int arm, int measure) {
  double sd = std::sqrt(state.var[arm][measure]);
  // Improvement over the best of the *other* arms, so the incumbent is
  // scored by its expected margin over the runner-up.
  double reference = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < state.num_arms(); ++i) {
    if (i != arm && state.mean[i][measure] > reference) {
      reference = state.mean[i][measure];
    }
  }
  double z = (state.mean[arm][measure] - reference) / sd;
  return sd * norm_expected_positive_part(z);
}

}  // namespace detail

double ikg_value(const PosteriorState& state, int arm, int ranking_measure) {
  detail::require_all_pulled(state);
  int best = detail::posterior_best(state, ranking_measure);
  return detail::ikg_value_shifted(state, arm, best, 0.0, ranking_measure);
}

double kg_value(const PosteriorState& state, int arm, int ranking_measure) {
  detail::require_all_pulled(state);
  return detail::kg_value_impl(state, arm, ranking_measure);
}

double ei_value(const PosteriorState& state, int arm, int ranking_measure) {
  detail::require_all_pulled(state);
  return detail::ei_value_impl(state, arm, ranking_measure);
}

namespace {

int ttei_select(const PosteriorState& state, double beta, int measure,
                GaussianRng& rng) {
  int leader = 0;
  double leader_value = -1.0;
  for (int i = 0; i < state.num_arms(); ++i) {
    double v = detail::ei_value_impl(state, i, measure);
    if (v > leader_value) {
      leader_value = v;
      leader = i;
    }
  }
  if (rng.bernoulli(beta)) return leader;
  // Challenger: most improvable arm relative to the leader when both means
  // are treated as uncertain.
  double mu_l = state.mean[leader][measure];
  double v_l = state.var[leader][measure];
  int challenger = -1;
  double challenger_value = -1.0;
  for (int i = 0; i < state.num_arms(); ++i) {
    if (i == leader) continue;
    double sd = std::sqrt(state.var[i][measure] + v_l);
    double v =
        sd * norm_expected_positive_part((state.mean[i][measure] - mu_l) / sd);
    if (v > challenger_value) {
      challenger_value = v;
      challenger = i;
    }
  }
  return challenger;
}

}  // namespace

int select_arm(const PolicyChoice& policy, const PosteriorState& state,
               int ranking_measure, GaussianRng& rng) {
  const int k = state.num_arms();
  if (policy.kind == PolicyKind::equal_allocation) {
    return static_cast<int>(state.round % k);
  }
  detail::require_all_pulled(state);
  switch (policy.kind) {
    case PolicyKind::ttei:
      return ttei_select(state, policy.ttei_beta, ranking_measure, rng);
    case PolicyKind::kg:
    case PolicyKind::ei:
    case PolicyKind::ikg: {
      int best = detail::posterior_best(state, ranking_measure);
      int pick = 0;
      double pick_value = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < k; ++i) {
        double v;
        if (policy.kind == PolicyKind::kg) {
          v = detail::kg_value_impl(state, i, ranking_measure);
        } else if (policy.kind == PolicyKind::ei) {
          v = detail::ei_value_impl(state, i, ranking_measure);
        } else {
          v = detail::ikg_value_shifted(state, i, best, 0.0, ranking_measure);
        }
        if (v > pick_value) {
          pick_value = v;
          pick = i;
        }
      }
      return pick;
    }
    default:
      throw std::invalid_argument(
          "select_arm handles best-arm policies only; use select_arm_variant");
  }
}

}  // namespace ikg
