#pragma once

// Independent reference implementations used only by tests.  Everything here
// recomputes quantities from raw pull counts and noise levels, bypassing the
// precision-weighted recursion and the production acquisition code, so
// agreement is evidence rather than tautology.

#include <cmath>
#include <vector>

#include "ikg/model.hpp"
#include "ikg/posterior.hpp"
#include "ikg/rng.hpp"

namespace oracle {

// After T pulls the posterior variance is noise_var / T; one more pull gives
// noise_var / (T + 1), and the mean-shift variance is noise_var / (T + 1)^2.
inline double lookahead_total_count_form(long pulls, double noise_var) {
  double t1 = static_cast<double>(pulls + 1);
  return (static_cast<double>(pulls) + 2.0) * noise_var / (t1 * t1);
}

inline double posterior_var_count_form(long pulls, double noise_var) {
  return noise_var / static_cast<double>(pulls);
}

// Plain-exponential evaluation of the best-arm/epsilon acquisition from
// counts; no expm1 tricks, no shared code with the library.
inline double ikg_value_count_form(const ikg::PosteriorState& s, int arm,
                                   double epsilon, int measure) {
  int best = 0;
  for (int i = 1; i < s.num_arms(); ++i) {
    if (s.mean[i][measure] > s.mean[best][measure]) best = i;
  }
  auto var_now = [&](int i) {
    return posterior_var_count_form(s.pulls[i], s.noise_var[i][measure]);
  };
  auto var_next = [&](int i) {
    return lookahead_total_count_form(s.pulls[i], s.noise_var[i][measure]);
  };
  if (arm != best) {
    double gap = s.mean[arm][measure] - s.mean[best][measure] + epsilon;
    double now = std::exp(-gap * gap / (2.0 * (var_now(arm) + var_now(best))));
    double next =
        std::exp(-gap * gap / (2.0 * (var_next(arm) + var_now(best))));
    return now - next;
  }
  double total = 0.0;
  for (int i = 0; i < s.num_arms(); ++i) {
    if (i == best) continue;
    double gap = s.mean[i][measure] - s.mean[best][measure] + epsilon;
    double now = std::exp(-gap * gap / (2.0 * (var_now(i) + var_now(best))));
    double next =
        std::exp(-gap * gap / (2.0 * (var_now(i) + var_next(best))));
    total += now - next;
  }
  return total;
}

// Count-form evaluation of the feasibility acquisition.
inline double ikg_f_value_count_form(const ikg::PosteriorState& s, int arm,
                                     const std::vector<double>& thresholds) {
  auto var_now = [&](int j) {
    return posterior_var_count_form(s.pulls[arm], s.noise_var[arm][j]);
  };
  auto var_next = [&](int j) {
    return lookahead_total_count_form(s.pulls[arm], s.noise_var[arm][j]);
  };
  bool feasible = true;
  for (int j = 0; j < s.num_measures(); ++j) {
    if (s.mean[arm][j] > thresholds[j]) feasible = false;
  }
  if (feasible) {
    double total = 0.0;
    for (int j = 0; j < s.num_measures(); ++j) {
      double gap = thresholds[j] - s.mean[arm][j];
      total += std::exp(-gap * gap / (2.0 * var_now(j))) -
               std::exp(-gap * gap / (2.0 * var_next(j)));
    }
    return total;
  }
  double now_exp = 0.0;
  double next_exp = 0.0;
  for (int j = 0; j < s.num_measures(); ++j) {
    if (s.mean[arm][j] <= thresholds[j]) continue;
    double gap = s.mean[arm][j] - thresholds[j];
    now_exp += gap * gap / (2.0 * var_now(j));
    next_exp += gap * gap / (2.0 * var_next(j));
  }
  return std::exp(-now_exp) - std::exp(-next_exp);
}

// Hand-built posterior state with exact count-form variances, for pinning
// closed forms at chosen (mean, sigma, T) combinations.
inline ikg::PosteriorState synthetic_state(
    const std::vector<std::vector<double>>& means,
    const std::vector<std::vector<double>>& noise_sds,
    const std::vector<long>& pulls) {
  ikg::PosteriorState s;
  int k = static_cast<int>(means.size());
  s.mean = means;
  s.pulls = pulls;
  s.var.resize(k);
  s.noise_var.resize(k);
  s.round = 0;
  for (int i = 0; i < k; ++i) {
    int m = static_cast<int>(means[i].size());
    s.var[i].resize(m);
    s.noise_var[i].resize(m);
    for (int j = 0; j < m; ++j) {
      s.noise_var[i][j] = noise_sds[i][j] * noise_sds[i][j];
      s.var[i][j] = s.noise_var[i][j] / static_cast<double>(pulls[i]);
    }
    s.round += pulls[i];
  }
  return s;
}

// Posterior state reached by pulling each arm a random number of times, so
// count-form cross-checks run on organically grown states.
inline ikg::PosteriorState random_state(const ikg::ProblemInstance& instance,
                                        ikg::GaussianRng& rng, int min_pulls,
                                        int max_pulls) {
  ikg::PosteriorState s = ikg::PosteriorState::from_instance(instance);
  std::vector<double> sample(instance.num_measures());
  for (int i = 0; i < instance.num_arms(); ++i) {
    long pulls = min_pulls +
                 static_cast<long>(rng.next_u64() %
                                   static_cast<std::uint64_t>(
                                       max_pulls - min_pulls + 1));
    for (long t = 0; t < pulls; ++t) {
      ikg::draw_sample(instance, i, rng, sample);
      s.update(i, sample);
    }
  }
  return s;
}

// Random two-measure feasibility instance with means straddling thresholds 0.
inline ikg::ProblemInstance random_feasibility_instance(ikg::GaussianRng& rng,
                                                        int k) {
  ikg::ProblemInstance inst;
  inst.arms.resize(k);
  for (int i = 0; i < k; ++i) {
    auto offset = [&] {
      double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      return sign * (0.3 + rng.uniform());
    };
    inst.arms[i].means = {offset(), offset()};
    inst.arms[i].noise_stds = {0.6 + rng.uniform(), 0.6 + rng.uniform()};
  }
  inst.goal = ikg::Goal::feasibility({0.0, 0.0});
  return inst;
}

// Uniform random ranking instance for solver cross-checks.
inline ikg::ProblemInstance random_ranking_instance(ikg::GaussianRng& rng,
                                                    int k, double min_gap) {
  ikg::ProblemInstance inst;
  inst.arms.resize(k);
  for (;;) {
    for (int i = 0; i < k; ++i) {
      inst.arms[i].means = {3.0 * rng.uniform()};
      inst.arms[i].noise_stds = {0.5 + 1.5 * rng.uniform()};
    }
    // Regenerate until the top gap clears min_gap so rates stay well defined.
    double best = inst.arms[0].means[0];
    double second = -1e300;
    for (int i = 1; i < k; ++i) {
      double mu = inst.arms[i].means[0];
      if (mu > best) {
        second = best;
        best = mu;
      } else if (mu > second) {
        second = mu;
      }
    }
    if (best - second >= min_gap) break;
  }
  inst.goal = ikg::Goal::best_arm();
  return inst;
}

}  // namespace oracle
