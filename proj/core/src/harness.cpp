#include "ikg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ikg/posterior.hpp"
#include "ikg/rates.hpp"
#include "ikg/variant_policies.hpp"

namespace ikg {

namespace {

bool policy_matches_goal(PolicyKind kind, GoalKind goal) {
  switch (goal) {
    case GoalKind::best_arm:
      return kind == PolicyKind::equal_allocation || kind == PolicyKind::kg ||
             kind == PolicyKind::ei || kind == PolicyKind::ttei ||
             kind == PolicyKind::ikg;
    case GoalKind::epsilon_good:
      return kind == PolicyKind::equal_allocation ||
             kind == PolicyKind::ikg_epsilon;
    case GoalKind::feasibility:
      return kind == PolicyKind::equal_allocation ||
             kind == PolicyKind::ikg_feasibility;
  }
  return false;
}

}  // namespace

void ExperimentConfig::validate() const {
  instance.validate();
  if (policies.empty()) {
    throw std::invalid_argument("config needs at least one policy");
  }
  for (const PolicyChoice& p : policies) {
    if (!policy_matches_goal(p.kind, instance.goal.kind)) {
      throw std::invalid_argument("policy " + policy_name(p.kind) +
                                  " does not apply to goal " +
                                  goal_name(instance.goal.kind));
    }
    if (p.kind == PolicyKind::ttei &&
        (!(p.ttei_beta > 0.0) || !(p.ttei_beta < 1.0))) {
      throw std::invalid_argument("ttei beta must lie in (0, 1)");
    }
  }
  if (budgets.empty()) {
    throw std::invalid_argument("config needs at least one budget");
  }
  for (std::size_t b = 1; b < budgets.size(); ++b) {
    if (budgets[b] <= budgets[b - 1]) {
      throw std::invalid_argument("budgets must be strictly increasing");
    }
  }
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  if (budgets[0] < static_cast<long>(instance.num_arms()) * n0) {
    throw std::invalid_argument(
        "first budget is smaller than the initialization phase k * n0");
  }
  if (macro_reps < 1) {
    throw std::invalid_argument("macro_reps must be at least 1");
  }
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

ReplicationOutcome run_replication(const ProblemInstance& instance,
                                   const PolicyChoice& policy,
                                   const std::vector<long>& budgets, int n0,
                                   std::uint64_t seed) {
  GaussianRng rng(seed);
  PosteriorState state = PosteriorState::from_instance(instance);
  const int k = instance.num_arms();
  const int rank = instance.ranking_measure;
  std::vector<double> sample(instance.num_measures());
  for (int r = 0; r < n0; ++r) {
    for (int i = 0; i < k; ++i) {
      draw_sample(instance, i, rng, sample);
      state.update(i, sample);
    }
  }
  const TargetEstimate truth = true_target(instance);
  const bool variant = policy.kind == PolicyKind::ikg_epsilon ||
                       policy.kind == PolicyKind::ikg_feasibility;
  ReplicationOutcome outcome;
  outcome.correct.resize(budgets.size());
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    while (state.round < budgets[b]) {
      int arm = variant ? select_arm_variant(policy.kind, state,
                                             instance.goal, rank)
                        : select_arm(policy, state, rank, rng);
      draw_sample(instance, arm, rng, sample);
      state.update(arm, sample);
    }
    outcome.correct[b] =
        same_target(target_estimate(state, instance.goal, rank), truth);
  }
  outcome.pulls = state.pulls;
  return outcome;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const int reps = config.macro_reps;
  const long num_policies = static_cast<long>(config.policies.size());
  const long total = num_policies * reps;

  // Flat slot table: worker order cannot affect where results land.
  std::vector<std::vector<ReplicationOutcome>> slots(num_policies);
  for (auto& s : slots) s.resize(reps);

  int nthreads = config.threads > 0
                     ? config.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  nthreads = static_cast<int>(
      std::min<long>(nthreads, total));

  std::atomic<long> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      long job = next.fetch_add(1, std::memory_order_relaxed);
      if (job >= total) return;
      long p = job / reps;
      long r = job % reps;
      try {
        std::uint64_t seed = mix_seed(config.base_seed,
                                      config.policies[p].seed_id(),
                                      static_cast<std::uint64_t>(r));
        slots[p][r] = run_replication(config.instance, config.policies[p],
                                      config.budgets, config.n0, seed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(total);  // stop handing out work
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  ExperimentResult result;
  result.budgets = config.budgets;
  result.reps = reps;
  result.policies.resize(num_policies);
  const long final_budget = config.budgets.back();
  for (long p = 0; p < num_policies; ++p) {
    PolicyResult& pr = result.policies[p];
    pr.policy = config.policies[p];
    pr.pfs.assign(config.budgets.size(), 0.0);
    pr.ci_half.assign(config.budgets.size(), 0.0);
    pr.sampling_rates.assign(config.instance.num_arms(), 0.0);
    for (int r = 0; r < reps; ++r) {
      const ReplicationOutcome& o = slots[p][r];
      for (std::size_t b = 0; b < config.budgets.size(); ++b) {
        if (!o.correct[b]) pr.pfs[b] += 1.0;
      }
      for (int i = 0; i < config.instance.num_arms(); ++i) {
        pr.sampling_rates[i] +=
            static_cast<double>(o.pulls[i]) / final_budget;
      }
    }
    for (std::size_t b = 0; b < config.budgets.size(); ++b) {
      double pfs = pr.pfs[b] / reps;
      pr.pfs[b] = pfs;
      pr.ci_half[b] = 1.96 * std::sqrt(pfs * (1.0 - pfs) / reps);
    }
    for (double& rate : pr.sampling_rates) rate /= reps;
  }
  return result;
}

namespace {

void write_double(std::ostream& out, double value) {
  if (std::isnan(value)) {
    out << "nan";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  out << buf;
}

std::string preset_label(const ExperimentConfig& config) {
  return config.preset_name.empty() ? "custom" : config.preset_name;
}

// Characterized asymptotic allocation for a policy, nan per arm where none
// is implemented.
std::vector<double> theoretical_rates(const ExperimentConfig& config,
                                      const PolicyChoice& policy) {
  const int k = config.instance.num_arms();
  std::vector<double> none(k, std::numeric_limits<double>::quiet_NaN());
  try {
    switch (policy.kind) {
      case PolicyKind::equal_allocation:
        return std::vector<double>(k, 1.0 / k);
      case PolicyKind::kg:
        return gamma_kg(config.instance).w;
      case PolicyKind::ttei:
        return gamma_ttei(config.instance, policy.ttei_beta).w;
      case PolicyKind::ikg:
      case PolicyKind::ikg_epsilon:
        return solve_optimal_allocation(config.instance).w;
      case PolicyKind::ikg_feasibility:
        return gamma_feasibility(config.instance).w;
      case PolicyKind::ei:
        return none;
    }
  } catch (const std::exception&) {
    return none;
  }
  return none;
}

}  // namespace

void write_results_csv(std::ostream& out, const ExperimentConfig& config,
                       const ExperimentResult& result) {
  out << "policy,goal,preset,budget,pfs,ci_low,ci_high,reps\n";
  const std::string goal = goal_name(config.instance.goal.kind);
  const std::string preset = preset_label(config);
  for (const PolicyResult& pr : result.policies) {
    for (std::size_t b = 0; b < result.budgets.size(); ++b) {
      out << policy_name(pr.policy.kind) << ',' << goal << ',' << preset << ','
          << result.budgets[b] << ',';
      write_double(out, pr.pfs[b]);
      out << ',';
      write_double(out, pr.pfs[b] - pr.ci_half[b]);
      out << ',';
      write_double(out, pr.pfs[b] + pr.ci_half[b]);
      out << ',' << result.reps << '\n';
    }
  }
}

void write_sampling_rates_csv(std::ostream& out,
                              const ExperimentConfig& config,
                              const ExperimentResult& result) {
  out << "policy,preset,arm,empirical_rate,theoretical_rate\n";
  const std::string preset = preset_label(config);
  for (const PolicyResult& pr : result.policies) {
    std::vector<double> theory = theoretical_rates(config, pr.policy);
    for (std::size_t i = 0; i < pr.sampling_rates.size(); ++i) {
      out << policy_name(pr.policy.kind) << ',' << preset << ',' << i + 1
          << ',';
      write_double(out, pr.sampling_rates[i]);
      out << ',';
      write_double(out, theory[i]);
      out << '\n';
    }
  }
}

}  // namespace ikg
