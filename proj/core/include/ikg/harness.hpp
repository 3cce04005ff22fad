#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ikg/model.hpp"
#include "ikg/policies.hpp"

namespace ikg {

struct ExperimentConfig {
  ProblemInstance instance;
  std::string preset_name;  // empty for custom instances; used in CSV output
  std::vector<PolicyChoice> policies;
  std::vector<long> budgets;  // strictly increasing checkpoints
  int macro_reps = 100;
  int n0 = 2;  // initial pulls per arm
  std::uint64_t base_seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  // Throws std::invalid_argument on violations, including policies that do
  // not apply to the instance's goal and budgets[0] < k * n0.
  void validate() const;
};

// One replication: correctness of the reported target at each budget
// checkpoint, plus the final pull counts.
struct ReplicationOutcome {
  std::vector<char> correct;
  std::vector<long> pulls;
};

ReplicationOutcome run_replication(const ProblemInstance& instance,
                                   const PolicyChoice& policy,
                                   const std::vector<long>& budgets, int n0,
                                   std::uint64_t seed);

struct PolicyResult {
  PolicyChoice policy;
  std::vector<double> pfs;      // per budget
  std::vector<double> ci_half;  // 1.96 * sqrt(p(1-p)/reps)
  std::vector<double> sampling_rates;  // per arm, final budget, mean over reps
};

struct ExperimentResult {
  std::vector<long> budgets;
  int reps = 0;
  std::vector<PolicyResult> policies;
};

// Runs macro_reps independent replications per policy.  Replication seeds
// depend only on (base_seed, policy, rep index), and per-replication results
// land in preallocated slots, so output is byte-identical for any thread
// count.
ExperimentResult run_experiment(const ExperimentConfig& config);

// results CSV: policy,goal,preset,budget,pfs,ci_low,ci_high,reps
void write_results_csv(std::ostream& out, const ExperimentConfig& config,
                       const ExperimentResult& result);

// rates CSV: policy,preset,arm,empirical_rate,theoretical_rate.  The
// theoretical column holds the characterized asymptotic allocation for the
// policy (uniform for equal allocation); nan where no characterization is
// implemented (EI).
void write_sampling_rates_csv(std::ostream& out,
                              const ExperimentConfig& config,
                              const ExperimentResult& result);

}  // namespace ikg
