#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ikg/model.hpp"

namespace ikg {

enum class RateKind { kg, ttei, ikg, epsilon_good, feasibility, brute_force };

std::string rate_kind_name(RateKind kind);

// How far a reported allocation is from its defining conditions.  simplex is
// |sum w - 1|; balance is |w_best^2/s_best^2 - sum_{i != best} w_i^2/s_i^2|
// (zero only required of the optimal best-arm/epsilon-good allocations);
// rate_equality is the largest pairwise gap between the per-arm rates that
// the characterization says should be equal.
struct AllocationResiduals {
  double simplex = 0.0;
  double balance = 0.0;
  double rate_equality = 0.0;
};

struct AllocationVector {
  RateKind kind = RateKind::ikg;
  std::vector<double> w;  // sampling fractions, original arm order
  double gamma = 0.0;     // large-deviations rate of the error probability
  AllocationResiduals residuals;
};

std::string to_json(const AllocationVector& alloc);

// Thrown when an iterative rate solver cannot bracket or reach its target
// accuracy; carries the residuals at the last iterate.
struct SolveError : std::runtime_error {
  AllocationResiduals residuals;
  SolveError(const std::string& what, AllocationResiduals r)
      : std::runtime_error(what), residuals(r) {}
};

// Asymptotic sampling fractions of sequential KG on a best-arm instance and
// the resulting error-probability rate (closed form).
AllocationVector gamma_kg(const ProblemInstance& instance);

// Rate of top-two expected improvement with leader fraction beta: the best
// arm receives w_best = beta and the rest equalize their pairwise rates
// (one-dimensional bisection).
AllocationVector gamma_ttei(const ProblemInstance& instance, double beta);

// Rate-optimal allocation for best-arm or epsilon-good goals: pairwise rates
// equal and the balance condition holds.  Nested bisection; residuals at or
// below 1e-8 on success.
AllocationVector solve_optimal_allocation(const ProblemInstance& instance);

// Rate-optimal allocation for feasibility goals (closed form: weights
// proportional to inverse per-arm difficulty).
AllocationVector gamma_feasibility(const ProblemInstance& instance);

// Exhaustive search over the simplex grid with the given step (oracle used to
// cross-check the solvers).  k <= 5 and grid_step in [1e-3, 0.1].
AllocationVector brute_force_allocation(const ProblemInstance& instance,
                                        double grid_step);

// Least-squares slope of -log(pfs) against n over the tail half of the
// curve.  Points with pfs outside (0, 1) are dropped with a warning on
// stderr; at least three usable points are required.
double empirical_rate(const std::vector<std::pair<double, double>>& pfs_curve);

}  // namespace ikg
