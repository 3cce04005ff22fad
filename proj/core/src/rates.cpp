#include "ikg/rates.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

namespace ikg {

std::string rate_kind_name(RateKind kind) {
  switch (kind) {
    case RateKind::kg: return "kg";
    case RateKind::ttei: return "ttei";
    case RateKind::ikg: return "ikg";
    case RateKind::epsilon_good: return "epsilon_good";
    case RateKind::feasibility: return "feasibility";
    case RateKind::brute_force: return "brute_force";
  }
  throw std::logic_error("unhandled rate kind");
}

std::string to_json(const AllocationVector& alloc) {
  nlohmann::ordered_json doc;
  doc["kind"] = rate_kind_name(alloc.kind);
  doc["k"] = alloc.w.size();
  doc["w"] = alloc.w;
  doc["gamma"] = alloc.gamma;
  doc["residuals"] = {{"simplex", alloc.residuals.simplex},
                      {"balance", alloc.residuals.balance},
                      {"rate_equality", alloc.residuals.rate_equality}};
  return doc.dump();
}

namespace {

// Scalar view of a ranking-goal instance: means and noise stds on the
// ranking measure, with the true best arm singled out.
struct RankingView {
  int best = 0;
  std::vector<double> mu;
  std::vector<double> sigma;
  std::vector<double> gap;  // mu_i - mu_best (+ epsilon for epsilon_good)
};

RankingView ranking_view(const ProblemInstance& instance, double epsilon) {
  instance.validate();
  const int k = instance.num_arms();
  const int j = instance.ranking_measure;
  RankingView v;
  v.mu.resize(k);
  v.sigma.resize(k);
  for (int i = 0; i < k; ++i) {
    v.mu[i] = instance.arms[i].means[j];
    v.sigma[i] = instance.arms[i].noise_stds[j];
    if (v.mu[i] > v.mu[v.best]) v.best = i;
  }
  v.gap.resize(k);
  for (int i = 0; i < k; ++i) {
    v.gap[i] = v.mu[i] - v.mu[v.best] + epsilon;
    if (i != v.best && v.gap[i] == 0.0) {
      throw std::invalid_argument(
          "arm " + std::to_string(i) +
          " sits exactly at the decision boundary; rate undefined");
    }
  }
  return v;
}

double pairwise_rate(const RankingView& v, const std::vector<double>& w,
                     int i) {
  if (w[i] <= 0.0 || w[v.best] <= 0.0) return 0.0;
  double denom =
      v.sigma[i] * v.sigma[i] / w[i] + v.sigma[v.best] * v.sigma[v.best] / w[v.best];
  return v.gap[i] * v.gap[i] / (2.0 * denom);
}

AllocationResiduals ranking_residuals(const RankingView& v,
                                      const std::vector<double>& w) {
  AllocationResiduals r;
  r.simplex = std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0);
  double balance = w[v.best] * w[v.best] / (v.sigma[v.best] * v.sigma[v.best]);
  double rate_lo = std::numeric_limits<double>::infinity();
  double rate_hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (i == v.best) continue;
    balance -= w[i] * w[i] / (v.sigma[i] * v.sigma[i]);
    double rate = pairwise_rate(v, w, i);
    rate_lo = std::min(rate_lo, rate);
    rate_hi = std::max(rate_hi, rate);
  }
  r.balance = std::abs(balance);
  r.rate_equality = rate_hi - rate_lo;
  return r;
}

// Given the best arm's fraction, find the rate at which the remaining mass
// exactly covers the weights that equalize all pairwise rates.  Increasing
// the rate demands more mass, so bisection brackets cleanly.
struct EqualRateSolution {
  double gamma = 0.0;
  std::vector<double> w;  // full vector, w[best] = w_best
};

EqualRateSolution solve_equal_rates(const RankingView& v, double w_best) {
  const int k = static_cast<int>(v.mu.size());
  const double s1sq = v.sigma[v.best] * v.sigma[v.best];
  const double target = 1.0 - w_best;
  double gamma_ub = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    if (i == v.best) continue;
    gamma_ub = std::min(gamma_ub, w_best * v.gap[i] * v.gap[i] / (2.0 * s1sq));
  }
  auto mass = [&](double gamma) {
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      if (i == v.best) continue;
      double denom = v.gap[i] * v.gap[i] / (2.0 * gamma) - s1sq / w_best;
      sum += v.sigma[i] * v.sigma[i] / denom;
    }
    return sum;
  };
  double lo = 0.0;
  double hi = gamma_ub * (1.0 - 1e-12);
  if (mass(hi) < target) {
    throw SolveError("equal-rate mass cannot reach target", {});
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-17 * gamma_ub; ++iter) {
    double mid = 0.5 * (lo + hi);
    (mass(mid) < target ? lo : hi) = mid;
  }
  EqualRateSolution sol;
  sol.gamma = 0.5 * (lo + hi);
  sol.w.assign(k, 0.0);
  sol.w[v.best] = w_best;
  for (int i = 0; i < k; ++i) {
    if (i == v.best) continue;
    sol.w[i] = v.sigma[i] * v.sigma[i] /
               (v.gap[i] * v.gap[i] / (2.0 * sol.gamma) - s1sq / w_best);
  }
  return sol;
}

double min_rate(const RankingView& v, const std::vector<double>& w) {
  double rate = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (i != v.best) rate = std::min(rate, pairwise_rate(v, w, i));
  }
  return rate;
}

}  // namespace

AllocationVector gamma_kg(const ProblemInstance& instance) {
  if (instance.goal.kind != GoalKind::best_arm) {
    throw std::invalid_argument("gamma_kg needs a best_arm goal");
  }
  RankingView v = ranking_view(instance, 0.0);
  const int k = static_cast<int>(v.mu.size());
  const double s1 = v.sigma[v.best];
  // Gaps normalized by the runner-up (second-highest mean); its own c is 1.
  int second = -1;
  for (int i = 0; i < k; ++i) {
    if (i == v.best) continue;
    if (second < 0 || v.mu[i] > v.mu[second]) second = i;
  }
  const double sigma2 = v.sigma[second];
  const double second_score = -v.gap[second] / sigma2;
  std::vector<double> c(k, 0.0);
  double sum_inv_c = 0.0;
  for (int i = 0; i < k; ++i) {
    if (i == v.best) continue;
    c[i] = (-v.gap[i] / v.sigma[i]) / second_score;
    sum_inv_c += 1.0 / c[i];
  }
  AllocationVector out;
  out.kind = RateKind::kg;
  out.w.assign(k, 0.0);
  out.w[v.best] = 1.0 / (sigma2 / s1 * sum_inv_c + 1.0);
  for (int i = 0; i < k; ++i) {
    if (i == v.best) continue;
    out.w[i] = 1.0 / (c[i] * (sum_inv_c + s1 / sigma2));
  }
  out.gamma = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    if (i == v.best) continue;
    double denom = s1 * (sigma2 * sum_inv_c + s1) +
                   c[i] * v.sigma[i] * v.sigma[i] * (sum_inv_c + s1 / sigma2);
    out.gamma = std::min(out.gamma, v.gap[i] * v.gap[i] / (2.0 * denom));
  }
  out.residuals = ranking_residuals(v, out.w);
  return out;
}

AllocationVector gamma_ttei(const ProblemInstance& instance, double beta) {
  if (instance.goal.kind != GoalKind::best_arm) {
    throw std::invalid_argument("gamma_ttei needs a best_arm goal");
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1)");
  }
  RankingView v = ranking_view(instance, 0.0);
  EqualRateSolution sol = solve_equal_rates(v, beta);
  AllocationVector out;
  out.kind = RateKind::ttei;
  out.w = std::move(sol.w);
  out.gamma = min_rate(v, out.w);
  out.residuals = ranking_residuals(v, out.w);
  return out;
}

AllocationVector solve_optimal_allocation(const ProblemInstance& instance) {
  double epsilon = 0.0;
  RateKind kind;
  switch (instance.goal.kind) {
    case GoalKind::best_arm:
      kind = RateKind::ikg;
      break;
    case GoalKind::epsilon_good:
      kind = RateKind::epsilon_good;
      epsilon = instance.goal.epsilon;
      break;
    default:
      throw std::invalid_argument(
          "optimal allocation: use gamma_feasibility for feasibility goals");
  }
  RankingView v = ranking_view(instance, epsilon);
  // Outer bisection on the best arm's fraction; the balance defect is
  // negative when the best arm is starved and positive when it hogs mass.
  auto balance_defect = [&](double w_best) {
    EqualRateSolution sol = solve_equal_rates(v, w_best);
    double defect = w_best * w_best / (v.sigma[v.best] * v.sigma[v.best]);
    for (int i = 0; i < static_cast<int>(sol.w.size()); ++i) {
      if (i == v.best) continue;
      defect -= sol.w[i] * sol.w[i] / (v.sigma[i] * v.sigma[i]);
    }
    return defect;
  };
  double lo = 1e-6;
  double hi = 1.0 - 1e-6;
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    double mid = 0.5 * (lo + hi);
    (balance_defect(mid) < 0.0 ? lo : hi) = mid;
  }
  EqualRateSolution sol = solve_equal_rates(v, 0.5 * (lo + hi));
  AllocationVector out;
  out.kind = kind;
  out.w = std::move(sol.w);
  out.gamma = min_rate(v, out.w);
  out.residuals = ranking_residuals(v, out.w);
  const double tol = 1e-8;
  if (out.residuals.simplex > tol || out.residuals.balance > tol ||
      out.residuals.rate_equality > tol * std::max(1.0, out.gamma)) {
    throw SolveError("optimal allocation did not converge", out.residuals);
  }
  return out;
}

namespace {

// Per-arm difficulty for feasibility goals: slowest measure for feasible
// arms, summed violated measures for infeasible arms.
std::vector<double> feasibility_difficulty(const ProblemInstance& instance) {
  const int k = instance.num_arms();
  const int m = instance.num_measures();
  const std::vector<double>& g = instance.goal.thresholds;
  std::vector<double> d(k, 0.0);
  for (int i = 0; i < k; ++i) {
    const ArmSpec& a = instance.arms[i];
    double min_term = std::numeric_limits<double>::infinity();
    double violated_sum = 0.0;
    bool feasible = true;
    for (int j = 0; j < m; ++j) {
      double z = g[j] - a.means[j];
      double term = z * z / (2.0 * a.noise_stds[j] * a.noise_stds[j]);
      if (z < 0.0) {
        feasible = false;
        violated_sum += term;
      }
      min_term = std::min(min_term, term);
    }
    d[i] = feasible ? min_term : violated_sum;
  }
  return d;
}

}  // namespace

AllocationVector gamma_feasibility(const ProblemInstance& instance) {
  if (instance.goal.kind != GoalKind::feasibility) {
    throw std::invalid_argument("gamma_feasibility needs a feasibility goal");
  }
  instance.validate();
  std::vector<double> d = feasibility_difficulty(instance);
  double inv_sum = 0.0;
  for (double di : d) inv_sum += 1.0 / di;
  AllocationVector out;
  out.kind = RateKind::feasibility;
  out.gamma = 1.0 / inv_sum;
  out.w.resize(d.size());
  double rate_lo = std::numeric_limits<double>::infinity();
  double rate_hi = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    out.w[i] = (1.0 / d[i]) / inv_sum;
    sum += out.w[i];
    rate_lo = std::min(rate_lo, out.w[i] * d[i]);
    rate_hi = std::max(rate_hi, out.w[i] * d[i]);
  }
  out.residuals.simplex = std::abs(sum - 1.0);
  out.residuals.balance = 0.0;
  out.residuals.rate_equality = rate_hi - rate_lo;
  return out;
}

namespace {

struct GridSearch {
  int k = 0;
  int best = -1;                // ranking goals only
  std::vector<double> gap_sq;   // ranking goals
  std::vector<double> var;      // ranking goals, ranking-measure variance
  std::vector<double> d;        // feasibility difficulty
  bool feasibility = false;
  long denom = 0;
  std::vector<long> counts;
  double best_rate = -1.0;
  std::vector<long> best_counts;

  double rate_of(const std::vector<long>& n) const {
    if (feasibility) {
      double r = std::numeric_limits<double>::infinity();
      for (int i = 0; i < k; ++i) {
        r = std::min(r, static_cast<double>(n[i]) / denom * d[i]);
      }
      return r;
    }
    if (n[best] == 0) return 0.0;
    double r = std::numeric_limits<double>::infinity();
    double best_term = var[best] * denom / static_cast<double>(n[best]);
    for (int i = 0; i < k; ++i) {
      if (i == best) continue;
      if (n[i] == 0) return 0.0;
      double denom_i = var[i] * denom / static_cast<double>(n[i]) + best_term;
      r = std::min(r, gap_sq[i] / (2.0 * denom_i));
    }
    return r;
  }

  // Upper bound on the final rate given the counts fixed so far; lets the
  // enumeration skip branches that cannot beat the incumbent.
  double prefix_bound(int next_arm) const {
    double ub = std::numeric_limits<double>::infinity();
    if (feasibility) {
      for (int i = 0; i < next_arm; ++i) {
        ub = std::min(ub, static_cast<double>(counts[i]) / denom * d[i]);
      }
      return ub;
    }
    double best_term = 0.0;
    if (best < next_arm) {
      if (counts[best] == 0) return 0.0;
      best_term = var[best] * denom / static_cast<double>(counts[best]);
    }
    for (int i = 0; i < next_arm; ++i) {
      if (i == best) continue;
      if (counts[i] == 0) return 0.0;
      double denom_i = var[i] * denom / static_cast<double>(counts[i]) + best_term;
      ub = std::min(ub, gap_sq[i] / (2.0 * denom_i));
    }
    return ub;
  }

  void search(int arm, long remaining) {
    if (arm == k - 1) {
      counts[arm] = remaining;
      double r = rate_of(counts);
      if (r > best_rate) {
        best_rate = r;
        best_counts = counts;
      }
      return;
    }
    for (long c = 0; c <= remaining; ++c) {
      counts[arm] = c;
      // The bound only grows with c, but a low-c branch can never recover:
      // the final rate is capped by the prefix minimum.
      if (prefix_bound(arm + 1) <= best_rate) continue;
      search(arm + 1, remaining - c);
    }
  }
};

}  // namespace

AllocationVector brute_force_allocation(const ProblemInstance& instance,
                                        double grid_step) {
  instance.validate();
  const int k = instance.num_arms();
  if (k > 5) {
    throw std::invalid_argument("brute force supports at most five arms");
  }
  if (!(grid_step >= 1e-3) || !(grid_step <= 0.1)) {
    throw std::invalid_argument("grid step must lie in [1e-3, 0.1]");
  }
  GridSearch gs;
  gs.k = k;
  gs.denom = std::llround(1.0 / grid_step);
  gs.counts.assign(k, 0);
  if (instance.goal.kind == GoalKind::feasibility) {
    gs.feasibility = true;
    gs.d = feasibility_difficulty(instance);
  } else {
    double epsilon = instance.goal.kind == GoalKind::epsilon_good
                         ? instance.goal.epsilon
                         : 0.0;
    RankingView v = ranking_view(instance, epsilon);
    gs.best = v.best;
    gs.gap_sq.resize(k);
    gs.var.resize(k);
    for (int i = 0; i < k; ++i) {
      gs.gap_sq[i] = v.gap[i] * v.gap[i];
      gs.var[i] = v.sigma[i] * v.sigma[i];
    }
  }
  gs.search(0, gs.denom);
  AllocationVector out;
  out.kind = RateKind::brute_force;
  out.gamma = gs.best_rate;
  out.w.resize(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    out.w[i] = static_cast<double>(gs.best_counts[i]) / gs.denom;
    sum += out.w[i];
  }
  out.residuals.simplex = std::abs(sum - 1.0);
  out.residuals.balance = 0.0;
  out.residuals.rate_equality = 0.0;
  return out;
}

double empirical_rate(
    const std::vector<std::pair<double, double>>& pfs_curve) {
  std::vector<std::pair<double, double>> usable;
  int dropped = 0;
  for (const auto& [n, pfs] : pfs_curve) {
    if (pfs > 0.0 && pfs < 1.0) {
      usable.emplace_back(n, pfs);
    } else {
      ++dropped;
    }
  }
  if (dropped > 0) {
    std::cerr << "warning: empirical_rate dropped " << dropped
              << " point(s) with pfs outside (0, 1)\n";
  }
  if (usable.size() < 3) {
    throw std::invalid_argument(
        "empirical_rate needs at least three points with pfs in (0, 1)");
  }
  std::sort(usable.begin(), usable.end());
  // Fit only the tail half: early checkpoints are still dominated by
  // transient constants, not the asymptotic slope.
  std::size_t start = usable.size() / 2;
  if (usable.size() - start < 3) start = usable.size() - 3;
  double n_bar = 0.0;
  double y_bar = 0.0;
  std::size_t count = usable.size() - start;
  for (std::size_t i = start; i < usable.size(); ++i) {
    n_bar += usable[i].first;
    y_bar += -std::log(usable[i].second);
  }
  n_bar /= count;
  y_bar /= count;
  double cov = 0.0;
  double var = 0.0;
  for (std::size_t i = start; i < usable.size(); ++i) {
    double dn = usable[i].first - n_bar;
    cov += dn * (-std::log(usable[i].second) - y_bar);
    var += dn * dn;
  }
  if (var == 0.0) {
    throw std::invalid_argument("empirical_rate needs distinct budgets");
  }
  return cov / var;
}

}  // namespace ikg
