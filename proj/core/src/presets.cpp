#include "ikg/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace ikg {

namespace {

ProblemInstance make_instance(std::vector<std::vector<double>> means,
                              std::vector<std::vector<double>> stds) {
  ProblemInstance inst;
  inst.arms.resize(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    inst.arms[i].means = std::move(means[i]);
    inst.arms[i].noise_stds = std::move(stds[i]);
  }
  return inst;
}

std::vector<std::vector<double>> uniform_stds(int k, int m, double sd) {
  return std::vector<std::vector<double>>(k, std::vector<double>(m, sd));
}

// Rewrites a measure so that a mean >= threshold constraint becomes
// mean <= threshold.
void negate_measure(ProblemInstance& inst, int measure) {
  for (ArmSpec& a : inst.arms) a.means[measure] = -a.means[measure];
}

// Two-measure synthetic suite: ten arms, best arm is #3 (one-based), two
// 0.1-good arms, five arms feasible under thresholds (2, 2).
const std::vector<std::vector<double>> kSyntheticMeans = {
    {0.1927, 0.4350}, {0.6438, 0.7240}, {3.0594, 1.1566}, {3.0220, 0.8560},
    {1.3753, 3.4712}, {1.4215, 0.8248}, {0.9108, 3.8797}, {1.0126, 1.9819},
    {0.1119, 3.2431}, {1.8808, 1.4315}};

// Quadratic/vee-shaped suite over x = 1..10: measure one is -0.05 x^2,
// measure two dips toward x = 6 and rises after.
const std::vector<std::vector<double>> kCurveMeans = {
    {-0.05, -0.36}, {-0.20, -0.30}, {-0.45, -0.24}, {-0.80, -0.18},
    {-1.25, -0.12}, {-1.80, -0.06}, {-2.45, 0.06},  {-3.20, 0.12},
    {-4.05, 0.18},  {-5.00, 0.24}};

// Five dose levels with efficacy and toxicity scores.
const std::vector<std::vector<double>> kDoseMeans = {{0.151, 0.259},
                                                     {0.184, 0.184},
                                                     {0.209, 0.209},
                                                     {0.171, 0.293},
                                                     {0.06, 0.16}};

struct ScalarPreset {
  std::vector<double> means;
  std::vector<double> variances;
  double epsilon;
  double feasibility_floor;  // arms feasible when mean > floor
};

const ScalarPreset kDrugSelection = {
    {5.8676, 5.6469, 5.8765, 5.8298, 5.6332},
    {3.2756, 3.4171, 3.2727, 3.3198, 3.3251},
    0.003,
    5.6};

const ScalarPreset kCaption853 = {
    {1.1400, 1.0779, 1.4160, 1.0779, 1.1081, 1.1467, 1.1333, 1.1075, 1.1026,
     1.4900},
    {0.1418, 0.0991, 0.4871, 0.0728, 0.0977, 0.1809, 0.1843, 0.0970, 0.0932,
     0.4843},
    0.1,
    1.4};

const ScalarPreset kCaption854 = {
    {1.1986, 1.1890, 1.1400, 1.2621, 1.1544, 1.0339, 1.1349, 1.2786, 1.1765,
     1.1367},
    {0.1879, 0.2279, 0.1346, 0.3186, 0.1314, 0.0330, 0.1337, 0.3167, 0.1858,
     0.1478},
    0.05,
    1.25};

ProblemInstance scalar_instance(const ScalarPreset& p, GoalKind goal) {
  const int k = static_cast<int>(p.means.size());
  std::vector<std::vector<double>> means(k);
  std::vector<std::vector<double>> stds(k);
  for (int i = 0; i < k; ++i) {
    means[i] = {p.means[i]};
    stds[i] = {std::sqrt(p.variances[i])};
  }
  ProblemInstance inst = make_instance(std::move(means), std::move(stds));
  switch (goal) {
    case GoalKind::best_arm:
      inst.goal = Goal::best_arm();
      break;
    case GoalKind::epsilon_good:
      inst.goal = Goal::epsilon_good(p.epsilon);
      break;
    case GoalKind::feasibility:
      negate_measure(inst, 0);
      inst.goal = Goal::feasibility({-p.feasibility_floor});
      break;
  }
  return inst;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "example1",       "example2",   "example3", "dose_finding",
      "drug_selection", "caption853", "caption854"};
  return names;
}

ProblemInstance preset(const std::string& name, GoalKind goal) {
  ProblemInstance inst;
  if (name == "example1" || name == "example2") {
    auto stds = uniform_stds(10, 2, 1.0);
    if (name == "example2") {
      // First five arms are twice as noisy on both measures.
      for (int i = 0; i < 5; ++i) stds[i] = {2.0, 2.0};
    }
    inst = make_instance(kSyntheticMeans, std::move(stds));
    switch (goal) {
      case GoalKind::best_arm: inst.goal = Goal::best_arm(); break;
      case GoalKind::epsilon_good: inst.goal = Goal::epsilon_good(0.1); break;
      case GoalKind::feasibility:
        inst.goal = Goal::feasibility({2.0, 2.0});
        break;
    }
  } else if (name == "example3") {
    inst = make_instance(kCurveMeans, uniform_stds(10, 2, 1.0));
    switch (goal) {
      case GoalKind::best_arm: inst.goal = Goal::best_arm(); break;
      case GoalKind::epsilon_good: inst.goal = Goal::epsilon_good(0.5); break;
      case GoalKind::feasibility:
        // Feasible when measure one > -0.5 and measure two < 0.
        negate_measure(inst, 0);
        inst.goal = Goal::feasibility({0.5, 0.0});
        break;
    }
  } else if (name == "dose_finding") {
    inst = make_instance(kDoseMeans, uniform_stds(5, 2, 0.5));
    switch (goal) {
      case GoalKind::best_arm: inst.goal = Goal::best_arm(); break;
      case GoalKind::epsilon_good: inst.goal = Goal::epsilon_good(0.03); break;
      case GoalKind::feasibility:
        // Feasible when efficacy > 0.18 and toxicity < 0.25.
        negate_measure(inst, 0);
        inst.goal = Goal::feasibility({-0.18, 0.25});
        break;
    }
  } else if (name == "drug_selection") {
    inst = scalar_instance(kDrugSelection, goal);
  } else if (name == "caption853") {
    inst = scalar_instance(kCaption853, goal);
  } else if (name == "caption854") {
    inst = scalar_instance(kCaption854, goal);
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  inst.validate();
  return inst;
}

}  // namespace ikg
