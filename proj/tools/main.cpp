#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ikg/config.hpp"
#include "ikg/harness.hpp"
#include "ikg/posterior.hpp"
#include "ikg/presets.hpp"
#include "ikg/rates.hpp"

namespace {

// Arms are shown one-based everywhere the tool prints them.
std::string join_arms(const std::vector<int>& arms) {
  std::string out;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(arms[i] + 1);
  }
  return out;
}

std::string describe_target(const ikg::ProblemInstance& inst) {
  ikg::TargetEstimate t = ikg::true_target(inst);
  switch (t.kind) {
    case ikg::GoalKind::best_arm:
      return "best_arm=" + std::to_string(t.best_arm + 1);
    case ikg::GoalKind::epsilon_good:
      return "good_arms=" + join_arms(t.good_arms);
    case ikg::GoalKind::feasibility:
      return "feasible_arms=" + join_arms(t.feasible_arms);
  }
  return "";
}

int cmd_presets() {
  for (const std::string& name : ikg::preset_names()) {
    for (ikg::GoalKind goal : {ikg::GoalKind::best_arm,
                               ikg::GoalKind::epsilon_good,
                               ikg::GoalKind::feasibility}) {
      ikg::ProblemInstance inst = ikg::preset(name, goal);
      std::cout << name << ' ' << ikg::goal_name(goal) << ' '
                << describe_target(inst) << '\n';
    }
  }
  return 0;
}

ikg::ProblemInstance resolve_instance(const std::string& preset_name,
                                      const std::string& goal,
                                      const std::string& instance_file) {
  if (!preset_name.empty() && !instance_file.empty()) {
    throw std::invalid_argument("give either --preset or --instance, not both");
  }
  if (!instance_file.empty()) {
    if (!goal.empty()) {
      throw std::invalid_argument(
          "--goal applies to presets; instance files carry their own goal");
    }
    return ikg::load_instance(instance_file);
  }
  if (preset_name.empty()) {
    throw std::invalid_argument("give one of --preset or --instance");
  }
  if (goal.empty()) {
    throw std::invalid_argument("--preset needs --goal");
  }
  ikg::GoalKind kind;
  if (goal == "bai") {
    kind = ikg::GoalKind::best_arm;
  } else if (goal == "eps_good") {
    kind = ikg::GoalKind::epsilon_good;
  } else if (goal == "feasible") {
    kind = ikg::GoalKind::feasibility;
  } else {
    throw std::invalid_argument("unknown goal: " + goal +
                                " (expected bai, eps_good or feasible)");
  }
  return ikg::preset(preset_name, kind);
}

int cmd_rates(const ikg::ProblemInstance& inst, const std::string& policy,
              double beta) {
  ikg::AllocationVector alloc;
  if (inst.goal.kind == ikg::GoalKind::feasibility) {
    if (policy != "ikg") {
      throw std::invalid_argument(
          "feasibility rates are characterized for ikg only");
    }
    alloc = ikg::gamma_feasibility(inst);
  } else if (policy == "ikg") {
    alloc = ikg::solve_optimal_allocation(inst);
  } else if (policy == "kg") {
    alloc = ikg::gamma_kg(inst);
  } else if (policy == "ttei") {
    alloc = ikg::gamma_ttei(inst, beta);
  } else {
    throw std::invalid_argument("no rate characterization for policy: " +
                                policy);
  }
  std::cout << ikg::to_json(alloc) << '\n';
  return 0;
}

int cmd_oracle(const ikg::ProblemInstance& inst, double grid) {
  std::cout << ikg::to_json(ikg::brute_force_allocation(inst, grid)) << '\n';
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int threads_override, bool has_seed, std::uint64_t seed_override) {
  ikg::ExperimentConfig config = ikg::load_experiment_config(config_path);
  if (threads_override >= 0) config.threads = threads_override;
  if (has_seed) config.base_seed = seed_override;
  config.validate();
  ikg::ExperimentResult result = ikg::run_experiment(config);
  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& name, auto writer) {
    std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);  // keep LF line endings
    if (!out) throw std::runtime_error("cannot write " + path.string());
    writer(out);
    std::cout << "wrote " << path.string() << '\n';
  };
  write("results.csv", [&](std::ostream& out) {
    ikg::write_results_csv(out, config, result);
  });
  write("sampling_rates.csv", [&](std::ostream& out) {
    ikg::write_sampling_rates_csv(out, config, result);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling policies and error-rate analysis for fixed-budget "
               "best-arm, epsilon-good and feasibility identification"};
  app.require_subcommand(1);

  std::string preset_name, goal, instance_file;
  std::string policy = "ikg";
  double beta = 0.5;
  double grid = 0.01;
  std::string config_path, out_dir;
  int threads_override = -1;
  std::uint64_t seed_override = 0;

  CLI::App* rates = app.add_subcommand(
      "rates", "Asymptotic sampling fractions and error rate");
  rates->add_option("--preset", preset_name, "Preset instance name");
  rates->add_option("--goal", goal, "Goal for --preset: bai|eps_good|feasible");
  rates->add_option("--instance", instance_file, "Instance JSON file");
  rates->add_option("--policy", policy, "Policy: ikg|kg|ttei (default ikg)");
  rates->add_option("--beta", beta, "Leader fraction for ttei");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Brute-force allocation search on a simplex grid");
  oracle->add_option("--preset", preset_name, "Preset instance name");
  oracle->add_option("--goal", goal,
                     "Goal for --preset: bai|eps_good|feasible");
  oracle->add_option("--instance", instance_file, "Instance JSON file");
  oracle->add_option("--grid", grid, "Grid step in [1e-3, 0.1]");

  CLI::App* run = app.add_subcommand("run", "Macro-replication experiment");
  run->add_option("--config", config_path, "Experiment config JSON")
      ->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--threads", threads_override, "Worker thread override");
  CLI::Option* seed_opt =
      run->add_option("--seed", seed_override, "Base seed override");

  CLI::App* presets =
      app.add_subcommand("presets", "List preset instances and their targets");

  try {
    app.parse(argc, argv);
    if (presets->parsed()) return cmd_presets();
    if (rates->parsed()) {
      return cmd_rates(resolve_instance(preset_name, goal, instance_file),
                       policy, beta);
    }
    if (oracle->parsed()) {
      return cmd_oracle(resolve_instance(preset_name, goal, instance_file),
                        grid);
    }
    return cmd_run(config_path, out_dir, threads_override,
                   seed_opt->count() > 0, seed_override);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << app.help();
    return 2;
  } catch (const ikg::SolveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
