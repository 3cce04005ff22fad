#pragma once

#include <string>

#include "ikg/harness.hpp"

namespace ikg {

// Parses an experiment config JSON document.  Unknown fields anywhere are an
// error (std::invalid_argument), as are schema violations; the returned
// config has already passed validate().
//
// Schema:
//   {
//     "preset": "example1", "goal": "bai",   // or "instance": {...}
//     "policies": ["ikg", {"kind": "ttei", "beta": 0.5}],
//     "budgets": [1000, 5000],
//     "macro_reps": 1000,
//     "n0": 2,                  // optional, default 2
//     "base_seed": 12345,       // optional, default 0
//     "threads": 0              // optional, default 0 = hardware
//   }
ExperimentConfig parse_experiment_config(const std::string& json_text);

// Parses a standalone instance JSON document:
//   {
//     "means": [[...], ...], "noise_stds": [[...], ...],
//     "goal": {"kind": "bai"}
//           | {"kind": "eps_good", "epsilon": 0.1}
//           | {"kind": "feasible", "thresholds": [...]},
//     "ranking_measure": 0     // optional, default 0
//   }
ProblemInstance parse_instance(const std::string& json_text);

ExperimentConfig load_experiment_config(const std::string& path);
ProblemInstance load_instance(const std::string& path);

}  // namespace ikg
