#pragma once

#include <string>
#include <vector>

#include "ikg/model.hpp"

namespace ikg {

// Benchmark instances with hard-coded means and noise levels.  Each preset
// supports all three goals; epsilon and feasibility thresholds are fixed per
// preset.  Measures with greater-or-equal feasibility constraints are stored
// negated (means and thresholds) so constraints are uniformly mean <=
// threshold.
const std::vector<std::string>& preset_names();

ProblemInstance preset(const std::string& name, GoalKind goal);

}  // namespace ikg
