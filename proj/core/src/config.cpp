#include "ikg/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ikg/presets.hpp"

namespace ikg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

// Strict field handling: every document is checked for fields the schema
// does not define, so typos surface instead of silently applying defaults.
void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(std::string(where) + ": unknown field \"" + key + "\"");
  }
}

std::vector<std::vector<double>> parse_matrix(const json& value,
                                              const char* name) {
  if (!value.is_array() || value.empty()) {
    fail(std::string(name) + " must be a non-empty array of arrays");
  }
  std::vector<std::vector<double>> rows;
  for (const json& row : value) {
    if (!row.is_array() || row.empty()) {
      fail(std::string(name) + " must be a non-empty array of arrays");
    }
    rows.emplace_back();
    for (const json& x : row) {
      if (!x.is_number()) fail(std::string(name) + " entries must be numbers");
      rows.back().push_back(x.get<double>());
    }
  }
  return rows;
}

GoalKind parse_goal_kind(const std::string& name) {
  if (name == "bai") return GoalKind::best_arm;
  if (name == "eps_good") return GoalKind::epsilon_good;
  if (name == "feasible") return GoalKind::feasibility;
  fail("unknown goal: " + name + " (expected bai, eps_good or feasible)");
}

Goal parse_goal(const json& value) {
  if (!value.is_object() || !value.contains("kind")) {
    fail("goal must be an object with a \"kind\" field");
  }
  GoalKind kind = parse_goal_kind(value.at("kind").get<std::string>());
  switch (kind) {
    case GoalKind::best_arm:
      reject_unknown(value, "goal", {"kind"});
      return Goal::best_arm();
    case GoalKind::epsilon_good: {
      reject_unknown(value, "goal", {"kind", "epsilon"});
      if (!value.contains("epsilon") || !value.at("epsilon").is_number()) {
        fail("eps_good goal needs a numeric \"epsilon\"");
      }
      return Goal::epsilon_good(value.at("epsilon").get<double>());
    }
    case GoalKind::feasibility: {
      reject_unknown(value, "goal", {"kind", "thresholds"});
      if (!value.contains("thresholds") ||
          !value.at("thresholds").is_array()) {
        fail("feasibility goal needs a \"thresholds\" array");
      }
      std::vector<double> thresholds;
      for (const json& x : value.at("thresholds")) {
        if (!x.is_number()) fail("thresholds must be numbers");
        thresholds.push_back(x.get<double>());
      }
      return Goal::feasibility(std::move(thresholds));
    }
  }
  fail("unhandled goal kind");
}

ProblemInstance parse_instance_json(const json& doc) {
  reject_unknown(doc, "instance",
                 {"means", "noise_stds", "goal", "ranking_measure"});
  if (!doc.contains("means") || !doc.contains("noise_stds") ||
      !doc.contains("goal")) {
    fail("instance needs \"means\", \"noise_stds\" and \"goal\"");
  }
  auto means = parse_matrix(doc.at("means"), "means");
  auto stds = parse_matrix(doc.at("noise_stds"), "noise_stds");
  if (stds.size() != means.size()) {
    fail("means and noise_stds need the same number of arms");
  }
  ProblemInstance inst;
  inst.arms.resize(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    inst.arms[i].means = std::move(means[i]);
    inst.arms[i].noise_stds = std::move(stds[i]);
  }
  inst.goal = parse_goal(doc.at("goal"));
  if (doc.contains("ranking_measure")) {
    if (!doc.at("ranking_measure").is_number_integer()) {
      fail("ranking_measure must be an integer");
    }
    inst.ranking_measure = doc.at("ranking_measure").get<int>();
  }
  inst.validate();
  return inst;
}

PolicyChoice parse_policy(const json& value) {
  PolicyChoice p;
  if (value.is_string()) {
    p.kind = policy_from_name(value.get<std::string>());
    return p;
  }
  if (!value.is_object() || !value.contains("kind")) {
    fail("policy must be a name or an object with a \"kind\" field");
  }
  reject_unknown(value, "policy", {"kind", "beta"});
  p.kind = policy_from_name(value.at("kind").get<std::string>());
  if (value.contains("beta")) {
    if (p.kind != PolicyKind::ttei) fail("only ttei takes a \"beta\"");
    if (!value.at("beta").is_number()) fail("beta must be a number");
    p.ttei_beta = value.at("beta").get<double>();
  }
  return p;
}

long parse_positive_integer(const json& value, const char* name) {
  if (!value.is_number_integer() || value.get<long>() <= 0) {
    fail(std::string(name) + " must be a positive integer");
  }
  return value.get<long>();
}

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail("invalid JSON");
  if (!doc.is_object()) fail("top-level JSON must be an object");
  return doc;
}

}  // namespace

ProblemInstance parse_instance(const std::string& json_text) {
  return parse_instance_json(parse_document(json_text));
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json doc = parse_document(json_text);
  reject_unknown(doc, "config",
                 {"preset", "goal", "instance", "policies", "budgets",
                  "macro_reps", "n0", "base_seed", "threads"});
  ExperimentConfig config;
  const bool has_preset = doc.contains("preset");
  const bool has_instance = doc.contains("instance");
  if (has_preset == has_instance) {
    fail("config needs exactly one of \"preset\" or \"instance\"");
  }
  if (has_preset) {
    if (!doc.contains("goal") || !doc.at("goal").is_string()) {
      fail("preset configs need a \"goal\" name");
    }
    config.preset_name = doc.at("preset").get<std::string>();
    config.instance = preset(config.preset_name,
                             parse_goal_kind(doc.at("goal").get<std::string>()));
  } else {
    if (doc.contains("goal")) fail("\"goal\" applies to preset configs only");
    config.instance = parse_instance_json(doc.at("instance"));
  }
  if (!doc.contains("policies") || !doc.at("policies").is_array() ||
      doc.at("policies").empty()) {
    fail("config needs a non-empty \"policies\" array");
  }
  for (const json& p : doc.at("policies")) {
    config.policies.push_back(parse_policy(p));
  }
  if (!doc.contains("budgets") || !doc.at("budgets").is_array() ||
      doc.at("budgets").empty()) {
    fail("config needs a non-empty \"budgets\" array");
  }
  for (const json& b : doc.at("budgets")) {
    config.budgets.push_back(parse_positive_integer(b, "budget"));
  }
  if (!doc.contains("macro_reps")) fail("config needs \"macro_reps\"");
  config.macro_reps =
      static_cast<int>(parse_positive_integer(doc.at("macro_reps"),
                                              "macro_reps"));
  if (doc.contains("n0")) {
    config.n0 = static_cast<int>(parse_positive_integer(doc.at("n0"), "n0"));
  }
  if (doc.contains("base_seed")) {
    if (!doc.at("base_seed").is_number_integer()) {
      fail("base_seed must be an integer");
    }
    config.base_seed = doc.at("base_seed").get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    if (!doc.at("threads").is_number_integer() ||
        doc.at("threads").get<long>() < 0) {
      fail("threads must be a non-negative integer");
    }
    config.threads = doc.at("threads").get<int>();
  }
  config.validate();
  return config;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_file(path));
}

ProblemInstance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

}  // namespace ikg
