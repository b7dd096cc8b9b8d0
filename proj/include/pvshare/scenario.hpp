#pragma once

#include <string>
#include <vector>

#include "pvshare/actions.hpp"

namespace pvshare {

// A benchmark configuration: which actions the buildings may rank, and the
// physical frame (fleet size, horizon, storage size).
struct ScenarioSpec {
  std::string id;
  std::vector<Action> selectable_actions;  // ascending ids; always contains 1 and 2
  int num_buildings = 6;
  int horizon_days = 30;
  int steps_per_day = 24;
  double storage_capacity_kwh = 16.0;
};

// The eight presets, in canonical order: 1, 2, 3a, 3b, 4a, 4b, 5a, 5b.
const std::vector<std::string>& scenario_ids();

// Throws std::invalid_argument listing the valid ids for an unknown one.
ScenarioSpec scenario_preset(const std::string& id);

// Enforces the structural rules (terminator and action 2 present, sorted
// unique ids, positive sizes, no storage actions when capacity is zero).
// Throws std::invalid_argument on the first violation.
void validate_scenario(const ScenarioSpec& spec);

}  // namespace pvshare
