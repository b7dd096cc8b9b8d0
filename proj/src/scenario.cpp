#include "pvshare/scenario.hpp"

#include <algorithm>
#include <stdexcept>

namespace pvshare {

namespace {

std::vector<Action> actions_from_ids(std::initializer_list<int> ids) {
  std::vector<Action> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(action_from_id(id));
  return out;
}

ScenarioSpec make_preset(std::string id, std::initializer_list<int> action_ids, double storage_kwh) {
  ScenarioSpec spec;
  spec.id = std::move(id);
  spec.selectable_actions = actions_from_ids(action_ids);
  spec.storage_capacity_kwh = storage_kwh;
  return spec;
}

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids = {"1", "2", "3a", "3b", "4a", "4b", "5a", "5b"};
  return ids;
}

ScenarioSpec scenario_preset(const std::string& id) {
  // 1: single building baseline actions; 2: + neighbour pv exchange;
  // 3: + own storage (b: + storage/grid); 4: pv exchange and storage combined;
  // 5: everything incl. neighbour storage access.
  if (id == "1") return make_preset(id, {1, 2, 5, 6}, 0.0);
  if (id == "2") return make_preset(id, {1, 2, 5, 6, 7, 8}, 0.0);
  if (id == "3a") return make_preset(id, {1, 2, 3, 4, 5, 6}, 16.0);
  if (id == "3b") return make_preset(id, {1, 2, 3, 4, 5, 6, 13, 14}, 16.0);
  if (id == "4a") return make_preset(id, {1, 2, 3, 4, 5, 6, 7, 8}, 16.0);
  if (id == "4b") return make_preset(id, {1, 2, 3, 4, 5, 6, 7, 8, 13, 14}, 16.0);
  if (id == "5a") return make_preset(id, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, 16.0);
  if (id == "5b") return make_preset(id, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}, 16.0);

  std::string valid;
  for (const auto& known : scenario_ids()) {
    if (!valid.empty()) valid += ", ";
    valid += known;
  }
  throw std::invalid_argument("unknown scenario \"" + id + "\" (valid: " + valid + ")");
}

void validate_scenario(const ScenarioSpec& spec) {
  if (spec.num_buildings < 1) throw std::invalid_argument("num_buildings must be >= 1");
  if (spec.horizon_days < 1) throw std::invalid_argument("horizon_days must be >= 1");
  if (spec.steps_per_day < 1) throw std::invalid_argument("steps_per_day must be >= 1");
  if (spec.storage_capacity_kwh < 0.0) {
    throw std::invalid_argument("storage_capacity_kwh must be >= 0");
  }

  const auto& acts = spec.selectable_actions;
  if (acts.size() < 2 || acts.size() > static_cast<std::size_t>(kNumActions)) {
    throw std::invalid_argument("selectable_actions must hold 2..14 actions");
  }
  if (!std::is_sorted(acts.begin(), acts.end())) {
    throw std::invalid_argument("selectable_actions must be sorted by id");
  }
  if (std::adjacent_find(acts.begin(), acts.end()) != acts.end()) {
    throw std::invalid_argument("selectable_actions must not repeat an action");
  }
  if (std::find(acts.begin(), acts.end(), kTerminator) == acts.end()) {
    throw std::invalid_argument("selectable_actions must contain the terminator (1)");
  }
  if (std::find(acts.begin(), acts.end(), Action::own_pv_to_own_loads) == acts.end()) {
    throw std::invalid_argument("selectable_actions must contain own_pv_to_own_loads (2)");
  }
  if (spec.storage_capacity_kwh == 0.0) {
    for (Action a : acts) {
      if (action_uses_storage(a)) {
        throw std::invalid_argument("action " + std::to_string(action_id(a)) +
                                    " needs storage but storage_capacity_kwh is 0");
      }
    }
  }
  for (Action a : acts) {
    if (action_is_pairwise(a) && spec.num_buildings < 2) {
      throw std::invalid_argument("action " + std::to_string(action_id(a)) +
                                  " needs at least two buildings");
    }
  }
}

}  // namespace pvshare
