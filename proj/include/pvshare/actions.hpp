#pragma once

#include <string>

namespace pvshare {

// Energy-management actions a building can take within one timestep, in rank
// order decided by the optimizers. Id 1 terminates the executed prefix; ids
// 7..12 move energy between a building and a neighbour; the rest act locally.
enum class Action : int {
  do_no_more_activity = 1,
  own_pv_to_own_loads = 2,
  own_pv_to_own_storage = 3,
  own_storage_to_own_loads = 4,
  own_pv_to_grid = 5,
  grid_to_own_loads = 6,
  own_pv_to_neighbour_loads = 7,
  neighbour_pv_to_own_loads = 8,
  own_pv_to_neighbour_storage = 9,
  neighbour_pv_to_own_storage = 10,
  own_storage_to_neighbour_loads = 11,
  neighbour_storage_to_own_loads = 12,
  own_storage_to_grid = 13,
  grid_to_own_storage = 14,
};

inline constexpr int kNumActions = 14;
inline constexpr Action kTerminator = Action::do_no_more_activity;

constexpr int action_id(Action a) { return static_cast<int>(a); }

// Throws std::invalid_argument for ids outside 1..14.
Action action_from_id(int id);

const std::string& action_name(Action a);

// Actions that read or write a battery (3, 4, 9..14).
bool action_uses_storage(Action a);

// Actions transferring energy between two buildings (7..12).
bool action_is_pairwise(Action a);

}  // namespace pvshare
