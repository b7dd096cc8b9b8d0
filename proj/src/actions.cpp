#include "pvshare/actions.hpp"

#include <array>
#include <stdexcept>

namespace pvshare {

namespace {
const std::array<std::string, kNumActions> kNames = {
    "do_no_more_activity",
    "own_pv_to_own_loads",
    "own_pv_to_own_storage",
    "own_storage_to_own_loads",
    "own_pv_to_grid",
    "grid_to_own_loads",
    "own_pv_to_neighbour_loads",
    "neighbour_pv_to_own_loads",
    "own_pv_to_neighbour_storage",
    "neighbour_pv_to_own_storage",
    "own_storage_to_neighbour_loads",
    "neighbour_storage_to_own_loads",
    "own_storage_to_grid",
    "grid_to_own_storage",
};
}  // namespace

Action action_from_id(int id) {
  if (id < 1 || id > kNumActions) {
    throw std::invalid_argument("action id " + std::to_string(id) + " outside 1.." +
                                std::to_string(kNumActions));
  }
  return static_cast<Action>(id);
}

const std::string& action_name(Action a) { return kNames[static_cast<std::size_t>(action_id(a)) - 1]; }

bool action_uses_storage(Action a) {
  const int id = action_id(a);
  return id == 3 || id == 4 || (id >= 9 && id <= 14);
}

bool action_is_pairwise(Action a) {
  const int id = action_id(a);
  return id >= 7 && id <= 12;
}

}  // namespace pvshare
