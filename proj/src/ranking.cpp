#include "pvshare/ranking.hpp"

#include <algorithm>
#include <stdexcept>

namespace pvshare {

std::span<const Action> effective_prefix(const Ranking& ranking) {
  const auto stop = std::find(ranking.begin(), ranking.end(), kTerminator);
  return {ranking.data(), static_cast<std::size_t>(stop - ranking.begin())};
}

void validate_ranking(const Ranking& ranking, const ScenarioSpec& spec) {
  const auto& acts = spec.selectable_actions;
  for (Action a : ranking) {
    if (std::find(acts.begin(), acts.end(), a) == acts.end()) {
      throw std::invalid_argument("foreign action " + std::to_string(action_id(a)));
    }
    if (std::count(ranking.begin(), ranking.end(), a) > 1) {
      throw std::invalid_argument("duplicate action " + std::to_string(action_id(a)));
    }
  }
  for (Action a : acts) {
    if (std::find(ranking.begin(), ranking.end(), a) == ranking.end()) {
      if (a == kTerminator) throw std::invalid_argument("missing terminator");
      throw std::invalid_argument("missing action " + std::to_string(action_id(a)));
    }
  }
}

}  // namespace pvshare
