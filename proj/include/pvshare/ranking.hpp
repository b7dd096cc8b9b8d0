#pragma once

#include <span>
#include <vector>

#include "pvshare/scenario.hpp"

namespace pvshare {

// A ranking is a permutation of a scenario's selectable actions; only the
// actions ahead of the terminator are ever executed.
using Ranking = std::vector<Action>;

// The executed part: everything strictly before the first terminator (the
// whole ranking if no terminator is present).
std::span<const Action> effective_prefix(const Ranking& ranking);

// Checks that `ranking` is a permutation of `spec.selectable_actions`.
// Throws std::invalid_argument naming the offending action ("foreign action
// 7", "duplicate action 5", "missing action 6", "missing terminator").
void validate_ranking(const Ranking& ranking, const ScenarioSpec& spec);

}  // namespace pvshare
