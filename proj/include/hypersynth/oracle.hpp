#pragma once

#include <cstddef>

#include "hypersynth/game.hpp"
#include "hypersynth/solvers.hpp"
#include "hypersynth/state_set.hpp"

namespace hypersynth {

inline constexpr std::size_t kOracleCap = 1000;

// Reference solver: synchronous {0,1} value iteration over forward edges,
// max at the player's states and min at the opponent's, run for
// |states| + 1 rounds. Shares no code with the attractor solvers.
// Throws CapExceeded above `cap` states.
StateSet oracle_solve(const Game& game, Objective objective, const StateSet& set, Player player,
                      std::size_t cap = kOracleCap);

} // namespace hypersynth
