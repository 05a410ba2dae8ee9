#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "hypersynth/game.hpp"

namespace hypersynth {

using Rng = std::mt19937_64;

// Picks an action at a state, or nullopt when the player is stuck.
using Policy = std::function<std::optional<ActionId>(StateId, Rng&)>;

// Uniform over strategy(s) where defined, else over every enabled action.
Policy uniform_policy(const Game& game, const Strategy& strategy);
// Weighted: actions in `preferred(s)` get `bias` times the weight of the
// others in allowed(s).
Policy biased_policy(const Game& game, const Strategy& allowed, const Strategy& preferred, double bias);
// Smallest probability biased_policy gives any allowed action.
double min_action_probability(const Game& game, const Strategy& allowed, const Strategy& preferred,
                              double bias);

struct Episode {
  std::vector<StateId> path;
  bool stuck = false; // ended at a state whose owner had no action
};

// Plays until `stop(state)` holds or `max_steps` moves were made.
Episode play(const Game& game, StateId start, std::size_t max_steps, const Policy& p1,
             const Policy& p2, const std::function<bool(StateId)>& stop, Rng& rng);

} // namespace hypersynth
