#pragma once

#include <cstddef>

#include "hypersynth/automata.hpp"
#include "hypersynth/network.hpp"
#include "hypersynth/simulate.hpp"

namespace hypersynth {

struct RandomGameParams {
  std::size_t states = 50;
  std::size_t max_out = 3;  // actions per state, at least 1
  double defender_share = 0.5;
  double dead_share = 0.0;  // states left without actions
};

// Action names "a0".."a<max_out-1>"; each state uses a random subset.
Game random_game(const RandomGameParams& params, Rng& rng);
StateSet random_subset(std::size_t universe, double density, Rng& rng);

// Abstract labeled arena over {d, t}; every state keeps at least one action.
LabeledArena random_arena(std::size_t states, std::size_t max_out, Rng& rng);

// ◇d, ◇t over {d, t} and the mask hiding d.
Dfa eventually_dfa(const Alphabet& alphabet, const std::string& prop);
Mask hide_mask(const Alphabet& alphabet, const std::string& prop);

} // namespace hypersynth
