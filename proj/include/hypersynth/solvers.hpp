#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hypersynth/game.hpp"
#include "hypersynth/state_set.hpp"

namespace hypersynth {

enum class Objective { reach, safe };

inline constexpr std::uint32_t kNoLevel = std::numeric_limits<std::uint32_t>::max();

struct SolveResult {
  Objective objective = Objective::reach;
  Player player = Player::defender; // the reaching / staying player
  StateSet win;
  // Reach only: levels[k] = Z_k \ Z_{k-1}, ids sorted.
  std::vector<std::vector<StateId>> levels;
  // Reach only: index of the level containing s, kNoLevel outside win.
  std::vector<std::uint32_t> level_of;
  Strategy strategy;
};

// States of `player` with some enabled action leading into x.
StateSet pre_exists(const Game& game, Player player, const StateSet& x);
// States of `player` all of whose enabled actions lead into x. Action-less
// states qualify vacuously.
StateSet pre_forall(const Game& game, Player player, const StateSet& x);

// Attractor of `target` for `reacher`: least fixed point of
//   Z_{k+1} = Z_k ∪ Pre∃_reacher(Z_k) ∪ Pre∀_opponent(Z_k),
// computed layer by layer in O(|states| + |edges|). The strategy keeps
// every level-decreasing action at reacher states of level >= 1.
//
// In a deterministic turn-based game sure and almost-sure winning
// coincide, so this is also the almost-sure winning region.
SolveResult solve_reach(const Game& game, const StateSet& target, Player reacher);

// Greatest fixed point of
//   Z_{i+1} = Z_i \ (Y ∪ Pre∀_stayer(Y) ∪ Pre∃_opponent(Y)),  Y = states \ Z_i,
// i.e. the complement of the opponent's attractor to states \ safe_set.
// The strategy is maximally permissive: every action staying in win.
SolveResult solve_safe(const Game& game, const StateSet& safe_set, Player stayer);

// The level-decreasing sure-winning strategy of a reach result.
// Throws std::invalid_argument for a safety result.
const Strategy& greedy_strategy(const SolveResult& reach_result);

// Set-based approximation of the almost-sure winning strategies: at every
// `player` state in win, all actions whose successor stays in win.
Strategy asw_approx(const Game& game, const StateSet& win, Player player = Player::attacker);

} // namespace hypersynth
