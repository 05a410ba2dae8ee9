#include "hypersynth/oracle.hpp"

#include <string>
#include <vector>

#include "hypersynth/errors.hpp"

namespace hypersynth {

StateSet oracle_solve(const Game& game, Objective objective, const StateSet& set, Player player,
                      std::size_t cap) {
  const std::size_t n = game.size();
  if (n > cap)
    throw CapExceeded("oracle limited to " + std::to_string(cap) + " states, game has " +
                          std::to_string(n),
                      cap);

  const bool reach = objective == Objective::reach;
  std::vector<int> value(n);
  for (std::size_t s = 0; s < n; ++s) value[s] = set.contains(static_cast<StateId>(s)) ? 1 : 0;

  for (std::size_t round = 0; round <= n; ++round) {
    std::vector<int> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      const auto id = static_cast<StateId>(s);
      if (reach && value[s] == 1) {
        next[s] = 1;
        continue;
      }
      if (!reach && !set.contains(id)) {
        next[s] = 0;
        continue;
      }
      const bool maximise = game.owner(id) == player;
      int best = maximise ? 0 : 1; // max over no edges is 0, min is 1
      for (const Edge& e : game.edges(id))
        best = maximise ? std::max(best, value[e.target]) : std::min(best, value[e.target]);
      next[s] = best;
    }
    value.swap(next);
  }

  StateSet win(n);
  for (std::size_t s = 0; s < n; ++s)
    if (value[s] == 1) win.insert(static_cast<StateId>(s));
  return win;
}

} // namespace hypersynth
