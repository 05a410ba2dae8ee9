#include "hypersynth/solvers.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypersynth {

StateSet pre_exists(const Game& game, Player player, const StateSet& x) {
  StateSet out(game.size());
  for (StateId s = 0; s < game.size(); ++s) {
    if (game.owner(s) != player) continue;
    for (const Edge& e : game.edges(s)) {
      if (x.contains(e.target)) {
        out.insert(s);
        break;
      }
    }
  }
  return out;
}

StateSet pre_forall(const Game& game, Player player, const StateSet& x) {
  StateSet out(game.size());
  for (StateId s = 0; s < game.size(); ++s) {
    if (game.owner(s) != player) continue;
    auto es = game.edges(s);
    if (std::all_of(es.begin(), es.end(), [&](const Edge& e) { return x.contains(e.target); }))
      out.insert(s);
  }
  return out;
}

namespace {

// Layered attractor; fills win, levels and level_of.
void attract(const Game& game, const StateSet& target, Player reacher, SolveResult& r) {
  const std::size_t n = game.size();
  r.win = StateSet(n);
  r.level_of.assign(n, kNoLevel);
  r.levels.clear();

  std::vector<std::uint32_t> remaining(n, 0);
  std::vector<char> queued(n, 0);
  for (StateId s = 0; s < n; ++s)
    if (game.owner(s) != reacher) remaining[s] = static_cast<std::uint32_t>(game.edges(s).size());

  std::vector<StateId> layer = target.ids();
  for (StateId s : layer) queued[s] = 1;

  // Action-less opponent states are in Pre∀ of any set, so they join at level 1.
  std::vector<StateId> vacuous;
  for (StateId s = 0; s < n; ++s)
    if (!queued[s] && game.owner(s) != reacher && remaining[s] == 0) vacuous.push_back(s);

  while (!layer.empty() || (r.levels.empty() && !vacuous.empty())) {
    const auto k = static_cast<std::uint32_t>(r.levels.size());
    for (StateId s : layer) {
      r.win.insert(s);
      r.level_of[s] = k;
    }
    std::vector<StateId> next;
    if (k == 0) {
      for (StateId s : vacuous) {
        queued[s] = 1;
        next.push_back(s);
      }
    }
    for (StateId s : layer) {
      for (StateId p : game.predecessors(s)) {
        if (queued[p]) continue;
        if (game.owner(p) == reacher || --remaining[p] == 0) {
          queued[p] = 1;
          next.push_back(p);
        }
      }
    }
    std::sort(layer.begin(), layer.end());
    r.levels.push_back(std::move(layer));
    layer = std::move(next);
  }
}

} // namespace

SolveResult solve_reach(const Game& game, const StateSet& target, Player reacher) {
  SolveResult r;
  r.objective = Objective::reach;
  r.player = reacher;
  attract(game, target, reacher, r);

  r.strategy = Strategy(game.size());
  for (std::uint32_t k = 1; k < r.levels.size(); ++k) {
    for (StateId s : r.levels[k]) {
      if (game.owner(s) != reacher) continue;
      std::vector<ActionId> acts;
      for (const Edge& e : game.edges(s))
        if (r.level_of[e.target] < k) acts.push_back(e.action);
      r.strategy.set(s, std::move(acts));
    }
  }
  return r;
}

SolveResult solve_safe(const Game& game, const StateSet& safe_set, Player stayer) {
  SolveResult lose;
  attract(game, safe_set.complement(), opponent(stayer), lose);

  SolveResult r;
  r.objective = Objective::safe;
  r.player = stayer;
  r.win = lose.win.complement();
  r.strategy = Strategy(game.size());
  for (StateId s : r.win.ids()) {
    if (game.owner(s) != stayer) continue;
    std::vector<ActionId> acts;
    for (const Edge& e : game.edges(s))
      if (r.win.contains(e.target)) acts.push_back(e.action);
    r.strategy.set(s, std::move(acts));
  }
  return r;
}

const Strategy& greedy_strategy(const SolveResult& reach_result) {
  if (reach_result.objective != Objective::reach)
    throw std::invalid_argument("greedy_strategy needs a reachability result");
  return reach_result.strategy;
}

Strategy asw_approx(const Game& game, const StateSet& win, Player player) {
  Strategy out(game.size());
  for (StateId s : win.ids()) {
    if (game.owner(s) != player) continue;
    std::vector<ActionId> acts;
    for (const Edge& e : game.edges(s))
      if (win.contains(e.target)) acts.push_back(e.action);
    out.set(s, std::move(acts));
  }
  return out;
}

} // namespace hypersynth
