#include "hypersynth/simulate.hpp"

#include <algorithm>

namespace hypersynth {

namespace {

std::vector<ActionId> allowed_at(const Game& game, const Strategy& strategy, StateId s) {
  if (strategy.defined(s)) return strategy.at(s);
  std::vector<ActionId> out;
  for (const Edge& e : game.edges(s)) out.push_back(e.action);
  return out;
}

std::vector<double> weights(const std::vector<ActionId>& acts, const Strategy& preferred, StateId s,
                            double bias) {
  std::vector<double> w(acts.size(), 1.0);
  if (!preferred.defined(s)) return w;
  const auto& pref = preferred.at(s);
  for (std::size_t i = 0; i < acts.size(); ++i)
    if (std::binary_search(pref.begin(), pref.end(), acts[i])) w[i] = bias;
  return w;
}

} // namespace

Policy uniform_policy(const Game& game, const Strategy& strategy) {
  return [&game, &strategy](StateId s, Rng& rng) -> std::optional<ActionId> {
    auto acts = allowed_at(game, strategy, s);
    if (acts.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, acts.size() - 1);
    return acts[pick(rng)];
  };
}

Policy biased_policy(const Game& game, const Strategy& allowed, const Strategy& preferred, double bias) {
  return [&game, &allowed, &preferred, bias](StateId s, Rng& rng) -> std::optional<ActionId> {
    auto acts = allowed_at(game, allowed, s);
    if (acts.empty()) return std::nullopt;
    auto w = weights(acts, preferred, s, bias);
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    return acts[pick(rng)];
  };
}

double min_action_probability(const Game& game, const Strategy& allowed, const Strategy& preferred,
                              double bias) {
  double lowest = 1.0;
  for (StateId s = 0; s < game.size(); ++s) {
    auto acts = allowed_at(game, allowed, s);
    if (acts.empty()) continue;
    auto w = weights(acts, preferred, s, bias);
    double total = 0;
    for (double x : w) total += x;
    for (double x : w) lowest = std::min(lowest, x / total);
  }
  return lowest;
}

Episode play(const Game& game, StateId start, std::size_t max_steps, const Policy& p1,
             const Policy& p2, const std::function<bool(StateId)>& stop, Rng& rng) {
  Episode ep;
  StateId cur = start;
  ep.path.push_back(cur);
  for (std::size_t step = 0; step < max_steps && !stop(cur); ++step) {
    auto a = (game.owner(cur) == Player::defender ? p1 : p2)(cur, rng);
    if (!a) {
      ep.stuck = true;
      break;
    }
    cur = *game.successor(cur, *a);
    ep.path.push_back(cur);
  }
  return ep;
}

} // namespace hypersynth
