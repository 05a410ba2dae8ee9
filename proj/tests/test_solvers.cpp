#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hypersynth/errors.hpp"
#include "hypersynth/oracle.hpp"
#include "hypersynth/random_models.hpp"
#include "hypersynth/simulate.hpp"
#include "hypersynth/solvers.hpp"
#include "support.hpp"

using namespace hypersynth;

namespace {

std::vector<std::string> names(const Game& g, const Strategy& s, StateId v) { return s.action_names(g, v); }

using Names = std::vector<std::string>;

// Same game with state ids permuted by `perm` (new id = perm[old]).
Game permuted(const Game& g, const std::vector<StateId>& perm) {
  GameBuilder b(g.action_table());
  std::vector<StateId> inverse(perm.size());
  for (StateId s = 0; s < perm.size(); ++s) inverse[perm[s]] = s;
  for (StateId n = 0; n < perm.size(); ++n) b.add_state(g.owner(inverse[n]));
  for (StateId s = 0; s < g.size(); ++s)
    for (const Edge& e : g.edges(s)) b.add_edge(perm[s], e.action, perm[e.target]);
  return b.build();
}

StateSet permute_set(const StateSet& x, const std::vector<StateId>& perm) {
  StateSet out(x.universe());
  for (StateId s : x.ids()) out.insert(perm[s]);
  return out;
}

} // namespace

TEST_CASE("predecessor operators on the toy perceptual game") {
  const auto t = fixtures::toy(false);
  const Game& g = t.pg.graph;
  auto ps = [&](StateId s, DfaState q) { return fixtures::pstate(t.pg, s, q); };
  const StateSet z0(5, {ps(3, 1), ps(4, 1)});
  CHECK(pre_exists(g, Player::attacker, z0) == StateSet(5, {ps(1, 0), ps(2, 0)}));
  const StateSet z1 = z0 | StateSet(5, {ps(1, 0), ps(2, 0)});
  // The self-looping target states qualify too; (0,0) is the only new state.
  CHECK(pre_forall(g, Player::defender, z1) == StateSet(5, {ps(0, 0), ps(3, 1), ps(4, 1)}));
  CHECK(pre_forall(g, Player::defender, z1) - z1 == StateSet(5, {ps(0, 0)}));
  CHECK(pre_exists(g, Player::attacker, StateSet(5)).empty());
  CHECK(pre_forall(g, Player::defender, StateSet(5, true)) == g.states_of(Player::defender));
  CHECK(pre_exists(g, Player::attacker, StateSet(5, true)) == g.states_of(Player::attacker));
}

TEST_CASE("vacuous quantification at action-less states") {
  GameBuilder b;
  b.add_state(Player::defender);
  b.add_state(Player::attacker);
  b.add_state(Player::attacker);
  b.add_edge(0, "x", 1);
  b.add_edge(1, "y", 0);
  const Game g = b.build();
  CHECK(pre_forall(g, Player::attacker, StateSet(3)) == StateSet(3, {2}));
  SolveResult r = solve_reach(g, StateSet(3), Player::defender);
  CHECK(r.win == StateSet(3, {2}));
  CHECK(r.levels.size() == 2);
  CHECK(r.levels[0].empty());
  CHECK(r.level_of[2] == 1);
  CHECK(oracle_solve(g, Objective::reach, StateSet(3), Player::defender) == r.win);
}

TEST_CASE("attractor on the toy perceptual game") {
  const auto t = fixtures::toy(false);
  const Game& g = t.pg.graph;
  auto ps = [&](StateId s, DfaState q) { return fixtures::pstate(t.pg, s, q); };
  const SolveResult r = solve_reach(g, t.pg.target, Player::attacker);
  CHECK(r.win == StateSet(5, true));
  REQUIRE(r.levels.size() == 3);
  CHECK(StateSet::from_ids(5, r.levels[0]) == StateSet(5, {ps(3, 1), ps(4, 1)}));
  CHECK(StateSet::from_ids(5, r.levels[1]) == StateSet(5, {ps(1, 0), ps(2, 0)}));
  CHECK(StateSet::from_ids(5, r.levels[2]) == StateSet(5, {ps(0, 0)}));

  const Strategy& sw = greedy_strategy(r);
  CHECK(names(g, sw, ps(1, 0)) == Names{"b1", "b2"});
  CHECK(names(g, sw, ps(2, 0)) == Names{"b1"});
  CHECK_FALSE(sw.defined(ps(3, 1)));
  CHECK_FALSE(sw.defined(ps(4, 1)));

  const Strategy asw = asw_approx(g, r.win);
  CHECK(names(g, asw, ps(1, 0)) == Names{"b1", "b2", "b3"});
  CHECK(names(g, asw, ps(2, 0)) == Names{"b1"});
  CHECK(oracle_solve(g, Objective::reach, t.pg.target, Player::attacker) == StateSet(5, true));
}

TEST_CASE("revised toy keeps the greedy strategy and widens the safe-action set") {
  const auto t = fixtures::toy(true);
  const Game& g = t.pg.graph;
  auto ps = [&](StateId s, DfaState q) { return fixtures::pstate(t.pg, s, q); };
  const SolveResult r = solve_reach(g, t.pg.target, Player::attacker);
  CHECK(names(g, greedy_strategy(r), ps(1, 0)) == Names{"b1", "b2"});
  CHECK(names(g, greedy_strategy(r), ps(2, 0)) == Names{"b1"});
  CHECK(names(g, asw_approx(g, r.win), ps(2, 0)) == Names{"b1", "b2"});
  CHECK(asw_approx(g, StateSet(g.size())).domain().empty());
}

TEST_CASE("trivial objectives") {
  Rng rng(1);
  RandomGameParams p;
  p.states = 30;
  const Game g = random_game(p, rng);
  CHECK(solve_reach(g, StateSet(30), Player::defender).win.empty());
  CHECK(solve_safe(g, StateSet(30, true), Player::defender).win == StateSet(30, true));
  CHECK(oracle_solve(g, Objective::reach, StateSet(30, true), Player::attacker) == StateSet(30, true));
  CHECK_THROWS_AS(greedy_strategy(solve_safe(g, StateSet(30, true), Player::defender)), std::invalid_argument);
}

TEST_CASE("solvers agree with the oracle on random games") {
  Rng rng(20240601);
  std::uniform_int_distribution<std::size_t> size(1, 1000);
  std::uniform_real_distribution<double> density(0.02, 0.6);
  for (int i = 0; i < 200; ++i) {
    RandomGameParams p;
    p.states = i < 150 ? size(rng) % 120 + 1 : size(rng);
    p.max_out = 1 + i % 4;
    p.dead_share = i % 5 == 0 ? 0.1 : 0.0;
    const Game g = random_game(p, rng);
    const StateSet target = random_subset(g.size(), density(rng), rng);
    const Player who = i % 2 ? Player::attacker : Player::defender;
    CAPTURE(i);

    const SolveResult reach = solve_reach(g, target, who);
    const SolveResult safe = solve_safe(g, target.complement(), opponent(who));
    REQUIRE(reach.win == oracle_solve(g, Objective::reach, target, who));
    REQUIRE(safe.win == oracle_solve(g, Objective::safe, target.complement(), opponent(who)));
    // Determinacy.
    CHECK_FALSE(reach.win.intersects(safe.win));
    CHECK((reach.win | safe.win) == StateSet(g.size(), true));

    // Level soundness and attractor monotonicity.
    std::size_t covered = 0;
    for (std::uint32_t k = 0; k < reach.levels.size(); ++k) {
      covered += reach.levels[k].size();
      for (StateId s : reach.levels[k]) {
        if (k == 0) {
          CHECK(target.contains(s));
          continue;
        }
        if (g.owner(s) == who) {
          REQUIRE(reach.strategy.defined(s));
          CHECK_FALSE(reach.strategy.at(s).empty());
          for (ActionId a : reach.strategy.at(s)) CHECK(reach.level_of[*g.successor(s, a)] < k);
        } else {
          for (const Edge& e : g.edges(s)) CHECK(reach.level_of[e.target] < k);
        }
      }
    }
    CHECK(covered == reach.win.count());

    // Safety closure.
    for (StateId s : safe.win.ids()) {
      if (g.owner(s) == opponent(who)) {
        for (ActionId a : safe.strategy.at(s)) CHECK(safe.win.contains(*g.successor(s, a)));
        CHECK_FALSE(safe.strategy.at(s).empty());
      } else {
        for (const Edge& e : g.edges(s)) CHECK(safe.win.contains(e.target));
      }
    }

    // Greedy actions are safe actions.
    const Strategy asw = asw_approx(g, reach.win, who);
    for (StateId s : reach.strategy.domain())
      for (ActionId a : reach.strategy.at(s))
        CHECK(std::binary_search(asw.at(s).begin(), asw.at(s).end(), a));
  }
}

TEST_CASE("results do not depend on state numbering") {
  Rng rng(77);
  for (int i = 0; i < 25; ++i) {
    RandomGameParams p;
    p.states = 200;
    const Game g = random_game(p, rng);
    const StateSet target = random_subset(g.size(), 0.1, rng);
    std::vector<StateId> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Game h = permuted(g, perm);
    const StateSet t2 = permute_set(target, perm);
    const SolveResult a = solve_reach(g, target, Player::defender);
    const SolveResult b = solve_reach(h, t2, Player::defender);
    CHECK(permute_set(a.win, perm) == b.win);
    for (StateId s = 0; s < g.size(); ++s) CHECK(a.level_of[s] == b.level_of[perm[s]]);
    CHECK(permute_set(solve_safe(g, target, Player::attacker).win, perm) ==
          solve_safe(h, t2, Player::attacker).win);
  }
}

TEST_CASE("oracle size cap") {
  Rng rng(2);
  RandomGameParams p;
  p.states = kOracleCap + 1;
  const Game g = random_game(p, rng);
  CHECK_THROWS_AS(oracle_solve(g, Objective::reach, StateSet(g.size()), Player::defender), CapExceeded);
}

TEST_CASE("uniform safe-action sampling reaches the perceived target") {
  const auto t = fixtures::toy(false);
  const Game& g = t.pg.graph;
  const SolveResult r = solve_reach(g, t.pg.target, Player::attacker);
  const Strategy asw = asw_approx(g, r.win);
  // P1 picks the successor with the highest level.
  const Policy stalling = [&](StateId s, Rng&) -> std::optional<ActionId> {
    std::optional<ActionId> best;
    std::uint32_t level = 0;
    for (const Edge& e : g.edges(s))
      if (!best || r.level_of[e.target] > level) {
        best = e.action;
        level = r.level_of[e.target];
      }
    return best;
  };
  const Policy uniform = uniform_policy(g, asw);
  Rng rng(99);
  const auto starts = r.win.ids();
  const std::size_t episodes = 10000, horizon = 10 * g.size();
  std::size_t reached = 0;
  for (std::size_t i = 0; i < episodes; ++i) {
    const StateId start = starts[i % starts.size()];
    const Episode ep = play(g, start, horizon, stalling, uniform,
                            [&](StateId s) { return t.pg.target.contains(s); }, rng);
    reached += t.pg.target.contains(ep.path.back()) ? 1 : 0;
  }
  CHECK(static_cast<double>(reached) / episodes >= 0.999);
}
