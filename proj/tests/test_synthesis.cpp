#include <doctest.h>

#include <deque>

#include "hypersynth/errors.hpp"
#include "hypersynth/random_models.hpp"
#include "hypersynth/simulate.hpp"
#include "hypersynth/synthesis.hpp"
#include "hypersynth/verify.hpp"
#include "support.hpp"

using namespace hypersynth;

namespace {

using Names = std::vector<std::string>;

bool same_structure(const Game& a, const Game& b) {
  if (a.size() != b.size()) return false;
  for (StateId s = 0; s < a.size(); ++s) {
    auto x = a.edges(s), y = b.edges(s);
    if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
  }
  return true;
}

StateSet embedded_region(const Pipeline& p, const StateSet& truthful_win) {
  StateSet out(p.hts.graph.size());
  const auto map = embed_into_truthful(p.hts, p.truthful_hts, p.prod);
  for (StateId v = 0; v < map.size(); ++v)
    if (map[v] && truthful_win.contains(*map[v])) out.insert(v);
  return out;
}

} // namespace

TEST_CASE("inducing with every enabled action changes nothing") {
  const auto t = fixtures::toy(true);
  Strategy all(t.hts.graph.size());
  for (StateId v = 0; v < t.hts.graph.size(); ++v) {
    std::vector<ActionId> acts;
    for (const Edge& e : t.hts.graph.edges(v)) acts.push_back(e.action);
    all.set(v, acts);
  }
  CHECK(same_structure(induce(t.hts.graph, Player::attacker, all), t.hts.graph));
  CHECK(same_structure(induce(t.hts.graph, Player::defender, all), t.hts.graph));
  CHECK(same_structure(induce(t.hts.graph, Player::attacker, Strategy(t.hts.graph.size())), t.hts.graph));
}

TEST_CASE("inducing the revised toy by the attacker strategies") {
  const auto t = fixtures::toy(true);
  const Game& h = t.hts.graph;
  const Game greedy = attacker_induced_hts(t.hts, t.pg, Mode::greedy);
  CHECK(greedy.edge_count() == h.edge_count() - 2);
  CHECK_FALSE(greedy.has_action(1, fixtures::act(h, "b3")));
  CHECK_FALSE(greedy.has_action(2, fixtures::act(h, "b2")));
  CHECK(greedy.has_action(1, fixtures::act(h, "b1")));
  CHECK(greedy.has_action(1, fixtures::act(h, "b2")));
  CHECK(greedy.has_action(2, fixtures::act(h, "b1")));
  CHECK(same_structure(attacker_induced_hts(t.hts, t.pg, Mode::randomized), h));
}

TEST_CASE("inducing with an action that is not enabled fails") {
  const auto t = fixtures::toy(false);
  Strategy bad(t.hts.graph.size());
  bad.set(2, {fixtures::act(t.hts.graph, "b3")});
  CHECK_THROWS_AS(induce(t.hts.graph, Player::attacker, bad), ValidationError);
}

TEST_CASE("revised toy against the greedy attacker") {
  const auto t = fixtures::toy(true);
  const DeceptionReport r = synthesize_deceptive(t.hts, t.pg, Mode::greedy);
  CHECK(r.win1_safe == StateSet(5, {0, 2, 4}));
  CHECK(r.pi1_safe.action_names(t.hts.graph, 0) == Names{"a2"});
  CHECK(r.win1_cosafe.contains(0));
  CHECK(r.win1_cosafe == StateSet(5, {0, 2, 4}));
  CHECK(r.initial_in_safe);
  CHECK(r.initial_in_cosafe);
  CHECK(r.dead_p2_states == 0);
}

TEST_CASE("revised toy against the randomized attacker") {
  const auto t = fixtures::toy(true);
  const DeceptionReport r = synthesize_deceptive(t.hts, t.pg, Mode::randomized);
  // v4 only loops inside the safe set, so it stays winning; the initial state is lost.
  CHECK(r.win1_safe == StateSet(5, {4}));
  CHECK(r.win1_cosafe == StateSet(5, {4}));
  CHECK_FALSE(r.initial_in_safe);
  CHECK_FALSE(r.initial_in_cosafe);
}

TEST_CASE("trivial objectives give the whole or an empty region") {
  auto t = fixtures::toy(true);
  t.hts.f1_safe = StateSet(5, true);
  t.hts.f1_cosafe = StateSet(5);
  for (Mode m : {Mode::greedy, Mode::randomized}) {
    const DeceptionReport r = synthesize_deceptive(t.hts, t.pg, m);
    CHECK(r.win1_safe == StateSet(5, true));
    CHECK(r.win1_cosafe.empty());
  }
}

TEST_CASE("comparison on the toy examples") {
  const auto t = fixtures::toy(true);
  const Comparison c = compare_modes(t.arena, t.a1, t.a2, t.mask);
  REQUIRE(c.rows.size() == 3);
  CHECK(c.rows[0].mode == Mode::none);
  CHECK(c.rows[1].initial_in_safe);
  CHECK(c.rows[1].initial_in_cosafe);
  CHECK_FALSE(c.rows[2].initial_in_safe);
  CHECK_FALSE(c.rows[2].initial_in_cosafe);
  CHECK(c.rows[0].embedded_safe.has_value());
  const std::string table = comparison_table(c);
  CHECK(table.find("No Misperception") != std::string::npos);
  CHECK(table.find("3, win") != std::string::npos);
}

TEST_CASE("without misperception all three rows agree") {
  auto t = fixtures::toy(false);
  t.arena.labeling.p2 = t.arena.labeling.p1;
  const Comparison c = compare_modes(t.arena, t.a1, t.a2, Mask::identity(t.a1.alphabet()));
  for (const auto& r : c.rows) {
    CHECK(r.win1_safe == c.rows[0].win1_safe);
    CHECK(r.win1_cosafe == c.rows[0].win1_cosafe);
  }
  CHECK(c.rows[0].embedded_safe == c.rows[0].win1_safe.count());
}

TEST_CASE("containment and nesting on the toys and on random hypergames") {
  auto check = [](const Hts& h, const PerceptualGame& pg) {
    const DeceptionReport g = synthesize_deceptive(h, pg, Mode::greedy);
    const DeceptionReport r = synthesize_deceptive(h, pg, Mode::randomized);
    CHECK(r.win1_safe.is_subset_of(g.win1_safe));
    CHECK(r.win1_cosafe.is_subset_of(g.win1_cosafe));
    CHECK(g.win1_cosafe.is_subset_of(g.win1_safe));
    CHECK(r.win1_cosafe.is_subset_of(r.win1_safe));
  };
  for (bool revised : {false, true}) {
    const auto t = fixtures::toy(revised);
    check(t.hts, t.pg);
  }
  Rng rng(31337);
  const Alphabet ab({"d", "t"});
  const Dfa a1 = eventually_dfa(ab, "d"), a2 = eventually_dfa(ab, "t");
  const auto prod = product(a1, a2, hide_mask(ab, "d"));
  for (int i = 0; i < 50; ++i) {
    const LabeledArena la = random_arena(8 + i * 4, 3, rng);
    check(build_hts(la, prod, a2), build_perceptual_game(la, a2));
  }
}

TEST_CASE("restricting the attacker outside its perceived win helps the defender") {
  const auto e = fixtures::experiment(1);
  const Pipeline p = build_pipeline(e.arena, e.a1, e.a2, e.mask);
  for (Mode m : {Mode::greedy, Mode::randomized}) {
    const auto strict = synthesize_deceptive(p.hts, p.pg, m, {OutsideWin2::no_actions});
    const auto loose = synthesize_deceptive(p.hts, p.pg, m, {OutsideWin2::all_actions});
    CHECK(loose.win1_safe.is_subset_of(strict.win1_safe));
  }
}

TEST_CASE("first experiment: rows checked against the oracle") {
  const auto e = fixtures::experiment(1);
  VerifyInputs in;
  in.arena = &e.arena;
  in.a1 = &e.a1;
  in.a2 = &e.a2;
  in.mask = &e.mask;
  for (const auto& c : run_checks(in)) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK((c.passed || c.informational));
  }
  const Comparison c = compare_modes(e.arena, e.a1, e.a2, e.mask);
  CHECK_FALSE(c.rows[0].initial_in_safe);
  CHECK(c.rows[1].initial_in_safe);
  CHECK(c.rows[1].initial_in_cosafe);
  CHECK_FALSE(c.rows[2].initial_in_safe);
}

TEST_CASE("deceptive regions contain the no-misperception regions") {
  for (int which : {1, 2}) {
    CAPTURE(which);
    const auto e = fixtures::experiment(which);
    const Pipeline p = build_pipeline(e.arena, e.a1, e.a2, e.mask);
    const Comparison c = compare_modes(p);
    CHECK(embedded_region(p, c.rows[0].win1_safe).is_subset_of(c.rows[1].win1_safe));
    CHECK(embedded_region(p, c.rows[0].win1_cosafe).is_subset_of(c.rows[1].win1_cosafe));
    CHECK(*c.rows[0].embedded_safe == embedded_region(p, c.rows[0].win1_safe).count());
  }
}

TEST_CASE("greedy attacker at its perceived target has no moves") {
  const auto e = fixtures::experiment(2);
  const Pipeline p = build_pipeline(e.arena, e.a1, e.a2, e.mask);
  const DeceptionReport g = synthesize_deceptive(p.hts, p.pg, Mode::greedy);
  std::size_t expected = 0;
  const auto proj = project_to_perceptual(p.hts, p.pg);
  const SolveResult win2 = solve_reach(p.pg.graph, p.pg.target, Player::attacker);
  for (StateId v = 0; v < p.hts.graph.size(); ++v)
    if (p.hts.graph.owner(v) == Player::attacker && win2.level_of[proj[v]] == 0) ++expected;
  CHECK(g.dead_p2_states == expected);
  CHECK(expected > 0);
  CHECK(synthesize_deceptive(p.hts, p.pg, Mode::randomized).dead_p2_states == 0);
}

TEST_CASE("report JSON round-trip") {
  const auto t = fixtures::toy(true);
  for (Mode m : {Mode::greedy, Mode::randomized}) {
    const auto r = synthesize_deceptive(t.hts, t.pg, m);
    const auto j = report_to_json(t.hts.graph, r);
    CHECK(report_to_json(t.hts.graph, report_from_json(t.hts.graph, j)) == j);
  }
  CHECK_THROWS_AS(mode_from_string("cautious"), ValidationError);
  CHECK_THROWS_AS(outside_win2_from_string("some"), ValidationError);
}

TEST_CASE("play under pi1_safe stays inside win1_safe") {
  const auto e = fixtures::experiment(1);
  const Pipeline p = build_pipeline(e.arena, e.a1, e.a2, e.mask);
  for (Mode m : {Mode::greedy, Mode::randomized}) {
    const DeceptionReport r = synthesize_deceptive(p.hts, p.pg, m);
    const Game g2 = induce(attacker_induced_hts(p.hts, p.pg, m), Player::defender, r.pi1_safe);
    std::vector<char> seen(g2.size(), 0);
    std::deque<StateId> queue;
    for (StateId v : r.win1_safe.ids()) {
      seen[v] = 1;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      const StateId v = queue.front();
      queue.pop_front();
      for (const Edge& edge : g2.edges(v)) {
        REQUIRE(r.win1_safe.contains(edge.target));
        if (!seen[edge.target]) {
          seen[edge.target] = 1;
          queue.push_back(edge.target);
        }
      }
    }
  }
}
