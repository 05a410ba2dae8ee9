#include <doctest.h>

#include <deque>
#include <map>
#include <random>
#include <set>

#include "hypersynth/errors.hpp"
#include "hypersynth/hypergame.hpp"
#include "support.hpp"

using namespace hypersynth;

TEST_CASE("toy hypergame transition system") {
  const auto t = fixtures::toy(false);
  const Hts& h = t.hts;
  REQUIRE(h.graph.size() == 5);
  auto tuple = [&](StateId s, DfaState q1, DfaState q2star, DfaState q2) {
    return HtsState{s, t.prod.index(q1, q2star), q2};
  };
  CHECK(h.tuples[0] == tuple(0, 0, 0, 0));
  CHECK(h.tuples[1] == tuple(1, 0, 0, 0));
  CHECK(h.tuples[2] == tuple(2, 0, 0, 0));
  CHECK(h.tuples[3] == tuple(3, 0, 1, 1));
  CHECK(h.tuples[4] == tuple(4, 1, 0, 1));
  CHECK(describe_hts_state(h, &t.prod, 4) == "(4,(1,0),1)");

  auto succ = [&](StateId v, const char* a) { return h.graph.successor(v, fixtures::act(h.graph, a)); };
  CHECK(succ(0, "a1") == 1U);
  CHECK(succ(0, "a2") == 2U);
  CHECK(succ(1, "b1") == 3U);
  CHECK(succ(1, "b2") == 4U);
  CHECK(succ(1, "b3") == 0U);
  CHECK(succ(2, "b1") == 4U);
  CHECK(succ(3, "stay") == 3U);
  CHECK(succ(4, "stay") == 4U);
  CHECK(h.graph.edge_count() == 8);

  CHECK(h.f2 == StateSet(5, {3, 4}));
  CHECK(h.f1_safe == StateSet(5, {0, 1, 2, 4}));
  CHECK(h.f1_cosafe == StateSet(5, {4}));
  // The decoy state satisfies both the safety objective and the perceived target.
  CHECK((h.f1_safe & h.f2) == StateSet(5, {4}));
}

TEST_CASE("toy perceptual game") {
  const auto t = fixtures::toy(false);
  const PerceptualGame& pg = t.pg;
  std::set<std::pair<StateId, DfaState>> states;
  for (const auto& p : pg.tuples) states.emplace(p.s, p.q2);
  CHECK(states == std::set<std::pair<StateId, DfaState>>{{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 1}});
  CHECK(pg.tuples[pg.initial] == PerceptualState{0, 0});
  CHECK(pg.target == StateSet(5, {fixtures::pstate(pg, 3, 1), fixtures::pstate(pg, 4, 1)}));
}

TEST_CASE("attacker automaton without accepting states gives an empty target") {
  const auto t = fixtures::toy(false);
  Dfa never(t.a2.alphabet(), 1, 0, {}, AcceptType::cosafe);
  for (Symbol s : never.alphabet().symbols()) never.set_transition(0, s, 0);
  CHECK(build_perceptual_game(t.arena, never).target.empty());
}

TEST_CASE("without misperception the two attacker trackers coincide") {
  auto e = fixtures::experiment(1);
  e.arena.labeling.p2 = e.arena.labeling.p1;
  const auto prod = product(e.a1, e.a2, Mask::identity(e.a1.alphabet()));
  const Hts h = build_hts(e.arena, prod, e.a2);
  for (const auto& t : h.tuples) CHECK(t.q2 == prod.second(t.q));
}

TEST_CASE("word and projection coherence along random paths") {
  const auto e = fixtures::experiment(1);
  const auto prod = product(e.a1, e.a2, e.mask);
  const Hts h = build_hts(e.arena, prod, e.a2);
  const PerceptualGame pg = build_perceptual_game(e.arena, e.a2);
  const auto& lab = e.arena.labeling;
  std::mt19937_64 rng(5);
  for (int episode = 0; episode < 200; ++episode) {
    StateId v = h.initial;
    std::vector<Symbol> w1{lab.p1[h.tuples[v].s]}, w2{lab.p2[h.tuples[v].s]};
    StateId p = pg.initial;
    for (int step = 0; step < 30; ++step) {
      const auto t = h.tuples[v];
      REQUIRE(pg.tuples[p] == PerceptualState{t.s, t.q2});
      const auto q1_run = run(e.a1, w1);
      const auto q2_run = run(e.a2, w2);
      // The product's first coordinate tracks A1 on the true labels.
      CHECK(prod.first(t.q) == q1_run.back());
      CHECK(t.q2 == q2_run.back());
      auto es = h.graph.edges(v);
      REQUIRE_FALSE(es.empty());
      const Edge edge = es[std::uniform_int_distribution<std::size_t>(0, es.size() - 1)(rng)];
      const auto np = pg.graph.successor(p, edge.action);
      REQUIRE(np);
      v = edge.target;
      p = *np;
      w1.push_back(lab.p1[h.tuples[v].s]);
      w2.push_back(lab.p2[h.tuples[v].s]);
    }
  }
}

TEST_CASE("perceptual game size matches an independent reachability search") {
  const auto e = fixtures::experiment(1);
  const PerceptualGame pg = build_perceptual_game(e.arena, e.a2);
  const Arena& a = e.arena.arena;
  std::map<std::pair<StateId, DfaState>, bool> seen;
  std::deque<std::pair<StateId, DfaState>> queue;
  auto q2_after = [&](DfaState q, StateId s) {
    return e.a2.next(q, e.a2.alphabet().translate(e.arena.labeling.p2[s], a.props));
  };
  queue.emplace_back(a.initial, q2_after(e.a2.initial(), a.initial));
  seen[queue.front()] = true;
  std::size_t edges = 0, targets = 0;
  while (!queue.empty()) {
    auto [s, q] = queue.front();
    queue.pop_front();
    targets += e.a2.is_accepting(q) ? 1 : 0;
    for (const Edge& edge : a.graph.edges(s)) {
      ++edges;
      std::pair<StateId, DfaState> n{edge.target, q2_after(q, edge.target)};
      if (!seen[n]) {
        seen[n] = true;
        queue.push_back(n);
      }
    }
  }
  CHECK(pg.graph.size() == seen.size());
  CHECK(pg.graph.edge_count() == edges);
  CHECK(pg.target.count() == targets);
}

TEST_CASE("HTS export round-trips and keeps objective flags") {
  const auto t = fixtures::toy(true);
  const auto j = hts_to_json(t.hts);
  const Hts back = hts_from_json(j);
  CHECK(hts_to_json(back) == j);
  CHECK(back.f1_cosafe == t.hts.f1_cosafe);
  CHECK(back.f1_safe == t.hts.f1_safe);
  CHECK(back.f2 == t.hts.f2);
  const auto dot = hts_to_dot(t.hts);
  CHECK(dot.find("lightblue") != std::string::npos);
  CHECK(dot.find("palegreen") != std::string::npos);
}

TEST_CASE("labels outside the automaton alphabet are rejected") {
  auto t = fixtures::toy(false);
  t.arena.arena.props = Alphabet({"d", "t", "x"});
  t.arena.labeling.p1[3] = t.arena.arena.props.symbol({"x"});
  CHECK_THROWS_AS(build_hts(t.arena, t.prod, t.a2), ValidationError);
}

TEST_CASE("HTS state cap") {
  const auto e = fixtures::experiment(1);
  const auto prod = product(e.a1, e.a2, e.mask);
  CHECK_THROWS_AS(build_hts(e.arena, prod, e.a2, 50), CapExceeded);
}
