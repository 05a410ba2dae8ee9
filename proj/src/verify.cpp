#include "hypersynth/verify.hpp"

#include <map>
#include <sstream>

#include "hypersynth/errors.hpp"
#include "hypersynth/random_models.hpp"

namespace hypersynth {

namespace {

std::string ids_str(const StateSet& s, std::size_t limit = 12) {
  std::ostringstream os;
  os << "{";
  std::size_t shown = 0;
  for (StateId v : s.ids()) {
    if (shown == limit) {
      os << ",...";
      break;
    }
    os << (shown++ ? "," : "") << v;
  }
  os << "}";
  return os.str();
}

Check compare_sets(std::string name, const StateSet& solver, const StateSet& oracle) {
  Check c{std::move(name)};
  c.passed = solver == oracle;
  if (!c.passed)
    c.detail = "solver " + ids_str(solver) + " oracle " + ids_str(oracle) + " differ on " +
               ids_str((solver - oracle) | (oracle - solver));
  else
    c.detail = std::to_string(solver.count()) + " states";
  return c;
}

Check check_hts_definition(const LabeledArena& la, const ProductAutomaton& prod, const Dfa& a2,
                           const Hts& hts) {
  Check c{"hts matches its definition"};
  auto fail = [&c](std::string why) {
    if (c.passed) c.detail = std::move(why);
    c.passed = false;
  };
  const Arena& arena = la.arena;
  const std::size_t n = hts.graph.size();
  if (hts.tuples.size() != n) {
    fail("tuple count differs from state count");
    return c;
  }
  std::map<HtsState, StateId> index;
  for (StateId v = 0; v < n; ++v) {
    const auto& t = hts.tuples[v];
    if (t.s >= arena.graph.size() || t.q >= prod.size() || t.q2 >= a2.size()) {
      fail("state " + std::to_string(v) + " has an out-of-range tuple");
      return c;
    }
    if (!index.emplace(t, v).second) fail("tuple of state " + std::to_string(v) + " repeats");
  }
  std::vector<Symbol> l1, l2;
  for (StateId s = 0; s < arena.graph.size(); ++s) {
    l1.push_back(prod.alphabet().translate(la.labeling.p1[s], arena.props));
    l2.push_back(a2.alphabet().translate(la.labeling.p2[s], arena.props));
  }
  const StateId s0 = arena.initial;
  const HtsState v0{s0, prod.next(prod.initial(), l1[s0]), a2.next(a2.initial(), l2[s0])};
  if (hts.initial >= n || hts.tuples[hts.initial] != v0) fail("initial state is not v0");

  for (StateId v = 0; v < n; ++v) {
    const auto& t = hts.tuples[v];
    const std::string at = "state " + std::to_string(v);
    if (hts.graph.owner(v) != arena.graph.owner(t.s)) fail(at + " has the wrong owner");
    if (hts.f1_cosafe.contains(v) != prod.in_f1(t.q)) fail(at + " has a wrong f1_cosafe flag");
    if (hts.f1_safe.contains(v) == prod.in_f2(t.q)) fail(at + " has a wrong f1_safe flag");
    if (hts.f2.contains(v) != a2.is_accepting(t.q2)) fail(at + " has a wrong f2 flag");
    if (hts.graph.edges(v).size() != arena.graph.edges(t.s).size())
      fail(at + " has " + std::to_string(hts.graph.edges(v).size()) + " edges, expected " +
           std::to_string(arena.graph.edges(t.s).size()));
    for (const Edge& e : arena.graph.edges(t.s)) {
      const std::string& name = arena.graph.action_name(e.action);
      const HtsState want{e.target, prod.next(t.q, l1[e.target]), a2.next(t.q2, l2[e.target])};
      auto a = hts.graph.actions().find(name);
      auto got = a ? hts.graph.successor(v, *a) : std::nullopt;
      if (!got) {
        fail(at + " lacks action " + name);
        continue;
      }
      if (hts.tuples[*got] != want) fail(at + " --" + name + "-> leads to the wrong tuple");
    }
  }
  // Only reachable states are kept.
  std::vector<char> seen(n, 0);
  std::vector<StateId> stack;
  if (hts.initial < n) {
    seen[hts.initial] = 1;
    stack.push_back(hts.initial);
  }
  while (!stack.empty()) {
    StateId v = stack.back();
    stack.pop_back();
    for (const Edge& e : hts.graph.edges(v))
      if (!seen[e.target]) {
        seen[e.target] = 1;
        stack.push_back(e.target);
      }
  }
  for (StateId v = 0; v < n; ++v)
    if (!seen[v]) fail("state " + std::to_string(v) + " is unreachable");
  if (c.passed) c.detail = std::to_string(n) + " states, " + std::to_string(hts.graph.edge_count()) + " edges";
  return c;
}

Check check_level_soundness(const Game& g, const SolveResult& r) {
  Check c{"perceptual attractor level soundness"};
  for (std::uint32_t k = 1; k < r.levels.size() && c.passed; ++k) {
    for (StateId s : r.levels[k]) {
      if (g.owner(s) == r.player) {
        if (!r.strategy.defined(s) || r.strategy.at(s).empty()) {
          c.passed = false;
          c.detail = "state " + std::to_string(s) + " has no level-decreasing action";
          break;
        }
        for (ActionId a : r.strategy.at(s))
          if (r.level_of[*g.successor(s, a)] >= k) {
            c.passed = false;
            c.detail = "strategy action at state " + std::to_string(s) + " does not decrease the level";
          }
      } else {
        for (const Edge& e : g.edges(s))
          if (r.level_of[e.target] >= k) {
            c.passed = false;
            c.detail = "opponent escapes level at state " + std::to_string(s);
          }
      }
    }
  }
  return c;
}

Check check_safety_closure(const std::string& mode, const Game& g2, const DeceptionReport& r) {
  Check c{mode + ": safe region closed under pi1_safe"};
  for (StateId v : r.win1_safe.ids()) {
    if (g2.owner(v) == Player::defender) {
      if (!r.pi1_safe.defined(v) || r.pi1_safe.at(v).empty()) {
        c.passed = false;
        c.detail = "P1 state " + std::to_string(v) + " has no safe action";
        break;
      }
      for (ActionId a : r.pi1_safe.at(v))
        if (!r.win1_safe.contains(*g2.successor(v, a))) c.passed = false;
    } else {
      for (const Edge& e : g2.edges(v))
        if (!r.win1_safe.contains(e.target)) c.passed = false;
    }
    if (!c.passed) {
      if (c.detail.empty()) c.detail = "play leaves the region from state " + std::to_string(v);
      break;
    }
  }
  return c;
}

} // namespace

std::vector<Check> run_checks(const VerifyInputs& in) {
  std::vector<Check> out;
  const LabeledArena& la = *in.arena;

  Check determinism{"product determinism under the mask"};
  std::optional<ProductAutomaton> prod;
  try {
    prod = product(*in.a1, *in.a2, *in.mask);
    determinism.detail = std::to_string(prod->size()) + " product states";
  } catch (const ValidationError& e) {
    determinism.passed = false;
    determinism.detail = e.what();
  }
  out.push_back(determinism);
  if (!prod) return out;

  Check conf{"L2 equals mask applied to L1", true, true};
  if (auto bad = la.labeling.conformance_violation(*in.mask, la.arena.props))
    conf.detail = "differs at arena state " + std::to_string(*bad) + " (perceived labels come from the p2 rules)";
  else
    conf.detail = "holds on every arena state";
  out.push_back(conf);

  const Hts hts = in.hts ? *in.hts : build_hts(la, *prod, *in.a2);
  out.push_back(check_hts_definition(la, *prod, *in.a2, hts));
  if (!out.back().passed) return out;

  const PerceptualGame pg = build_perceptual_game(la, *in.a2);
  {
    Check c{"projection coherence"};
    try {
      const auto proj = project_to_perceptual(hts, pg);
      for (StateId v = 0; v < hts.graph.size() && c.passed; ++v)
        for (const Edge& e : hts.graph.edges(v))
          if (pg.graph.successor(proj[v], e.action) != proj[e.target]) {
            c.passed = false;
            c.detail = "edge from state " + std::to_string(v) + " has no perceptual counterpart";
            break;
          }
    } catch (const ValidationError& e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.push_back(c);
    if (!c.passed) return out;
  }

  const SolveResult win2 = solve_reach(pg.graph, pg.target, Player::attacker);
  out.push_back(check_level_soundness(pg.graph, win2));
  const bool oracle_ok = pg.graph.size() <= in.oracle_cap && hts.graph.size() <= in.oracle_cap;
  if (oracle_ok) {
    out.push_back(compare_sets("oracle: perceptual reach for P2", win2.win,
                               oracle_solve(pg.graph, Objective::reach, pg.target, Player::attacker,
                                            in.oracle_cap)));
    const StateSet safe1 = oracle_solve(pg.graph, Objective::safe, pg.target.complement(),
                                        Player::defender, in.oracle_cap);
    Check det{"determinacy on the perceptual game"};
    det.passed = !win2.win.intersects(safe1) && (win2.win | safe1).count() == pg.graph.size();
    out.push_back(det);
  } else {
    out.push_back({"oracle comparisons", true, true,
                   "skipped: more than " + std::to_string(in.oracle_cap) + " states"});
  }

  std::map<Mode, DeceptionReport> reports;
  for (Mode mode : {Mode::greedy, Mode::randomized}) {
    const std::string name = to_string(mode);
    const DeceptionReport r = synthesize_deceptive(hts, pg, mode, in.options);
    const Game g2 = attacker_induced_hts(hts, pg, mode, in.options);
    out.push_back(check_safety_closure(name, g2, r));
    Check nested{name + ": win1_cosafe within win1_safe"};
    nested.passed = r.win1_cosafe.is_subset_of(r.win1_safe);
    out.push_back(nested);
    if (oracle_ok) {
      out.push_back(compare_sets("oracle: " + name + " win1_safe", r.win1_safe,
                                 oracle_solve(g2, Objective::safe, hts.f1_safe, Player::defender,
                                              in.oracle_cap)));
      const SubGame sub = restrict_to(induce(g2, Player::defender, r.pi1_safe), r.win1_safe);
      StateSet target(sub.game.size());
      for (StateId i = 0; i < sub.game.size(); ++i)
        if (hts.f1_cosafe.contains(sub.to_parent[i])) target.insert(i);
      const StateSet sub_win =
          oracle_solve(sub.game, Objective::reach, target, Player::defender, in.oracle_cap);
      StateSet lifted(hts.graph.size());
      for (StateId i : sub_win.ids()) lifted.insert(sub.to_parent[i]);
      out.push_back(compare_sets("oracle: " + name + " win1_cosafe", r.win1_cosafe, lifted));
    }
    Check rt{name + ": report JSON round-trip"};
    try {
      rt.passed = report_to_json(hts.graph, report_from_json(hts.graph, report_to_json(hts.graph, r))) ==
                  report_to_json(hts.graph, r);
    } catch (const std::exception& e) {
      rt.passed = false;
      rt.detail = e.what();
    }
    out.push_back(rt);
    reports.emplace(mode, r);
  }
  const auto& g = reports.at(Mode::greedy);
  const auto& rnd = reports.at(Mode::randomized);
  Check contain{"randomized regions within greedy regions"};
  contain.passed = rnd.win1_safe.is_subset_of(g.win1_safe) && rnd.win1_cosafe.is_subset_of(g.win1_cosafe);
  out.push_back(contain);

  Check rt{"HTS JSON round-trip"};
  rt.passed = hts_to_json(hts_from_json(hts_to_json(hts))) == hts_to_json(hts);
  out.push_back(rt);
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed && !c.informational) return false;
  return true;
}

std::vector<Check> random_corpus_checks(unsigned long long seed, std::size_t count) {
  std::vector<Check> out;
  Rng rng(seed);
  const Alphabet ab({"d", "t"});
  const Dfa a1 = eventually_dfa(ab, "d"), a2 = eventually_dfa(ab, "t");
  const Mask mask = hide_mask(ab, "d");
  std::uniform_int_distribution<std::size_t> size(4, 40);
  for (std::size_t i = 0; i < count; ++i) {
    const LabeledArena la = random_arena(size(rng), 3, rng);
    VerifyInputs in;
    in.arena = &la;
    in.a1 = &a1;
    in.a2 = &a2;
    in.mask = &mask;
    Check c{"random hypergame " + std::to_string(i)};
    for (const auto& sub : run_checks(in)) {
      if (!sub.passed && !sub.informational) {
        c.passed = false;
        c.detail = sub.name + ": " + sub.detail;
        break;
      }
    }
    out.push_back(c);
  }
  return out;
}

} // namespace hypersynth
