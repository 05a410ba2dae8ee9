#include "hypersynth/synthesis.hpp"

#include <algorithm>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hypersynth/errors.hpp"
#include "hypersynth/json_io.hpp"

namespace hypersynth {

Game induce(const Game& game, Player player, const Strategy& strategy) {
  GameBuilder b(game.action_table());
  b.reserve(game.size(), game.edge_count());
  for (StateId s = 0; s < game.size(); ++s) b.add_state(game.owner(s));
  for (StateId s = 0; s < game.size(); ++s) {
    if (game.owner(s) == player && strategy.defined(s)) {
      for (ActionId a : strategy.at(s)) {
        auto t = game.successor(s, a);
        if (!t)
          throw ValidationError("strategy allows action " + game.action_name(a) +
                                " which is not enabled at state " + std::to_string(s));
        b.add_edge(s, a, *t);
      }
    } else {
      for (const Edge& e : game.edges(s)) b.add_edge(s, e.action, e.target);
    }
  }
  return b.build();
}

std::string to_string(Mode m) {
  switch (m) {
  case Mode::none: return "none";
  case Mode::greedy: return "greedy";
  case Mode::randomized: return "randomized";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "none") return Mode::none;
  if (s == "greedy") return Mode::greedy;
  if (s == "randomized") return Mode::randomized;
  throw ValidationError("unknown mode '" + s + "'");
}

std::string to_string(OutsideWin2 o) {
  return o == OutsideWin2::no_actions ? "no-actions" : "all-actions";
}

OutsideWin2 outside_win2_from_string(const std::string& s) {
  if (s == "no-actions") return OutsideWin2::no_actions;
  if (s == "all-actions") return OutsideWin2::all_actions;
  throw ValidationError("outside-win2 must be no-actions or all-actions, got '" + s + "'");
}

AttackerModel attacker_model(const PerceptualGame& pg, Mode mode) {
  AttackerModel m;
  m.perceptual = solve_reach(pg.graph, pg.target, Player::attacker);
  m.pi2 = mode == Mode::greedy ? greedy_strategy(m.perceptual)
                               : asw_approx(pg.graph, m.perceptual.win, Player::attacker);
  return m;
}

Strategy lift_attacker_strategy(const Hts& hts, const PerceptualGame& pg, const AttackerModel& model,
                                OutsideWin2 outside, std::size_t* dead) {
  const auto proj = project_to_perceptual(hts, pg);
  std::size_t dead_count = 0;
  Strategy lifted(hts.graph.size());
  for (StateId v = 0; v < hts.graph.size(); ++v) {
    if (hts.graph.owner(v) != Player::attacker) continue;
    const StateId p = proj[v];
    if (!model.perceptual.win.contains(p)) {
      if (outside == OutsideWin2::no_actions) lifted.set(v, {});
      continue;
    }
    if (model.pi2.defined(p) && !model.pi2.at(p).empty()) {
      lifted.set(v, model.pi2.at(p));
    } else {
      lifted.set(v, {});
      ++dead_count;
    }
  }
  if (dead) *dead = dead_count;
  return lifted;
}

Game attacker_induced_hts(const Hts& hts, const PerceptualGame& pg, Mode mode,
                          const SynthesisOptions& options, std::size_t* dead) {
  const AttackerModel model = attacker_model(pg, mode);
  return induce(hts.graph, Player::attacker,
                lift_attacker_strategy(hts, pg, model, options.outside_win2, dead));
}

DeceptionReport synthesize_deceptive(const Hts& hts, const PerceptualGame& pg, Mode mode,
                                     const SynthesisOptions& options) {
  DeceptionReport r;
  r.mode = mode;
  r.hts_states = hts.graph.size();

  const AttackerModel model = attacker_model(pg, mode);
  r.win2 = model.perceptual.win;
  const Game g2 = induce(hts.graph, Player::attacker,
                         lift_attacker_strategy(hts, pg, model, options.outside_win2, &r.dead_p2_states));

  SolveResult safe = solve_safe(g2, hts.f1_safe, Player::defender);
  r.win1_safe = safe.win;
  r.pi1_safe = safe.strategy;

  const Game g12 = induce(g2, Player::defender, r.pi1_safe);
  const SubGame sub = restrict_to(g12, r.win1_safe);
  StateSet target(sub.game.size());
  for (StateId i = 0; i < sub.to_parent.size(); ++i)
    if (hts.f1_cosafe.contains(sub.to_parent[i])) target.insert(i);
  SolveResult reach = solve_reach(sub.game, target, Player::defender);

  r.win1_cosafe = StateSet(hts.graph.size());
  r.pi1_cosafe = Strategy(hts.graph.size());
  for (StateId i : reach.win.ids()) {
    const StateId v = sub.to_parent[i];
    r.win1_cosafe.insert(v);
    if (reach.strategy.defined(i)) r.pi1_cosafe.set(v, reach.strategy.at(i));
  }
  r.initial_in_safe = r.win1_safe.contains(hts.initial);
  r.initial_in_cosafe = r.win1_cosafe.contains(hts.initial);
  return r;
}

std::vector<std::optional<StateId>> embed_into_truthful(const Hts& deceptive, const Hts& truthful,
                                                        const ProductAutomaton& prod) {
  std::map<HtsState, StateId> index;
  for (StateId v = 0; v < truthful.tuples.size(); ++v) index.emplace(truthful.tuples[v], v);
  std::vector<std::optional<StateId>> out(deceptive.tuples.size());
  for (StateId v = 0; v < deceptive.tuples.size(); ++v) {
    const auto& t = deceptive.tuples[v];
    auto it = index.find(HtsState{t.s, t.q, prod.second(t.q)});
    if (it != index.end()) out[v] = it->second;
  }
  return out;
}

Pipeline build_pipeline(const LabeledArena& la, const Dfa& a1, const Dfa& a2, const Mask& mask,
                        std::size_t cap) {
  LabeledArena truthful = la;
  truthful.labeling.p2 = truthful.labeling.p1;
  Pipeline p{product(a1, a2, mask), {}, {}, product(a1, a2, Mask::identity(a1.alphabet())), {}, {}};
  p.hts = build_hts(la, p.prod, a2, cap);
  p.pg = build_perceptual_game(la, a2, cap);
  p.truthful_hts = build_hts(truthful, p.truthful_prod, a2, cap);
  p.truthful_pg = build_perceptual_game(truthful, a2, cap);
  return p;
}

Comparison compare_modes(const Pipeline& p, const SynthesisOptions& options) {
  auto none = std::async(std::launch::async, [&] {
    return synthesize_deceptive(p.truthful_hts, p.truthful_pg, Mode::none, options);
  });
  auto greedy = std::async(std::launch::async,
                           [&] { return synthesize_deceptive(p.hts, p.pg, Mode::greedy, options); });
  DeceptionReport randomized = synthesize_deceptive(p.hts, p.pg, Mode::randomized, options);

  Comparison c;
  c.hts_states = p.hts.graph.size();
  c.truthful_hts_states = p.truthful_hts.graph.size();
  c.rows.push_back(none.get());
  c.rows.push_back(greedy.get());
  c.rows.push_back(std::move(randomized));

  DeceptionReport& base = c.rows[0];
  std::size_t es = 0, ec = 0;
  for (const auto& e : embed_into_truthful(p.hts, p.truthful_hts, p.prod)) {
    if (!e) continue;
    es += base.win1_safe.contains(*e) ? 1 : 0;
    ec += base.win1_cosafe.contains(*e) ? 1 : 0;
  }
  base.embedded_safe = es;
  base.embedded_cosafe = ec;
  return c;
}

Comparison compare_modes(const LabeledArena& la, const Dfa& a1, const Dfa& a2, const Mask& mask,
                         const SynthesisOptions& options, std::size_t cap) {
  return compare_modes(build_pipeline(la, a1, a2, mask, cap), options);
}

std::string comparison_table(const Comparison& c) {
  auto cell = [](std::size_t n, bool win) {
    return std::to_string(n) + (win ? ", win" : ", lose");
  };
  const int w = 16;
  std::ostringstream os;
  os << std::left << std::setw(8) << "|V|";
  for (const char* h : {"No Misperception", "", "Greedy", "", "Randomized", ""})
    os << std::setw(w) << h;
  os << "\n" << std::setw(8) << "";
  for (int i = 0; i < 3; ++i) os << std::setw(w) << "win1" << std::setw(w) << "win1_pref";
  os << "\n" << std::setw(8) << c.hts_states;
  for (const auto& r : c.rows) {
    const std::size_t safe = r.embedded_safe.value_or(r.win1_safe.count());
    const std::size_t cosafe = r.embedded_cosafe.value_or(r.win1_cosafe.count());
    os << std::setw(w) << cell(safe, r.initial_in_safe) << std::setw(w)
       << cell(cosafe, r.initial_in_cosafe);
  }
  os << "\n";
  if (!c.rows.empty() && c.rows[0].embedded_safe) {
    os << "No Misperception native sizes over its own HTS (" << c.truthful_hts_states
       << " states): win1 " << c.rows[0].win1_safe.count() << ", win1_pref "
       << c.rows[0].win1_cosafe.count() << "\n";
  }
  return os.str();
}

std::vector<StateId> project_to_perceptual(const Hts& hts, const PerceptualGame& pg) {
  std::unordered_map<std::uint64_t, StateId> index;
  for (StateId p = 0; p < pg.tuples.size(); ++p)
    index.emplace((std::uint64_t{pg.tuples[p].s} << 32) | pg.tuples[p].q2, p);
  std::vector<StateId> out(hts.tuples.size());
  for (StateId v = 0; v < hts.tuples.size(); ++v) {
    auto it = index.find((std::uint64_t{hts.tuples[v].s} << 32) | hts.tuples[v].q2);
    if (it == index.end())
      throw ValidationError("HTS state " + std::to_string(v) + " projects outside the perceptual game");
    out[v] = it->second;
  }
  return out;
}

std::string partition_dot(const Hts& hts, const PerceptualGame& pg, const DeceptionReport& primary,
                          const DeceptionReport* randomized) {
  const auto proj = project_to_perceptual(hts, pg);
  std::ostringstream os;
  os << "digraph hts {\n  rankdir=LR;\n  node [fontsize=10, style=filled, fillcolor=white];\n";
  for (StateId v = 0; v < hts.graph.size(); ++v) {
    const bool in_win2 = primary.win2.contains(proj[v]);
    const bool p1_win = primary.win1_safe.contains(v);
    const char* color = "white";
    if (randomized && p1_win && !randomized->win1_safe.contains(v))
      color = "orange";
    else if (p1_win && in_win2)
      color = "lightblue";
    else if (p1_win)
      color = "yellow";
    else if (in_win2)
      color = "red";
    const auto& t = hts.tuples[v];
    os << "  v" << v << " [shape=" << (hts.graph.owner(v) == Player::defender ? "circle" : "box")
       << ", label=\"v" << v << "\\n(" << t.s << "," << t.q << "," << t.q2 << ")\", fillcolor=" << color;
    if (v == hts.initial) os << ", penwidth=3";
    os << "];\n";
  }
  for (StateId v = 0; v < hts.graph.size(); ++v)
    for (const Edge& e : hts.graph.edges(v))
      os << "  v" << v << " -> v" << e.target << " [label=\"" << hts.graph.action_name(e.action)
         << "\"];\n";
  os << "}\n";
  return os.str();
}

nlohmann::json strategy_to_json(const Game& game, const Strategy& s) {
  auto arr = nlohmann::json::array();
  for (StateId v : s.domain()) arr.push_back({{"state", v}, {"actions", s.action_names(game, v)}});
  return arr;
}

Strategy strategy_from_json(const Game& game, const nlohmann::json& j) {
  Strategy s(game.size());
  if (!j.is_array()) throw ParseError("strategy must be an array");
  for (const auto& e : j) {
    auto v = field<StateId>(e, "state");
    if (v >= game.size()) throw ValidationError("strategy state out of range");
    std::vector<ActionId> acts;
    for (const auto& name : field<std::vector<std::string>>(e, "actions")) {
      auto a = game.actions().find(name);
      if (!a) throw ValidationError("strategy names unknown action '" + name + "'");
      acts.push_back(*a);
    }
    s.set(v, std::move(acts));
  }
  return s;
}

nlohmann::json solve_result_to_json(const Game& game, const SolveResult& r) {
  nlohmann::json j;
  j["win"] = r.win.ids();
  j["levels"] = r.levels;
  j["strategy"] = strategy_to_json(game, r.strategy);
  return j;
}

nlohmann::json report_to_json(const Game& g, const DeceptionReport& r) {
  nlohmann::json j;
  j["mode"] = to_string(r.mode);
  j["hts_states"] = r.hts_states;
  j["win2"] = r.win2.ids();
  j["win2_universe"] = r.win2.universe();
  j["win1_safe"] = r.win1_safe.ids();
  j["win1_safe_size"] = r.win1_safe.count();
  j["pi1_safe"] = strategy_to_json(g, r.pi1_safe);
  j["win1_cosafe"] = r.win1_cosafe.ids();
  j["win1_cosafe_size"] = r.win1_cosafe.count();
  j["pi1_cosafe"] = strategy_to_json(g, r.pi1_cosafe);
  j["initial_in_safe"] = r.initial_in_safe;
  j["initial_in_cosafe"] = r.initial_in_cosafe;
  j["dead_p2_states"] = r.dead_p2_states;
  if (r.embedded_safe) j["embedded_win1_safe_size"] = *r.embedded_safe;
  if (r.embedded_cosafe) j["embedded_win1_cosafe_size"] = *r.embedded_cosafe;
  return j;
}

DeceptionReport report_from_json(const Game& g, const nlohmann::json& j) {
  DeceptionReport r;
  r.mode = mode_from_string(field<std::string>(j, "mode"));
  r.hts_states = field<std::size_t>(j, "hts_states");
  if (r.hts_states != g.size()) throw ValidationError("report does not match the HTS size");
  r.win2 = StateSet::from_ids(field<std::size_t>(j, "win2_universe"),
                              field<std::vector<StateId>>(j, "win2"));
  r.win1_safe = StateSet::from_ids(g.size(), field<std::vector<StateId>>(j, "win1_safe"));
  r.pi1_safe = strategy_from_json(g, field<nlohmann::json>(j, "pi1_safe"));
  r.win1_cosafe = StateSet::from_ids(g.size(), field<std::vector<StateId>>(j, "win1_cosafe"));
  r.pi1_cosafe = strategy_from_json(g, field<nlohmann::json>(j, "pi1_cosafe"));
  r.initial_in_safe = field<bool>(j, "initial_in_safe");
  r.initial_in_cosafe = field<bool>(j, "initial_in_cosafe");
  r.dead_p2_states = field<std::size_t>(j, "dead_p2_states");
  if (j.contains("embedded_win1_safe_size"))
    r.embedded_safe = field<std::size_t>(j, "embedded_win1_safe_size");
  if (j.contains("embedded_win1_cosafe_size"))
    r.embedded_cosafe = field<std::size_t>(j, "embedded_win1_cosafe_size");
  return r;
}

} // namespace hypersynth
