#include "hypersynth/hypergame.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "hypersynth/errors.hpp"
#include "hypersynth/json_io.hpp"

namespace hypersynth {

namespace {

std::vector<Symbol> translate_labels(const std::vector<Symbol>& labels, const Alphabet& from,
                                     const Alphabet& to, const char* who) {
  std::vector<Symbol> out;
  out.reserve(labels.size());
  for (StateId s = 0; s < labels.size(); ++s) {
    try {
      out.push_back(to.translate(labels[s], from));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(who) + " label of arena state " + std::to_string(s) +
                            " is outside the automaton alphabet: " + e.what());
    }
  }
  return out;
}

} // namespace

Hts build_hts(const LabeledArena& la, const ProductAutomaton& prod, const Dfa& a2, std::size_t cap) {
  if (!a2.is_complete()) throw ValidationError("attacker DFA must be complete");
  const Arena& arena = la.arena;
  const auto l1 = translate_labels(la.labeling.p1, arena.props, prod.alphabet(), "L1");
  const auto l2 = translate_labels(la.labeling.p2, arena.props, a2.alphabet(), "L2");

  const std::uint64_t nq = prod.size(), nq2 = a2.size();
  auto key = [&](const HtsState& v) { return (v.s * nq + v.q) * nq2 + v.q2; };

  Hts hts;
  std::unordered_map<std::uint64_t, StateId> index;
  auto intern = [&](const HtsState& v) -> StateId {
    auto [it, fresh] = index.emplace(key(v), static_cast<StateId>(hts.tuples.size()));
    if (fresh) {
      if (hts.tuples.size() >= cap) {
        throw CapExceeded("hypergame transition system exceeds the state cap of " +
                          std::to_string(cap) + " states", cap);
      }
      hts.tuples.push_back(v);
    }
    return it->second;
  };
  auto advance = [&](DfaState q, DfaState q2, StateId s) {
    DfaState nq_ = prod.next(q, l1[s]);
    if (nq_ == kNoTransition)
      throw ValidationError("product transition undefined at product state " + std::to_string(q) +
                            " on L1 of arena state " + std::to_string(s));
    return HtsState{s, nq_, a2.next(q2, l2[s])};
  };

  const StateId s0 = arena.initial;
  intern(advance(prod.initial(), a2.initial(), s0));

  struct RawEdge {
    StateId src;
    ActionId action;
    StateId dst;
  };
  std::vector<RawEdge> raw;
  for (StateId v = 0; v < hts.tuples.size(); ++v) {
    const HtsState cur = hts.tuples[v];
    for (const Edge& e : arena.graph.edges(cur.s))
      raw.push_back({v, e.action, intern(advance(cur.q, cur.q2, e.target))});
  }

  GameBuilder b(arena.graph.action_table());
  b.reserve(hts.tuples.size(), raw.size());
  for (const auto& t : hts.tuples) b.add_state(arena.graph.owner(t.s));
  for (const auto& e : raw) b.add_edge(e.src, e.action, e.dst);
  hts.graph = b.build();

  const std::size_t n = hts.tuples.size();
  hts.f1_cosafe = StateSet(n);
  hts.f1_safe = StateSet(n);
  hts.f2 = StateSet(n);
  for (StateId v = 0; v < n; ++v) {
    const auto& t = hts.tuples[v];
    if (prod.in_f1(t.q)) hts.f1_cosafe.insert(v);
    if (!prod.in_f2(t.q)) hts.f1_safe.insert(v);
    if (a2.is_accepting(t.q2)) hts.f2.insert(v);
  }
  return hts;
}

PerceptualGame build_perceptual_game(const LabeledArena& la, const Dfa& a2, std::size_t cap) {
  if (!a2.is_complete()) throw ValidationError("attacker DFA must be complete");
  const Arena& arena = la.arena;
  const auto l2 = translate_labels(la.labeling.p2, arena.props, a2.alphabet(), "L2");
  const std::uint64_t nq2 = a2.size();

  PerceptualGame pg;
  std::unordered_map<std::uint64_t, StateId> index;
  auto intern = [&](PerceptualState p) -> StateId {
    auto [it, fresh] = index.emplace(p.s * nq2 + p.q2, static_cast<StateId>(pg.tuples.size()));
    if (fresh) {
      if (pg.tuples.size() >= cap)
        throw CapExceeded("perceptual game exceeds the state cap of " + std::to_string(cap) +
                          " states", cap);
      pg.tuples.push_back(p);
    }
    return it->second;
  };

  intern({arena.initial, a2.next(a2.initial(), l2[arena.initial])});
  std::vector<std::tuple<StateId, ActionId, StateId>> raw;
  for (StateId v = 0; v < pg.tuples.size(); ++v) {
    const PerceptualState cur = pg.tuples[v];
    for (const Edge& e : arena.graph.edges(cur.s))
      raw.emplace_back(v, e.action, intern({e.target, a2.next(cur.q2, l2[e.target])}));
  }

  GameBuilder b(arena.graph.action_table());
  b.reserve(pg.tuples.size(), raw.size());
  for (const auto& t : pg.tuples) b.add_state(arena.graph.owner(t.s));
  for (const auto& [src, a, dst] : raw) b.add_edge(src, a, dst);
  pg.graph = b.build();

  pg.target = StateSet(pg.tuples.size());
  for (StateId v = 0; v < pg.tuples.size(); ++v)
    if (a2.is_accepting(pg.tuples[v].q2)) pg.target.insert(v);
  return pg;
}

std::optional<StateId> find_perceptual(const PerceptualGame& pg, StateId s, DfaState q2) {
  for (StateId v = 0; v < pg.tuples.size(); ++v)
    if (pg.tuples[v].s == s && pg.tuples[v].q2 == q2) return v;
  return std::nullopt;
}

std::string describe_hts_state(const Hts& hts, const ProductAutomaton* prod, StateId v) {
  const auto& t = hts.tuples.at(v);
  std::ostringstream os;
  os << "(" << t.s << ",";
  if (prod)
    os << "(" << prod->first(t.q) << "," << prod->second(t.q) << ")";
  else
    os << t.q;
  os << "," << t.q2 << ")";
  return os.str();
}

nlohmann::json hts_to_json(const Hts& hts) {
  nlohmann::json j;
  j["initial"] = hts.initial;
  auto states = nlohmann::json::array();
  for (StateId v = 0; v < hts.graph.size(); ++v) {
    const auto& t = hts.tuples[v];
    states.push_back({{"id", v},
                      {"player", player_index(hts.graph.owner(v))},
                      {"tuple", {t.s, t.q, t.q2}},
                      {"f1_cosafe", hts.f1_cosafe.contains(v)},
                      {"f1_safe", hts.f1_safe.contains(v)},
                      {"f2", hts.f2.contains(v)}});
  }
  j["states"] = std::move(states);
  auto edges = nlohmann::json::array();
  for (StateId v = 0; v < hts.graph.size(); ++v)
    for (const Edge& e : hts.graph.edges_by_name(v))
      edges.push_back({v, hts.graph.action_name(e.action), e.target});
  j["edges"] = std::move(edges);
  return j;
}

Hts hts_from_json(const nlohmann::json& j) {
  Hts hts;
  hts.initial = field<StateId>(j, "initial");
  const auto states = field<nlohmann::json>(j, "states");
  const std::size_t n = states.size();
  if (hts.initial >= std::max<std::size_t>(n, 1)) throw ValidationError("HTS initial state out of range");
  std::vector<const nlohmann::json*> by_id(n, nullptr);
  for (const auto& sj : states) {
    auto id = field<StateId>(sj, "id");
    if (id >= n || by_id[id]) throw ValidationError("HTS state ids must be 0..n-1 without repeats");
    by_id[id] = &sj;
  }
  GameBuilder b;
  hts.f1_cosafe = StateSet(n);
  hts.f1_safe = StateSet(n);
  hts.f2 = StateSet(n);
  for (StateId v = 0; v < n; ++v) {
    const auto& sj = *by_id[v];
    b.add_state(player_from_index(field<int>(sj, "player")));
    auto t = field<std::vector<std::uint32_t>>(sj, "tuple");
    if (t.size() != 3) throw ParseError("HTS tuple must be [s, q, q2]");
    hts.tuples.push_back({t[0], t[1], t[2]});
    if (field<bool>(sj, "f1_cosafe")) hts.f1_cosafe.insert(v);
    if (field<bool>(sj, "f1_safe")) hts.f1_safe.insert(v);
    if (field<bool>(sj, "f2")) hts.f2.insert(v);
  }
  for (const auto& e : field<nlohmann::json>(j, "edges")) {
    if (!e.is_array() || e.size() != 3) throw ParseError("HTS edges must be [src, action, dst]");
    auto src = e[0].get<StateId>();
    auto dst = e[2].get<StateId>();
    if (src >= n || dst >= n) throw ValidationError("HTS edge endpoint out of range");
    b.add_edge(src, e[1].get<std::string>(), dst);
  }
  hts.graph = b.build();
  return hts;
}

Hts load_hts(const std::string& path) { return hts_from_json(read_json_file(path)); }

std::string hts_to_dot(const Hts& hts) {
  std::ostringstream os;
  os << "digraph hts {\n  rankdir=LR;\n  node [fontsize=10, style=filled, fillcolor=white];\n";
  for (StateId v = 0; v < hts.graph.size(); ++v) {
    const auto& t = hts.tuples[v];
    os << "  v" << v << " [shape=" << (hts.graph.owner(v) == Player::defender ? "circle" : "box")
       << ", label=\"v" << v << "\\n(" << t.s << "," << t.q << "," << t.q2 << ")\"";
    if (hts.f1_cosafe.contains(v))
      os << ", fillcolor=lightblue";
    else if (hts.f1_safe.contains(v))
      os << ", fillcolor=palegreen";
    if (hts.f2.contains(v)) os << ", peripheries=2";
    os << "];\n";
  }
  for (StateId v = 0; v < hts.graph.size(); ++v)
    for (const Edge& e : hts.graph.edges(v))
      os << "  v" << v << " -> v" << e.target << " [label=\"" << hts.graph.action_name(e.action)
         << "\"];\n";
  os << "}\n";
  return os.str();
}

} // namespace hypersynth
