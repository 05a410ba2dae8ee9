#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypersynth/automata.hpp"
#include "hypersynth/game.hpp"
#include "hypersynth/network.hpp"

namespace hypersynth {

// (s, q, q2): arena state, product state, and the attacker's own DFA state
// driven by the perceived labels.
struct HtsState {
  StateId s = 0;
  DfaState q = 0;
  DfaState q2 = 0;
  friend auto operator<=>(const HtsState&, const HtsState&) = default;
};

struct Hts {
  Game graph; // shares the arena's action table
  std::vector<HtsState> tuples;
  StateId initial = 0; // always 0 (BFS order)
  StateSet f1_cosafe;
  StateSet f1_safe;
  StateSet f2;
};

// Reachable part from v0, ids in BFS order. Throws ValidationError when the
// arena labels use a proposition outside the automata's alphabet,
// CapExceeded beyond `cap` states.
Hts build_hts(const LabeledArena& la, const ProductAutomaton& prod, const Dfa& a2,
              std::size_t cap = kDefaultStateCap);

struct PerceptualState {
  StateId s = 0;
  DfaState q2 = 0;
  friend auto operator<=>(const PerceptualState&, const PerceptualState&) = default;
};

struct PerceptualGame {
  Game graph;
  std::vector<PerceptualState> tuples;
  StateId initial = 0;
  StateSet target;
};

PerceptualGame build_perceptual_game(const LabeledArena& la, const Dfa& a2,
                                     std::size_t cap = kDefaultStateCap);

// (s, q2) -> perceptual state id, if reachable.
std::optional<StateId> find_perceptual(const PerceptualGame& pg, StateId s, DfaState q2);

std::string describe_hts_state(const Hts& hts, const ProductAutomaton* prod, StateId v);

nlohmann::json hts_to_json(const Hts& hts);
Hts hts_from_json(const nlohmann::json& j);
Hts load_hts(const std::string& path);

// Objective sets: 𝔉1,cosafe blue, rest of 𝔉1,safe green.
std::string hts_to_dot(const Hts& hts);

} // namespace hypersynth
