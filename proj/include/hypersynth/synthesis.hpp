#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypersynth/automata.hpp"
#include "hypersynth/hypergame.hpp"
#include "hypersynth/network.hpp"
#include "hypersynth/solvers.hpp"

namespace hypersynth {

// Player `player` keeps only the actions `strategy` allows at states where
// it is defined; an empty entry leaves the state dead. States outside the
// domain and the other player's states are unchanged. Throws
// ValidationError on an action not enabled at its state.
Game induce(const Game& game, Player player, const Strategy& strategy);

enum class Mode { none, greedy, randomized };
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s); // throws ValidationError

// What the lifted P2 strategy does at HTS states whose (s, q2) projection
// lies outside win2.
enum class OutsideWin2 { no_actions, all_actions };
std::string to_string(OutsideWin2 o);
OutsideWin2 outside_win2_from_string(const std::string& s);

struct SynthesisOptions {
  OutsideWin2 outside_win2 = OutsideWin2::all_actions;
};

// π2 on the perceptual game for the given mode (none behaves as randomized).
struct AttackerModel {
  SolveResult perceptual; // reach to the perceived target, reacher P2
  Strategy pi2;
};
AttackerModel attacker_model(const PerceptualGame& pg, Mode mode);

// π'2(s,q,q2) := π2(s,q2). Level-0 states without an entry become dead and
// are counted in `dead`.
Strategy lift_attacker_strategy(const Hts& hts, const PerceptualGame& pg, const AttackerModel& model,
                                OutsideWin2 outside, std::size_t* dead = nullptr);

struct DeceptionReport {
  Mode mode = Mode::greedy;
  std::size_t hts_states = 0;
  StateSet win2; // over the perceptual game
  StateSet win1_safe;
  Strategy pi1_safe;
  StateSet win1_cosafe;
  Strategy pi1_cosafe;
  bool initial_in_safe = false;
  bool initial_in_cosafe = false;
  std::size_t dead_p2_states = 0;

  // Mode none only: sizes of the regions mapped into the deceptive HTS.
  std::optional<std::size_t> embedded_safe;
  std::optional<std::size_t> embedded_cosafe;
};

// The two-step procedure: safety against the π2-induced HTS, then reach of
// 𝔉1,cosafe inside the safe region under π1_safe.
DeceptionReport synthesize_deceptive(const Hts& hts, const PerceptualGame& pg, Mode mode,
                                     const SynthesisOptions& options = {});

// Game on which P1's safety step is solved: the HTS induced by the lifted π2.
Game attacker_induced_hts(const Hts& hts, const PerceptualGame& pg, Mode mode,
                          const SynthesisOptions& options = {}, std::size_t* dead = nullptr);

struct Comparison {
  std::size_t hts_states = 0;
  std::size_t truthful_hts_states = 0;
  std::vector<DeceptionReport> rows; // none, greedy, randomized
};

// Deceptive structures plus the truthful baseline (L2 := L1, identity mask).
struct Pipeline {
  ProductAutomaton prod;
  Hts hts;
  PerceptualGame pg;
  ProductAutomaton truthful_prod;
  Hts truthful_hts;
  PerceptualGame truthful_pg;
};
Pipeline build_pipeline(const LabeledArena& la, const Dfa& a1, const Dfa& a2, const Mask& mask,
                        std::size_t cap = kDefaultStateCap);

// Rows run concurrently.
Comparison compare_modes(const Pipeline& p, const SynthesisOptions& options = {});
Comparison compare_modes(const LabeledArena& la, const Dfa& a1, const Dfa& a2, const Mask& mask,
                         const SynthesisOptions& options = {}, std::size_t cap = kDefaultStateCap);

// Deceptive-HTS state -> truthful-HTS state (s, q, second(q)), if reachable there.
std::vector<std::optional<StateId>> embed_into_truthful(const Hts& deceptive, const Hts& truthful,
                                                        const ProductAutomaton& prod);

std::string comparison_table(const Comparison& c);

// Perceptual-game id of every HTS state's (s, q2) projection.
std::vector<StateId> project_to_perceptual(const Hts& hts, const PerceptualGame& pg);

// HTS coloured by winning partition: blue where P1 wins deceptively inside
// P2's perceived win, orange where only the greedy attacker is beaten, red
// where P2 perceives a win and P1 loses, yellow where P1 wins outside P2's
// perceived win. `randomized` may be null.
std::string partition_dot(const Hts& hts, const PerceptualGame& pg, const DeceptionReport& primary,
                          const DeceptionReport* randomized);

nlohmann::json solve_result_to_json(const Game& game, const SolveResult& r);
nlohmann::json strategy_to_json(const Game& game, const Strategy& s);
Strategy strategy_from_json(const Game& game, const nlohmann::json& j);
nlohmann::json report_to_json(const Game& hts_graph, const DeceptionReport& r);
DeceptionReport report_from_json(const Game& hts_graph, const nlohmann::json& j);

} // namespace hypersynth
