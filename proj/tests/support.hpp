#pragma once

#include <string>

#include "hypersynth/automata.hpp"
#include "hypersynth/hypergame.hpp"
#include "hypersynth/network.hpp"
#include "hypersynth/synthesis.hpp"

#ifndef HYPERSYNTH_DATA_DIR
#error "HYPERSYNTH_DATA_DIR must point at the data directory"
#endif

namespace fixtures {

inline std::string data(const std::string& rel) { return std::string(HYPERSYNTH_DATA_DIR) + "/" + rel; }

struct Toy {
  hypersynth::LabeledArena arena;
  hypersynth::Dfa a1, a2;
  hypersynth::Mask mask;
  hypersynth::ProductAutomaton prod;
  hypersynth::Hts hts;
  hypersynth::PerceptualGame pg;
};

inline Toy toy(bool revised) {
  using namespace hypersynth;
  Toy t;
  t.arena = load_arena(data(revised ? "toy/arena_revised.json" : "toy/arena.json"));
  t.a1 = load_dfa(data("toy/a1_eventually_d.json"));
  t.a2 = load_dfa(data("toy/a2_eventually_t.json"));
  t.mask = load_mask(data("toy/mask.json"), t.a1.alphabet());
  t.prod = product(t.a1, t.a2, t.mask);
  t.hts = build_hts(t.arena, t.prod, t.a2);
  t.pg = build_perceptual_game(t.arena, t.a2);
  return t;
}

struct Experiment {
  hypersynth::NetworkModel model;
  hypersynth::LabeledArena arena;
  hypersynth::Dfa a1, a2;
  hypersynth::Mask mask;
};

inline Experiment experiment(int which) {
  using namespace hypersynth;
  Experiment e;
  const std::string dir = "experiment" + std::to_string(which) + "/";
  e.model = load_network(data(dir + "network.json"));
  e.arena = build_arena(e.model);
  e.a1 = load_dfa(data(dir + "a1_eventually_d.json"));
  e.a2 = load_dfa(data(dir + (which == 1 ? "a2_eventually_t.json" : "a2_eventually_a_and_b.json")));
  e.mask = load_mask(data(dir + "mask.json"), e.a1.alphabet());
  return e;
}

// Perceptual state id of (s, q2); fails the test if absent.
inline hypersynth::StateId pstate(const hypersynth::PerceptualGame& pg, hypersynth::StateId s,
                                  hypersynth::DfaState q2) {
  return hypersynth::find_perceptual(pg, s, q2).value();
}

inline hypersynth::ActionId act(const hypersynth::Game& g, const std::string& name) {
  return g.actions().find(name).value();
}

} // namespace fixtures
