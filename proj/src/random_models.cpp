#include "hypersynth/random_models.hpp"

#include <algorithm>
#include <numeric>

namespace hypersynth {

Game random_game(const RandomGameParams& params, Rng& rng) {
  GameBuilder b;
  std::vector<ActionId> names;
  for (std::size_t i = 0; i < std::max<std::size_t>(params.max_out, 1); ++i)
    names.push_back(b.intern("a" + std::to_string(i)));
  std::bernoulli_distribution defender(params.defender_share), dead(params.dead_share);
  std::uniform_int_distribution<std::size_t> out_deg(1, names.size());
  std::uniform_int_distribution<StateId> target(0, static_cast<StateId>(params.states - 1));
  for (std::size_t s = 0; s < params.states; ++s)
    b.add_state(defender(rng) ? Player::defender : Player::attacker);
  for (StateId s = 0; s < params.states; ++s) {
    if (dead(rng)) continue;
    auto acts = names;
    std::shuffle(acts.begin(), acts.end(), rng);
    acts.resize(out_deg(rng));
    for (ActionId a : acts) b.add_edge(s, a, target(rng));
  }
  return b.build();
}

StateSet random_subset(std::size_t universe, double density, Rng& rng) {
  std::bernoulli_distribution in(density);
  StateSet out(universe);
  for (StateId s = 0; s < universe; ++s)
    if (in(rng)) out.insert(s);
  return out;
}

LabeledArena random_arena(std::size_t states, std::size_t max_out, Rng& rng) {
  LabeledArena la;
  la.arena.props = Alphabet({"d", "t"});
  RandomGameParams params;
  params.states = states;
  params.max_out = max_out;
  la.arena.graph = random_game(params, rng);
  la.arena.initial = 0;
  const auto symbols = la.arena.props.symbols();
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  // Sparse labels so that objectives are neither trivial nor hopeless.
  std::bernoulli_distribution labeled(0.3);
  for (std::size_t s = 0; s < states; ++s) {
    la.labeling.p1.push_back(labeled(rng) ? symbols[pick(rng)] : Symbol{});
    la.labeling.p2.push_back(labeled(rng) ? symbols[pick(rng)] : la.labeling.p1.back());
  }
  return la;
}

Dfa eventually_dfa(const Alphabet& alphabet, const std::string& prop) {
  const Symbol p = alphabet.symbol({prop});
  Dfa dfa(alphabet, 2, 0, {1}, AcceptType::cosafe);
  for (Symbol s : alphabet.symbols()) {
    dfa.set_transition(0, s, (s.bits & p.bits) ? 1 : 0);
    dfa.set_transition(1, s, 1);
  }
  return dfa;
}

Mask hide_mask(const Alphabet& alphabet, const std::string& prop) {
  const Symbol p = alphabet.symbol({prop});
  std::vector<std::pair<Symbol, Symbol>> pairs;
  for (Symbol s : alphabet.symbols())
    if (s.bits & p.bits) pairs.emplace_back(s, Symbol{s.bits & ~p.bits});
  return Mask::from_pairs(alphabet, pairs);
}

} // namespace hypersynth
