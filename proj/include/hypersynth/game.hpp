#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hypersynth/state_set.hpp"

namespace hypersynth {

// Player 1 is the defender, player 2 the attacker.
enum class Player : std::uint8_t { defender = 1, attacker = 2 };

inline Player opponent(Player p) noexcept {
  return p == Player::defender ? Player::attacker : Player::defender;
}
inline int player_index(Player p) noexcept { return static_cast<int>(p); }
Player player_from_index(int i);

using ActionId = std::uint32_t;

// Interned action names. Games derived from one another share a table so
// action ids stay comparable across them.
class ActionTable {
public:
  ActionId intern(std::string_view name);
  std::optional<ActionId> find(std::string_view name) const;
  const std::string& name(ActionId a) const { return names_.at(a); }
  std::size_t size() const noexcept { return names_.size(); }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ActionId> index_;
};

struct Edge {
  ActionId action;
  StateId target;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Turn-based deterministic game graph in CSR form with a reverse index.
// A state may have no edges ("dead"); that only happens in induced subgames.
class Game {
public:
  Game() = default;

  std::size_t size() const noexcept { return owners_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  Player owner(StateId s) const { return owners_[s]; }

  std::span<const Edge> edges(StateId s) const {
    return {edges_.data() + offsets_[s], edges_.data() + offsets_[s + 1]};
  }
  // Source state of every edge entering s (repeated once per edge).
  std::span<const StateId> predecessors(StateId s) const {
    return {pred_.data() + pred_offsets_[s], pred_.data() + pred_offsets_[s + 1]};
  }

  // Edges of s ordered by action name; stable across action tables.
  std::vector<Edge> edges_by_name(StateId s) const;

  std::optional<StateId> successor(StateId s, ActionId a) const;
  bool has_action(StateId s, ActionId a) const { return successor(s, a).has_value(); }

  StateSet states_of(Player p) const;

  const ActionTable& actions() const { return *actions_; }
  std::shared_ptr<const ActionTable> action_table() const { return actions_; }
  const std::string& action_name(ActionId a) const { return actions_->name(a); }

private:
  friend class GameBuilder;

  std::vector<Player> owners_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> pred_offsets_{0};
  std::vector<StateId> pred_;
  std::shared_ptr<const ActionTable> actions_ = std::make_shared<ActionTable>();
};

class GameBuilder {
public:
  GameBuilder();
  explicit GameBuilder(std::shared_ptr<const ActionTable> shared_actions);

  StateId add_state(Player owner);
  void reserve(std::size_t states, std::size_t edges);
  // Throws ValidationError if (src, action) already has a successor.
  void add_edge(StateId src, ActionId action, StateId dst);
  void add_edge(StateId src, std::string_view action, StateId dst);
  ActionId intern(std::string_view action);

  std::size_t size() const noexcept { return owners_.size(); }

  Game build();

private:
  struct RawEdge {
    StateId src;
    ActionId action;
    StateId dst;
  };

  std::shared_ptr<ActionTable> own_actions_;
  std::shared_ptr<const ActionTable> shared_actions_;
  std::vector<Player> owners_;
  std::vector<RawEdge> raw_;
};

// Set-valued memoryless strategy. A state is either unrestricted (no entry)
// or mapped to a sorted, possibly empty, set of allowed actions.
class Strategy {
public:
  Strategy() = default;
  explicit Strategy(std::size_t states) : choices_(states) {}

  std::size_t universe() const noexcept { return choices_.size(); }
  bool defined(StateId s) const { return s < choices_.size() && choices_[s].has_value(); }
  const std::vector<ActionId>& at(StateId s) const { return choices_.at(s).value(); }
  void set(StateId s, std::vector<ActionId> actions);
  void clear(StateId s) { choices_.at(s).reset(); }
  std::vector<StateId> domain() const;

  // Names of the allowed actions at s, sorted lexicographically.
  std::vector<std::string> action_names(const Game& g, StateId s) const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

private:
  std::vector<std::optional<std::vector<ActionId>>> choices_;
};

// Copy of `game` keeping only `keep`, with states renumbered densely in
// increasing id order. Edges leaving `keep` are dropped.
struct SubGame {
  Game game;
  std::vector<StateId> to_parent;
  std::vector<std::optional<StateId>> from_parent;
};
SubGame restrict_to(const Game& game, const StateSet& keep);

} // namespace hypersynth
