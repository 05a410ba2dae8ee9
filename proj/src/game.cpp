#include "hypersynth/game.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "hypersynth/errors.hpp"

namespace hypersynth {

Player player_from_index(int i) {
  if (i == 1) return Player::defender;
  if (i == 2) return Player::attacker;
  throw ValidationError("player id must be 1 or 2, got " + std::to_string(i));
}

ActionId ActionTable::intern(std::string_view name) {
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  auto id = static_cast<ActionId>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<ActionId> ActionTable::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::optional<StateId> Game::successor(StateId s, ActionId a) const {
  auto es = edges(s);
  auto it = std::lower_bound(es.begin(), es.end(), a,
                             [](const Edge& e, ActionId x) { return e.action < x; });
  if (it != es.end() && it->action == a) return it->target;
  return std::nullopt;
}

StateSet Game::states_of(Player p) const {
  StateSet out(size());
  for (StateId s = 0; s < size(); ++s)
    if (owners_[s] == p) out.insert(s);
  return out;
}

GameBuilder::GameBuilder() : own_actions_(std::make_shared<ActionTable>()) {}

GameBuilder::GameBuilder(std::shared_ptr<const ActionTable> shared_actions)
    : shared_actions_(std::move(shared_actions)) {}

StateId GameBuilder::add_state(Player owner) {
  owners_.push_back(owner);
  return static_cast<StateId>(owners_.size() - 1);
}

void GameBuilder::reserve(std::size_t states, std::size_t edges) {
  owners_.reserve(states);
  raw_.reserve(edges);
}

ActionId GameBuilder::intern(std::string_view action) {
  if (own_actions_) return own_actions_->intern(action);
  if (auto id = shared_actions_->find(action)) return *id;
  throw ValidationError("unknown action '" + std::string(action) + "'");
}

void GameBuilder::add_edge(StateId src, ActionId action, StateId dst) {
  assert(src < owners_.size() && dst < owners_.size());
  raw_.push_back({src, action, dst});
}

void GameBuilder::add_edge(StateId src, std::string_view action, StateId dst) {
  add_edge(src, intern(action), dst);
}

Game GameBuilder::build() {
  const std::size_t n = owners_.size();
  std::stable_sort(raw_.begin(), raw_.end(), [](const RawEdge& a, const RawEdge& b) {
    return a.src != b.src ? a.src < b.src : a.action < b.action;
  });

  Game g;
  g.owners_ = std::move(owners_);
  g.offsets_.assign(n + 1, 0);
  g.edges_.reserve(raw_.size());
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    const auto& e = raw_[i];
    if (i > 0 && raw_[i - 1].src == e.src && raw_[i - 1].action == e.action)
      throw ValidationError("nondeterministic transition: state " + std::to_string(e.src) +
                            " has two successors for action id " + std::to_string(e.action));
    g.offsets_[e.src + 1]++;
    g.edges_.push_back({e.action, e.dst});
  }
  for (std::size_t s = 0; s < n; ++s) g.offsets_[s + 1] += g.offsets_[s];

  g.pred_offsets_.assign(n + 1, 0);
  for (const auto& e : raw_) g.pred_offsets_[e.dst + 1]++;
  for (std::size_t s = 0; s < n; ++s) g.pred_offsets_[s + 1] += g.pred_offsets_[s];
  g.pred_.resize(raw_.size());
  std::vector<std::uint32_t> fill(g.pred_offsets_.begin(), g.pred_offsets_.end() - 1);
  for (const auto& e : raw_) g.pred_[fill[e.dst]++] = e.src;

  if (own_actions_)
    g.actions_ = std::move(own_actions_);
  else
    g.actions_ = std::move(shared_actions_);
  raw_.clear();
  return g;
}

void Strategy::set(StateId s, std::vector<ActionId> actions) {
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  choices_.at(s) = std::move(actions);
}

std::vector<StateId> Strategy::domain() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < choices_.size(); ++s)
    if (choices_[s]) out.push_back(s);
  return out;
}

std::vector<std::string> Strategy::action_names(const Game& g, StateId s) const {
  std::vector<std::string> out;
  for (ActionId a : at(s)) out.push_back(g.action_name(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> Game::edges_by_name(StateId s) const {
  auto es = edges(s);
  std::vector<Edge> out(es.begin(), es.end());
  std::sort(out.begin(), out.end(),
            [this](const Edge& a, const Edge& b) { return action_name(a.action) < action_name(b.action); });
  return out;
}

SubGame restrict_to(const Game& game, const StateSet& keep) {
  SubGame sub;
  sub.from_parent.resize(game.size());
  GameBuilder b(game.action_table());
  for (StateId s = 0; s < game.size(); ++s) {
    if (!keep.contains(s)) continue;
    sub.from_parent[s] = b.add_state(game.owner(s));
    sub.to_parent.push_back(s);
  }
  for (StateId s : sub.to_parent)
    for (const Edge& e : game.edges(s))
      if (keep.contains(e.target)) b.add_edge(*sub.from_parent[s], e.action, *sub.from_parent[e.target]);
  sub.game = b.build();
  return sub;
}

} // namespace hypersynth
