#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypersynth/automata.hpp"
#include "hypersynth/game.hpp"

namespace hypersynth {

using HostId = int;
using ServiceId = int;

inline constexpr int kMaxCredential = 2; // 0 no access, 1 user, 2 root
inline constexpr int kMaxServiceId = 31;
inline constexpr std::size_t kDefaultStateCap = 500000;

struct Host {
  HostId id = 0;
  std::vector<ServiceId> services;
  std::vector<ServiceId> noncritical; // suspendable by the defender
  bool is_decoy = false;
};

struct Vulnerability {
  int id = 0;
  int pre_min_credential = 0;
  ServiceId pre_service = 0;
  std::optional<int> post_credential; // absent: the source credential carries over
  bool post_stop_service = false;
};

struct InitialCondition {
  HostId host = 0;
  int credential = 0;
  Player turn = Player::attacker;
};

struct LabelingRule {
  std::vector<HostId> hosts;
  int min_credential = 0;
  std::vector<std::string> labels;
};

struct NetworkModel {
  std::vector<Host> hosts;
  std::vector<std::pair<HostId, HostId>> connectivity; // directed
  std::vector<Vulnerability> vulnerabilities;
  InitialCondition initial;
  std::vector<LabelingRule> labeling_p1;
  std::vector<LabelingRule> labeling_p2;
};

// Throws ValidationError naming the first violated invariant.
void validate(const NetworkModel& model);
// Parses and validates; ParseError for malformed documents.
NetworkModel network_from_json(const nlohmann::json& j);
nlohmann::json network_to_json(const NetworkModel& model);
NetworkModel load_network(const std::string& path);

// Sorted union of every label used by either player's rules.
Alphabet atomic_props(const NetworkModel& model);
// Label set the player's rules assign to (host, credential), ∅ if none match.
Symbol rule_label(const NetworkModel& model, const Alphabet& props, Player player, HostId host,
                  int credential);

// (h, c, t, NW): attacker location and credential, whose turn it is, and the
// running services of every host (bitmask, indexed like Arena::host_ids).
struct NetworkState {
  HostId host = 0;
  int credential = 0;
  Player turn = Player::attacker;
  std::vector<std::uint32_t> running;

  friend auto operator<=>(const NetworkState&, const NetworkState&) = default;
};

struct Arena {
  Game graph;
  StateId initial = 0;
  Alphabet props;
  std::vector<HostId> host_ids;       // empty for abstract arenas
  std::vector<NetworkState> tuples;   // empty for abstract arenas
};

// L1 (true) and L2 (perceived) symbols per arena state, over Arena::props.
struct Labeling {
  std::vector<Symbol> p1;
  std::vector<Symbol> p2;

  // First state where L2 != mask ∘ L1, if any.
  std::optional<StateId> conformance_violation(const Mask& mask, const Alphabet& props) const;
  bool conforms_to(const Mask& mask, const Alphabet& props) const {
    return !conformance_violation(mask, props).has_value();
  }
};

Symbol label_of(const Labeling& labeling, Player player, StateId state);

struct LabeledArena {
  Arena arena;
  Labeling labeling;
};

std::string exploit_action(HostId target, int vulnerability);
std::string suspend_action(HostId host, ServiceId service);
inline constexpr const char* kNullAction = "null";

// Reachable arena from the initial condition. State ids follow the sorted
// order of the (h, c, t, NW) tuples. Throws CapExceeded beyond `cap` states.
LabeledArena build_arena(const NetworkModel& model, std::size_t cap = kDefaultStateCap);

std::string describe_state(const Arena& arena, StateId s);

// Arena export: integer ids, explicit partition, (src, action, dst) edges,
// labels per state per player. Abstract arenas (hand-written fixtures) omit
// the tuples.
nlohmann::json arena_to_json(const LabeledArena& la);
LabeledArena arena_from_json(const nlohmann::json& j);
LabeledArena load_arena(const std::string& path);
// Defender states as circles, attacker states as boxes.
std::string arena_to_dot(const LabeledArena& la);

} // namespace hypersynth
