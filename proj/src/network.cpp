#include "hypersynth/network.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hypersynth/errors.hpp"
#include "hypersynth/json_io.hpp"

namespace hypersynth {

namespace {

bool valid_credential(int c) { return c >= 0 && c <= kMaxCredential; }

std::string host_str(HostId h) { return std::to_string(h); }

bool rule_matches(const LabelingRule& r, HostId h, int c) {
  return c >= r.min_credential && std::find(r.hosts.begin(), r.hosts.end(), h) != r.hosts.end();
}

void validate_rules(const NetworkModel& m, const std::vector<LabelingRule>& rules,
                    const std::set<HostId>& ids, const char* who) {
  for (const auto& r : rules) {
    if (!valid_credential(r.min_credential))
      throw ValidationError(std::string("labeling ") + who + ": min_credential " +
                            std::to_string(r.min_credential) + " outside {0,1,2}");
    for (HostId h : r.hosts)
      if (!ids.count(h))
        throw ValidationError(std::string("labeling ") + who + ": undeclared host " + host_str(h));
  }
  for (const auto& host : m.hosts) {
    for (int c = 0; c <= kMaxCredential; ++c) {
      int matches = 0;
      for (const auto& r : rules) matches += rule_matches(r, host.id, c) ? 1 : 0;
      if (matches > 1)
        throw ValidationError(std::string("labeling ") + who + ": overlapping rules for host " +
                              host_str(host.id) + " at credential " + std::to_string(c));
    }
  }
}

} // namespace

void validate(const NetworkModel& m) {
  if (m.hosts.empty()) throw ValidationError("hosts: list is empty, no initial host");
  std::set<HostId> ids;
  for (const auto& h : m.hosts) {
    if (!ids.insert(h.id).second) throw ValidationError("hosts: duplicate id " + host_str(h.id));
    for (ServiceId s : h.services)
      if (s < 0 || s > kMaxServiceId)
        throw ValidationError("host " + host_str(h.id) + ": service id " + std::to_string(s) +
                              " outside 0.." + std::to_string(kMaxServiceId));
    for (ServiceId s : h.noncritical)
      if (std::find(h.services.begin(), h.services.end(), s) == h.services.end())
        throw ValidationError("host " + host_str(h.id) + ": noncritical service " +
                              std::to_string(s) + " is not among its services");
  }
  for (const auto& [a, b] : m.connectivity)
    if (!ids.count(a) || !ids.count(b))
      throw ValidationError("connectivity: edge (" + host_str(a) + "," + host_str(b) +
                            ") names an undeclared host");
  std::set<int> vids;
  for (const auto& v : m.vulnerabilities) {
    const std::string tag = "vulnerability " + std::to_string(v.id);
    if (!vids.insert(v.id).second) throw ValidationError(tag + ": duplicate id");
    if (!valid_credential(v.pre_min_credential))
      throw ValidationError(tag + ": pre_min_credential outside {0,1,2}");
    if (v.post_credential && !valid_credential(*v.post_credential))
      throw ValidationError(tag + ": post_credential outside {0,1,2}");
    if (v.pre_service < 0 || v.pre_service > kMaxServiceId)
      throw ValidationError(tag + ": pre_service out of range");
  }
  if (!ids.count(m.initial.host))
    throw ValidationError("initial: host " + host_str(m.initial.host) + " is not declared");
  if (!valid_credential(m.initial.credential))
    throw ValidationError("initial: credential outside {0,1,2}");
  validate_rules(m, m.labeling_p1, ids, "p1");
  validate_rules(m, m.labeling_p2, ids, "p2");
}

namespace {

std::vector<LabelingRule> rules_from_json(const nlohmann::json& arr) {
  std::vector<LabelingRule> out;
  if (!arr.is_array()) throw ParseError("labeling rules must be an array");
  for (const auto& r : arr)
    out.push_back({field<std::vector<HostId>>(r, "hosts"), field<int>(r, "min_credential"),
                   field<std::vector<std::string>>(r, "labels")});
  return out;
}

nlohmann::json rules_to_json(const std::vector<LabelingRule>& rules) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rules)
    arr.push_back({{"hosts", r.hosts}, {"min_credential", r.min_credential}, {"labels", r.labels}});
  return arr;
}

} // namespace

NetworkModel network_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("network config must be a JSON object");
  NetworkModel m;
  for (const auto& h : field<nlohmann::json>(j, "hosts")) {
    Host host;
    host.id = field<HostId>(h, "id");
    host.services = field<std::vector<ServiceId>>(h, "services");
    host.noncritical = field<std::vector<ServiceId>>(h, "noncritical");
    host.is_decoy = h.contains("is_decoy") ? field<bool>(h, "is_decoy") : false;
    m.hosts.push_back(std::move(host));
  }
  for (const auto& e : field<nlohmann::json>(j, "connectivity")) {
    auto pair = e.get<std::vector<HostId>>();
    if (pair.size() != 2) throw ParseError("connectivity entries must be [source, target]");
    m.connectivity.emplace_back(pair[0], pair[1]);
  }
  for (const auto& v : field<nlohmann::json>(j, "vulnerabilities")) {
    Vulnerability vul;
    vul.id = field<int>(v, "id");
    vul.pre_min_credential = field<int>(v, "pre_min_credential");
    vul.pre_service = field<ServiceId>(v, "pre_service");
    if (v.contains("post_credential") && !v["post_credential"].is_null())
      vul.post_credential = field<int>(v, "post_credential");
    vul.post_stop_service = field<bool>(v, "post_stop_service");
    m.vulnerabilities.push_back(vul);
  }
  const auto init = field<nlohmann::json>(j, "initial");
  m.initial.host = field<HostId>(init, "host");
  m.initial.credential = field<int>(init, "credential");
  m.initial.turn = player_from_index(field<int>(init, "turn"));
  if (j.contains("labeling")) {
    const auto& lab = j["labeling"];
    if (lab.contains("p1")) m.labeling_p1 = rules_from_json(lab["p1"]);
    if (lab.contains("p2")) m.labeling_p2 = rules_from_json(lab["p2"]);
  }
  validate(m);
  return m;
}

nlohmann::json network_to_json(const NetworkModel& m) {
  nlohmann::json j;
  auto hosts = nlohmann::json::array();
  for (const auto& h : m.hosts)
    hosts.push_back({{"id", h.id},
                     {"services", h.services},
                     {"noncritical", h.noncritical},
                     {"is_decoy", h.is_decoy}});
  j["hosts"] = hosts;
  auto conn = nlohmann::json::array();
  for (const auto& [a, b] : m.connectivity) conn.push_back({a, b});
  j["connectivity"] = conn;
  auto vuls = nlohmann::json::array();
  for (const auto& v : m.vulnerabilities) {
    nlohmann::json vj{{"id", v.id},
                      {"pre_min_credential", v.pre_min_credential},
                      {"pre_service", v.pre_service},
                      {"post_credential", nullptr},
                      {"post_stop_service", v.post_stop_service}};
    if (v.post_credential) vj["post_credential"] = *v.post_credential;
    vuls.push_back(vj);
  }
  j["vulnerabilities"] = vuls;
  j["initial"] = {{"host", m.initial.host},
                  {"credential", m.initial.credential},
                  {"turn", player_index(m.initial.turn)}};
  j["labeling"] = {{"p1", rules_to_json(m.labeling_p1)}, {"p2", rules_to_json(m.labeling_p2)}};
  return j;
}

NetworkModel load_network(const std::string& path) { return network_from_json(read_json_file(path)); }

Alphabet atomic_props(const NetworkModel& m) {
  std::vector<std::string> props;
  for (const auto* rules : {&m.labeling_p1, &m.labeling_p2})
    for (const auto& r : *rules) props.insert(props.end(), r.labels.begin(), r.labels.end());
  return Alphabet(std::move(props));
}

Symbol rule_label(const NetworkModel& m, const Alphabet& props, Player player, HostId host,
                  int credential) {
  const auto& rules = player == Player::defender ? m.labeling_p1 : m.labeling_p2;
  for (const auto& r : rules)
    if (rule_matches(r, host, credential)) return props.symbol(r.labels);
  return Symbol{};
}

std::optional<StateId> Labeling::conformance_violation(const Mask& mask, const Alphabet& props) const {
  const Alphabet& ma = mask.alphabet();
  for (StateId s = 0; s < p1.size(); ++s)
    if (mask(ma.translate(p1[s], props)) != ma.translate(p2[s], props)) return s;
  return std::nullopt;
}

Symbol label_of(const Labeling& labeling, Player player, StateId state) {
  return player == Player::defender ? labeling.p1.at(state) : labeling.p2.at(state);
}

std::string exploit_action(HostId target, int vulnerability) {
  return "exploit(" + std::to_string(target) + "," + std::to_string(vulnerability) + ")";
}

std::string suspend_action(HostId host, ServiceId service) {
  return "suspend(" + std::to_string(host) + "," + std::to_string(service) + ")";
}

namespace {

std::string state_key(const NetworkState& s) {
  std::string key;
  key.reserve(8 + 4 * s.running.size());
  auto put = [&key](std::uint32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
  put(static_cast<std::uint32_t>(s.host));
  put(static_cast<std::uint32_t>(s.credential) | (static_cast<std::uint32_t>(s.turn) << 8));
  for (auto r : s.running) put(r);
  return key;
}

struct Move {
  ActionId action;
  NetworkState next;
};

class ArenaGenerator {
public:
  explicit ArenaGenerator(const NetworkModel& m) : m_(m) {
    for (const auto& h : m.hosts) host_ids_.push_back(h.id);
    std::sort(host_ids_.begin(), host_ids_.end());
    for (std::size_t i = 0; i < host_ids_.size(); ++i) host_index_[host_ids_[i]] = i;
    for (const auto& h : m.hosts) {
      std::uint32_t all = 0, susp = 0;
      for (ServiceId s : h.services) all |= 1U << s;
      for (ServiceId s : h.noncritical) susp |= 1U << s;
      services_.resize(host_ids_.size());
      suspendable_.resize(host_ids_.size());
      services_[host_index_[h.id]] = all;
      suspendable_[host_index_[h.id]] = susp;
    }
    std::set<std::pair<HostId, HostId>> edges(m.connectivity.begin(), m.connectivity.end());
    for (const auto& [a, b] : edges) targets_[a].push_back(b);
    vuls_ = m.vulnerabilities;
    std::sort(vuls_.begin(), vuls_.end(), [](auto& x, auto& y) { return x.id < y.id; });

    // Intern every action up front so ids do not depend on exploration order.
    builder_actions_ = std::make_shared<ActionTable>();
    null_ = builder_actions_->intern(kNullAction);
    for (HostId h : host_ids_)
      for (const auto& v : vuls_) builder_actions_->intern(exploit_action(h, v.id));
    for (HostId h : host_ids_)
      for (int s = 0; s <= kMaxServiceId; ++s)
        if ((suspendable_[host_index_[h]] >> s) & 1U) builder_actions_->intern(suspend_action(h, s));
  }

  NetworkState initial() const {
    return {m_.initial.host, m_.initial.credential, m_.initial.turn, services_};
  }

  std::vector<Move> moves(const NetworkState& st) const {
    std::vector<Move> out;
    if (st.turn == Player::attacker) {
      if (auto it = targets_.find(st.host); it != targets_.end()) {
        for (HostId target : it->second) {
          const std::size_t ti = host_index_.at(target);
          for (const auto& v : vuls_) {
            if (st.credential < v.pre_min_credential) continue;
            if (((st.running[ti] >> v.pre_service) & 1U) == 0) continue;
            NetworkState next = st;
            next.host = target;
            next.credential = v.post_credential.value_or(st.credential);
            next.turn = Player::defender;
            if (v.post_stop_service) next.running[ti] &= ~(1U << v.pre_service);
            out.push_back({*builder_actions_->find(exploit_action(target, v.id)), std::move(next)});
          }
        }
      }
    } else {
      for (std::size_t hi = 0; hi < host_ids_.size(); ++hi) {
        const std::uint32_t live = st.running[hi] & suspendable_[hi];
        for (int s = 0; s <= kMaxServiceId; ++s) {
          if (((live >> s) & 1U) == 0) continue;
          NetworkState next = st;
          next.running[hi] &= ~(1U << s);
          next.turn = Player::attacker;
          out.push_back({*builder_actions_->find(suspend_action(host_ids_[hi], s)), std::move(next)});
        }
      }
    }
    if (out.empty()) {
      NetworkState next = st;
      next.turn = opponent(st.turn);
      out.push_back({null_, std::move(next)});
    }
    return out;
  }

  const std::vector<HostId>& host_ids() const { return host_ids_; }
  std::shared_ptr<const ActionTable> actions() const { return builder_actions_; }

private:
  const NetworkModel& m_;
  std::vector<HostId> host_ids_;
  std::map<HostId, std::size_t> host_index_;
  std::vector<std::uint32_t> services_;
  std::vector<std::uint32_t> suspendable_;
  std::map<HostId, std::vector<HostId>> targets_;
  std::vector<Vulnerability> vuls_;
  std::shared_ptr<ActionTable> builder_actions_;
  ActionId null_ = 0;
};

} // namespace

LabeledArena build_arena(const NetworkModel& model, std::size_t cap) {
  ArenaGenerator gen(model);

  std::vector<NetworkState> found;
  std::unordered_map<std::string, StateId> index;
  struct RawEdge {
    StateId src;
    ActionId action;
    StateId dst;
  };
  std::vector<RawEdge> raw;

  auto intern = [&](NetworkState st) -> StateId {
    auto key = state_key(st);
    if (auto it = index.find(key); it != index.end()) return it->second;
    if (found.size() >= cap)
      throw CapExceeded("arena exceeds the state cap of " + std::to_string(cap) + " states", cap);
    auto id = static_cast<StateId>(found.size());
    index.emplace(std::move(key), id);
    found.push_back(std::move(st));
    return id;
  };

  intern(gen.initial());
  for (StateId cur = 0; cur < found.size(); ++cur) {
    for (auto& mv : gen.moves(found[cur])) {
      StateId dst = intern(std::move(mv.next));
      raw.push_back({cur, mv.action, dst});
    }
  }

  // Canonical ids: sorted tuple order.
  std::vector<StateId> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](StateId a, StateId b) { return found[a] < found[b]; });
  std::vector<StateId> rank(found.size());
  for (StateId i = 0; i < order.size(); ++i) rank[order[i]] = i;

  LabeledArena out;
  Arena& arena = out.arena;
  arena.props = atomic_props(model);
  arena.host_ids = gen.host_ids();
  arena.initial = rank[0];
  GameBuilder b(gen.actions());
  b.reserve(found.size(), raw.size());
  for (StateId i = 0; i < order.size(); ++i) {
    arena.tuples.push_back(found[order[i]]);
    b.add_state(found[order[i]].turn);
  }
  for (const auto& e : raw) b.add_edge(rank[e.src], e.action, rank[e.dst]);
  arena.graph = b.build();

  out.labeling.p1.reserve(arena.tuples.size());
  out.labeling.p2.reserve(arena.tuples.size());
  for (const auto& t : arena.tuples) {
    out.labeling.p1.push_back(rule_label(model, arena.props, Player::defender, t.host, t.credential));
    out.labeling.p2.push_back(rule_label(model, arena.props, Player::attacker, t.host, t.credential));
  }
  return out;
}

std::string describe_state(const Arena& arena, StateId s) {
  if (arena.tuples.empty()) return std::to_string(s);
  const auto& t = arena.tuples.at(s);
  std::ostringstream os;
  os << "(" << t.host << ", " << t.credential << ", " << (t.turn == Player::attacker ? 1 : 0)
     << ", {";
  for (std::size_t i = 0; i < arena.host_ids.size(); ++i) {
    os << (i ? ", " : "") << arena.host_ids[i] << ": {";
    bool first = true;
    for (int sv = 0; sv <= kMaxServiceId; ++sv) {
      if ((t.running[i] >> sv) & 1U) {
        os << (first ? "" : ",") << sv;
        first = false;
      }
    }
    os << "}";
  }
  os << "})";
  return os.str();
}

nlohmann::json arena_to_json(const LabeledArena& la) {
  const Arena& a = la.arena;
  nlohmann::json j;
  j["atomic_props"] = a.props.props();
  j["initial"] = a.initial;
  if (!a.host_ids.empty()) j["hosts"] = a.host_ids;
  auto states = nlohmann::json::array();
  for (StateId s = 0; s < a.graph.size(); ++s) {
    nlohmann::json sj{{"id", s},
                      {"player", player_index(a.graph.owner(s))},
                      {"labels",
                       {{"p1", a.props.names(la.labeling.p1[s])},
                        {"p2", a.props.names(la.labeling.p2[s])}}}};
    if (!a.tuples.empty()) {
      const auto& t = a.tuples[s];
      auto nw = nlohmann::json::array();
      for (std::size_t i = 0; i < a.host_ids.size(); ++i) {
        std::vector<int> svcs;
        for (int sv = 0; sv <= kMaxServiceId; ++sv)
          if ((t.running[i] >> sv) & 1U) svcs.push_back(sv);
        nw.push_back({a.host_ids[i], svcs});
      }
      sj["tuple"] = {{"host", t.host},
                     {"credential", t.credential},
                     {"turn", player_index(t.turn)},
                     {"nw", nw}};
    }
    states.push_back(std::move(sj));
  }
  j["states"] = std::move(states);
  auto edges = nlohmann::json::array();
  for (StateId s = 0; s < a.graph.size(); ++s)
    for (const Edge& e : a.graph.edges_by_name(s)) edges.push_back({s, a.graph.action_name(e.action), e.target});
  j["edges"] = std::move(edges);
  return j;
}

LabeledArena arena_from_json(const nlohmann::json& j) {
  LabeledArena out;
  Arena& a = out.arena;
  a.props = Alphabet(field<std::vector<std::string>>(j, "atomic_props"));
  a.initial = field<StateId>(j, "initial");
  if (j.contains("hosts")) a.host_ids = field<std::vector<HostId>>(j, "hosts");

  const auto states = field<nlohmann::json>(j, "states");
  const std::size_t n = states.size();
  std::vector<const nlohmann::json*> by_id(n, nullptr);
  for (const auto& sj : states) {
    auto id = field<StateId>(sj, "id");
    if (id >= n || by_id[id]) throw ValidationError("arena state ids must be 0..n-1 without repeats");
    by_id[id] = &sj;
  }
  if (a.initial >= n) throw ValidationError("arena initial state out of range");

  GameBuilder b;
  out.labeling.p1.resize(n);
  out.labeling.p2.resize(n);
  for (StateId s = 0; s < n; ++s) {
    const auto& sj = *by_id[s];
    b.add_state(player_from_index(field<int>(sj, "player")));
    const auto labels = field<nlohmann::json>(sj, "labels");
    out.labeling.p1[s] = a.props.symbol(field<std::vector<std::string>>(labels, "p1"));
    out.labeling.p2[s] = a.props.symbol(field<std::vector<std::string>>(labels, "p2"));
    if (sj.contains("tuple")) {
      const auto& tj = sj["tuple"];
      NetworkState t;
      t.host = field<HostId>(tj, "host");
      t.credential = field<int>(tj, "credential");
      t.turn = player_from_index(field<int>(tj, "turn"));
      for (const auto& entry : field<nlohmann::json>(tj, "nw")) {
        std::uint32_t bits = 0;
        for (int sv : entry.at(1).get<std::vector<int>>()) bits |= 1U << sv;
        t.running.push_back(bits);
      }
      a.tuples.push_back(std::move(t));
    }
  }
  if (!a.tuples.empty() && a.tuples.size() != n)
    throw ValidationError("arena tuples must be given for every state or none");

  for (const auto& e : field<nlohmann::json>(j, "edges")) {
    if (!e.is_array() || e.size() != 3) throw ParseError("arena edges must be [src, action, dst]");
    auto src = e[0].get<StateId>();
    auto dst = e[2].get<StateId>();
    if (src >= n || dst >= n) throw ValidationError("arena edge endpoint out of range");
    b.add_edge(src, e[1].get<std::string>(), dst);
  }
  a.graph = b.build();
  for (StateId s = 0; s < n; ++s)
    if (a.graph.edges(s).empty())
      throw ValidationError("arena state " + std::to_string(s) + " has no enabled action");
  return out;
}

LabeledArena load_arena(const std::string& path) { return arena_from_json(read_json_file(path)); }

std::string arena_to_dot(const LabeledArena& la) {
  const Arena& a = la.arena;
  std::ostringstream os;
  os << "digraph arena {\n  rankdir=LR;\n  node [fontsize=10];\n";
  for (StateId s = 0; s < a.graph.size(); ++s) {
    os << "  s" << s << " [shape=" << (a.graph.owner(s) == Player::defender ? "circle" : "box")
       << ", label=\"" << s << "\\nL1=" << a.props.to_string(la.labeling.p1[s])
       << "\\nL2=" << a.props.to_string(la.labeling.p2[s]) << "\"";
    if (s == a.initial) os << ", style=filled, fillcolor=red";
    os << "];\n";
  }
  for (StateId s = 0; s < a.graph.size(); ++s)
    for (const Edge& e : a.graph.edges(s))
      os << "  s" << s << " -> s" << e.target << " [label=\"" << a.graph.action_name(e.action)
         << "\"];\n";
  os << "}\n";
  return os.str();
}

} // namespace hypersynth
