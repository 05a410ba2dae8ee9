#include "hypersynth/automata.hpp"

#include <algorithm>
#include <sstream>

#include "hypersynth/errors.hpp"
#include "hypersynth/json_io.hpp"

namespace hypersynth {

Alphabet::Alphabet(std::vector<std::string> props) : props_(std::move(props)) {
  std::sort(props_.begin(), props_.end());
  props_.erase(std::unique(props_.begin(), props_.end()), props_.end());
  if (props_.size() > kMaxProps)
    throw ValidationError("at most " + std::to_string(kMaxProps) + " atomic propositions supported");
}

std::vector<Symbol> Alphabet::symbols() const {
  std::vector<Symbol> out(symbol_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Symbol{static_cast<std::uint32_t>(i)};
  return out;
}

Symbol Alphabet::symbol(const std::vector<std::string>& names) const {
  Symbol s;
  for (const auto& n : names) {
    auto it = std::lower_bound(props_.begin(), props_.end(), n);
    if (it == props_.end() || *it != n)
      throw ValidationError("proposition '" + n + "' is not in the alphabet");
    s.bits |= std::uint32_t{1} << (it - props_.begin());
  }
  return s;
}

std::vector<std::string> Alphabet::names(Symbol s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < props_.size(); ++i)
    if ((s.bits >> i) & 1U) out.push_back(props_[i]);
  return out;
}

std::string Alphabet::to_string(Symbol s) const {
  std::string out = "{";
  auto ns = names(s);
  for (std::size_t i = 0; i < ns.size(); ++i) out += (i ? "," : "") + ns[i];
  return out + "}";
}

Symbol Alphabet::translate(Symbol s, const Alphabet& from) const {
  return symbol(from.names(s));
}

Mask Mask::identity(const Alphabet& alphabet) {
  Mask m;
  m.alphabet_ = alphabet;
  m.image_ = alphabet.symbols();
  return m;
}

Mask Mask::from_pairs(const Alphabet& alphabet,
                      const std::vector<std::pair<Symbol, Symbol>>& pairs) {
  Mask m = identity(alphabet);
  for (const auto& [from, to] : pairs) {
    if (from.bits >= alphabet.symbol_count() || to.bits >= alphabet.symbol_count())
      throw ValidationError("mask entry outside the alphabet");
    m.image_[from.bits] = to;
  }
  for (Symbol s : alphabet.symbols()) {
    Symbol once = m(s);
    if (m(once) != once)
      throw ValidationError("mask is not idempotent: " + alphabet.to_string(s) + " -> " +
                            alphabet.to_string(once) + " -> " + alphabet.to_string(m(once)));
  }
  return m;
}

bool Mask::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i].bits != i) return false;
  return true;
}

std::vector<Symbol> equivalence_class(const Mask& mask, Symbol sigma) {
  std::vector<Symbol> out;
  const Symbol image = mask(sigma);
  for (Symbol s : mask.alphabet().symbols())
    if (mask(s) == image) out.push_back(s);
  return out;
}

Dfa::Dfa(Alphabet alphabet, std::size_t states, DfaState initial, std::vector<DfaState> accepting,
         AcceptType type)
    : alphabet_(std::move(alphabet)), initial_(initial), type_(type), accepting_(states, 0),
      delta_(states * alphabet_.symbol_count(), kNoTransition) {
  if (states == 0) throw ValidationError("DFA needs at least one state");
  if (initial >= states) throw ValidationError("DFA initial state out of range");
  for (DfaState q : accepting) {
    if (q >= states) throw ValidationError("DFA accepting state out of range");
    accepting_[q] = 1;
  }
}

std::vector<DfaState> Dfa::accepting_states() const {
  std::vector<DfaState> out;
  for (DfaState q = 0; q < size(); ++q)
    if (accepting_[q]) out.push_back(q);
  return out;
}

void Dfa::set_transition(DfaState from, Symbol on, DfaState to) {
  if (from >= size() || to >= size()) throw ValidationError("DFA transition state out of range");
  if (on.bits >= alphabet_.symbol_count()) throw ValidationError("DFA transition symbol outside Σ");
  auto& slot = delta_[from * alphabet_.symbol_count() + on.bits];
  if (slot != kNoTransition && slot != to)
    throw ValidationError("DFA has two successors from state " + std::to_string(from) + " on " +
                          alphabet_.to_string(on));
  slot = to;
}

bool Dfa::is_complete() const {
  return std::find(delta_.begin(), delta_.end(), kNoTransition) == delta_.end();
}

Dfa make_complete(const Dfa& dfa) {
  if (dfa.is_complete()) return dfa;
  const std::size_t sigma = dfa.alphabet_.symbol_count();
  const auto sink = static_cast<DfaState>(dfa.size());
  Dfa out = dfa;
  out.accepting_.push_back(0);
  out.delta_.resize((dfa.size() + 1) * sigma, kNoTransition);
  for (auto& t : out.delta_)
    if (t == kNoTransition) t = sink;
  return out;
}

std::vector<DfaState> run(const Dfa& dfa, const std::vector<Symbol>& word) {
  std::vector<DfaState> out{dfa.initial()};
  out.reserve(word.size() + 1);
  for (Symbol s : word) {
    if (s.bits >= dfa.alphabet().symbol_count())
      throw ValidationError("symbol outside the DFA alphabet");
    DfaState q = dfa.next(out.back(), s);
    if (q == kNoTransition) throw ValidationError("DFA is not complete; run undefined");
    out.push_back(q);
  }
  return out;
}

bool accepts(const Dfa& dfa, const std::vector<Symbol>& word) {
  auto states = run(dfa, word);
  auto in_f = [&](DfaState q) { return dfa.is_accepting(q); };
  if (dfa.type() == AcceptType::safe) return std::all_of(states.begin(), states.end(), in_f);
  return std::any_of(states.begin(), states.end(), in_f);
}

ProductAutomaton product(const Dfa& a1, const Dfa& a2, const Mask& mask) {
  if (!(a1.alphabet() == a2.alphabet()) || !(a1.alphabet() == mask.alphabet()))
    throw ValidationError("product inputs must share one alphabet");
  if (a1.type() != AcceptType::cosafe || a2.type() != AcceptType::cosafe)
    throw ValidationError("product expects two co-safe automata");
  if (!a1.is_complete() || !a2.is_complete())
    throw ValidationError("product expects complete automata (apply make_complete first)");

  const Alphabet& sigma = a1.alphabet();
  ProductAutomaton p;
  p.alphabet_ = sigma;
  p.q1_size_ = a1.size();
  p.q2_size_ = a2.size();
  p.initial_ = p.index(a1.initial(), a2.initial());
  p.delta_.assign(p.size() * sigma.symbol_count(), kNoTransition);
  p.f1_.assign(p.size(), 0);
  p.f2_.assign(p.size(), 0);

  std::vector<std::vector<Symbol>> classes(sigma.symbol_count());
  for (Symbol s : sigma.symbols()) classes[s.bits] = equivalence_class(mask, s);

  for (DfaState q1 = 0; q1 < a1.size(); ++q1) {
    for (DfaState q2 = 0; q2 < a2.size(); ++q2) {
      const DfaState q = p.index(q1, q2);
      p.f1_[q] = a1.is_accepting(q1);
      p.f2_[q] = a2.is_accepting(q2);
      for (Symbol s : sigma.symbols()) {
        // Determinism: every observation-equivalent letter must agree.
        DfaState succ2 = kNoTransition;
        for (Symbol alt : classes[s.bits]) {
          DfaState candidate = a2.next(q2, alt);
          if (succ2 == kNoTransition) {
            succ2 = candidate;
          } else if (candidate != succ2) {
            std::ostringstream msg;
            msg << "masked product is nondeterministic at (" << q1 << "," << q2 << ") on "
                << sigma.to_string(s) << ": attacker automaton moves " << q2 << " -> " << succ2
                << " and " << q2 << " -> " << candidate << " on observation-equivalent letters";
            throw DeterminismError(msg.str());
          }
        }
        p.delta_[q * sigma.symbol_count() + s.bits] = p.index(a1.next(q1, s), succ2);
      }
    }
  }
  return p;
}

Dfa dfa_from_json(const nlohmann::json& j) {
  auto states = field<std::vector<DfaState>>(j, "states");
  auto props = field<std::vector<std::string>>(j, "alphabet_props");
  auto initial = field<DfaState>(j, "initial");
  auto accepting = field<std::vector<DfaState>>(j, "accepting");
  auto type_name = field<std::string>(j, "type");
  if (type_name != "safe" && type_name != "cosafe")
    throw ParseError("DFA type must be \"safe\" or \"cosafe\"");

  // State ids must be 0..n-1 so they can index directly.
  std::vector<DfaState> sorted = states;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw ValidationError("DFA states must be 0..n-1");

  Alphabet alphabet(props);
  Dfa dfa(alphabet, states.size(), initial, accepting,
          type_name == "safe" ? AcceptType::safe : AcceptType::cosafe);
  if (!j.contains("transitions") || !j["transitions"].is_array())
    throw ParseError("missing field 'transitions'");
  for (const auto& t : j["transitions"]) {
    dfa.set_transition(field<DfaState>(t, "from"),
                       alphabet.symbol(field<std::vector<std::string>>(t, "on")),
                       field<DfaState>(t, "to"));
  }
  return dfa;
}

nlohmann::json dfa_to_json(const Dfa& dfa) {
  nlohmann::json j;
  std::vector<DfaState> states(dfa.size());
  for (DfaState q = 0; q < dfa.size(); ++q) states[q] = q;
  j["states"] = states;
  j["alphabet_props"] = dfa.alphabet().props();
  j["initial"] = dfa.initial();
  j["accepting"] = dfa.accepting_states();
  j["type"] = dfa.type() == AcceptType::safe ? "safe" : "cosafe";
  auto ts = nlohmann::json::array();
  for (DfaState q = 0; q < dfa.size(); ++q)
    for (Symbol s : dfa.alphabet().symbols())
      if (DfaState to = dfa.next(q, s); to != kNoTransition)
        ts.push_back({{"from", q}, {"on", dfa.alphabet().names(s)}, {"to", to}});
  j["transitions"] = ts;
  return j;
}

Mask mask_from_json(const nlohmann::json& j, const Alphabet& alphabet) {
  if (!j.contains("map") || !j["map"].is_array()) throw ParseError("missing field 'map'");
  std::vector<std::pair<Symbol, Symbol>> pairs;
  for (const auto& e : j["map"])
    pairs.emplace_back(alphabet.symbol(field<std::vector<std::string>>(e, "from")),
                       alphabet.symbol(field<std::vector<std::string>>(e, "to")));
  return Mask::from_pairs(alphabet, pairs);
}

Dfa load_dfa(const std::string& path) { return dfa_from_json(read_json_file(path)); }

Mask load_mask(const std::string& path, const Alphabet& alphabet) {
  return mask_from_json(read_json_file(path), alphabet);
}

} // namespace hypersynth
