#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypersynth/state_set.hpp"

namespace hypersynth {

// A letter of Σ = 2^AP, stored as a bitmask over an Alphabet's sorted
// proposition list.
struct Symbol {
  std::uint32_t bits = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

class Alphabet {
public:
  static constexpr std::size_t kMaxProps = 16;

  Alphabet() = default;
  // Sorts and deduplicates; throws ValidationError beyond kMaxProps.
  explicit Alphabet(std::vector<std::string> props);

  const std::vector<std::string>& props() const noexcept { return props_; }
  std::size_t symbol_count() const noexcept { return std::size_t{1} << props_.size(); }
  std::vector<Symbol> symbols() const;

  // Throws ValidationError on a proposition outside the alphabet.
  Symbol symbol(const std::vector<std::string>& names) const;
  std::vector<std::string> names(Symbol s) const;
  std::string to_string(Symbol s) const; // "{d,t}", "{}"
  // Re-encodes a symbol of `from` over this alphabet.
  Symbol translate(Symbol s, const Alphabet& from) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
  std::vector<std::string> props_;
};

// Total map Σ → Σ modelling what the attacker perceives; required to be
// idempotent on its image so observation classes partition Σ.
class Mask {
public:
  static Mask identity(const Alphabet& alphabet);
  // Unlisted symbols map to themselves. Throws ValidationError if the
  // result is not idempotent on its image.
  static Mask from_pairs(const Alphabet& alphabet, const std::vector<std::pair<Symbol, Symbol>>& pairs);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Symbol operator()(Symbol s) const { return image_.at(s.bits); }
  bool is_identity() const;

private:
  Alphabet alphabet_;
  std::vector<Symbol> image_;
};

// [σ] = { σ' | mask(σ') = mask(σ) }, sorted.
std::vector<Symbol> equivalence_class(const Mask& mask, Symbol sigma);

enum class AcceptType { safe, cosafe };

using DfaState = std::uint32_t;
inline constexpr DfaState kNoTransition = std::numeric_limits<DfaState>::max();

class Dfa {
public:
  Dfa() = default;
  Dfa(Alphabet alphabet, std::size_t states, DfaState initial, std::vector<DfaState> accepting,
      AcceptType type);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return accepting_.size(); }
  DfaState initial() const noexcept { return initial_; }
  AcceptType type() const noexcept { return type_; }
  bool is_accepting(DfaState q) const { return accepting_.at(q) != 0; }
  std::vector<DfaState> accepting_states() const;

  // kNoTransition when undefined.
  DfaState next(DfaState q, Symbol s) const { return delta_.at(q * alphabet_.symbol_count() + s.bits); }
  void set_transition(DfaState from, Symbol on, DfaState to);
  bool is_complete() const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

private:
  friend Dfa make_complete(const Dfa& dfa);

  Alphabet alphabet_;
  DfaState initial_ = 0;
  AcceptType type_ = AcceptType::cosafe;
  std::vector<char> accepting_;
  std::vector<DfaState> delta_;
};

// Adds one non-accepting absorbing sink for every undefined transition.
// A complete input is returned unchanged.
Dfa make_complete(const Dfa& dfa);

// q_0 = I, q_{i+1} = δ(q_i, σ_i). Throws ValidationError on a symbol
// outside Σ or an undefined transition.
std::vector<DfaState> run(const Dfa& dfa, const std::vector<Symbol>& word);
// Safe: every run state accepting. Co-safe: some run state accepting.
bool accepts(const Dfa& dfa, const std::vector<Symbol>& word);

// Masked product of the defender's hidden co-safe automaton and the
// attacker's co-safe automaton. Product state (q1, q2) has index
// q1 * |Q2| + q2.
class ProductAutomaton {
public:
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return q1_size_ * q2_size_; }
  std::size_t q1_size() const noexcept { return q1_size_; }
  std::size_t q2_size() const noexcept { return q2_size_; }
  DfaState index(DfaState q1, DfaState q2) const { return q1 * static_cast<DfaState>(q2_size_) + q2; }
  DfaState first(DfaState q) const { return q / static_cast<DfaState>(q2_size_); }
  DfaState second(DfaState q) const { return q % static_cast<DfaState>(q2_size_); }

  DfaState initial() const noexcept { return initial_; }
  DfaState next(DfaState q, Symbol s) const { return delta_.at(q * alphabet_.symbol_count() + s.bits); }

  // F1 × Q2 and Q1 × F2.
  bool in_f1(DfaState q) const { return f1_.at(q) != 0; }
  bool in_f2(DfaState q) const { return f2_.at(q) != 0; }

private:
  friend ProductAutomaton product(const Dfa&, const Dfa&, const Mask&);

  Alphabet alphabet_;
  std::size_t q1_size_ = 0;
  std::size_t q2_size_ = 0;
  DfaState initial_ = 0;
  std::vector<DfaState> delta_;
  std::vector<char> f1_;
  std::vector<char> f2_;
};

// δ((q1,q2),σ) = (δ1(q1,σ), q2') where q2' = δ2(q2,σ') for σ' ∈ [σ].
// Throws DeterminismError when [σ] drives q2 to more than one successor,
// ValidationError when an input is partial, safe-typed, or the alphabets
// differ.
ProductAutomaton product(const Dfa& a1, const Dfa& a2, const Mask& mask);

// JSON forms.
Dfa dfa_from_json(const nlohmann::json& j);
nlohmann::json dfa_to_json(const Dfa& dfa);
Mask mask_from_json(const nlohmann::json& j, const Alphabet& alphabet);
Dfa load_dfa(const std::string& path);
Mask load_mask(const std::string& path, const Alphabet& alphabet);

} // namespace hypersynth
