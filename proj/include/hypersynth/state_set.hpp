#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace hypersynth {

using StateId = std::uint32_t;

// Dense bitset over state ids [0, universe).
class StateSet {
public:
  StateSet() = default;
  explicit StateSet(std::size_t universe, bool full = false);
  StateSet(std::size_t universe, std::initializer_list<StateId> members);

  static StateSet from_ids(std::size_t universe, const std::vector<StateId>& ids);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(StateId s) const noexcept {
    return s < universe_ && ((words_[s >> 6] >> (s & 63)) & 1U) != 0;
  }
  void insert(StateId s) noexcept { words_[s >> 6] |= std::uint64_t{1} << (s & 63); }
  void erase(StateId s) noexcept { words_[s >> 6] &= ~(std::uint64_t{1} << (s & 63)); }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }

  bool is_subset_of(const StateSet& other) const noexcept;
  bool intersects(const StateSet& other) const noexcept;

  StateSet& operator|=(const StateSet& other) noexcept;
  StateSet& operator&=(const StateSet& other) noexcept;
  StateSet& operator-=(const StateSet& other) noexcept;
  StateSet complement() const;

  // Members in increasing order.
  std::vector<StateId> ids() const;

  friend bool operator==(const StateSet& a, const StateSet& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

private:
  void trim() noexcept;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

inline StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
inline StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
inline StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

} // namespace hypersynth
