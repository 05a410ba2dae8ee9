#include "hypersynth/state_set.hpp"

#include <bit>
#include <cassert>

namespace hypersynth {

StateSet::StateSet(std::size_t universe, bool full)
    : universe_(universe), words_((universe + 63) / 64, full ? ~std::uint64_t{0} : 0) {
  trim();
}

StateSet::StateSet(std::size_t universe, std::initializer_list<StateId> members)
    : StateSet(universe) {
  for (StateId s : members) {
    assert(s < universe);
    insert(s);
  }
}

StateSet StateSet::from_ids(std::size_t universe, const std::vector<StateId>& ids) {
  StateSet out(universe);
  for (StateId s : ids) {
    assert(s < universe);
    out.insert(s);
  }
  return out;
}

void StateSet::trim() noexcept {
  if (universe_ % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
}

std::size_t StateSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool StateSet::is_subset_of(const StateSet& other) const noexcept {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

bool StateSet::intersects(const StateSet& other) const noexcept {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

StateSet& StateSet::operator|=(const StateSet& other) noexcept {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) noexcept {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

StateSet& StateSet::operator-=(const StateSet& other) noexcept {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

StateSet StateSet::complement() const {
  StateSet out(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  out.trim();
  return out;
}

std::vector<StateId> StateSet::ids() const {
  std::vector<StateId> out;
  out.reserve(count());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w != 0) {
      auto bit = static_cast<std::size_t>(std::countr_zero(w));
      out.push_back(static_cast<StateId>(i * 64 + bit));
      w &= w - 1;
    }
  }
  return out;
}

} // namespace hypersynth
