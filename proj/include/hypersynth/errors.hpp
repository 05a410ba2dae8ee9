#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypersynth {

// Malformed input document (bad JSON, wrong field types).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Two observation-equivalent symbols drive the attacker automaton to
// different successors, so the masked product is not deterministic.
class DeterminismError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class CapExceeded : public std::runtime_error {
public:
  CapExceeded(const std::string& what, std::size_t cap)
      : std::runtime_error(what), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
};

} // namespace hypersynth
