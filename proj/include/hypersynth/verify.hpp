#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypersynth/automata.hpp"
#include "hypersynth/hypergame.hpp"
#include "hypersynth/network.hpp"
#include "hypersynth/oracle.hpp"
#include "hypersynth/synthesis.hpp"

namespace hypersynth {

struct Check {
  std::string name;
  bool passed = true;
  bool informational = false; // reported, never fails the run
  std::string detail;

  Check() = default;
  Check(std::string n, bool ok = true, bool info = false, std::string d = {})
      : name(std::move(n)), passed(ok), informational(info), detail(std::move(d)) {}
};

struct VerifyInputs {
  const LabeledArena* arena = nullptr;
  const Dfa* a1 = nullptr;
  const Dfa* a2 = nullptr;
  const Mask* mask = nullptr;
  const Hts* hts = nullptr; // exported HTS to check; rebuilt when null
  SynthesisOptions options;
  std::size_t oracle_cap = kOracleCap;
};

// Solver-versus-oracle equivalence and the module invariants.
std::vector<Check> run_checks(const VerifyInputs& in);

bool all_passed(const std::vector<Check>& checks);

// The same checks on `count` random hypergames drawn from `seed`.
std::vector<Check> random_corpus_checks(unsigned long long seed, std::size_t count);

} // namespace hypersynth
