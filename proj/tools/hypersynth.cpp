#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hypersynth/errors.hpp"
#include "hypersynth/hypergame.hpp"
#include "hypersynth/json_io.hpp"
#include "hypersynth/network.hpp"
#include "hypersynth/synthesis.hpp"
#include "hypersynth/verify.hpp"

namespace fs = std::filesystem;
using namespace hypersynth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitCap = 2;
constexpr int kExitMismatch = 3;

struct RunConfig {
  std::string network;
  std::string arena;
  std::string a1;
  std::string a2;
  std::string mask;
  std::string hts;
  std::string mode = "all";
  std::string out = ".";
  std::size_t cap = kDefaultStateCap;
  std::string outside_win2 = "all-actions";
  unsigned long long seed = 1;
  std::size_t random = 0;
};

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void timing(const char* phase, const Stopwatch& w) {
  std::cout << "time " << phase << ": " << w.seconds() << " s\n";
}

LabeledArena load_input_arena(const RunConfig& cfg) {
  if (!cfg.network.empty()) {
    Stopwatch w;
    auto la = build_arena(load_network(cfg.network), cfg.cap);
    std::cout << "arena: " << la.arena.graph.size() << " states, " << la.arena.graph.edge_count()
              << " edges\n";
    timing("arena generation", w);
    return la;
  }
  if (!cfg.arena.empty()) return load_arena(cfg.arena);
  throw ValidationError("either --network or --arena is required");
}

struct Automata {
  Dfa a1, a2;
  Mask mask;
};

Automata load_automata(const RunConfig& cfg) {
  if (cfg.a1.empty() || cfg.a2.empty() || cfg.mask.empty())
    throw ValidationError("--a1, --a2 and --mask are required");
  Automata au{load_dfa(cfg.a1), load_dfa(cfg.a2), {}};
  au.mask = load_mask(cfg.mask, au.a1.alphabet());
  return au;
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  fs::create_directories(dir);
  return dir;
}

int cmd_arena(const RunConfig& cfg) {
  if (cfg.network.empty()) throw ValidationError("--network is required");
  const LabeledArena la = load_input_arena(cfg);
  const fs::path dir = out_dir(cfg);
  write_json_file((dir / "arena.json").string(), arena_to_json(la));
  write_text_file((dir / "arena.dot").string(), arena_to_dot(la));
  return kExitOk;
}

void print_report(const DeceptionReport& r) {
  std::cout << to_string(r.mode) << ": |win1_safe| = " << r.win1_safe.count()
            << (r.initial_in_safe ? " (initial wins)" : " (initial loses)")
            << ", |win1_cosafe| = " << r.win1_cosafe.count()
            << (r.initial_in_cosafe ? " (initial wins)" : " (initial loses)");
  if (r.dead_p2_states) std::cout << ", dead P2 states: " << r.dead_p2_states;
  std::cout << "\n";
}

int cmd_synthesize(const RunConfig& cfg) {
  const LabeledArena la = load_input_arena(cfg);
  const Automata au = load_automata(cfg);
  SynthesisOptions opts;
  opts.outside_win2 = outside_win2_from_string(cfg.outside_win2);
  const std::string mode = cfg.mode;
  if (mode != "all") mode_from_string(mode);

  Stopwatch build;
  const Pipeline p = build_pipeline(la, au.a1, au.a2, au.mask, cfg.cap);
  std::cout << "hts: " << p.hts.graph.size() << " states, " << p.hts.graph.edge_count()
            << " edges; perceptual game: " << p.pg.graph.size() << " states\n";
  timing("hts generation", build);

  const fs::path dir = out_dir(cfg);
  write_json_file((dir / "hts.json").string(), hts_to_json(p.hts));

  Stopwatch solve;
  if (mode == "all") {
    const Comparison c = compare_modes(p, opts);
    timing("solving", solve);
    write_json_file((dir / "truthful_hts.json").string(), hts_to_json(p.truthful_hts));
    write_json_file((dir / "report_none.json").string(), report_to_json(p.truthful_hts.graph, c.rows[0]));
    write_json_file((dir / "report_greedy.json").string(), report_to_json(p.hts.graph, c.rows[1]));
    write_json_file((dir / "report_randomized.json").string(), report_to_json(p.hts.graph, c.rows[2]));
    const std::string table = comparison_table(c);
    write_text_file((dir / "table.txt").string(), table);
    write_text_file((dir / "hts.dot").string(), partition_dot(p.hts, p.pg, c.rows[1], &c.rows[2]));
    for (const auto& r : c.rows) print_report(r);
    std::cout << table;
    return kExitOk;
  }
  const Mode m = mode_from_string(mode);
  const Hts& hts = m == Mode::none ? p.truthful_hts : p.hts;
  const PerceptualGame& pg = m == Mode::none ? p.truthful_pg : p.pg;
  const DeceptionReport r = synthesize_deceptive(hts, pg, m, opts);
  timing("solving", solve);
  if (m == Mode::none) write_json_file((dir / "truthful_hts.json").string(), hts_to_json(hts));
  write_json_file((dir / ("report_" + mode + ".json")).string(), report_to_json(hts.graph, r));
  write_text_file((dir / "hts.dot").string(), partition_dot(hts, pg, r, nullptr));
  print_report(r);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<Check> checks;
  if (cfg.random > 0) {
    checks = random_corpus_checks(cfg.seed, cfg.random);
  } else {
    const LabeledArena la = load_input_arena(cfg);
    const Automata au = load_automata(cfg);
    std::optional<Hts> hts;
    if (!cfg.hts.empty()) hts = load_hts(cfg.hts);
    VerifyInputs in;
    in.arena = &la;
    in.a1 = &au.a1;
    in.a2 = &au.a2;
    in.mask = &au.mask;
    in.hts = hts ? &*hts : nullptr;
    in.options.outside_win2 = outside_win2_from_string(cfg.outside_win2);
    checks = run_checks(in);
  }
  for (const auto& c : checks) {
    std::cout << (c.informational ? "[info] " : c.passed ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << "\n";
  }
  if (!all_passed(checks)) {
    for (const auto& c : checks)
      if (!c.passed && !c.informational) std::cerr << "verification failed: " << c.name << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_export_dot(const RunConfig& cfg) {
  const fs::path dir = out_dir(cfg);
  if (!cfg.hts.empty()) {
    write_text_file((dir / "hts.dot").string(), hts_to_dot(load_hts(cfg.hts)));
    return kExitOk;
  }
  write_text_file((dir / "arena.dot").string(), arena_to_dot(load_input_arena(cfg)));
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deceptive strategy synthesis for attacker-defender hypergames"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto inputs = [&cfg](CLI::App* sub) {
    sub->add_option("--network", cfg.network, "network config (JSON)");
    sub->add_option("--arena", cfg.arena, "abstract arena (JSON)");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--cap", cfg.cap, "state cap")->check(CLI::PositiveNumber);
  };
  auto automata = [&cfg](CLI::App* sub) {
    sub->add_option("--a1", cfg.a1, "defender hidden co-safe DFA");
    sub->add_option("--a2", cfg.a2, "attacker co-safe DFA");
    sub->add_option("--mask", cfg.mask, "product mask");
    sub->add_option("--outside-win2", cfg.outside_win2, "no-actions | all-actions");
  };

  auto* arena = app.add_subcommand("arena", "generate the game arena");
  inputs(arena);
  auto* synth = app.add_subcommand("synthesize", "build the HTS and solve");
  inputs(synth);
  automata(synth);
  synth->add_option("--mode", cfg.mode, "none | greedy | randomized | all");
  synth->add_option("--seed", cfg.seed, "random seed");
  auto* verify = app.add_subcommand("verify", "check solvers against the oracle and invariants");
  inputs(verify);
  automata(verify);
  verify->add_option("--hts", cfg.hts, "exported HTS to check");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--random", cfg.random, "check this many random hypergames instead");
  auto* dot = app.add_subcommand("export-dot", "write DOT for an arena or HTS");
  inputs(dot);
  dot->add_option("--hts", cfg.hts, "exported HTS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (arena->parsed()) return cmd_arena(cfg);
    if (synth->parsed()) return cmd_synthesize(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    return cmd_export_dot(cfg);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
