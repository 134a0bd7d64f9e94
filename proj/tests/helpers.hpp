#pragma once

// Shared helpers for the test suites: deterministic sampling of closed and
// open well-typed terms, and small parsing shortcuts.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ipcf/develop.hpp"
#include "ipcf/generate.hpp"
#include "ipcf/ops.hpp"
#include "ipcf/parser.hpp"
#include "ipcf/prelude.hpp"
#include "ipcf/printer.hpp"
#include "ipcf/reduce.hpp"
#include "ipcf/syntax.hpp"
#include "ipcf/typecheck.hpp"

namespace ipcf::testing {

inline Term tt(const std::string& text) { return parseTerm(text); }
inline Type ty(const std::string& text) { return parseTypeText(text); }

// Expands prelude names inside an ad-hoc source snippet.
inline Term preludeTerm(const std::string& text) {
  return expandTerm(parseTerm(text), preludeDefs());
}

inline const OpRegistry& fullRegistry() {
  static std::shared_ptr<const OpRegistry> reg = makeBuiltinRegistry();
  return *reg;
}

inline const OpRegistry& bareRegistry() {
  static std::shared_ptr<const OpRegistry> reg = makeEmptyRegistry();
  return *reg;
}

// Closed well-typed sample, or nullopt when generation is exhausted for this
// seed (callers skip those seeds; determinism keeps runs reproducible).
inline std::optional<GeneratedTerm> sampleClosed(std::uint64_t seed, Corpus corpus,
                                                 int depth = 5) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.corpus = corpus;
  cfg.depth = depth;
  try {
    return generateWellTyped(cfg, fullRegistry());
  } catch (const GenerationExhausted&) {
    return std::nullopt;
  }
}

// Open term with free ordinary variables a : Nat, b : Bool, f : Nat -> Nat
// and a modal variable m : Nat, at the given goal type.
struct OpenSample {
  TypingContext ctx;
  Term term;
  Type goal;
};

inline std::optional<OpenSample> sampleOpen(std::uint64_t seed, Corpus corpus,
                                            int depth = 4) {
  std::mt19937_64 rng(seed);
  TypingContext ctx;
  ctx = ctx.withOrdinary("a", Type::nat());
  ctx = ctx.withOrdinary("b", Type::boolean());
  ctx = ctx.withOrdinary("f", Type::arrow(Type::nat(), Type::nat()));
  ctx = ctx.withModal("m", Type::nat());
  Type goal = sampleType(rng, 2, corpus);
  try {
    Term t = generateTerm(rng, ctx, goal, depth, corpus, fullRegistry());
    return OpenSample{ctx, t, goal};
  } catch (const GenerationExhausted&) {
    return std::nullopt;
  }
}

// Replays a parallel-reduction witness against the single-step relation:
// every recorded step must be one of the machine's own steps (same rule at
// the same position with the same result), and the chain must land exactly
// on the witness target. Returns false on any mismatch.
inline bool replayWitness(const Term& source, const ParallelWitness& w,
                          const OpRegistry& reg) {
  Term cur = source;
  for (const Step& want : w.steps) {
    bool matched = false;
    for (const Step& have : stepAll(cur, reg)) {
      if (have.rule == want.rule && have.path == want.path &&
          alphaEq(have.result, want.result)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
    cur = want.result;
  }
  return alphaEq(cur, w.target);
}

}  // namespace ipcf::testing
