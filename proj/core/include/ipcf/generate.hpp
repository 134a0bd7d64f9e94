#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "ipcf/ops.hpp"
#include "ipcf/syntax.hpp"

namespace ipcf {

// Term-shape fragments for the property suites: plain simply-typed terms,
// terms with box/let-box, fixpoint-heavy terms, and terms that use the
// intensional ops (plus in/out and the file type F).
enum class Corpus { Stlc, Modal, Fixpoint, Ops };

const char* corpusName(Corpus c);
Corpus corpusFromName(const std::string& name);  // throws std::invalid_argument

struct GenConfig {
  int depth = 6;
  std::uint64_t seed = 0;
  Corpus corpus = Corpus::Stlc;
  int attempts = 64;  // resampling budget before GenerationExhausted
};

class GenerationExhausted : public std::runtime_error {
 public:
  explicit GenerationExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

struct GeneratedTerm {
  Term term;
  Type type;
};

// Samples a goal type for the given corpus (arrows, boxes, and F gated by
// corpus; depth bounds the type size).
Type sampleType(std::mt19937_64& rng, int depth, Corpus corpus);

// Generates a term of the goal type in the given dual context, biased toward
// redex-dense shapes so the reduction suites have something to step. Throws
// GenerationExhausted when the budget runs out.
Term generateTerm(std::mt19937_64& rng, const TypingContext& ctx, const Type& goal,
                  int depth, Corpus corpus, const OpRegistry& reg);

// Closed well-typed term at a sampled type; deterministic in cfg.seed.
// Postcondition (checked): the result typechecks at the reported type.
GeneratedTerm generateWellTyped(const GenConfig& cfg, const OpRegistry& reg);

}  // namespace ipcf
