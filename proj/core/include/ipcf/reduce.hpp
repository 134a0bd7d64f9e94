#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ipcf/ops.hpp"
#include "ipcf/syntax.hpp"

namespace ipcf {

// Single-step rule labels. Congruence labels exist in the vocabulary, but an
// emitted Step records the rule contracted at its redex; the path carries the
// congruence context.
enum class StepRule {
  Beta,      // (λx:A. M) N → M[N/x]
  BoxBeta,   // let box u = box M in N → N[M/u]
  BoxFix,    // fix z. M → box M[fix z. M/z]
  BoxInt,    // ~f (box M) → box f(M), M closed, f(M) defined
  ZeroTest1, // zero? 0 → true
  ZeroTest2, // zero? (n+1) → false
  Succ,      // succ n → n+1
  Pred,      // pred n → n∸1
  Cond1,     // ⊃ true M N → M
  Cond2,     // ⊃ false M N → N
  OutIn,     // out (in M) → M
  CongLam,
  App1,
  App2,
  LetCong1,
  LetCong2,
};

std::string_view stepRuleName(StepRule r);

struct Step {
  StepRule rule;
  Path path;  // where the redex sits; congruences never enter a box
  Term result;
};

// A stuck destructor met a canonical argument of the wrong shape (succ true,
// (box M) N, ...). Cannot happen to a checked term; signals a checker bug.
class IllTypedStuck : public std::runtime_error {
 public:
  explicit IllTypedStuck(Term term, const std::string& message);
  Term term;
};

// All single-step reducts, head rules first, then child positions in order.
// Works on open terms; never reduces inside box or a fix body.
std::vector<Step> stepAll(const Term& t, const OpRegistry& reg);

// Deterministic leftmost-outermost call-by-name step, or nullopt when no
// strategy step applies (canonical form, value spine, blocked op, or a free
// variable in head position).
std::optional<Step> strategyStep(const Term& t, const OpRegistry& reg);

// Canonical forms: numerals, true/false, λ, box M.
bool isCanonical(const Term& t);

enum class TraceStatus { Normal, FuelExhausted };
std::string_view traceStatusName(TraceStatus s);

struct Trace {
  Term initial;
  std::vector<Step> steps;
  TraceStatus status = TraceStatus::Normal;

  const Term& final() const { return steps.empty() ? initial : steps.back().result; }
};

constexpr int kDefaultFuel = 10000;

// Iterates strategyStep up to fuel times.
Trace normalize(const Term& t, int fuel, const OpRegistry& reg);

}  // namespace ipcf
