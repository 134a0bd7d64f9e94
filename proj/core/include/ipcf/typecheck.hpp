#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ipcf/ops.hpp"
#include "ipcf/syntax.hpp"

namespace ipcf {

enum class RuleLabel {
  Var,         // ordinary hypothesis
  ModalVar,    // modal hypothesis
  ArrowIntro,  // λ
  ArrowElim,   // application
  BoxIntro,    // box M under (Δ; ·)
  BoxElim,     // let box
  BoxFix,      // fix z. M, premise under (Δ; z:[]A)
  ConstRule,   // literals and constants
  PrimRule,    // ~f from the registry
};

std::string_view ruleLabelName(RuleLabel r);

struct Derivation {
  RuleLabel rule;
  TypingContext ctx;
  Term term;
  Type type;
  std::vector<Derivation> premises;
};

enum class TypeErrorKind {
  UnboundVar,
  OrdinaryVarUnderBox,  // an ordinary (Γ) variable used inside box / fix body
  Mismatch,
  NotAFunction,
  NotABox,
  UnknownPrimOp,
  CannotInfer,  // fix z. M in inference position (fix-box is check-only)
};

std::string_view typeErrorKindName(TypeErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, Term offending, const std::string& message,
            std::optional<Type> expected = std::nullopt,
            std::optional<Type> actual = std::nullopt, std::string name = {});

  TypeErrorKind kind;
  Term offending;
  std::optional<Type> expected;
  std::optional<Type> actual;
  std::string name;  // variable or op name when relevant
};

// Types at which fix-terms were seen to check, keyed by their alpha-equivalence
// key. Reduction can substitute a fix-term — which checks but never infers —
// into a position the checker must infer (a let-box subject, most commonly),
// so a plain re-check of a reduction step can fail with CannotInfer even
// though the step preserves the type. Harvest each step's derivation into a
// FixTypeTable with record() and pass the table to check/infer for the next
// step: inference of a fix-term then tries the remembered types, verifying
// every candidate with a full check. A stale or colliding entry can therefore
// never produce an ill-typed derivation; the table only recovers completeness.
class FixTypeTable {
 public:
  // Remember that `fixTerm` checks at `boxedType` (deduplicated).
  void add(const Term& fixTerm, const Type& boxedType);
  // Add every fix-term typed anywhere inside the derivation.
  void record(const Derivation& d);
  // Types previously seen for terms alpha-equal to this key, or nullptr.
  const std::vector<Type>* candidatesFor(const std::string& alphaKey) const;
  // All distinct remembered types; tried as a fallback because substitution
  // into a fix body changes the term's key but not the type it needs.
  const std::vector<Type>& allTypes() const { return all_; }
  bool empty() const { return all_.empty(); }

 private:
  std::map<std::string, std::vector<Type>> byKey_;
  std::vector<Type> all_;
};

// Bidirectional checker over the dual context Δ; Γ. Lambdas are annotated so
// inference is syntax-directed everywhere except fix z. M, which only checks
// (against []A, with premise ordinary context exactly {z : []A}); a non-null
// `recovered` table lets inference retry such terms at remembered types.
Derivation check(const TypingContext& ctx, const Term& t, const Type& expected,
                 const OpRegistry& reg, const FixTypeTable* recovered = nullptr);
std::pair<Type, Derivation> infer(const TypingContext& ctx, const Term& t,
                                  const OpRegistry& reg,
                                  const FixTypeTable* recovered = nullptr);

}  // namespace ipcf
