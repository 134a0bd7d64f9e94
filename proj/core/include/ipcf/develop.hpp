#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "ipcf/ops.hpp"
#include "ipcf/reduce.hpp"
#include "ipcf/syntax.hpp"

namespace ipcf {

// One parallel reduct together with a realizing single-step sequence
// (constructive witness of ⇒ ⊆ ↠). steps[i].result applied in order leads
// from the source to target; an empty list is the refl case.
struct ParallelWitness {
  Term target;
  std::vector<Step> steps;
};

struct ParallelSet {
  std::vector<Term> terms;
  bool truncated = false;
};

struct WitnessSet {
  std::vector<ParallelWitness> items;
  bool truncated = false;
};

// Caps on the per-node parallel-reduct enumeration. Witness enumeration
// carries realizing step sequences and is kept small; the targets-only
// enumeration used for membership queries is cheap enough for a larger cap.
constexpr std::size_t kParallelLimit = 256;
constexpr std::size_t kMembershipLimit = 4096;

// Every N with t ⇒ N (deduplicated up to α, t itself first). The limit caps
// the product blow-up per node; when hit, `truncated` is set and the
// enumeration is a sample rather than the full set.
ParallelSet parallelSteps(const Term& t, const OpRegistry& reg,
                          std::size_t limit = kMembershipLimit);
WitnessSet parallelWitnesses(const Term& t, const OpRegistry& reg,
                             std::size_t limit = kParallelLimit);

// The complete development M⋆: contract every visible redex simultaneously.
Term completeDevelopment(const Term& t, const OpRegistry& reg);

// M⋆ together with a realizing single-step sequence (children first, then
// the head redex). Replaying the steps gives an enumeration-independent
// check that M ↠ M⋆.
ParallelWitness developmentWitness(const Term& t, const OpRegistry& reg);

// Membership query "from ⇒ to" by enumeration; `known` false means the
// enumeration truncated before deciding, true means `holds` is the answer.
struct ParallelMembership {
  bool holds = false;
  bool known = true;
};
ParallelMembership parallelStepExists(const Term& from, const Term& to,
                                      const OpRegistry& reg,
                                      std::size_t limit = kMembershipLimit);

class OracleViolation : public std::runtime_error {
 public:
  OracleViolation(const std::string& message, Term source, Term left, Term right,
                  Term development);
  Term source, left, right, development;
};

struct DiamondResult {
  Term development;  // m⋆, the common reduct
  bool conclusive = true;  // false only if a membership enumeration truncated
};

// For p, q with m ⇒ p and m ⇒ q, checks p ⇒ m⋆ and q ⇒ m⋆ and returns m⋆.
// Throws OracleViolation when a membership check conclusively fails.
DiamondResult closeDiamond(const Term& m, const Term& p, const Term& q,
                           const OpRegistry& reg,
                           std::size_t limit = kMembershipLimit);

// Reusable oracle that caches per-node enumerations across queries. Reducts
// of one source term share almost all their subtrees, so batching the
// sandwich and diamond checks for a term through one instance avoids
// re-enumerating the shared parts for every pair of reducts.
//
// Enumerations are cached by node identity: every term passed to a query
// must outlive the oracle instance. Scope an instance to one source term and
// its reducts.
class ParallelOracle {
 public:
  explicit ParallelOracle(const OpRegistry& reg,
                          std::size_t memberLimit = kMembershipLimit,
                          std::size_t witnessLimit = kParallelLimit);
  ~ParallelOracle();
  ParallelOracle(const ParallelOracle&) = delete;
  ParallelOracle& operator=(const ParallelOracle&) = delete;

  ParallelSet steps(const Term& t);
  WitnessSet witnesses(const Term& t);
  ParallelMembership member(const Term& from, const Term& to);
  DiamondResult closeDiamond(const Term& m, const Term& p, const Term& q);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl;
};

}  // namespace ipcf
