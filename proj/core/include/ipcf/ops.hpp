#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ipcf/syntax.hpp"

namespace ipcf {

// A named partial map on closed terms, exposed in the language as the
// constant ~name : []A -> []B (or []A -> B when unboxedResult is set, as for
// done?). apply may assume its argument is closed and of type A; returning
// nullopt means the (□int) redex simply never fires.
struct IntensionalOp {
  std::string name;
  Type domain;
  Type codomain;
  bool unboxedResult = false;
  std::function<std::optional<Term>(const Term&)> apply;
};

// ~name : []A -> []B, or []A -> B for unboxed results.
Type opType(const IntensionalOp& op);

class DuplicateOp : public std::runtime_error {
 public:
  explicit DuplicateOp(const std::string& name);
  std::string name;
};

// Fixed at startup, consulted by the typechecker ((~f) lookups, in/out
// availability) and the reduction engine ((□int), out-in). Non-copyable:
// built-in op closures hold a pointer back to their registry.
class OpRegistry {
 public:
  OpRegistry() = default;
  OpRegistry(const OpRegistry&) = delete;
  OpRegistry& operator=(const OpRegistry&) = delete;

  void registerOp(IntensionalOp op);  // throws DuplicateOp
  const IntensionalOp* find(std::string_view name) const;
  const std::vector<IntensionalOp>& ops() const { return ops_; }

  // Runs op.apply; in debug builds the result is typechecked against the
  // declared codomain (a failure is a registry bug, reported loudly).
  std::optional<Term> applyOp(const IntensionalOp& op, const Term& closedArg) const;

  bool retractEnabled() const { return retract_; }
  void setRetract(bool on) { retract_ = on; }

 private:
  std::vector<IntensionalOp> ops_;
  bool retract_ = false;
};

// Which built-ins to enable; mirrors the CLI flag --ops tick,done,is-app,retract.
struct OpSelection {
  bool tick = true;
  bool done = true;
  bool isApp = true;
  bool retract = true;

  // Parses a comma-separated subset of {tick, done, is-app, retract}.
  static OpSelection fromList(std::string_view csv);
};

// tick : []Bool -> []Bool   one strategy step on a closed Bool term
// done? : []Bool -> Bool    total: is the closed Bool term strategy-normal
// is-app : []Nat -> []Bool  syntactic application test
// plus the in/out retraction toggle.
std::shared_ptr<const OpRegistry> makeBuiltinRegistry(const OpSelection& sel = {});

// Registry with no ops and no retraction: the bare modal calculus.
std::shared_ptr<const OpRegistry> makeEmptyRegistry();

}  // namespace ipcf
