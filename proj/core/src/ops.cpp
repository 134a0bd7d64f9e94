#include "ipcf/ops.hpp"

#include <sstream>

#include "ipcf/printer.hpp"
#include "ipcf/reduce.hpp"
#include "ipcf/typecheck.hpp"

namespace ipcf {

Type opType(const IntensionalOp& op) {
  Type cod = op.unboxedResult ? op.codomain : Type::boxed(op.codomain);
  return Type::arrow(Type::boxed(op.domain), cod);
}

DuplicateOp::DuplicateOp(const std::string& opName)
    : std::runtime_error("duplicate intensional op: ~" + opName), name(opName) {}

void OpRegistry::registerOp(IntensionalOp op) {
  if (find(op.name)) throw DuplicateOp(op.name);
  ops_.push_back(std::move(op));
}

const IntensionalOp* OpRegistry::find(std::string_view name) const {
  for (const auto& op : ops_)
    if (op.name == name) return &op;
  return nullptr;
}

std::optional<Term> OpRegistry::applyOp(const IntensionalOp& op,
                                        const Term& closedArg) const {
  auto result = op.apply(closedArg);
#ifndef NDEBUG
  if (result) {
    std::ostringstream why;
    if (!isClosed(*result)) {
      why << "op ~" << op.name << " produced an open term: " << printTerm(*result);
      throw std::logic_error(why.str());
    }
    try {
      check(TypingContext{}, *result, op.codomain, *this);
    } catch (const TypeError& e) {
      why << "op ~" << op.name << " produced a term of the wrong type ("
          << e.what() << "): " << printTerm(*result);
      throw std::logic_error(why.str());
    }
  }
#endif
  return result;
}

OpSelection OpSelection::fromList(std::string_view csv) {
  OpSelection sel{false, false, false, false};
  std::string item;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item == "tick")
      sel.tick = true;
    else if (item == "done" || item == "done?")
      sel.done = true;
    else if (item == "is-app")
      sel.isApp = true;
    else if (item == "retract")
      sel.retract = true;
    else
      throw std::invalid_argument("unknown op name in --ops list: '" + item +
                                  "' (expected tick, done, is-app, retract)");
  }
  return sel;
}

namespace {

// One step of the fixed strategy on a closed term, as a partial map:
// undefined on normal forms. Demand-position shape errors are treated as
// "no step available".
std::optional<Term> tickStep(const OpRegistry* self, const Term& m) {
  try {
    auto s = strategyStep(m, *self);
    if (!s) return std::nullopt;
    return s->result;
  } catch (const IllTypedStuck&) {
    return std::nullopt;
  }
}

}  // namespace

std::shared_ptr<const OpRegistry> makeBuiltinRegistry(const OpSelection& sel) {
  auto reg = std::make_shared<OpRegistry>();
  const OpRegistry* self = reg.get();  // op closures step with their own registry
  reg->setRetract(sel.retract);
  if (sel.tick) {
    reg->registerOp(IntensionalOp{
        "tick", Type::boolean(), Type::boolean(), false,
        [self](const Term& m) { return tickStep(self, m); }});
  }
  if (sel.done) {
    reg->registerOp(IntensionalOp{
        "done?", Type::boolean(), Type::boolean(), true,
        [self](const Term& m) -> std::optional<Term> {
          return Term::constant(tickStep(self, m) ? ConstKind::False
                                                  : ConstKind::True);
        }});
  }
  if (sel.isApp) {
    reg->registerOp(IntensionalOp{
        "is-app", Type::nat(), Type::boolean(), false,
        [](const Term& m) -> std::optional<Term> {
          return Term::constant(m.get<AppTerm>() ? ConstKind::True
                                                 : ConstKind::False);
        }});
  }
  return reg;
}

std::shared_ptr<const OpRegistry> makeEmptyRegistry() {
  return std::make_shared<OpRegistry>();
}

}  // namespace ipcf
