#include "ipcf/reduce.hpp"

#include "ipcf/printer.hpp"

namespace ipcf {

std::string_view stepRuleName(StepRule r) {
  switch (r) {
    case StepRule::Beta:
      return "beta";
    case StepRule::BoxBeta:
      return "box-beta";
    case StepRule::BoxFix:
      return "box-fix";
    case StepRule::BoxInt:
      return "box-int";
    case StepRule::ZeroTest1:
      return "zero?-1";
    case StepRule::ZeroTest2:
      return "zero?-2";
    case StepRule::Succ:
      return "succ";
    case StepRule::Pred:
      return "pred";
    case StepRule::Cond1:
      return "if-1";
    case StepRule::Cond2:
      return "if-2";
    case StepRule::OutIn:
      return "out-in";
    case StepRule::CongLam:
      return "cong-lam";
    case StepRule::App1:
      return "app-1";
    case StepRule::App2:
      return "app-2";
    case StepRule::LetCong1:
      return "let-cong-1";
    case StepRule::LetCong2:
      return "let-cong-2";
  }
  return "?";
}

std::string_view traceStatusName(TraceStatus s) {
  return s == TraceStatus::Normal ? "normal" : "fuel-exhausted";
}

IllTypedStuck::IllTypedStuck(Term term_, const std::string& message)
    : std::runtime_error(message), term(std::move(term_)) {}

bool isCanonical(const Term& t) {
  if (t.get<NatTerm>() || t.get<LamTerm>() || t.get<BoxTermNode>()) return true;
  if (auto* c = t.get<ConstTerm>())
    return c->kind == ConstKind::True || c->kind == ConstKind::False;
  return false;
}

namespace {

bool isBoolLit(const Term& t, bool& value) {
  auto* c = t.get<ConstTerm>();
  if (!c) return false;
  if (c->kind == ConstKind::True) {
    value = true;
    return true;
  }
  if (c->kind == ConstKind::False) {
    value = false;
    return true;
  }
  return false;
}

bool isConst(const Term& t, ConstKind k) {
  auto* c = t.get<ConstTerm>();
  return c && c->kind == k;
}

// Matches the ⊃_G spine ⊃ b t e at the node applying the third argument.
struct CondSpine {
  Term cond;
  Term thenBranch;
  Term elseBranch;
};
std::optional<CondSpine> matchCond(const AppTerm& a) {
  auto* inner = a.fn.get<AppTerm>();
  if (!inner) return std::nullopt;
  auto* head = inner->fn.get<AppTerm>();
  if (!head) return std::nullopt;
  if (!isConst(head->fn, ConstKind::Cond)) return std::nullopt;
  return CondSpine{head->arg, inner->arg, a.arg};
}

// Head-redex step at the root of t, if any.
std::optional<Step> headStep(const Term& t, const OpRegistry& reg) {
  if (auto* f = t.get<FixBoxTerm>()) {
    Term unrolled = Term::box(substitute(f->body, t, f->binder));
    return Step{StepRule::BoxFix, {}, unrolled};
  }
  if (auto* lb = t.get<LetBoxTerm>()) {
    if (auto* b = lb->subject.get<BoxTermNode>())
      return Step{StepRule::BoxBeta, {}, substitute(lb->body, b->body, lb->binder)};
    return std::nullopt;
  }
  auto* a = t.get<AppTerm>();
  if (!a) return std::nullopt;

  if (auto* l = a->fn.get<LamTerm>())
    return Step{StepRule::Beta, {}, substitute(l->body, a->arg, l->binder)};

  if (auto* p = a->fn.get<PrimTerm>()) {
    const IntensionalOp* op = reg.find(p->name);
    if (op) {
      if (auto* b = a->arg.get<BoxTermNode>()) {
        if (isClosed(b->body)) {
          if (auto result = reg.applyOp(*op, b->body)) {
            Term out = op->unboxedResult ? *result : Term::box(*result);
            return Step{StepRule::BoxInt, {}, out};
          }
        }
      }
    }
    return std::nullopt;
  }

  if (auto* c = a->fn.get<ConstTerm>()) {
    auto* n = a->arg.get<NatTerm>();
    switch (c->kind) {
      case ConstKind::Succ:
        if (n) return Step{StepRule::Succ, {}, Term::nat(n->value + 1)};
        return std::nullopt;
      case ConstKind::Pred:
        if (n) return Step{StepRule::Pred, {}, Term::nat(n->value == 0 ? 0 : n->value - 1)};
        return std::nullopt;
      case ConstKind::ZeroTest:
        if (n) {
          return n->value == 0
                     ? Step{StepRule::ZeroTest1, {}, Term::constant(ConstKind::True)}
                     : Step{StepRule::ZeroTest2, {}, Term::constant(ConstKind::False)};
        }
        return std::nullopt;
      case ConstKind::Out:
        if (reg.retractEnabled()) {
          if (auto* inApp = a->arg.get<AppTerm>()) {
            if (isConst(inApp->fn, ConstKind::In))
              return Step{StepRule::OutIn, {}, inApp->arg};
          }
        }
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  if (auto spine = matchCond(*a)) {
    bool b;
    if (isBoolLit(spine->cond, b)) {
      return b ? Step{StepRule::Cond1, {}, spine->thenBranch}
               : Step{StepRule::Cond2, {}, spine->elseBranch};
    }
  }
  return std::nullopt;
}

Step liftStep(const Step& s, int child, const Term& rebuilt) {
  Path p;
  p.reserve(s.path.size() + 1);
  p.push_back(child);
  p.insert(p.end(), s.path.begin(), s.path.end());
  return Step{s.rule, std::move(p), rebuilt};
}

}  // namespace

std::vector<Step> stepAll(const Term& t, const OpRegistry& reg) {
  std::vector<Step> out;
  if (auto h = headStep(t, reg)) out.push_back(*h);

  std::visit(
      Overloaded{
          [&](const LamTerm& l) {
            for (const Step& s : stepAll(l.body, reg))
              out.push_back(liftStep(s, 0, Term::lam(l.binder, l.annot, s.result)));
          },
          [&](const AppTerm& a) {
            for (const Step& s : stepAll(a.fn, reg))
              out.push_back(liftStep(s, 0, Term::app(s.result, a.arg)));
            for (const Step& s : stepAll(a.arg, reg))
              out.push_back(liftStep(s, 1, Term::app(a.fn, s.result)));
          },
          [&](const LetBoxTerm& lb) {
            for (const Step& s : stepAll(lb.subject, reg))
              out.push_back(liftStep(s, 0, Term::letBox(lb.binder, s.result, lb.body)));
            for (const Step& s : stepAll(lb.body, reg))
              out.push_back(liftStep(s, 1, Term::letBox(lb.binder, lb.subject, s.result)));
          },
          [&](const auto&) {},  // no congruence into box, fix bodies, leaves
      },
      t.data().node);
  return out;
}

namespace {

// Is t a legal no-step term when it sits where the strategy demands a value?
// Canonical forms, under-applied constants, the `in` constructor, blocked
// prim applications, and free variables all qualify; what does not is a
// wrong-shaped canonical form, which the caller turns into IllTypedStuck.
[[noreturn]] void stuck(const Term& t, const std::string& what) {
  throw IllTypedStuck(t, "ill-typed stuck term: " + what + ": " + printTerm(t));
}

}  // namespace

std::optional<Step> strategyStep(const Term& t, const OpRegistry& reg) {
  if (auto* f = t.get<FixBoxTerm>()) {
    (void)f;
    return headStep(t, reg);
  }
  if (auto* lb = t.get<LetBoxTerm>()) {
    if (lb->subject.get<BoxTermNode>()) return headStep(t, reg);
    if (auto s = strategyStep(lb->subject, reg))
      return liftStep(*s, 0, Term::letBox(lb->binder, s->result, lb->body));
    if (isCanonical(lb->subject)) stuck(t, "let-box subject is not a box");
    return std::nullopt;  // subject blocked or open: stuckness propagates
  }
  auto* a = t.get<AppTerm>();
  if (!a) return std::nullopt;  // canonical forms, leaves, box: no step

  // Head redex at this node?
  if (auto* l = a->fn.get<LamTerm>()) {
    (void)l;
    return headStep(t, reg);
  }
  if (auto* p = a->fn.get<PrimTerm>()) {
    if (auto h = headStep(t, reg)) return h;
    if (auto* b = a->arg.get<BoxTermNode>()) {
      (void)b;
      // ~f (box M) with f(M) undefined (or op unknown): permanently blocked.
      return std::nullopt;
    }
    if (auto s = strategyStep(a->arg, reg))
      return liftStep(*s, 1, Term::app(a->fn, s->result));
    if (isCanonical(a->arg)) stuck(t, "intensional op applied to a non-box");
    (void)p;
    return std::nullopt;
  }
  if (auto* c = a->fn.get<ConstTerm>()) {
    switch (c->kind) {
      case ConstKind::Succ:
      case ConstKind::Pred:
      case ConstKind::ZeroTest: {
        if (auto h = headStep(t, reg)) return h;
        if (auto s = strategyStep(a->arg, reg))
          return liftStep(*s, 1, Term::app(a->fn, s->result));
        if (isCanonical(a->arg)) stuck(t, "arithmetic on a non-numeral");
        return std::nullopt;
      }
      case ConstKind::Out: {
        if (auto h = headStep(t, reg)) return h;
        if (auto* arg = a->arg.get<AppTerm>()) {
          // `in M` is a value of type F; any other application keeps reducing.
          if (reg.retractEnabled() && isConst(arg->fn, ConstKind::In)) return std::nullopt;
        }
        if (auto s = strategyStep(a->arg, reg))
          return liftStep(*s, 1, Term::app(a->fn, s->result));
        if (isCanonical(a->arg)) stuck(t, "out applied to a non-in value");
        return std::nullopt;
      }
      case ConstKind::In:
        return std::nullopt;  // constructor value; CBN leaves the payload alone
      case ConstKind::True:
      case ConstKind::False:
        stuck(t, "a boolean literal cannot be applied");
      case ConstKind::Cond:
        return std::nullopt;  // under-applied ⊃: a value awaiting arguments
    }
    return std::nullopt;
  }
  if (auto spine = matchCond(*a)) {
    if (auto h = headStep(t, reg)) return h;
    if (auto s = strategyStep(spine->cond, reg)) {
      Term rebuilt = *replaceAt(t, {0, 0, 1}, s->result);
      Path p{0, 0, 1};
      p.insert(p.end(), s->path.begin(), s->path.end());
      return Step{s->rule, std::move(p), std::move(rebuilt)};
    }
    if (isCanonical(spine->cond)) stuck(t, "conditional on a non-boolean");
    return std::nullopt;
  }

  // General application: function position first.
  if (auto s = strategyStep(a->fn, reg))
    return liftStep(*s, 0, Term::app(s->result, a->arg));
  if (isCanonical(a->fn)) stuck(t, "a non-function is applied");
  return std::nullopt;
}

Trace normalize(const Term& t, int fuel, const OpRegistry& reg) {
  Trace trace{t, {}, TraceStatus::Normal};
  Term cur = t;
  for (int i = 0; i < fuel; ++i) {
    auto s = strategyStep(cur, reg);
    if (!s) {
      trace.status = TraceStatus::Normal;
      return trace;
    }
    cur = s->result;
    trace.steps.push_back(std::move(*s));
  }
  trace.status = strategyStep(cur, reg) ? TraceStatus::FuelExhausted : TraceStatus::Normal;
  return trace;
}

}  // namespace ipcf
