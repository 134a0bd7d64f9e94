#include "ipcf/typecheck.hpp"

#include <algorithm>

#include "ipcf/printer.hpp"

namespace ipcf {

void FixTypeTable::add(const Term& fixTerm, const Type& boxedType) {
  auto contains = [&](const std::vector<Type>& v) {
    return std::any_of(v.begin(), v.end(),
                       [&](const Type& ty) { return ty == boxedType; });
  };
  auto& bucket = byKey_[alphaKey(fixTerm)];
  if (!contains(bucket)) bucket.push_back(boxedType);
  if (!contains(all_)) all_.push_back(boxedType);
}

void FixTypeTable::record(const Derivation& d) {
  if (d.rule == RuleLabel::BoxFix) add(d.term, d.type);
  for (const auto& premise : d.premises) record(premise);
}

const std::vector<Type>* FixTypeTable::candidatesFor(
    const std::string& alphaKey) const {
  auto it = byKey_.find(alphaKey);
  return it == byKey_.end() ? nullptr : &it->second;
}

std::string_view ruleLabelName(RuleLabel r) {
  switch (r) {
    case RuleLabel::Var:
      return "var";
    case RuleLabel::ModalVar:
      return "box-var";
    case RuleLabel::ArrowIntro:
      return "arrow-intro";
    case RuleLabel::ArrowElim:
      return "arrow-elim";
    case RuleLabel::BoxIntro:
      return "box-intro";
    case RuleLabel::BoxElim:
      return "box-elim";
    case RuleLabel::BoxFix:
      return "box-fix";
    case RuleLabel::ConstRule:
      return "const";
    case RuleLabel::PrimRule:
      return "prim";
  }
  return "?";
}

std::string_view typeErrorKindName(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVar:
      return "UnboundVar";
    case TypeErrorKind::OrdinaryVarUnderBox:
      return "OrdinaryVarUnderBox";
    case TypeErrorKind::Mismatch:
      return "Mismatch";
    case TypeErrorKind::NotAFunction:
      return "NotAFunction";
    case TypeErrorKind::NotABox:
      return "NotABox";
    case TypeErrorKind::UnknownPrimOp:
      return "UnknownPrimOp";
    case TypeErrorKind::CannotInfer:
      return "CannotInfer";
  }
  return "?";
}

TypeError::TypeError(TypeErrorKind kind_, Term offending_, const std::string& message,
                     std::optional<Type> expected_, std::optional<Type> actual_,
                     std::string name_)
    : std::runtime_error(message),
      kind(kind_),
      offending(std::move(offending_)),
      expected(std::move(expected_)),
      actual(std::move(actual_)),
      name(std::move(name_)) {}

namespace {

using Shadowed = std::set<std::string>;

Type constType(const ConstTerm& c, const OpRegistry& reg, const Term& t) {
  Type F = Type::file();
  switch (c.kind) {
    case ConstKind::True:
    case ConstKind::False:
      return Type::boolean();
    case ConstKind::Succ:
    case ConstKind::Pred:
      return Type::arrow(Type::nat(), Type::nat());
    case ConstKind::ZeroTest:
      return Type::arrow(Type::nat(), Type::boolean());
    case ConstKind::Cond: {
      Type g = Type::ground(c.condSort);
      return Type::arrow(Type::boolean(), Type::arrow(g, Type::arrow(g, g)));
    }
    case ConstKind::In:
    case ConstKind::Out: {
      if (!reg.retractEnabled())
        throw TypeError(TypeErrorKind::UnknownPrimOp, t,
                        "the in/out retraction is not enabled",
                        std::nullopt, std::nullopt,
                        std::string(constName(c.kind)));
      Type ff = Type::boxed(Type::arrow(F, F));
      return c.kind == ConstKind::In ? Type::arrow(ff, F) : Type::arrow(F, ff);
    }
  }
  throw std::logic_error("constType: bad constant");
}

struct Checker {
  const OpRegistry& reg;
  const FixTypeTable* recovered = nullptr;

  // `shadowed` holds ordinary-variable names that went out of scope when a
  // box or fix body was entered; meeting one is the OrdinaryVarUnderBox error.
  Derivation check(const TypingContext& ctx, const Shadowed& shadowed, const Term& t,
                   const Type& want) {
    if (auto* f = t.get<FixBoxTerm>()) {
      if (!want.isBox())
        throw TypeError(TypeErrorKind::Mismatch, t,
                        "fix-box constructs a boxed type, but " + printType(want) +
                            " was expected",
                        want);
      const Type& a = want.inner();
      TypingContext premiseCtx =
          ctx.withoutOrdinary().withOrdinary(f->binder, Type::boxed(a));
      Shadowed sh = shadowed;
      for (const auto& b : ctx.ordinary) sh.insert(b.name);
      sh.erase(f->binder);
      Derivation body = check(premiseCtx, sh, f->body, a);
      return Derivation{RuleLabel::BoxFix, ctx, t, want, {std::move(body)}};
    }
    if (auto* lb = t.get<LetBoxTerm>()) {
      auto [subjectType, dSubject] = infer(ctx, shadowed, lb->subject);
      if (!subjectType.isBox())
        throw TypeError(TypeErrorKind::NotABox, lb->subject,
                        "let-box subject has type " + printType(subjectType) +
                            ", which is not a box",
                        std::nullopt, subjectType);
      TypingContext bodyCtx = ctx.withModal(lb->binder, subjectType.inner());
      Shadowed sh = shadowed;
      sh.erase(lb->binder);
      Derivation dBody = check(bodyCtx, sh, lb->body, want);
      return Derivation{RuleLabel::BoxElim, ctx, t, want,
                        {std::move(dSubject), std::move(dBody)}};
    }
    if (auto* l = t.get<LamTerm>()) {
      if (!want.isArrow())
        throw TypeError(TypeErrorKind::Mismatch, t,
                        "a lambda cannot have type " + printType(want), want);
      if (!(l->annot == want.dom()))
        throw TypeError(TypeErrorKind::Mismatch, t,
                        "binder annotation " + printType(l->annot) +
                            " disagrees with expected domain " + printType(want.dom()),
                        want.dom(), l->annot);
      TypingContext bodyCtx = ctx.withOrdinary(l->binder, l->annot);
      Shadowed sh = shadowed;
      sh.erase(l->binder);
      Derivation dBody = check(bodyCtx, sh, l->body, want.cod());
      return Derivation{RuleLabel::ArrowIntro, ctx, t, want, {std::move(dBody)}};
    }
    if (auto* b = t.get<BoxTermNode>()) {
      if (!want.isBox())
        throw TypeError(TypeErrorKind::Mismatch, t,
                        "a box cannot have type " + printType(want), want);
      Shadowed sh = shadowed;
      for (const auto& bind : ctx.ordinary) sh.insert(bind.name);
      Derivation dBody = check(ctx.withoutOrdinary(), sh, b->body, want.inner());
      return Derivation{RuleLabel::BoxIntro, ctx, t, want, {std::move(dBody)}};
    }
    if (auto* a = t.get<AppTerm>()) {
      // β-redex in check mode: the λ body inherits the expected type, so
      // check-only forms (fix-box above all) survive being bound through an
      // immediate application.
      if (auto* l = a->fn.get<LamTerm>()) {
        Derivation dArg = check(ctx, shadowed, a->arg, l->annot);
        TypingContext bodyCtx = ctx.withOrdinary(l->binder, l->annot);
        Shadowed sh = shadowed;
        sh.erase(l->binder);
        Derivation dBody = check(bodyCtx, sh, l->body, want);
        Derivation dFn{RuleLabel::ArrowIntro, ctx, a->fn,
                       Type::arrow(l->annot, want), {std::move(dBody)}};
        return Derivation{RuleLabel::ArrowElim, ctx, t, want,
                          {std::move(dFn), std::move(dArg)}};
      }
    }
    auto [got, d] = infer(ctx, shadowed, t);
    if (!(got == want))
      throw TypeError(TypeErrorKind::Mismatch, t,
                      "expected " + printType(want) + " but found " + printType(got),
                      want, got);
    return d;
  }

  std::pair<Type, Derivation> infer(const TypingContext& ctx, const Shadowed& shadowed,
                                    const Term& t) {
    if (auto* v = t.get<VarTerm>()) {
      if (const Type* ty = ctx.lookupOrdinary(v->name))
        return {*ty, Derivation{RuleLabel::Var, ctx, t, *ty, {}}};
      if (const Type* ty = ctx.lookupModal(v->name))
        return {*ty, Derivation{RuleLabel::ModalVar, ctx, t, *ty, {}}};
      if (shadowed.count(v->name))
        throw TypeError(TypeErrorKind::OrdinaryVarUnderBox, t,
                        "ordinary variable '" + v->name +
                            "' is not available under box",
                        std::nullopt, std::nullopt, v->name);
      throw TypeError(TypeErrorKind::UnboundVar, t, "unbound variable '" + v->name + "'",
                      std::nullopt, std::nullopt, v->name);
    }
    if (auto* l = t.get<LamTerm>()) {
      TypingContext bodyCtx = ctx.withOrdinary(l->binder, l->annot);
      Shadowed sh = shadowed;
      sh.erase(l->binder);
      auto [bodyType, dBody] = infer(bodyCtx, sh, l->body);
      Type ty = Type::arrow(l->annot, bodyType);
      return {ty, Derivation{RuleLabel::ArrowIntro, ctx, t, ty, {std::move(dBody)}}};
    }
    if (auto* a = t.get<AppTerm>()) {
      auto [fnType, dFn] = infer(ctx, shadowed, a->fn);
      if (!fnType.isArrow())
        throw TypeError(TypeErrorKind::NotAFunction, a->fn,
                        "applied term has type " + printType(fnType) +
                            ", which is not a function",
                        std::nullopt, fnType);
      Derivation dArg = check(ctx, shadowed, a->arg, fnType.dom());
      Type ty = fnType.cod();
      return {ty, Derivation{RuleLabel::ArrowElim, ctx, t, ty,
                             {std::move(dFn), std::move(dArg)}}};
    }
    if (auto* b = t.get<BoxTermNode>()) {
      Shadowed sh = shadowed;
      for (const auto& bind : ctx.ordinary) sh.insert(bind.name);
      auto [bodyType, dBody] = infer(ctx.withoutOrdinary(), sh, b->body);
      Type ty = Type::boxed(bodyType);
      return {ty, Derivation{RuleLabel::BoxIntro, ctx, t, ty, {std::move(dBody)}}};
    }
    if (auto* lb = t.get<LetBoxTerm>()) {
      auto [subjectType, dSubject] = infer(ctx, shadowed, lb->subject);
      if (!subjectType.isBox())
        throw TypeError(TypeErrorKind::NotABox, lb->subject,
                        "let-box subject has type " + printType(subjectType) +
                            ", which is not a box",
                        std::nullopt, subjectType);
      TypingContext bodyCtx = ctx.withModal(lb->binder, subjectType.inner());
      Shadowed sh = shadowed;
      sh.erase(lb->binder);
      auto [bodyType, dBody] = infer(bodyCtx, sh, lb->body);
      return {bodyType, Derivation{RuleLabel::BoxElim, ctx, t, bodyType,
                                   {std::move(dSubject), std::move(dBody)}}};
    }
    if (t.get<FixBoxTerm>()) {
      if (recovered && !recovered->empty()) {
        // Try remembered types: exact alpha-matches first, then every other
        // remembered type (substitution into a fix body changes the key but
        // not the type). Each candidate is verified by a full check.
        std::vector<Type> candidates;
        auto push = [&](const Type& ty) {
          if (std::none_of(candidates.begin(), candidates.end(),
                           [&](const Type& c) { return c == ty; }))
            candidates.push_back(ty);
        };
        if (const auto* exact = recovered->candidatesFor(alphaKey(t)))
          for (const auto& ty : *exact) push(ty);
        for (const auto& ty : recovered->allTypes()) push(ty);
        for (const auto& cand : candidates) {
          try {
            Derivation d = check(ctx, shadowed, t, cand);
            return {cand, std::move(d)};
          } catch (const TypeError&) {
          }
        }
      }
      throw TypeError(TypeErrorKind::CannotInfer, t,
                      "fix-box only checks against a boxed type; annotate it");
    }
    if (t.get<NatTerm>()) {
      return {Type::nat(), Derivation{RuleLabel::ConstRule, ctx, t, Type::nat(), {}}};
    }
    if (auto* c = t.get<ConstTerm>()) {
      Type ty = constType(*c, reg, t);
      return {ty, Derivation{RuleLabel::ConstRule, ctx, t, ty, {}}};
    }
    if (auto* p = t.get<PrimTerm>()) {
      const IntensionalOp* op = reg.find(p->name);
      if (!op)
        throw TypeError(TypeErrorKind::UnknownPrimOp, t,
                        "unknown intensional operation '~" + p->name + "'",
                        std::nullopt, std::nullopt, p->name);
      Type ty = opType(*op);
      return {ty, Derivation{RuleLabel::PrimRule, ctx, t, ty, {}}};
    }
    throw std::logic_error("infer: unhandled term");
  }
};

}  // namespace

Derivation check(const TypingContext& ctx, const Term& t, const Type& expected,
                 const OpRegistry& reg, const FixTypeTable* recovered) {
  Checker c{reg, recovered};
  return c.check(ctx, {}, t, expected);
}

std::pair<Type, Derivation> infer(const TypingContext& ctx, const Term& t,
                                  const OpRegistry& reg,
                                  const FixTypeTable* recovered) {
  Checker c{reg, recovered};
  return c.infer(ctx, {}, t);
}

}  // namespace ipcf
