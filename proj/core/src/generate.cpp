#include "ipcf/generate.hpp"

#include <functional>
#include <utility>
#include <vector>

#include "ipcf/printer.hpp"
#include "ipcf/typecheck.hpp"

namespace ipcf {

const char* corpusName(Corpus c) {
  switch (c) {
    case Corpus::Stlc: return "stlc";
    case Corpus::Modal: return "modal";
    case Corpus::Fixpoint: return "fixpoint";
    case Corpus::Ops: return "ops";
  }
  return "?";
}

Corpus corpusFromName(const std::string& name) {
  if (name == "stlc") return Corpus::Stlc;
  if (name == "modal") return Corpus::Modal;
  if (name == "fixpoint") return Corpus::Fixpoint;
  if (name == "ops") return Corpus::Ops;
  throw std::invalid_argument("unknown corpus '" + name +
                              "' (expected stlc, modal, fixpoint, ops)");
}

namespace {

struct Gen {
  std::mt19937_64& rng;
  Corpus corpus;
  const OpRegistry& reg;

  bool allowModal() const { return corpus != Corpus::Stlc; }
  bool allowFix() const {
    return corpus == Corpus::Fixpoint || corpus == Corpus::Ops;
  }
  bool allowOps() const { return corpus == Corpus::Ops; }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  std::string freshBinder(const TypingContext& ctx, const char* base) {
    return freshName(base, ctx.allNames());
  }

  // Smallest term of the goal type: a variable when one is in scope, else a
  // canonical form built by structural recursion on the type.
  Term leaf(const TypingContext& ctx, const Type& goal) {
    std::vector<Term> vars;
    for (const auto& b : ctx.ordinary)
      if (b.type == goal) vars.push_back(Term::var(b.name));
    for (const auto& b : ctx.modal)
      if (b.type == goal) vars.push_back(Term::var(b.name));
    if (!vars.empty() && pick(100) < 70) return vars[pick(int(vars.size()))];

    if (goal.isGround()) {
      switch (goal.asGround()) {
        case Ground::Nat:
          return Term::nat(std::uint64_t(pick(4)));
        case Ground::Bool:
          return Term::constant(pick(2) ? ConstKind::True : ConstKind::False);
        case Ground::File:
          if (reg.retractEnabled()) {
            std::string f = freshBinder(ctx, "file");
            return Term::app(Term::constant(ConstKind::In),
                             Term::box(Term::lam(f, Type::file(), Term::var(f))));
          }
          if (!vars.empty()) return vars[pick(int(vars.size()))];
          throw GenerationExhausted("no closed inhabitant of F without in/out");
      }
    }
    if (goal.isArrow()) {
      std::string x = freshBinder(ctx, "x");
      return Term::lam(x, goal.dom(),
                       leaf(ctx.withOrdinary(x, goal.dom()), goal.cod()));
    }
    // goal.isBox(): body typed in (Δ; ·)
    return Term::box(leaf(ctx.withoutOrdinary(), goal.inner()));
  }

  // `mustInfer` marks positions whose type the checker has to synthesize
  // (let-box subjects, and anything reached from one through infer-mode
  // premises). fix-box only checks against an annotation, so it is excluded
  // there; box contents and λ bodies inherit the flag because their infer
  // rules recurse in infer mode.
  Term gen(const TypingContext& ctx, const Type& goal, int depth,
           bool mustInfer) {
    if (depth <= 0) return leaf(ctx, goal);

    using Maker = std::function<Term()>;
    std::vector<std::pair<int, Maker>> cands;
    auto add = [&](int weight, Maker m) { cands.emplace_back(weight, std::move(m)); };

    add(18, [&] { return leaf(ctx, goal); });

    if (goal.isArrow()) {
      add(30, [&, this] {
        std::string x = freshBinder(ctx, "x");
        return Term::lam(x, goal.dom(),
                         gen(ctx.withOrdinary(x, goal.dom()), goal.cod(), depth - 1,
                             mustInfer));
      });
    }

    // application (function synthesizes) and β-redex (checkable as a whole)
    // at a freshly sampled argument type
    add(22, [&, this] {
      Type argTy = sampleType(rng, 1, corpus);
      Term fn = gen(ctx, Type::arrow(argTy, goal), depth - 1, true);
      Term arg = gen(ctx, argTy, depth - 1, false);
      return Term::app(fn, arg);
    });
    add(22, [&, this] {
      Type argTy = sampleType(rng, 1, corpus);
      std::string x = freshBinder(ctx, "x");
      Term body = gen(ctx.withOrdinary(x, argTy), goal, depth - 1, mustInfer);
      Term arg = gen(ctx, argTy, depth - 1, false);
      return Term::app(Term::lam(x, argTy, body), arg);
    });

    if (goal.isGround()) {
      if (goal.asGround() == Ground::Nat) {
        add(14, [&, this] {
          return Term::app(
              Term::constant(pick(2) ? ConstKind::Succ : ConstKind::Pred),
              gen(ctx, Type::nat(), depth - 1, false));
        });
      }
      if (goal.asGround() == Ground::Bool) {
        add(10, [&, this] {
          return Term::app(Term::constant(ConstKind::ZeroTest),
                           gen(ctx, Type::nat(), depth - 1, false));
        });
      }
      add(14, [&, this] {
        return Term::app(Term::cond(goal.asGround()),
                         gen(ctx, Type::boolean(), depth - 1, false),
                         gen(ctx, goal, depth - 1, false),
                         gen(ctx, goal, depth - 1, false));
      });
    }

    if (allowModal()) {
      if (goal.isBox()) {
        add(28, [&, this] {
          return Term::box(gen(ctx.withoutOrdinary(), goal.inner(), depth - 1,
                               mustInfer));
        });
      }
      add(18, [&, this] {
        Type inner = sampleType(rng, 1, corpus);
        std::string u = freshBinder(ctx, "u");
        Term subject = gen(ctx, Type::boxed(inner), depth - 1, true);
        Term body = gen(ctx.withModal(u, inner), goal, depth - 1, mustInfer);
        return Term::letBox(u, subject, body);
      });
      add(18, [&, this] {  // guaranteed □β-redex
        Type inner = sampleType(rng, 1, corpus);
        std::string u = freshBinder(ctx, "u");
        Term subject =
            Term::box(gen(ctx.withoutOrdinary(), inner, depth - 1, true));
        Term body = gen(ctx.withModal(u, inner), goal, depth - 1, mustInfer);
        return Term::letBox(u, subject, body);
      });
    }

    if (allowFix() && goal.isBox() && !mustInfer) {
      int w = corpus == Corpus::Fixpoint ? 30 : 14;
      add(w, [&, this] {
        std::string z = freshBinder(ctx, "z");
        Term body = gen(ctx.withoutOrdinary().withOrdinary(z, goal), goal.inner(),
                        depth - 1, false);
        return Term::fixBox(z, body);
      });
    }

    if (allowOps()) {
      for (const auto& op : reg.ops()) {
        Type result = op.unboxedResult ? op.codomain : Type::boxed(op.codomain);
        if (result == goal) {
          add(16, [&, this] {
            return Term::app(Term::prim(op.name),
                             Term::box(gen(ctx.withoutOrdinary(), op.domain,
                                           depth - 1, false)));
          });
        }
      }
      if (reg.retractEnabled()) {
        Type code = Type::boxed(Type::arrow(Type::file(), Type::file()));
        if (goal.isGround() && goal.asGround() == Ground::File) {
          add(14, [&, this, code] {
            return Term::app(Term::constant(ConstKind::In),
                             gen(ctx, code, depth - 1, false));
          });
        }
        if (goal == code) {
          add(14, [&, this] {
            return Term::app(Term::constant(ConstKind::Out),
                             gen(ctx, Type::file(), depth - 1, false));
          });
        }
      }
    }

    while (!cands.empty()) {
      int total = 0;
      for (auto& [w, _] : cands) total += w;
      int r = pick(total);
      std::size_t i = 0;
      for (; i < cands.size(); ++i) {
        r -= cands[i].first;
        if (r < 0) break;
      }
      try {
        return cands[i].second();
      } catch (const GenerationExhausted&) {
        cands.erase(cands.begin() + long(i));
      }
    }
    throw GenerationExhausted("no production applies to goal " + printType(goal));
  }
};

}  // namespace

Type sampleType(std::mt19937_64& rng, int depth, Corpus corpus) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto ground = [&]() -> Type {
    if (corpus == Corpus::Ops && pick(4) == 0) return Type::file();
    return pick(2) ? Type::nat() : Type::boolean();
  };
  if (depth <= 0) return ground();
  int r = pick(100);
  if (r < 50) return ground();
  if (r < 80 || corpus == Corpus::Stlc)
    return Type::arrow(sampleType(rng, depth - 1, corpus),
                       sampleType(rng, depth - 1, corpus));
  return Type::boxed(sampleType(rng, depth - 1, corpus));
}

Term generateTerm(std::mt19937_64& rng, const TypingContext& ctx, const Type& goal,
                  int depth, Corpus corpus, const OpRegistry& reg) {
  Gen g{rng, corpus, reg};
  return g.gen(ctx, goal, depth, /*mustInfer=*/false);
}

GeneratedTerm generateWellTyped(const GenConfig& cfg, const OpRegistry& reg) {
  std::mt19937_64 rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    Type goal = sampleType(rng, std::min(cfg.depth, 3), cfg.corpus);
    std::optional<Term> t;
    try {
      t = generateTerm(rng, TypingContext{}, goal, cfg.depth, cfg.corpus, reg);
    } catch (const GenerationExhausted&) {
      continue;  // resample the goal type
    }
    try {
      check(TypingContext{}, *t, goal, reg);
    } catch (const TypeError& e) {
      throw std::logic_error(std::string("generator produced an ill-typed term: ") +
                             e.what() + "\n  term: " + printTerm(*t) +
                             "\n  goal: " + printType(goal));
    }
    return GeneratedTerm{std::move(*t), std::move(goal)};
  }
  throw GenerationExhausted("could not generate a term after " +
                            std::to_string(cfg.attempts) + " attempts");
}

}  // namespace ipcf
