#include "ipcf/develop.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>

#include "ipcf/printer.hpp"

namespace ipcf {

OracleViolation::OracleViolation(const std::string& message, Term source_, Term left_,
                                 Term right_, Term development_)
    : std::runtime_error(message),
      source(std::move(source_)),
      left(std::move(left_)),
      right(std::move(right_)),
      development(std::move(development_)) {}

namespace {

bool isConst(const Term& t, ConstKind k) {
  auto* c = t.get<ConstTerm>();
  return c && c->kind == k;
}

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

using Rebuild = std::function<Term(const Term&)>;

std::vector<Step> liftSeq(const std::vector<Step>& seq, const Path& prefix,
                          const Rebuild& rebuild) {
  std::vector<Step> out;
  out.reserve(seq.size());
  for (const Step& s : seq) {
    Path p = prefix;
    p.insert(p.end(), s.path.begin(), s.path.end());
    out.push_back(Step{s.rule, std::move(p), rebuild(s.result)});
  }
  return out;
}

std::vector<Step> concatSeq(std::vector<Step> a, std::vector<Step> b) {
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  return a;
}

// Congruence products in single-sided-first order: (i, 0) for all i, then
// (0, j), then mixed pairs. Every one-child-changed combination — in
// particular every single congruence step — lands within the first
// nLeft + nRight entries, so the cap cannot starve them. `emit` returns
// false to stop.
template <typename F>
void productOrder(std::size_t nLeft, std::size_t nRight, F&& emit) {
  for (std::size_t i = 0; i < nLeft; ++i)
    if (!emit(i, 0)) return;
  for (std::size_t j = 1; j < nRight; ++j)
    if (!emit(0, j)) return;
  for (std::size_t i = 1; i < nLeft; ++i)
    for (std::size_t j = 1; j < nRight; ++j)
      if (!emit(i, j)) return;
}

// Per-node enumeration result. `buckets` indexes `items` by α-hash (dedup
// doubles as the membership index; alphaEq resolves the rare collisions
// exactly). `complete` records that the cap was not hit at this node nor
// anywhere below it, i.e. `items` really is the full set of parallel reducts.
struct NodeEntry {
  std::vector<ParallelWitness> items;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  bool complete = true;

  bool contains(const Term& t) const {
    auto it = buckets.find(alphaHash(t));
    if (it == buckets.end()) return false;
    for (auto i : it->second)
      if (alphaEq(items[i].target, t)) return true;
    return false;
  }

  // Registers t at the next item index; the caller pushes the item itself.
  bool insert(const Term& t) {
    auto& idxs = buckets[alphaHash(t)];
    for (auto i : idxs)
      if (alphaEq(items[i].target, t)) return false;
    idxs.push_back(std::uint32_t(items.size()));
    return true;
  }
};

// Enumerates the parallel reducts of each node, bottom-up, with realizing
// single-step sequences. Per-node output is deduplicated up to α and capped
// at `limit`. Shared subterm nodes are enumerated once per Enumerator
// lifetime (terms share subtree pointers, so the memo also covers a redex's
// body appearing both under the congruence case and under the contraction
// case, and it persists across queries on overlapping terms).
//
// Memo keys are node addresses, so every term queried through one Enumerator
// must stay alive for as long as the Enumerator does.
struct Enumerator {
  const OpRegistry& reg;
  std::size_t limit;
  // When false, witness step sequences are not built (targets only); the
  // product loops then skip all sequence lifting, which is the dominant cost.
  bool witnesses;
  std::map<const TermData*, NodeEntry> memo;

  std::vector<Step> lift(const std::vector<Step>& seq, const Path& prefix,
                         const Rebuild& rebuild) const {
    if (!witnesses) return {};
    return liftSeq(seq, prefix, rebuild);
  }

  std::vector<Step> cat(const std::vector<Step>& a,
                        const std::vector<Step>& b) const {
    if (!witnesses) return {};
    return concatSeq(a, b);
  }

  const NodeEntry& run(const Term& t) {
    if (auto it = memo.find(&t.data()); it != memo.end()) return it->second;
    auto result = enumerate(t);
    return memo.emplace(&t.data(), std::move(result)).first->second;
  }

  ParallelMembership member(const Term& from, const Term& to) {
    const NodeEntry& e = run(from);
    if (e.contains(to)) return {true, true};
    return {false, e.complete};
  }

  NodeEntry enumerate(const Term& t) {
    NodeEntry entry;
    bool capHit = false;
    bool kidsComplete = true;
    // α-dedup can keep items.size() below the cap while product loops churn
    // through duplicates, so attempts are budgeted independently.
    std::size_t attempts = 0;
    const std::size_t attemptBudget = 4 * limit;
    auto full = [&] {
      if (entry.items.size() < limit && attempts < attemptBudget) return false;
      capHit = true;
      return true;
    };
    auto add = [&](Term target, std::vector<Step> steps) {
      if (full()) return;
      ++attempts;
      if (entry.insert(target))
        entry.items.push_back(ParallelWitness{std::move(target), std::move(steps)});
    };
    // Child enumerations feed product loops; an incomplete child makes this
    // node incomplete too.
    auto sub = [&](const Term& u) -> const NodeEntry& {
      const NodeEntry& e = run(u);
      kidsComplete = kidsComplete && e.complete;
      return e;
    };

    add(t, {});  // (refl)
    // Seed the complete development — the canonical maximal parallel step —
    // so membership hits (notably the diamond target m⋆) do not depend on
    // where the cap truncates the product enumeration below. In witness mode
    // the seed carries its realizing sequence and is validated by replay
    // exactly like every enumerated item.
    if (witnesses) {
      auto d = developmentWitness(t, reg);
      add(std::move(d.target), std::move(d.steps));
    } else {
      add(completeDevelopment(t, reg), {});
    }

    std::visit(
        Overloaded{
            [&](const VarTerm&) {},
            [&](const NatTerm&) {},
            [&](const ConstTerm&) {},
            [&](const PrimTerm&) {},
            [&](const BoxTermNode&) {},  // no parallel congruence under box
            [&](const LamTerm& l) {
              for (const auto& [body, seq] : sub(l.body).items) {
                if (full()) break;
                add(Term::lam(l.binder, l.annot, body),
                    lift(seq, {0}, [&](const Term& b) {
                      return Term::lam(l.binder, l.annot, b);
                    }));
              }
            },
            [&](const FixBoxTerm& f) {
              Term unrolled = Term::box(substitute(f.body, t, f.binder));
              add(unrolled, {Step{StepRule::BoxFix, {}, unrolled}});
            },
            [&](const AppTerm& a) {
              const auto& fnItems = sub(a.fn).items;
              const auto& argItems = sub(a.arg).items;

              // (app) congruence products
              productOrder(fnItems.size(), argItems.size(),
                           [&](std::size_t i, std::size_t j) {
                             if (full()) return false;
                             const auto& fw = fnItems[i];
                             const auto& aw = argItems[j];
                             auto seq = lift(fw.steps, {0}, [&](const Term& f) {
                               return Term::app(f, a.arg);
                             });
                             add(Term::app(fw.target, aw.target),
                                 cat(seq, lift(aw.steps, {1}, [&](const Term& x) {
                                       return Term::app(fw.target, x);
                                     })));
                             return true;
                           });

              // (→β)
              if (auto* l = a.fn.get<LamTerm>()) {
                for (const auto& [body, bodySeq] : sub(l->body).items) {
                  if (full()) break;
                  auto viaBody =
                      lift(bodySeq, {0, 0}, [&](const Term& b) {
                        return Term::app(Term::lam(l->binder, l->annot, b), a.arg);
                      });
                  Term lamFinal = Term::lam(l->binder, l->annot, body);
                  for (const auto& [arg, argSeq] : argItems) {
                    if (full()) break;
                    Term target = substitute(body, arg, l->binder);
                    auto seq = cat(viaBody, lift(argSeq, {1}, [&](const Term& x) {
                                     return Term::app(lamFinal, x);
                                   }));
                    seq.push_back(Step{StepRule::Beta, {}, target});
                    add(std::move(target), std::move(seq));
                  }
                }
              }

              // (□int)
              if (auto* p = a.fn.get<PrimTerm>()) {
                if (const IntensionalOp* op = reg.find(p->name)) {
                  if (auto* b = a.arg.get<BoxTermNode>()) {
                    if (isClosed(b->body)) {
                      if (auto result = reg.applyOp(*op, b->body)) {
                        Term target =
                            op->unboxedResult ? *result : Term::box(*result);
                        add(target, {Step{StepRule::BoxInt, {}, target}});
                      }
                    }
                  }
                }
              }

              // constant δ-rules
              if (auto* c = a.fn.get<ConstTerm>()) {
                if (auto* n = a.arg.get<NatTerm>()) {
                  if (c->kind == ConstKind::Succ) {
                    Term target = Term::nat(n->value + 1);
                    add(target, {Step{StepRule::Succ, {}, target}});
                  } else if (c->kind == ConstKind::Pred) {
                    Term target = Term::nat(n->value == 0 ? 0 : n->value - 1);
                    add(target, {Step{StepRule::Pred, {}, target}});
                  } else if (c->kind == ConstKind::ZeroTest) {
                    Term target = Term::constant(n->value == 0 ? ConstKind::True
                                                               : ConstKind::False);
                    add(target, {Step{n->value == 0 ? StepRule::ZeroTest1
                                                    : StepRule::ZeroTest2,
                                      {}, target}});
                  }
                }
                if (c->kind == ConstKind::Out && reg.retractEnabled()) {
                  if (auto* inner = a.arg.get<AppTerm>()) {
                    if (isConst(inner->fn, ConstKind::In)) {
                      for (const auto& [m, seq] : sub(inner->arg).items) {
                        if (full()) break;
                        add(m, cat({Step{StepRule::OutIn, {}, inner->arg}}, seq));
                      }
                    }
                  }
                }
              }

              // (⊃₁)/(⊃₂): the premise reduces only the taken branch
              if (auto spine = matchCond(a)) {
                if (isConst(spine->cond, ConstKind::True)) {
                  for (const auto& [m, seq] : sub(spine->thenBranch).items) {
                    if (full()) break;
                    add(m, cat({Step{StepRule::Cond1, {}, spine->thenBranch}}, seq));
                  }
                } else if (isConst(spine->cond, ConstKind::False)) {
                  for (const auto& [m, seq] : sub(spine->elseBranch).items) {
                    if (full()) break;
                    add(m, cat({Step{StepRule::Cond2, {}, spine->elseBranch}}, seq));
                  }
                }
              }
            },
            [&](const LetBoxTerm& lb) {
              const auto& subjectItems = sub(lb.subject).items;
              const auto& bodyItems = sub(lb.body).items;

              // (let-cong)
              productOrder(
                  subjectItems.size(), bodyItems.size(),
                  [&](std::size_t i, std::size_t j) {
                    if (full()) return false;
                    const auto& sw = subjectItems[i];
                    const auto& bw = bodyItems[j];
                    auto seq = lift(sw.steps, {0}, [&](const Term& x) {
                      return Term::letBox(lb.binder, x, lb.body);
                    });
                    add(Term::letBox(lb.binder, sw.target, bw.target),
                        cat(seq, lift(bw.steps, {1}, [&](const Term& x) {
                              return Term::letBox(lb.binder, sw.target, x);
                            })));
                    return true;
                  });

              // (□β): subject stays verbatim, body reduces, then contract.
              if (auto* box = lb.subject.get<BoxTermNode>()) {
                for (const auto& [b, bSeq] : bodyItems) {
                  if (full()) break;
                  Term target = substitute(b, box->body, lb.binder);
                  auto seq = lift(bSeq, {1}, [&](const Term& x) {
                    return Term::letBox(lb.binder, lb.subject, x);
                  });
                  seq.push_back(Step{StepRule::BoxBeta, {}, target});
                  add(std::move(target), std::move(seq));
                }
              }
            },
        },
        t.data().node);
    entry.complete = !capHit && kidsComplete;
    return entry;
  }
};

ParallelSet stepsVia(Enumerator& e, const Term& t) {
  const NodeEntry& root = e.run(t);
  ParallelSet out;
  out.truncated = !root.complete;
  out.terms.reserve(root.items.size());
  for (const auto& it : root.items) out.terms.push_back(it.target);
  return out;
}

WitnessSet witnessesVia(Enumerator& e, const Term& t) {
  const NodeEntry& root = e.run(t);
  return WitnessSet{root.items, !root.complete};
}

DiamondResult closeDiamondVia(Enumerator& e, const Term& m, const Term& p,
                              const Term& q) {
  Term dev = completeDevelopment(m, e.reg);
  auto mp = e.member(p, dev);
  if (mp.known && !mp.holds)
    throw OracleViolation("diamond failure: left reduct does not parallel-step to "
                          "the development\n  m = " +
                              printTerm(m) + "\n  p = " + printTerm(p) +
                              "\n  m* = " + printTerm(dev),
                          m, p, q, dev);
  auto mq = e.member(q, dev);
  if (mq.known && !mq.holds)
    throw OracleViolation("diamond failure: right reduct does not parallel-step to "
                          "the development\n  m = " +
                              printTerm(m) + "\n  q = " + printTerm(q) +
                              "\n  m* = " + printTerm(dev),
                          m, p, q, dev);
  return DiamondResult{dev, mp.known && mq.known};
}

}  // namespace

ParallelSet parallelSteps(const Term& t, const OpRegistry& reg, std::size_t limit) {
  Enumerator e{reg, limit, /*witnesses=*/false, {}};
  return stepsVia(e, t);
}

WitnessSet parallelWitnesses(const Term& t, const OpRegistry& reg, std::size_t limit) {
  Enumerator e{reg, limit, /*witnesses=*/true, {}};
  return witnessesVia(e, t);
}

// ---------------------------------------------------------------------------
// Complete development
// ---------------------------------------------------------------------------

Term completeDevelopment(const Term& t, const OpRegistry& reg) {
  auto cd = [&](const Term& u) { return completeDevelopment(u, reg); };
  return std::visit(
      Overloaded{
          [&](const VarTerm&) { return t; },
          [&](const NatTerm&) { return t; },
          [&](const ConstTerm&) { return t; },
          [&](const PrimTerm&) { return t; },
          [&](const BoxTermNode&) { return t; },  // (box M)⋆ = box M
          [&](const LamTerm& l) { return Term::lam(l.binder, l.annot, cd(l.body)); },
          [&](const FixBoxTerm& f) {
            return Term::box(substitute(f.body, t, f.binder));
          },
          [&](const AppTerm& a) {
            // An op applied to a closed boxed term develops by firing the op;
            // when the op is undefined there the fall-through congruence
            // leaves the application intact (ops and boxes develop to
            // themselves).
            if (auto* p = a.fn.get<PrimTerm>()) {
              if (const IntensionalOp* op = reg.find(p->name)) {
                if (auto* b = a.arg.get<BoxTermNode>()) {
                  if (isClosed(b->body)) {
                    if (auto result = reg.applyOp(*op, b->body))
                      return op->unboxedResult ? *result : Term::box(*result);
                  }
                }
              }
            }
            if (auto* l = a.fn.get<LamTerm>())
              return substitute(cd(l->body), cd(a.arg), l->binder);
            if (auto spine = matchCond(a)) {
              if (isConst(spine->cond, ConstKind::True)) return cd(spine->thenBranch);
              if (isConst(spine->cond, ConstKind::False)) return cd(spine->elseBranch);
            }
            if (auto* c = a.fn.get<ConstTerm>()) {
              if (auto* n = a.arg.get<NatTerm>()) {
                if (c->kind == ConstKind::Succ) return Term::nat(n->value + 1);
                if (c->kind == ConstKind::Pred)
                  return Term::nat(n->value == 0 ? 0 : n->value - 1);
                if (c->kind == ConstKind::ZeroTest)
                  return Term::constant(n->value == 0 ? ConstKind::True
                                                      : ConstKind::False);
              }
              if (c->kind == ConstKind::Out && reg.retractEnabled()) {
                if (auto* inner = a.arg.get<AppTerm>()) {
                  if (isConst(inner->fn, ConstKind::In)) return cd(inner->arg);
                }
              }
            }
            return Term::app(cd(a.fn), cd(a.arg));
          },
          [&](const LetBoxTerm& lb) {
            if (auto* box = lb.subject.get<BoxTermNode>())
              return substitute(cd(lb.body), box->body, lb.binder);
            return Term::letBox(lb.binder, cd(lb.subject), cd(lb.body));
          },
      },
      t.data().node);
}

// Mirrors completeDevelopment case for case; the sequence realizes each
// contraction with single steps (premises first, then the head redex), so
// the two functions must pick the same redexes to stay α-equal on targets.
ParallelWitness developmentWitness(const Term& t, const OpRegistry& reg) {
  auto dw = [&](const Term& u) { return developmentWitness(u, reg); };
  return std::visit(
      Overloaded{
          [&](const VarTerm&) { return ParallelWitness{t, {}}; },
          [&](const NatTerm&) { return ParallelWitness{t, {}}; },
          [&](const ConstTerm&) { return ParallelWitness{t, {}}; },
          [&](const PrimTerm&) { return ParallelWitness{t, {}}; },
          [&](const BoxTermNode&) { return ParallelWitness{t, {}}; },
          [&](const LamTerm& l) {
            auto body = dw(l.body);
            return ParallelWitness{
                Term::lam(l.binder, l.annot, body.target),
                liftSeq(body.steps, {0}, [&](const Term& b) {
                  return Term::lam(l.binder, l.annot, b);
                })};
          },
          [&](const FixBoxTerm& f) {
            Term unrolled = Term::box(substitute(f.body, t, f.binder));
            return ParallelWitness{unrolled,
                                   {Step{StepRule::BoxFix, {}, unrolled}}};
          },
          [&](const AppTerm& a) {
            if (auto* p = a.fn.get<PrimTerm>()) {
              if (const IntensionalOp* op = reg.find(p->name)) {
                if (auto* b = a.arg.get<BoxTermNode>()) {
                  if (isClosed(b->body)) {
                    if (auto result = reg.applyOp(*op, b->body)) {
                      Term target =
                          op->unboxedResult ? *result : Term::box(*result);
                      return ParallelWitness{
                          target, {Step{StepRule::BoxInt, {}, target}}};
                    }
                  }
                }
              }
            }
            if (auto* l = a.fn.get<LamTerm>()) {
              auto body = dw(l->body);
              auto arg = dw(a.arg);
              Term target = substitute(body.target, arg.target, l->binder);
              auto seq = liftSeq(body.steps, {0, 0}, [&](const Term& b) {
                return Term::app(Term::lam(l->binder, l->annot, b), a.arg);
              });
              Term lamFinal = Term::lam(l->binder, l->annot, body.target);
              seq = concatSeq(std::move(seq),
                              liftSeq(arg.steps, {1}, [&](const Term& x) {
                                return Term::app(lamFinal, x);
                              }));
              seq.push_back(Step{StepRule::Beta, {}, target});
              return ParallelWitness{std::move(target), std::move(seq)};
            }
            if (auto spine = matchCond(a)) {
              if (isConst(spine->cond, ConstKind::True)) {
                auto branch = dw(spine->thenBranch);
                return ParallelWitness{
                    branch.target,
                    concatSeq({Step{StepRule::Cond1, {}, spine->thenBranch}},
                              std::move(branch.steps))};
              }
              if (isConst(spine->cond, ConstKind::False)) {
                auto branch = dw(spine->elseBranch);
                return ParallelWitness{
                    branch.target,
                    concatSeq({Step{StepRule::Cond2, {}, spine->elseBranch}},
                              std::move(branch.steps))};
              }
            }
            if (auto* c = a.fn.get<ConstTerm>()) {
              if (auto* n = a.arg.get<NatTerm>()) {
                if (c->kind == ConstKind::Succ) {
                  Term target = Term::nat(n->value + 1);
                  return ParallelWitness{target,
                                         {Step{StepRule::Succ, {}, target}}};
                }
                if (c->kind == ConstKind::Pred) {
                  Term target = Term::nat(n->value == 0 ? 0 : n->value - 1);
                  return ParallelWitness{target,
                                         {Step{StepRule::Pred, {}, target}}};
                }
                if (c->kind == ConstKind::ZeroTest) {
                  Term target = Term::constant(n->value == 0 ? ConstKind::True
                                                             : ConstKind::False);
                  return ParallelWitness{
                      target, {Step{n->value == 0 ? StepRule::ZeroTest1
                                                  : StepRule::ZeroTest2,
                                    {}, target}}};
                }
              }
              if (c->kind == ConstKind::Out && reg.retractEnabled()) {
                if (auto* inner = a.arg.get<AppTerm>()) {
                  if (isConst(inner->fn, ConstKind::In)) {
                    auto contents = dw(inner->arg);
                    return ParallelWitness{
                        contents.target,
                        concatSeq({Step{StepRule::OutIn, {}, inner->arg}},
                                  std::move(contents.steps))};
                  }
                }
              }
            }
            auto fn = dw(a.fn);
            auto arg = dw(a.arg);
            Term target = Term::app(fn.target, arg.target);
            auto seq = liftSeq(fn.steps, {0}, [&](const Term& f) {
              return Term::app(f, a.arg);
            });
            seq = concatSeq(std::move(seq),
                            liftSeq(arg.steps, {1}, [&](const Term& x) {
                              return Term::app(fn.target, x);
                            }));
            return ParallelWitness{std::move(target), std::move(seq)};
          },
          [&](const LetBoxTerm& lb) {
            if (auto* box = lb.subject.get<BoxTermNode>()) {
              auto body = dw(lb.body);
              Term target = substitute(body.target, box->body, lb.binder);
              auto seq = liftSeq(body.steps, {1}, [&](const Term& x) {
                return Term::letBox(lb.binder, lb.subject, x);
              });
              seq.push_back(Step{StepRule::BoxBeta, {}, target});
              return ParallelWitness{std::move(target), std::move(seq)};
            }
            auto subject = dw(lb.subject);
            auto body = dw(lb.body);
            Term target = Term::letBox(lb.binder, subject.target, body.target);
            auto seq = liftSeq(subject.steps, {0}, [&](const Term& s) {
              return Term::letBox(lb.binder, s, lb.body);
            });
            seq = concatSeq(std::move(seq),
                            liftSeq(body.steps, {1}, [&](const Term& b) {
                              return Term::letBox(lb.binder, subject.target, b);
                            }));
            return ParallelWitness{std::move(target), std::move(seq)};
          },
      },
      t.data().node);
}

// ---------------------------------------------------------------------------
// Membership and the diamond
// ---------------------------------------------------------------------------

ParallelMembership parallelStepExists(const Term& from, const Term& to,
                                      const OpRegistry& reg, std::size_t limit) {
  Enumerator e{reg, limit, /*witnesses=*/false, {}};
  return e.member(from, to);
}

DiamondResult closeDiamond(const Term& m, const Term& p, const Term& q,
                           const OpRegistry& reg, std::size_t limit) {
  Enumerator e{reg, limit, /*witnesses=*/false, {}};
  return closeDiamondVia(e, m, p, q);
}

// ---------------------------------------------------------------------------
// Amortized oracle
// ---------------------------------------------------------------------------

struct ParallelOracle::Impl {
  Enumerator membership;
  Enumerator witness;
};

ParallelOracle::ParallelOracle(const OpRegistry& reg, std::size_t memberLimit,
                               std::size_t witnessLimit)
    : impl(new Impl{Enumerator{reg, memberLimit, /*witnesses=*/false, {}},
                    Enumerator{reg, witnessLimit, /*witnesses=*/true, {}}}) {}

ParallelOracle::~ParallelOracle() = default;

ParallelSet ParallelOracle::steps(const Term& t) {
  return stepsVia(impl->membership, t);
}

WitnessSet ParallelOracle::witnesses(const Term& t) {
  return witnessesVia(impl->witness, t);
}

ParallelMembership ParallelOracle::member(const Term& from, const Term& to) {
  return impl->membership.member(from, to);
}

DiamondResult ParallelOracle::closeDiamond(const Term& m, const Term& p,
                                           const Term& q) {
  return closeDiamondVia(impl->membership, m, p, q);
}

}  // namespace ipcf
