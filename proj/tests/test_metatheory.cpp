#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "ipcf/reduce.hpp"
#include "ipcf/typecheck.hpp"

using namespace ipcf;
using namespace ipcf::testing;

namespace {

// A wider two-per-zone context for the structural-rule suites.
TypingContext wideCtx() {
  TypingContext ctx;
  ctx = ctx.withModal("u1", Type::nat());
  ctx = ctx.withModal("u2", Type::boolean());
  ctx = ctx.withOrdinary("y1", Type::arrow(Type::nat(), Type::nat()));
  ctx = ctx.withOrdinary("y2", Type::nat());
  return ctx;
}

struct CtxSample {
  TypingContext ctx;
  Term term;
  Type goal;
};

std::optional<CtxSample> sampleInCtx(std::uint64_t seed, const TypingContext& ctx,
                                     int depth = 4) {
  std::mt19937_64 rng(seed);
  Corpus corpus = static_cast<Corpus>(seed % 4);
  Type goal = sampleType(rng, 2, corpus);
  try {
    Term t = generateTerm(rng, ctx, goal, depth, corpus, fullRegistry());
    return CtxSample{ctx, t, goal};
  } catch (const GenerationExhausted&) {
    return std::nullopt;
  }
}

bool checks(const TypingContext& ctx, const Term& t, const Type& goal,
            FixTypeTable* table = nullptr) {
  try {
    Derivation d = check(ctx, t, goal, fullRegistry(), table);
    if (table) table->record(d);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

}  // namespace

TEST_CASE("weakening: unused bindings in either zone are harmless") {
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 200; ++seed) {
    REQUIRE(seed < 4000);
    auto s = sampleInCtx(seed, wideCtx());
    if (!s) continue;
    ++tried;
    CAPTURE(printTerm(s->term));
    TypingContext more = s->ctx.withOrdinary("fresh_o", Type::file())
                             .withModal("fresh_m", Type::boolean());
    CHECK(checks(more, s->term, s->goal));
    // Weakening each zone separately as well.
    CHECK(checks(s->ctx.withOrdinary("fresh_o", Type::nat()), s->term, s->goal));
    CHECK(checks(s->ctx.withModal("fresh_m", Type::nat()), s->term, s->goal));
  }
}

TEST_CASE("exchange: binding order within a zone is irrelevant") {
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 200; ++seed) {
    REQUIRE(seed < 4000);
    auto s = sampleInCtx(seed, wideCtx());
    if (!s) continue;
    ++tried;
    TypingContext swapped = s->ctx;
    REQUIRE(swapped.modal.size() == 2);
    REQUIRE(swapped.ordinary.size() == 2);
    std::swap(swapped.modal[0], swapped.modal[1]);
    std::swap(swapped.ordinary[0], swapped.ordinary[1]);
    CAPTURE(printTerm(s->term));
    CHECK(checks(swapped, s->term, s->goal));
  }
}

TEST_CASE("contraction: two bindings of one type collapse into one") {
  // Generate with duplicate-typed variables in one zone, then identify them.
  TypingContext dup;
  dup = dup.withModal("m1", Type::nat());
  dup = dup.withModal("m2", Type::nat());
  dup = dup.withOrdinary("o1", Type::nat());
  dup = dup.withOrdinary("o2", Type::nat());

  int tried = 0;
  for (std::uint64_t seed = 0; tried < 200; ++seed) {
    REQUIRE(seed < 4000);
    auto s = sampleInCtx(seed, dup);
    if (!s) continue;
    ++tried;

    // Ordinary contraction: o1, o2 := o.
    Term mergedO = substitute(substitute(s->term, Term::var("o"), "o1"),
                              Term::var("o"), "o2");
    TypingContext ctxO;
    ctxO = ctxO.withModal("m1", Type::nat());
    ctxO = ctxO.withModal("m2", Type::nat());
    ctxO = ctxO.withOrdinary("o", Type::nat());
    CAPTURE(printTerm(s->term));
    CHECK(checks(ctxO, mergedO, s->goal));

    // Modal contraction: m1, m2 := m.
    Term mergedM = substitute(substitute(s->term, Term::var("m"), "m1"),
                              Term::var("m"), "m2");
    TypingContext ctxM;
    ctxM = ctxM.withModal("m", Type::nat());
    ctxM = ctxM.withOrdinary("o1", Type::nat());
    ctxM = ctxM.withOrdinary("o2", Type::nat());
    CHECK(checks(ctxM, mergedM, s->goal));
  }
}

TEST_CASE("cut: substituting a well-typed term preserves the judgement") {
  // Ordinary cut: Γ,x:A ⊢ M:B and Γ ⊢ N:A give Γ ⊢ M[N/x]:B.
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 200; ++seed) {
    REQUIRE(seed < 4000);
    auto s = sampleOpen(seed, static_cast<Corpus>(seed % 4), 4);
    if (!s) continue;
    ++tried;

    // N uses the remaining context (f stays in scope).
    Term n = tt("f (succ 2)");
    Term cut = substitute(s->term, n, "a");
    TypingContext without = s->ctx;
    without.ordinary.erase(
        std::remove_if(without.ordinary.begin(), without.ordinary.end(),
                       [](const Binding& b) { return b.name == "a"; }),
        without.ordinary.end());
    CAPTURE(printTerm(s->term));
    CHECK(checks(without, cut, s->goal));
  }
}

TEST_CASE("modal cut: code variables admit substitution of closed code") {
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 200; ++seed) {
    REQUIRE(seed < 4000);
    auto s = sampleOpen(seed, static_cast<Corpus>(seed % 4), 4);
    if (!s) continue;
    ++tried;

    // The modal m:Nat is replaced by a term valid in the empty ordinary zone.
    Term n = tt("pred 9");
    Term cut = substitute(s->term, n, "m");
    TypingContext without = s->ctx;
    without.modal.clear();
    CAPTURE(printTerm(s->term));
    CHECK(checks(without, cut, s->goal));
  }
}

TEST_CASE("boxed free variables always come from the modal zone") {
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 300; ++seed) {
    REQUIRE(seed < 6000);
    auto s = (seed % 2 == 0) ? sampleInCtx(seed, wideCtx())
                             : [&]() -> std::optional<CtxSample> {
      auto o = sampleOpen(seed, static_cast<Corpus>(seed % 4), 4);
      if (!o) return std::nullopt;
      return CtxSample{o->ctx, o->term, o->goal};
    }();
    if (!s) continue;
    ++tried;
    check(s->ctx, s->term, s->goal, fullRegistry());  // must succeed
    auto modal = s->ctx.modalNames();
    for (const auto& v : boxedFreeVars(s->term)) {
      CAPTURE(printTerm(s->term));
      CAPTURE(v);
      CHECK(modal.count(v) == 1);
    }
  }
}

TEST_CASE("subject reduction along the strategy") {
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 150; ++seed) {
    REQUIRE(seed < 4000);
    Corpus corpus = static_cast<Corpus>(seed % 4);
    auto g = sampleClosed(seed, corpus, 5);
    if (!g) continue;
    ++tried;
    // Thread a fix-type table along the trace: fix-unfolding can substitute a
    // fix-term into inference position, where only a remembered type helps.
    FixTypeTable table;
    REQUIRE(checks({}, g->term, g->type, &table));
    Trace tr = normalize(g->term, 60, fullRegistry());
    for (const auto& st : tr.steps) {
      CAPTURE(printTerm(g->term));
      CAPTURE(printTerm(st.result));
      CHECK(checks({}, st.result, g->type, &table));
    }
  }
}

TEST_CASE("subject reduction for every single-step reduct") {
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 150; ++seed) {
    REQUIRE(seed < 4000);
    Corpus corpus = static_cast<Corpus>(seed % 4);
    auto g = sampleClosed(seed, corpus, 5);
    if (!g) continue;
    ++tried;
    FixTypeTable table;
    REQUIRE(checks({}, g->term, g->type, &table));
    for (const auto& st : stepAll(g->term, fullRegistry())) {
      CAPTURE(printTerm(g->term));
      CAPTURE(printTerm(st.result));
      CHECK(checks({}, st.result, g->type, &table));
    }
  }
}

TEST_CASE("subject reduction through parallel reduction") {
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 100; ++seed) {
    REQUIRE(seed < 4000);
    Corpus corpus = static_cast<Corpus>(seed % 4);
    auto g = sampleClosed(seed, corpus, 4);
    if (!g) continue;
    ++tried;
    FixTypeTable table;
    REQUIRE(checks({}, g->term, g->type, &table));
    ParallelSet ps = parallelSteps(g->term, fullRegistry(), 128);
    for (const auto& n : ps.terms) {
      CAPTURE(printTerm(g->term));
      CAPTURE(printTerm(n));
      CHECK(checks({}, n, g->type, &table));
    }
    // The complete development in particular.
    CHECK(checks({}, completeDevelopment(g->term, fullRegistry()), g->type, &table));
  }
}
