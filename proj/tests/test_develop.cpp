#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>

#include "helpers.hpp"
#include "ipcf/develop.hpp"

using namespace ipcf;
using namespace ipcf::testing;

namespace {

Term dev(const std::string& text) {
  return completeDevelopment(tt(text), fullRegistry());
}

// Collect a mixed bag of closed samples for the property suites.
std::vector<Term> closedSamples(int count, int depth, std::uint64_t seedBase = 0) {
  std::vector<Term> out;
  for (std::uint64_t seed = seedBase; static_cast<int>(out.size()) < count; ++seed) {
    REQUIRE(seed < seedBase + 10 * static_cast<std::uint64_t>(count));
    auto g = sampleClosed(seed, static_cast<Corpus>(seed % 4), depth);
    if (g) out.push_back(g->term);
  }
  return out;
}

}  // namespace

TEST_CASE("complete development goldens") {
  // Every visible redex fires at once; box contents stay untouched.
  CHECK(alphaEq(dev("(\\x:Nat. succ x) (pred 2)"), tt("succ 1")));
  CHECK(alphaEq(dev("box ((\\x:Nat. x) 0)"), tt("box ((\\x:Nat. x) 0)")));
  // succ 0 is itself a visible redex; the enclosing pred only fires on
  // literals, so one pass leaves succ (pred 1).
  CHECK(alphaEq(dev("succ (pred (succ 0))"), tt("succ (pred 1)")));
  CHECK(alphaEq(dev("pred (succ 0)"), tt("pred 1")));
  CHECK(alphaEq(dev("pred 1"), tt("0")));
  CHECK(alphaEq(dev("zero? 0"), tt("true")));
  // Projection develops the taken branch in the same pass.
  CHECK(alphaEq(dev("if_Nat true (pred 1) 9"), tt("0")));
  CHECK(alphaEq(dev("if_Nat true ((\\x:Nat. x) 1) 9"), tt("1")));
  CHECK(alphaEq(dev("let box u = box (succ 0) in succ u"), tt("succ (succ 0)")));
  CHECK(alphaEq(dev("out (in (box (\\x:F. x)))"), tt("box (\\x:F. x)")));
  CHECK(alphaEq(dev("~done? (box true)"), tt("true")));
  CHECK(alphaEq(dev("~is-app (box (succ 0))"), tt("box true")));

  // Nested redexes all fire in one pass.
  CHECK(alphaEq(dev("(\\x:Nat. succ x) ((\\y:Nat. y) 3)"), tt("succ 3")));
  CHECK(alphaEq(dev("succ ((\\x:Nat. pred x) 4)"), tt("succ (pred 4)")));

  // Canonical and stuck terms develop to themselves.
  CHECK(alphaEq(dev("\\x:Nat. x"), tt("\\x:Nat. x")));
  CHECK(alphaEq(dev("~tick (box true)"), tt("~tick (box true)")));
  CHECK(alphaEq(dev("x"), tt("x")));
}

TEST_CASE("development of fix is a single unfolding") {
  Term fx = tt("fix z. let box w = z in w");
  auto* node = fx.get<FixBoxTerm>();
  Term expected = Term::box(substitute(node->body, fx, node->binder));
  CHECK(alphaEq(dev("fix z. let box w = z in w"), expected));

  ParallelWitness w = developmentWitness(fx, fullRegistry());
  REQUIRE(w.steps.size() == 1);
  CHECK(w.steps[0].rule == StepRule::BoxFix);
  CHECK(alphaEq(w.target, expected));
}

TEST_CASE("development substitutes developed parts into developed bodies") {
  // ((λx. x + redex) (redex)): both the argument and body redexes fire, then
  // the substitution happens with the developed pieces.
  Term t = tt("(\\x:Nat. (\\y:Nat. y) x) (pred 1)");
  CHECK(alphaEq(completeDevelopment(t, fullRegistry()), tt("0")));
}

TEST_CASE("reflstar: the development witness replays to the development") {
  auto samples = closedSamples(300, 4);
  for (const auto& t : samples) {
    ParallelWitness w = developmentWitness(t, fullRegistry());
    CAPTURE(printTerm(t));
    CHECK(alphaEq(w.target, completeDevelopment(t, fullRegistry())));
    CHECK(replayWitness(t, w, fullRegistry()));
  }
}

TEST_CASE("refl: every term parallel-steps to itself") {
  auto samples = closedSamples(150, 4, 1000);
  for (const auto& t : samples) {
    auto m = parallelStepExists(t, t, fullRegistry(), 64);
    // t is seeded first, so even a capped enumeration knows this one.
    CHECK(m.known);
    CHECK(m.holds);
  }
}

TEST_CASE("varmon: parallel reduction never invents free variables") {
  int tried = 0;
  for (std::uint64_t seed = 0; tried < 200; ++seed) {
    REQUIRE(seed < 4000);
    auto s = sampleOpen(seed, static_cast<Corpus>(seed % 4), 4);
    if (!s) continue;
    ++tried;
    auto fv0 = freeVars(s->term);
    auto bfv0 = boxedFreeVars(s->term);
    ParallelSet ps = parallelSteps(s->term, fullRegistry(), 512);
    for (const auto& n : ps.terms) {
      for (const auto& v : freeVars(n)) {
        CAPTURE(printTerm(s->term));
        CAPTURE(printTerm(n));
        CHECK(fv0.count(v) == 1);
      }
      // Boxed occurrences can only come from boxed or soon-to-be-boxed
      // positions; they are covered by the full free-variable set as well.
      for (const auto& v : boxedFreeVars(n)) {
        CHECK((fv0.count(v) == 1));
        (void)bfv0;
      }
    }
  }
}

TEST_CASE("substint: parallel steps survive substitution of a closed term") {
  // M ⇒ M'  implies  M[N/a] ⇒ M'[N/a].
  Term n = tt("pred (succ 3)");
  int tried = 0, conclusive = 0;
  for (std::uint64_t seed = 0; tried < 120; ++seed) {
    REQUIRE(seed < 4000);
    auto s = sampleOpen(seed, static_cast<Corpus>(seed % 4), 3);
    if (!s) continue;
    ++tried;
    ParallelSet ps = parallelSteps(s->term, fullRegistry(), 128);
    Term source = substitute(s->term, n, "a");
    ParallelOracle oracle(fullRegistry(), 2048);
    int perTerm = 0;
    for (const auto& mp : ps.terms) {
      if (++perTerm > 8) break;  // keep the quadratic part bounded
      Term target = substitute(mp, n, "a");
      auto m = oracle.member(source, target);
      if (!m.known) continue;
      ++conclusive;
      CAPTURE(printTerm(source));
      CAPTURE(printTerm(target));
      CHECK(m.holds);
    }
  }
  // The skip-on-truncation rule must not hollow the suite out.
  CHECK(conclusive > 200);
}

TEST_CASE("substredp: substitution combines parallel steps of both sides") {
  // M ⇒ M' and N ⇒ N'  imply  M[N/a] ⇒ M'[N'/a].
  Term n = tt("(\\w:Nat. succ w) 2");
  ParallelSet nTargets = parallelSteps(n, fullRegistry(), 64);
  REQUIRE(nTargets.terms.size() >= 2);  // refl and the contraction at least
  int tried = 0, conclusive = 0;
  for (std::uint64_t seed = 500; tried < 80; ++seed) {
    REQUIRE(seed < 4000);
    auto s = sampleOpen(seed, static_cast<Corpus>(seed % 4), 3);
    if (!s) continue;
    ++tried;
    ParallelSet mTargets = parallelSteps(s->term, fullRegistry(), 64);
    Term source = substitute(s->term, n, "a");
    ParallelOracle oracle(fullRegistry(), 2048);
    int perTerm = 0;
    for (const auto& mp : mTargets.terms) {
      for (const auto& np : nTargets.terms) {
        if (++perTerm > 6) break;
        Term target = substitute(mp, np, "a");
        auto m = oracle.member(source, target);
        if (!m.known) continue;
        ++conclusive;
        CAPTURE(printTerm(source));
        CAPTURE(printTerm(target));
        CHECK(m.holds);
      }
    }
  }
  CHECK(conclusive > 150);
}

TEST_CASE("redp: every parallel reduct flows into the complete development") {
  // The triangle property: M ⇒ N implies N ⇒ M⋆.
  auto samples = closedSamples(150, 4, 2000);
  int conclusive = 0;
  for (const auto& t : samples) {
    Term star = completeDevelopment(t, fullRegistry());
    ParallelSet ps = parallelSteps(t, fullRegistry(), 256);
    ParallelOracle oracle(fullRegistry(), 2048);
    int perTerm = 0;
    for (const auto& nTerm : ps.terms) {
      if (++perTerm > 10) break;
      auto m = oracle.member(nTerm, star);
      if (!m.known) continue;
      ++conclusive;
      CAPTURE(printTerm(t));
      CAPTURE(printTerm(nTerm));
      CHECK(m.holds);
    }
  }
  CHECK(conclusive > 400);
}

TEST_CASE("lower sandwich: single steps are parallel steps") {
  auto samples = closedSamples(150, 4, 3000);
  for (const auto& t : samples) {
    ParallelOracle oracle(fullRegistry(), 2048);
    for (const auto& s : stepAll(t, fullRegistry())) {
      auto m = oracle.member(t, s.result);
      if (!m.known) continue;
      CAPTURE(printTerm(t));
      CAPTURE(printTerm(s.result));
      CHECK(m.holds);
    }
  }
}

TEST_CASE("upper sandwich: parallel witnesses replay as single-step chains") {
  auto samples = closedSamples(120, 4, 4000);
  for (const auto& t : samples) {
    WitnessSet ws = parallelWitnesses(t, fullRegistry(), 64);
    for (const auto& w : ws.items) {
      CAPTURE(printTerm(t));
      CAPTURE(printTerm(w.target));
      CHECK(replayWitness(t, w, fullRegistry()));
    }
  }
}

TEST_CASE("diamond: distinct single-step reducts close at the development") {
  auto samples = closedSamples(150, 4, 5000);
  int pairs = 0, conclusive = 0;
  for (const auto& t : samples) {
    auto steps = stepAll(t, fullRegistry());
    ParallelOracle oracle(fullRegistry(), 2048);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      for (std::size_t j = i + 1; j < steps.size(); ++j) {
        if (alphaEq(steps[i].result, steps[j].result)) continue;
        ++pairs;
        try {
          DiamondResult d =
              oracle.closeDiamond(t, steps[i].result, steps[j].result);
          if (d.conclusive) ++conclusive;
          CHECK(alphaEq(d.development, completeDevelopment(t, fullRegistry())));
        } catch (const OracleViolation& v) {
          CAPTURE(printTerm(t));
          CAPTURE(v.what());
          FAIL_CHECK("diamond violation");
        }
      }
    }
  }
  CHECK(conclusive > pairs / 2);
}

TEST_CASE("truncation is reported, never guessed") {
  // A wide product: many independent redexes force far more combinations
  // than the tiny cap allows.
  Term wide = tt(
      "(\\x:Nat. succ x) ((\\y:Nat. pred y) ((\\z:Nat. z) (pred (succ 4))))");
  ParallelSet ps = parallelSteps(wide, fullRegistry(), 3);
  CHECK(ps.truncated);
  CHECK(ps.terms.size() <= 3);

  WitnessSet ws = parallelWitnesses(wide, fullRegistry(), 3);
  CHECK(ws.truncated);

  // A capped membership query may answer "unknown" but must never report a
  // real single-step reduct as a non-member.
  for (const auto& s : stepAll(wide, fullRegistry())) {
    auto m = parallelStepExists(wide, s.result, fullRegistry(), 3);
    CHECK((!m.known || m.holds));
  }

  // With a generous cap the same enumeration completes.
  ParallelSet full = parallelSteps(wide, fullRegistry(), 4096);
  CHECK_FALSE(full.truncated);
  for (const auto& s : stepAll(wide, fullRegistry())) {
    auto m = parallelStepExists(wide, s.result, fullRegistry(), 4096);
    CHECK(m.known);
    CHECK(m.holds);
  }
}

TEST_CASE("parallel enumeration agrees between oracle and free functions") {
  auto samples = closedSamples(40, 4, 6000);
  for (const auto& t : samples) {
    ParallelOracle oracle(fullRegistry(), 1024, 64);
    ParallelSet viaOracle = oracle.steps(t);
    ParallelSet direct = parallelSteps(t, fullRegistry(), 1024);
    CHECK(viaOracle.truncated == direct.truncated);
    REQUIRE(viaOracle.terms.size() == direct.terms.size());
    for (std::size_t i = 0; i < direct.terms.size(); ++i)
      CHECK(alphaEq(viaOracle.terms[i], direct.terms[i]));

    WitnessSet w1 = oracle.witnesses(t);
    WitnessSet w2 = parallelWitnesses(t, fullRegistry(), 64);
    REQUIRE(w1.items.size() == w2.items.size());
    for (std::size_t i = 0; i < w1.items.size(); ++i)
      CHECK(alphaEq(w1.items[i].target, w2.items[i].target));
  }
}

TEST_CASE("parallel sets contain the expected reducts on goldens") {
  // (λx. succ x) (pred 2): the parallel set holds refl, the beta alone,
  // the delta alone, and the combination (which equals the development).
  Term t = tt("(\\x:Nat. succ x) (pred 2)");
  ParallelSet ps = parallelSteps(t, fullRegistry(), 256);
  REQUIRE_FALSE(ps.truncated);
  auto holds = [&](const std::string& target) {
    for (const auto& x : ps.terms)
      if (alphaEq(x, tt(target))) return true;
    return false;
  };
  CHECK(holds("(\\x:Nat. succ x) (pred 2)"));
  CHECK(holds("succ (pred 2)"));
  CHECK(holds("(\\x:Nat. succ x) 1"));
  CHECK(holds("succ 1"));
  // But never a two-in-a-row sequential result that no parallel step makes:
  // contracting beta and THEN the succ-redex it creates.
  CHECK_FALSE(holds("2"));
}

TEST_CASE("box contents never reduce in a parallel step") {
  Term t = tt("box ((\\x:Nat. x) 0)");
  ParallelSet ps = parallelSteps(t, fullRegistry(), 64);
  REQUIRE(ps.terms.size() == 1);  // refl only
  CHECK(alphaEq(ps.terms[0], t));
}
