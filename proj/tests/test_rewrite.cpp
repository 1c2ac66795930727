#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>

#include "nd/measure.hpp"
#include "nd/oracle.hpp"
#include "nd/rewrite.hpp"
#include "testutil.hpp"

using namespace nd;
using namespace ndtest;

namespace {

DerivPtr fire(const DerivPtr& d, const Path& raaPos,
              Orientation o = Orientation::Printed) {
  Redex r = findRedex(d, raaPos);
  FreshLabels labels = FreshLabels::above(d);
  return reduceAt(d, r, labels, o);
}

void assertPreservation(const DerivPtr& before, const DerivPtr& after) {
  Judgment a = check(before);
  Judgment b = check(after);
  CHECK(alphaEq(a.conclusion, b.conclusion));
  CHECK(b.assumptions.subsetOf(a.assumptions));
}

// golden comparison plus the preservation lemma
void golden(const DerivPtr& lhs, const Path& raaPos, const std::string& expected) {
  DerivPtr out = fire(lhs, raaPos);
  assertPreservation(lhs, out);
  DerivPtr want = D(expected);
  CHECK(check(want).conclusion != nullptr);
  CAPTURE(render(out, RenderFormat::Text));
  CHECK(derivEqUpToLabels(out, want));
}

}  // namespace

TEST_CASE("not-intro case erases the raa above not-i") {
  DerivPtr lhs = D(
      "(not-i 2 (raa 1 (not-e (assume 1 (not bot)) "
      "(not-e (assume (not (pred P))) (assume 2 (pred P))))))");
  golden(lhs, {0},
         "(not-i 2 (not-e (not-i 5 (assume 5 bot)) "
         "(not-e (assume (not (pred P))) (assume 2 (pred P)))))");
}

TEST_CASE("not-elim with an active major premise") {
  DerivPtr lhs = D(
      "(not-e (raa 1 (not-e (assume 1 (not (not (pred P)))) (assume (not (pred P))))) "
      "(assume (pred P)))");
  golden(lhs, {0},
         "(not-e (not-i 5 (not-e (assume 5 (not (pred P))) (assume (pred P)))) "
         "(assume (not (pred P))))");
}

TEST_CASE("not-elim with an active minor premise") {
  DerivPtr lhs = D(
      "(not-e (assume (not (pred P))) "
      "(raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P)))))");
  golden(lhs, {1}, "(not-e (assume (not (pred P))) (assume (pred P)))");
}

TEST_CASE("not-elim with both premises active") {
  DerivPtr lhs = D(
      "(not-e (raa 1 (not-e (assume 1 (not (not (pred P)))) (assume (not (pred P))))) "
      "(raa 2 (not-e (assume 2 (not (pred P))) (assume (pred P)))))");
  golden(lhs, {0},
         "(not-e (not-i 6 (not-e (not-i 5 (not-e (assume 6 (not (pred P))) "
         "(assume 5 (pred P)))) (assume (pred P)))) (assume (not (pred P))))");
  // the swapped orientation also yields a checked derivation
  DerivPtr swapped = fire(lhs, {0}, Orientation::Swapped);
  assertPreservation(lhs, swapped);
  CHECK_FALSE(derivEqUpToLabels(swapped, fire(lhs, {0})));
}

TEST_CASE("and-intro with an active left premise") {
  DerivPtr lhs = D(
      "(and-i (raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P)))) "
      "(assume (pred Q)))");
  golden(lhs, {0},
         "(raa 7 (not-e (not-i 8 (not-e (assume 7 (not (and (pred P) (pred Q)))) "
         "(and-i (assume 8 (pred P)) (assume (pred Q))))) (assume (pred P))))");
}

TEST_CASE("and-intro with an active right premise") {
  DerivPtr lhs = D(
      "(and-i (assume (pred P)) "
      "(raa 1 (not-e (assume 1 (not (pred Q))) (assume (pred Q)))))");
  golden(lhs, {1},
         "(raa 7 (not-e (not-i 8 (not-e (assume 7 (not (and (pred P) (pred Q)))) "
         "(and-i (assume (pred P)) (assume 8 (pred Q))))) (assume (pred Q))))");
}

TEST_CASE("and-intro with both premises active") {
  DerivPtr lhs = D(
      "(and-i (raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P)))) "
      "(raa 2 (not-e (assume 2 (not (pred Q))) (assume (pred Q)))))");
  golden(lhs, {0},
         "(raa 3 (not-e (not-i 4 (not-e (not-i 5 (not-e "
         "(assume 3 (not (and (pred P) (pred Q)))) "
         "(and-i (assume 4 (pred P)) (assume 5 (pred Q))))) (assume (pred Q)))) "
         "(assume (pred P))))");
  DerivPtr swapped = fire(lhs, {0}, Orientation::Swapped);
  assertPreservation(lhs, swapped);
}

TEST_CASE("and-elim-1, the survey's conjunction example") {
  DerivPtr lhs = D(
      "(and-e1 (raa 1 (not-e (assume 1 (not (and (pred P) (pred Q)))) "
      "(assume (and (pred P) (pred Q))))))");
  golden(lhs, {0},
         "(raa 2 (not-e (not-i 3 (not-e (assume 2 (not (pred P))) "
         "(and-e1 (assume 3 (and (pred P) (pred Q)))))) "
         "(assume (and (pred P) (pred Q)))))");
}

TEST_CASE("and-elim-2") {
  DerivPtr lhs = D(
      "(and-e2 (raa 1 (not-e (assume 1 (not (and (pred P) (pred Q)))) "
      "(assume (and (pred P) (pred Q))))))");
  golden(lhs, {0},
         "(raa 2 (not-e (not-i 3 (not-e (assume 2 (not (pred Q))) "
         "(and-e2 (assume 3 (and (pred P) (pred Q)))))) "
         "(assume (and (pred P) (pred Q)))))");
}

TEST_CASE("or-intro-1") {
  DerivPtr lhs = D(
      "(or-i1 (pred Q) (raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P)))))");
  golden(lhs, {0},
         "(raa 2 (not-e (not-i 3 (not-e (assume 2 (not (or (pred P) (pred Q)))) "
         "(or-i1 (pred Q) (assume 3 (pred P))))) (assume (pred P))))");
}

TEST_CASE("or-intro-2") {
  DerivPtr lhs = D(
      "(or-i2 (pred P) (raa 1 (not-e (assume 1 (not (pred Q))) (assume (pred Q)))))");
  golden(lhs, {0},
         "(raa 2 (not-e (not-i 3 (not-e (assume 2 (not (or (pred P) (pred Q)))) "
         "(or-i2 (pred P) (assume 3 (pred Q))))) (assume (pred Q))))");
}

// the seven or-elim configurations; A = P, B = Q, C = R
static const char* kOrMajor =
    "(raa 1 (not-e (assume 1 (not (or (pred P) (pred Q)))) "
    "(assume (or (pred P) (pred Q)))))";
static const char* kMinor1 =
    "(imp-e (assume (imp (pred P) (pred R))) (assume 2 (pred P)))";
static const char* kMinor2 =
    "(imp-e (assume (imp (pred Q) (pred R))) (assume 2 (pred Q)))";
static const char* kMinor1Raa =
    "(raa 3 (not-e (assume 3 (not (pred R))) "
    "(imp-e (assume (imp (pred P) (pred R))) (assume 2 (pred P)))))";
static const char* kMinor2Raa =
    "(raa 4 (not-e (assume 4 (not (pred R))) "
    "(imp-e (assume (imp (pred Q) (pred R))) (assume 2 (pred Q)))))";

static std::string orE(const std::string& maj, const std::string& m1,
                       const std::string& m2) {
  return "(or-e 2 " + maj + " " + m1 + " " + m2 + ")";
}

TEST_CASE("or-elim with an active major premise") {
  DerivPtr lhs = D(orE(kOrMajor, kMinor1, kMinor2));
  golden(lhs, {0},
         "(raa 9 (not-e (not-i 8 (or-e 2 (assume 8 (or (pred P) (pred Q))) "
         "(not-e (assume 9 (not (pred R))) " +
             std::string(kMinor1) +
             ") "
             "(not-e (assume 9 (not (pred R))) " +
             std::string(kMinor2) +
             "))) "
             "(assume (or (pred P) (pred Q)))))");
}

TEST_CASE("or-elim with an active left minor") {
  DerivPtr lhs = D(orE("(assume (or (pred P) (pred Q)))", kMinor1Raa, kMinor2));
  golden(lhs, {1},
         "(raa 3 (or-e 2 (assume (or (pred P) (pred Q))) "
         "(not-e (assume 3 (not (pred R))) "
         "(imp-e (assume (imp (pred P) (pred R))) (assume 2 (pred P)))) "
         "(not-e (assume 3 (not (pred R))) " +
             std::string(kMinor2) + ")))");
}

TEST_CASE("or-elim with an active right minor") {
  DerivPtr lhs = D(orE("(assume (or (pred P) (pred Q)))", kMinor1, kMinor2Raa));
  golden(lhs, {2},
         "(raa 4 (or-e 2 (assume (or (pred P) (pred Q))) "
         "(not-e (assume 4 (not (pred R))) " +
             std::string(kMinor1) +
             ") "
             "(not-e (assume 4 (not (pred R))) "
             "(imp-e (assume (imp (pred Q) (pred R))) (assume 2 (pred Q))))))");
}

TEST_CASE("or-elim with both minors active") {
  DerivPtr lhs = D(orE("(assume (or (pred P) (pred Q)))", kMinor1Raa, kMinor2Raa));
  golden(lhs, {1},
         "(raa 5 (or-e 2 (assume (or (pred P) (pred Q))) "
         "(not-e (assume 5 (not (pred R))) "
         "(imp-e (assume (imp (pred P) (pred R))) (assume 2 (pred P)))) "
         "(not-e (assume 5 (not (pred R))) "
         "(imp-e (assume (imp (pred Q) (pred R))) (assume 2 (pred Q))))))");
}

TEST_CASE("or-elim with major and left minor active") {
  DerivPtr lhs = D(orE(kOrMajor, kMinor1Raa, kMinor2));
  golden(lhs, {0},
         "(raa 9 (not-e (not-i 8 (or-e 2 (assume 8 (or (pred P) (pred Q))) "
         "(not-e (assume 9 (not (pred R))) "
         "(imp-e (assume (imp (pred P) (pred R))) (assume 2 (pred P)))) "
         "(not-e (assume 9 (not (pred R))) " +
             std::string(kMinor2) +
             "))) "
             "(assume (or (pred P) (pred Q)))))");
}

TEST_CASE("or-elim with major and right minor active") {
  DerivPtr lhs = D(orE(kOrMajor, kMinor1, kMinor2Raa));
  golden(lhs, {0},
         "(raa 9 (not-e (not-i 8 (or-e 2 (assume 8 (or (pred P) (pred Q))) "
         "(not-e (assume 9 (not (pred R))) " +
             std::string(kMinor1) +
             ") "
             "(not-e (assume 9 (not (pred R))) "
             "(imp-e (assume (imp (pred Q) (pred R))) (assume 2 (pred Q)))))) "
             "(assume (or (pred P) (pred Q)))))");
}

TEST_CASE("or-elim with all three premises active") {
  DerivPtr lhs = D(orE(kOrMajor, kMinor1Raa, kMinor2Raa));
  golden(lhs, {0},
         "(raa 9 (not-e (not-i 8 (or-e 2 (assume 8 (or (pred P) (pred Q))) "
         "(not-e (assume 9 (not (pred R))) "
         "(imp-e (assume (imp (pred P) (pred R))) (assume 2 (pred P)))) "
         "(not-e (assume 9 (not (pred R))) "
         "(imp-e (assume (imp (pred Q) (pred R))) (assume 2 (pred Q)))))) "
         "(assume (or (pred P) (pred Q)))))");
}

TEST_CASE("imp-intro reproduces the size counterexample exactly") {
  DerivPtr lhs = D(
      "(imp-i 2 (pred P) (raa 1 (not-e (assume 1 (not (pred P))) "
      "(assume 2 (pred P)))))");
  CHECK(raaReport(lhs).sizeRaa == 1);
  DerivPtr out = fire(lhs, {0});
  assertPreservation(lhs, out);
  CHECK(raaReport(out).sizeRaa == 3);
  CHECK(countEfq(lhs) == 0);
  CHECK(countEfq(out) == 1);
  DerivPtr want = D(
      "(raa 3 (not-e (assume 3 (not (imp (pred P) (pred P)))) "
      "(imp-i 2 (pred P) (efq (pred P) "
      "(not-e (not-i 4 (not-e (assume 3 (not (imp (pred P) (pred P)))) "
      "(imp-i 5 (pred P) (assume 4 (pred P))))) (assume 2 (pred P)))))))");
  CHECK(derivEqUpToLabels(out, want));
}

TEST_CASE("imp-elim with an active major premise") {
  DerivPtr lhs = D(
      "(imp-e (raa 1 (not-e (assume 1 (not (imp (pred P) (pred Q)))) "
      "(assume (imp (pred P) (pred Q))))) (assume (pred P)))");
  golden(lhs, {0},
         "(raa 2 (not-e (not-i 3 (not-e (assume 2 (not (pred Q))) "
         "(imp-e (assume 3 (imp (pred P) (pred Q))) (assume (pred P))))) "
         "(assume (imp (pred P) (pred Q)))))");
}

TEST_CASE("imp-elim with an active minor premise") {
  DerivPtr lhs = D(
      "(imp-e (assume (imp (pred P) (pred Q))) "
      "(raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P)))))");
  golden(lhs, {1},
         "(raa 2 (not-e (not-i 3 (not-e (assume 2 (not (pred Q))) "
         "(imp-e (assume (imp (pred P) (pred Q))) (assume 3 (pred P))))) "
         "(assume (pred P))))");
}

TEST_CASE("imp-elim with both premises active") {
  DerivPtr lhs = D(
      "(imp-e (raa 1 (not-e (assume 1 (not (imp (pred P) (pred Q)))) "
      "(assume (imp (pred P) (pred Q))))) "
      "(raa 2 (not-e (assume 2 (not (pred P))) (assume (pred P)))))");
  golden(lhs, {0},
         "(raa 3 (not-e (not-i 4 (not-e (not-i 5 (not-e (assume 3 (not (pred Q))) "
         "(imp-e (assume 4 (imp (pred P) (pred Q))) (assume 5 (pred P))))) "
         "(assume (pred P)))) (assume (imp (pred P) (pred Q)))))");
  DerivPtr swapped = fire(lhs, {0}, Orientation::Swapped);
  assertPreservation(lhs, swapped);
}

TEST_CASE("exists-intro") {
  DerivPtr lhs = D(
      "(exists-i (exists x (pred P x)) (fun c) "
      "(raa 1 (not-e (assume 1 (not (pred P (fun c)))) (assume (pred P (fun c))))))");
  golden(lhs, {0},
         "(raa 2 (not-e (not-i 3 (not-e (assume 2 (not (exists x (pred P x)))) "
         "(exists-i (exists x (pred P x)) (fun c) (assume 3 (pred P (fun c)))))) "
         "(assume (pred P (fun c)))))");
}

static const char* kExMajorRaa =
    "(raa 1 (not-e (assume 1 (not (exists x (pred P x)))) "
    "(assume (exists x (pred P x)))))";
static const char* kExMinor =
    "(imp-e (forall-e z (assume (forall y (imp (pred P y) (pred R))))) "
    "(assume 2 (pred P z)))";
static const char* kExMinorRaa =
    "(raa 3 (not-e (assume 3 (not (pred R))) "
    "(imp-e (forall-e z (assume (forall y (imp (pred P y) (pred R))))) "
    "(assume 2 (pred P z)))))";

TEST_CASE("exists-elim with an active major premise") {
  DerivPtr lhs = D("(exists-e 2 z " + std::string(kExMajorRaa) + " " + kExMinor + ")");
  golden(lhs, {0},
         "(raa 9 (not-e (not-i 8 (exists-e 2 z (assume 8 (exists x (pred P x))) "
         "(not-e (assume 9 (not (pred R))) " +
             std::string(kExMinor) +
             "))) "
             "(assume (exists x (pred P x)))))");
}

TEST_CASE("exists-elim with an active minor premise") {
  DerivPtr lhs = D("(exists-e 2 z (assume (exists x (pred P x))) " +
                   std::string(kExMinorRaa) + ")");
  golden(lhs, {1},
         "(raa 3 (exists-e 2 z (assume (exists x (pred P x))) "
         "(not-e (assume 3 (not (pred R))) "
         "(imp-e (forall-e z (assume (forall y (imp (pred P y) (pred R))))) "
         "(assume 2 (pred P z))))))");
}

TEST_CASE("exists-elim with both premises active") {
  DerivPtr lhs =
      D("(exists-e 2 z " + std::string(kExMajorRaa) + " " + kExMinorRaa + ")");
  golden(lhs, {0},
         "(raa 9 (not-e (not-i 8 (exists-e 2 z (assume 8 (exists x (pred P x))) "
         "(not-e (assume 9 (not (pred R))) "
         "(imp-e (forall-e z (assume (forall y (imp (pred P y) (pred R))))) "
         "(assume 2 (pred P z)))))) "
         "(assume (exists x (pred P x)))))");
}

TEST_CASE("forall-elim") {
  DerivPtr lhs = D(
      "(forall-e (fun c) (raa 1 (not-e (assume 1 (not (forall x (pred P x)))) "
      "(assume (forall x (pred P x))))))");
  golden(lhs, {0},
         "(raa 2 (not-e (not-i 3 (not-e (assume 2 (not (pred P (fun c)))) "
         "(forall-e (fun c) (assume 3 (forall x (pred P x)))))) "
         "(assume (forall x (pred P x)))))");
}

TEST_CASE("raa immediately below another raa merges into one") {
  DerivPtr lhs = D(
      "(raa 2 (raa 1 (not-e (assume 1 (not bot)) "
      "(not-e (assume 2 (not (pred P))) (assume (pred P))))))");
  golden(lhs, {0},
         "(raa 2 (not-e (not-i 5 (assume 5 bot)) "
         "(not-e (assume 2 (not (pred P))) (assume (pred P)))))");
}

TEST_CASE("raa concluding bot below an efq") {
  DerivPtr lhs =
      D("(efq (pred P) (raa 1 (not-e (assume 1 (not bot)) (assume bot))))");
  golden(lhs, {0}, "(efq (pred P) (not-e (not-i 5 (assume 5 bot)) (assume bot)))");
}

TEST_CASE("discharge duplication and erasure semantics") {
  // two occurrences: the sibling subderivation is copied twice
  DerivPtr twice = D(
      "(and-i (raa 1 (not-e (assume 1 (not (pred P))) "
      "(efq (pred P) (not-e (assume 1 (not (pred P))) (assume (pred P)))))) "
      "(assume (pred Q)))");
  DerivPtr out = fire(twice, {0});
  assertPreservation(twice, out);
  int qCount = 0;
  std::function<void(const DerivPtr&)> walk = [&](const DerivPtr& d) {
    if (d->isAssume() && alphaEq(d->conclusion(), F("(pred Q)"))) qCount++;
    for (const auto& p : d->premises()) walk(p);
  };
  walk(out);
  CHECK(qCount == 2);

  // zero occurrences: the sibling is dropped (the Preservations counterexample)
  DerivPtr zero = D(
      "(and-i (efq (pred Q) (not-e (assume (not (pred P))) (assume (pred P)))) "
      "(assume (pred R)))");
  DerivPtr out2 = fire(zero, {0});
  assertPreservation(zero, out2);
  Judgment j = check(out2);
  CHECK(j.assumptions.size() == 2);
  CHECK_FALSE(j.assumptions.contains(F("(pred R)")));
  CHECK(derivEqUpToLabels(
      out2, D("(efq (and (pred Q) (pred R)) "
              "(not-e (assume (not (pred P))) (assume (pred P))))")));
}

TEST_CASE("find_redex error cases") {
  DerivPtr rootRaa = D("(raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P))))");
  CHECK_THROWS_AS(findRedex(rootRaa, {}), RewriteError);

  DerivPtr blocked = D(
      "(forall-i x (raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P)))))");
  check(blocked);
  try {
    findRedex(blocked, {0});
    FAIL("expected ForallIntroBlock");
  } catch (const RewriteError& e) {
    CHECK(e.code() == RewriteCode::ForallIntroBlock);
  }
}

TEST_CASE("find_redex classifies anchors and active sets") {
  DerivPtr d = D(
      "(and-i (raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P)))) "
      "(raa 2 (not-e (assume 2 (not (pred Q))) (assume (pred Q)))))");
  Redex r = findRedex(d, {0});
  CHECK(r.tag == CaseTag::AndIntroBoth);
  CHECK(r.active == std::set<int>{0, 1});

  DerivPtr e = D(
      "(and-e1 (raa 1 (not-e (assume 1 (not (and (pred P) (pred Q)))) "
      "(assume (and (pred P) (pred Q))))))");
  Redex r2 = findRedex(e, {0});
  CHECK(r2.tag == CaseTag::AndElim1);
  CHECK(r2.active == std::set<int>{0});
}

TEST_CASE("only the imp-i case introduces an efq") {
  // fire every legal redex of every corpus derivation once
  for (const auto& name : validCorpusNames()) {
    DerivPtr d = corpusDeriv("valid/" + name);
    RaaReport rep = raaReport(d);
    for (const auto& inst : rep.instances) {
      if (inst.distance == 0) continue;
      Path parent(inst.position.begin(), inst.position.end() - 1);
      if (nodeAt(d, parent)->rule() == Rule::ForallI) continue;
      Redex r = findRedex(d, inst.position);
      FreshLabels labels = FreshLabels::above(d);
      DerivPtr out = reduceAt(d, r, labels);
      assertPreservation(d, out);
      if (r.tag != CaseTag::ImpIntro) CHECK(countEfq(out) <= countEfq(d));
    }
  }
}

TEST_CASE("preservation of imp_i and forall_i absence") {
  GeneratorProfile prof = GeneratorProfile::nkNoForallI(11, 4, 0.7);
  prof.allowed.erase(std::remove(prof.allowed.begin(), prof.allowed.end(), Rule::ImpI),
                     prof.allowed.end());
  for (std::uint64_t s = 0; s < 60; ++s) {
    prof.seed = s;
    DerivPtr d = genDerivation(prof);
    RaaReport rep = raaReport(d);
    for (const auto& inst : rep.instances) {
      if (inst.distance == 0) continue;
      Redex r = findRedex(d, inst.position);
      FreshLabels labels = FreshLabels::above(d);
      DerivPtr out = reduceAt(d, r, labels);
      CHECK_FALSE(usesRule(out, Rule::ImpI));
      CHECK_FALSE(usesRule(out, Rule::ForallI));
    }
  }
}

TEST_CASE("maximality is shared by all active instances of a fired redex") {
  GeneratorProfile prof = GeneratorProfile::nkNoForallI(23, 4, 0.8);
  for (std::uint64_t s = 0; s < 120; ++s) {
    prof.seed = s;
    DerivPtr d = genDerivation(prof);
    RaaReport rep = raaReport(d);
    long maxAll = 0;
    for (const auto& inst : rep.instances) maxAll = std::max(maxAll, inst.distance);
    for (const auto& inst : rep.instances) {
      if (inst.distance == 0) continue;
      Redex r = findRedex(d, inst.position);
      // distances of the active instances of this redex
      std::vector<long> dists;
      for (int idx : r.active) {
        Path p = r.anchor;
        p.push_back(idx);
        dists.push_back(static_cast<long>(p.size()));
      }
      bool oneMax = false, allMax = true;
      for (long x : dists) {
        if (x == maxAll) oneMax = true;
        if (x != maxAll) allMax = false;
      }
      if (oneMax) CHECK(allMax);
    }
  }
}

TEST_CASE("size decrease at maximal instances") {
  GeneratorProfile prof = GeneratorProfile::nkNoForallI(5, 4, 0.8);
  GeneratorProfile profM = prof;
  profM.allowed.erase(
      std::remove(profM.allowed.begin(), profM.allowed.end(), Rule::ImpI),
      profM.allowed.end());
  for (std::uint64_t s = 0; s < 100; ++s) {
    prof.seed = s;
    DerivPtr d = genDerivation(prof);
    RaaReport rep = raaReport(d);
    if (rep.sizeRaaPlus > 0) {
      auto pos = maximalRaa(d, MaximalMode::Discharging);
      REQUIRE(pos.has_value());
      Redex r = findRedex(d, *pos);
      FreshLabels labels = FreshLabels::above(d);
      DerivPtr out = reduceAt(d, r, labels);
      CHECK(raaReport(out).sizeRaaPlus < rep.sizeRaaPlus);
    }
    profM.seed = s;
    DerivPtr m = genDerivation(profM);
    RaaReport repM = raaReport(m);
    if (repM.sizeRaa > 0) {
      auto pos = maximalRaa(m, MaximalMode::All);
      REQUIRE(pos.has_value());
      Redex r = findRedex(m, *pos);
      FreshLabels labels = FreshLabels::above(m);
      DerivPtr out = reduceAt(m, r, labels);
      CHECK(raaReport(out).sizeRaa < repM.sizeRaa);
    }
  }
}

TEST_CASE("negative formulas") {
  CHECK(isNegative(F("(and (not (pred P)) (not (pred Q)))")));
  CHECK_FALSE(isNegative(F("(imp (pred P) (not (pred Q)))")));
  CHECK_FALSE(isNegative(F("(or (not (pred P)) (not (pred Q)))")));
  CHECK(isNegative(F("(not (pred P))")));
  CHECK(isNegative(F("(not (not (pred P)))")));
  CHECK(isNegative(F("(not bot)")));
  CHECK_FALSE(isNegative(F("bot")));
  CHECK_FALSE(isNegative(F("top")));
  CHECK(isNegative(F("(imp (not (pred P)) (not (pred Q)))")));
  CHECK(isNegative(F("(not (and (not (pred P)) (not (pred Q))))")));
  CHECK_FALSE(isNegative(F("(not (or (pred P) (pred Q)))")));
  CHECK(isNegative(F("(forall x (not (pred P x)))")));
  CHECK_FALSE(isNegative(F("(exists x (not (pred P x)))")));
}

TEST_CASE("dne_for_negative builds NM derivations of {not not B} |- B") {
  auto checkDne = [](const FormulaPtr& b) {
    CAPTURE(renderFormula(b));
    FreshLabels labels;
    DerivPtr d = dneForNegative(b, labels);
    Judgment j = check(d);
    CHECK(inSystem(d, SystemId::NM()));
    CHECK(alphaEq(j.conclusion, b));
    CHECK(j.assumptions.size() == 1);
    CHECK(j.assumptions.contains(Formula::negation(Formula::negation(b))));
  };
  checkDne(F("(not (pred P))"));
  checkDne(F("(and (not (pred P)) (not (pred Q)))"));
  checkDne(F("(imp (not (pred P)) (not (pred Q)))"));
  checkDne(F("(forall x (not (pred P x)))"));
  checkDne(F("(not (and (not (pred P)) (not (pred Q))))"));

  FreshLabels labels;
  CHECK_THROWS_AS(dneForNegative(F("(pred P)"), labels), RewriteError);
}

TEST_CASE("negative imp-i reduction avoids efq") {
  // B = not Q, A = B: closed derivation of B -> B through a raa
  DerivPtr lhs = D(
      "(imp-i 2 (not (pred Q)) (raa 1 (not-e (assume 1 (not (not (pred Q)))) "
      "(assume 2 (not (pred Q))))))");
  check(lhs);
  Redex r = findRedexNegative(lhs, {0});
  FreshLabels labels = FreshLabels::above(lhs);
  DerivPtr out = reduceAtNegative(lhs, r, labels);
  assertPreservation(lhs, out);
  CHECK(countEfq(out) == 0);
  CHECK(out->isRaa());
  CHECK(usesRule(out, Rule::ImpI));
  CHECK(usesRule(out, Rule::NotI));
}

TEST_CASE("negative forall-i reduction erases the raa") {
  DerivPtr lhs = D(
      "(forall-i x (raa 1 (not-e (assume 1 (not (not (pred P)))) "
      "(assume (not (pred P))))))");
  check(lhs);
  Redex r = findRedexNegative(lhs, {0});
  FreshLabels labels = FreshLabels::above(lhs);
  DerivPtr out = reduceAtNegative(lhs, r, labels);
  assertPreservation(lhs, out);
  CHECK_FALSE(usesRule(out, Rule::Raa));
  CHECK(out->rule() == Rule::ForallI);
}

TEST_CASE("negative reduction rejects non-negative targets") {
  DerivPtr lhs = D(
      "(imp-i 2 (pred P) (raa 1 (not-e (assume 1 (not (pred Q))) "
      "(assume (pred Q)))))");
  check(lhs);
  Redex r = findRedexNegative(lhs, {0});
  FreshLabels labels = FreshLabels::above(lhs);
  try {
    reduceAtNegative(lhs, r, labels);
    FAIL("expected NotNegative");
  } catch (const RewriteError& e) {
    CHECK(e.code() == RewriteCode::NotNegative);
  }
}
