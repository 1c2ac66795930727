#include "nd/rewrite.hpp"

#include <sstream>

namespace nd {

using Kind = Formula::Kind;

const char* caseTagName(CaseTag t) {
  switch (t) {
    case CaseTag::NotIntro: return "not-intro";
    case CaseTag::NotElimMajor: return "not-elim-major";
    case CaseTag::NotElimMinor: return "not-elim-minor";
    case CaseTag::NotElimBoth: return "not-elim-both";
    case CaseTag::AndIntroLeft: return "and-intro-left";
    case CaseTag::AndIntroRight: return "and-intro-right";
    case CaseTag::AndIntroBoth: return "and-intro-both";
    case CaseTag::AndElim1: return "and-elim-1";
    case CaseTag::AndElim2: return "and-elim-2";
    case CaseTag::OrIntro1: return "or-intro-1";
    case CaseTag::OrIntro2: return "or-intro-2";
    case CaseTag::OrElimMajor: return "or-elim-major";
    case CaseTag::OrElimLeft: return "or-elim-left";
    case CaseTag::OrElimRight: return "or-elim-right";
    case CaseTag::OrElimMinors: return "or-elim-minors";
    case CaseTag::OrElimMajorLeft: return "or-elim-major-left";
    case CaseTag::OrElimMajorRight: return "or-elim-major-right";
    case CaseTag::OrElimAll: return "or-elim-all";
    case CaseTag::ImpIntro: return "imp-intro";
    case CaseTag::ImpElimMajor: return "imp-elim-major";
    case CaseTag::ImpElimMinor: return "imp-elim-minor";
    case CaseTag::ImpElimBoth: return "imp-elim-both";
    case CaseTag::ExistsIntro: return "exists-intro";
    case CaseTag::ExistsElimMajor: return "exists-elim-major";
    case CaseTag::ExistsElimMinor: return "exists-elim-minor";
    case CaseTag::ExistsElimBoth: return "exists-elim-both";
    case CaseTag::ForallElim: return "forall-elim";
    case CaseTag::RaaBelow: return "raa-below";
    case CaseTag::ForallIntroNegative: return "forall-intro-negative";
  }
  return "?";
}

namespace {

[[noreturn]] void rerr(RewriteCode code, const std::string& msg) {
  throw RewriteError(code, msg);
}

FormulaPtr neg(const FormulaPtr& f) { return Formula::negation(f); }

// Replacement of discharged assumptions; a zero label binds nothing.
DerivPtr dischargeInto(const DerivPtr& body, Label l, const DerivPtr& repl,
                       FreshLabels& labels) {
  if (l == 0) return body;
  return substDischarge(body, l, repl, labels);
}

CaseTag tagFor(Rule anchor, const std::set<int>& active) {
  auto is = [&](std::initializer_list<int> xs) {
    return active == std::set<int>(xs);
  };
  switch (anchor) {
    case Rule::NotI: return CaseTag::NotIntro;
    case Rule::NotE:
      if (is({0})) return CaseTag::NotElimMajor;
      if (is({1})) return CaseTag::NotElimMinor;
      return CaseTag::NotElimBoth;
    case Rule::AndI:
      if (is({0})) return CaseTag::AndIntroLeft;
      if (is({1})) return CaseTag::AndIntroRight;
      return CaseTag::AndIntroBoth;
    case Rule::AndE1: return CaseTag::AndElim1;
    case Rule::AndE2: return CaseTag::AndElim2;
    case Rule::OrI1: return CaseTag::OrIntro1;
    case Rule::OrI2: return CaseTag::OrIntro2;
    case Rule::OrE:
      if (is({0})) return CaseTag::OrElimMajor;
      if (is({1})) return CaseTag::OrElimLeft;
      if (is({2})) return CaseTag::OrElimRight;
      if (is({1, 2})) return CaseTag::OrElimMinors;
      if (is({0, 1})) return CaseTag::OrElimMajorLeft;
      if (is({0, 2})) return CaseTag::OrElimMajorRight;
      return CaseTag::OrElimAll;
    case Rule::ImpI: return CaseTag::ImpIntro;
    case Rule::ImpE:
      if (is({0})) return CaseTag::ImpElimMajor;
      if (is({1})) return CaseTag::ImpElimMinor;
      return CaseTag::ImpElimBoth;
    case Rule::ExistsI: return CaseTag::ExistsIntro;
    case Rule::ExistsE:
      if (is({0})) return CaseTag::ExistsElimMajor;
      if (is({1})) return CaseTag::ExistsElimMinor;
      return CaseTag::ExistsElimBoth;
    case Rule::ForallE: return CaseTag::ForallElim;
    case Rule::Raa: return CaseTag::RaaBelow;
    default:
      rerr(RewriteCode::InternalShapeError, "no reduction case for this anchor");
  }
}

struct RaaParts {
  Label label;
  FormulaPtr concl;
  DerivPtr body;
};

RaaParts parts(const DerivPtr& r) {
  if (!r->isRaa()) rerr(RewriteCode::InternalShapeError, "expected a raa premise");
  return RaaParts{r->label(), r->conclusion(), r->premise(0)};
}

DerivPtr buildReduct(const DerivPtr& s, CaseTag tag, FreshLabels& L,
                     Orientation orient) {
  using D = Derivation;
  switch (tag) {
    case CaseTag::NotIntro: {
      RaaParts r = parts(s->premise(0));  // concludes bot, discharges not bot
      Label f = L.take();
      DerivPtr notBot = D::notI(f, Formula::bottom(), D::assume(Formula::bottom(), f));
      return D::withPremises(s, {dischargeInto(r.body, r.label, notBot, L)});
    }
    case CaseTag::NotElimMajor: {
      RaaParts r = parts(s->premise(0));
      const FormulaPtr& nA = r.concl;  // not A
      DerivPtr arg = s->premise(1);
      Label f = L.take();
      DerivPtr repl = D::notI(f, nA, D::notE(D::assume(nA, f), arg));
      return dischargeInto(r.body, r.label, repl, L);
    }
    case CaseTag::NotElimMinor: {
      DerivPtr major = s->premise(0);
      RaaParts r = parts(s->premise(1));
      return dischargeInto(r.body, r.label, major, L);
    }
    case CaseTag::NotElimBoth: {
      RaaParts r1 = parts(s->premise(0));  // concludes not A
      RaaParts r2 = parts(s->premise(1));  // concludes A
      const FormulaPtr& nA = r1.concl;
      const FormulaPtr& A = r2.concl;
      if (orient == Orientation::Printed) {
        Label fA = L.take(), fNA = L.take();
        DerivPtr inner = D::notI(fA, A, D::notE(D::assume(nA, fNA), D::assume(A, fA)));
        DerivPtr mid = dischargeInto(r2.body, r2.label, inner, L);
        DerivPtr out = D::notI(fNA, nA, mid);
        return dischargeInto(r1.body, r1.label, out, L);
      }
      Label fA = L.take(), g = L.take();
      DerivPtr inner = D::notI(g, nA, D::notE(D::assume(nA, g), D::assume(A, fA)));
      DerivPtr mid = dischargeInto(r1.body, r1.label, inner, L);
      DerivPtr out = D::notI(fA, A, mid);
      return dischargeInto(r2.body, r2.label, out, L);
    }
    case CaseTag::AndIntroLeft: {
      RaaParts r = parts(s->premise(0));
      DerivPtr right = s->premise(1);
      const FormulaPtr& A = r.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fA = L.take();
      DerivPtr repl = D::notI(
          fA, A, D::notE(D::assume(neg(c), fNew), D::andI(D::assume(A, fA), right)));
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::AndIntroRight: {
      DerivPtr left = s->premise(0);
      RaaParts r = parts(s->premise(1));
      const FormulaPtr& B = r.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fB = L.take();
      DerivPtr repl = D::notI(
          fB, B, D::notE(D::assume(neg(c), fNew), D::andI(left, D::assume(B, fB))));
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::AndIntroBoth: {
      RaaParts r1 = parts(s->premise(0));
      RaaParts r2 = parts(s->premise(1));
      const FormulaPtr& A = r1.concl;
      const FormulaPtr& B = r2.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fA = L.take(), fB = L.take();
      DerivPtr pair = D::andI(D::assume(A, fA), D::assume(B, fB));
      DerivPtr base = D::notE(D::assume(neg(c), fNew), pair);
      if (orient == Orientation::Printed) {
        DerivPtr d0 = D::notI(fB, B, base);
        DerivPtr d1 = D::notI(fA, A, dischargeInto(r2.body, r2.label, d0, L));
        return D::raa(fNew, c, dischargeInto(r1.body, r1.label, d1, L));
      }
      DerivPtr d0 = D::notI(fA, A, base);
      DerivPtr d1 = D::notI(fB, B, dischargeInto(r1.body, r1.label, d0, L));
      return D::raa(fNew, c, dischargeInto(r2.body, r2.label, d1, L));
    }
    case CaseTag::AndElim1:
    case CaseTag::AndElim2: {
      RaaParts r = parts(s->premise(0));
      const FormulaPtr& conjF = r.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fC = L.take();
      DerivPtr use = tag == CaseTag::AndElim1 ? D::andE1(D::assume(conjF, fC))
                                              : D::andE2(D::assume(conjF, fC));
      DerivPtr repl = D::notI(fC, conjF, D::notE(D::assume(neg(c), fNew), use));
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::OrIntro1:
    case CaseTag::OrIntro2: {
      RaaParts r = parts(s->premise(0));
      const FormulaPtr& side = r.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fS = L.take();
      DerivPtr inj = tag == CaseTag::OrIntro1
                         ? D::orI1(D::assume(side, fS), c->right())
                         : D::orI2(c->left(), D::assume(side, fS));
      DerivPtr repl = D::notI(fS, side, D::notE(D::assume(neg(c), fNew), inj));
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::OrElimMajor: {
      RaaParts r = parts(s->premise(0));
      DerivPtr m1 = s->premise(1), m2 = s->premise(2);
      const FormulaPtr& orF = r.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fMaj = L.take();
      DerivPtr body = D::orE(s->label(), D::assume(orF, fMaj),
                             D::notE(D::assume(neg(c), fNew), m1),
                             D::notE(D::assume(neg(c), fNew), m2));
      DerivPtr repl = D::notI(fMaj, orF, body);
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::OrElimLeft:
    case CaseTag::OrElimRight: {
      bool leftActive = tag == CaseTag::OrElimLeft;
      DerivPtr major = s->premise(0);
      RaaParts r = parts(s->premise(leftActive ? 1 : 2));
      DerivPtr other = s->premise(leftActive ? 2 : 1);
      const FormulaPtr& c = s->conclusion();
      Label f = L.take();
      DerivPtr active = r.label == 0 ? r.body : relabelAssumptions(r.body, r.label, f);
      DerivPtr passive = D::notE(D::assume(neg(c), f), other);
      DerivPtr body = leftActive ? D::orE(s->label(), major, active, passive)
                                 : D::orE(s->label(), major, passive, active);
      return D::raa(f, c, body);
    }
    case CaseTag::OrElimMinors: {
      DerivPtr major = s->premise(0);
      RaaParts r1 = parts(s->premise(1));
      RaaParts r2 = parts(s->premise(2));
      const FormulaPtr& c = s->conclusion();
      Label f = L.take();
      DerivPtr b1 = r1.label == 0 ? r1.body : relabelAssumptions(r1.body, r1.label, f);
      DerivPtr b2 = r2.label == 0 ? r2.body : relabelAssumptions(r2.body, r2.label, f);
      return D::raa(f, c, D::orE(s->label(), major, b1, b2));
    }
    case CaseTag::OrElimMajorLeft:
    case CaseTag::OrElimMajorRight: {
      bool leftActive = tag == CaseTag::OrElimMajorLeft;
      RaaParts r0 = parts(s->premise(0));
      RaaParts r = parts(s->premise(leftActive ? 1 : 2));
      DerivPtr other = s->premise(leftActive ? 2 : 1);
      const FormulaPtr& orF = r0.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fMaj = L.take();
      DerivPtr active = r.label == 0 ? r.body : relabelAssumptions(r.body, r.label, fNew);
      DerivPtr passive = D::notE(D::assume(neg(c), fNew), other);
      DerivPtr body = leftActive
                          ? D::orE(s->label(), D::assume(orF, fMaj), active, passive)
                          : D::orE(s->label(), D::assume(orF, fMaj), passive, active);
      DerivPtr repl = D::notI(fMaj, orF, body);
      return D::raa(fNew, c, dischargeInto(r0.body, r0.label, repl, L));
    }
    case CaseTag::OrElimAll: {
      RaaParts r0 = parts(s->premise(0));
      RaaParts r1 = parts(s->premise(1));
      RaaParts r2 = parts(s->premise(2));
      const FormulaPtr& orF = r0.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fMaj = L.take();
      DerivPtr b1 = r1.label == 0 ? r1.body : relabelAssumptions(r1.body, r1.label, fNew);
      DerivPtr b2 = r2.label == 0 ? r2.body : relabelAssumptions(r2.body, r2.label, fNew);
      DerivPtr repl = D::notI(fMaj, orF, D::orE(s->label(), D::assume(orF, fMaj), b1, b2));
      return D::raa(fNew, c, dischargeInto(r0.body, r0.label, repl, L));
    }
    case CaseTag::ImpIntro: {
      RaaParts r = parts(s->premise(0));
      const FormulaPtr& c = s->conclusion();  // A -> B
      const FormulaPtr& B = r.concl;
      Label fNew = L.take(), fB = L.take(), fI = L.take(), fE = L.take();
      DerivPtr vac = D::impI(fI, c->left(), D::assume(B, fB));  // vacuous antecedent
      DerivPtr repl = D::notI(fB, B, D::notE(D::assume(neg(c), fNew), vac));
      DerivPtr core = dischargeInto(r.body, r.label, repl, L);
      DerivPtr efq = D::raa(fE, B, core);  // the one new efq of the whole system
      DerivPtr arrow = D::withPremises(s, {efq});
      return D::raa(fNew, c, D::notE(D::assume(neg(c), fNew), arrow));
    }
    case CaseTag::ImpElimMajor: {
      RaaParts r = parts(s->premise(0));
      DerivPtr arg = s->premise(1);
      const FormulaPtr& impF = r.concl;
      const FormulaPtr& c = s->conclusion();  // B
      Label fNew = L.take(), fF = L.take();
      DerivPtr repl = D::notI(
          fF, impF, D::notE(D::assume(neg(c), fNew), D::impE(D::assume(impF, fF), arg)));
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::ImpElimMinor: {
      DerivPtr fun = s->premise(0);
      RaaParts r = parts(s->premise(1));
      const FormulaPtr& A = r.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fA = L.take();
      DerivPtr repl = D::notI(
          fA, A, D::notE(D::assume(neg(c), fNew), D::impE(fun, D::assume(A, fA))));
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::ImpElimBoth: {
      RaaParts r1 = parts(s->premise(0));
      RaaParts r2 = parts(s->premise(1));
      const FormulaPtr& impF = r1.concl;
      const FormulaPtr& A = r2.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fF = L.take(), fA = L.take();
      DerivPtr app = D::impE(D::assume(impF, fF), D::assume(A, fA));
      DerivPtr base = D::notE(D::assume(neg(c), fNew), app);
      if (orient == Orientation::Printed) {
        DerivPtr d0 = D::notI(fA, A, base);
        DerivPtr d1 = D::notI(fF, impF, dischargeInto(r2.body, r2.label, d0, L));
        return D::raa(fNew, c, dischargeInto(r1.body, r1.label, d1, L));
      }
      DerivPtr d0 = D::notI(fF, impF, base);
      DerivPtr d1 = D::notI(fA, A, dischargeInto(r1.body, r1.label, d0, L));
      return D::raa(fNew, c, dischargeInto(r2.body, r2.label, d1, L));
    }
    case CaseTag::ExistsIntro: {
      RaaParts r = parts(s->premise(0));
      const FormulaPtr& inst = r.concl;       // A[t/x]
      const FormulaPtr& c = s->conclusion();  // exists x A
      Label fNew = L.take(), fS = L.take();
      DerivPtr inj = D::existsI(c, s->witness(), D::assume(inst, fS));
      DerivPtr repl = D::notI(fS, inst, D::notE(D::assume(neg(c), fNew), inj));
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::ExistsElimMajor: {
      RaaParts r = parts(s->premise(0));
      DerivPtr minor = s->premise(1);
      const FormulaPtr& exF = r.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fMaj = L.take();
      DerivPtr body = D::existsE(s->label(), s->variable(), D::assume(exF, fMaj),
                                 D::notE(D::assume(neg(c), fNew), minor));
      DerivPtr repl = D::notI(fMaj, exF, body);
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::ExistsElimMinor: {
      DerivPtr major = s->premise(0);
      RaaParts r = parts(s->premise(1));
      const FormulaPtr& c = s->conclusion();
      Label f = L.take();
      DerivPtr b = r.label == 0 ? r.body : relabelAssumptions(r.body, r.label, f);
      return D::raa(f, c, D::existsE(s->label(), s->variable(), major, b));
    }
    case CaseTag::ExistsElimBoth: {
      RaaParts r0 = parts(s->premise(0));
      RaaParts r1 = parts(s->premise(1));
      const FormulaPtr& exF = r0.concl;
      const FormulaPtr& c = s->conclusion();
      Label fNew = L.take(), fMaj = L.take();
      DerivPtr b = r1.label == 0 ? r1.body : relabelAssumptions(r1.body, r1.label, fNew);
      DerivPtr repl = D::notI(
          fMaj, exF, D::existsE(s->label(), s->variable(), D::assume(exF, fMaj), b));
      return D::raa(fNew, c, dischargeInto(r0.body, r0.label, repl, L));
    }
    case CaseTag::ForallElim: {
      RaaParts r = parts(s->premise(0));
      const FormulaPtr& allF = r.concl;
      const FormulaPtr& c = s->conclusion();  // A[t/x]
      Label fNew = L.take(), fAll = L.take();
      DerivPtr use = D::forallE(s->witness(), D::assume(allF, fAll));
      DerivPtr repl = D::notI(fAll, allF, D::notE(D::assume(neg(c), fNew), use));
      return D::raa(fNew, c, dischargeInto(r.body, r.label, repl, L));
    }
    case CaseTag::RaaBelow: {
      RaaParts r = parts(s->premise(0));  // concludes bot
      Label f = L.take();
      DerivPtr notBot = D::notI(f, Formula::bottom(), D::assume(Formula::bottom(), f));
      return D::withPremises(s, {dischargeInto(r.body, r.label, notBot, L)});
    }
    case CaseTag::ForallIntroNegative:
      rerr(RewriteCode::InternalShapeError,
           "negative-variant redexes go through reduceAtNegative");
  }
  rerr(RewriteCode::InternalShapeError, "unhandled case tag");
}

}  // namespace

Redex findRedex(const DerivPtr& d, const Path& raaPos) {
  if (raaPos.empty()) rerr(RewriteCode::RootRaa, "the focused raa is the last rule");
  Path anchorPath(raaPos.begin(), raaPos.end() - 1);
  const Derivation* anchor = nodeAt(d, anchorPath);
  int focus = raaPos.back();
  if (focus < 0 || static_cast<size_t>(focus) >= anchor->premises().size() ||
      !anchor->premises()[static_cast<size_t>(focus)]->isRaa())
    rerr(RewriteCode::InternalShapeError, "position does not point at a raa");
  if (anchor->rule() == Rule::ForallI)
    rerr(RewriteCode::ForallIntroBlock,
         "no reduction case exists below forall-i");
  std::set<int> active;
  if (anchor->rule() == Rule::Raa) {
    // only the bot-concluding upper instance is active
    active.insert(0);
  } else {
    for (size_t i = 0; i < anchor->premises().size(); ++i)
      if (anchor->premises()[i]->isRaa()) active.insert(static_cast<int>(i));
  }
  if (!active.count(focus))
    rerr(RewriteCode::InternalShapeError, "focused raa is not active");
  CaseTag tag = tagFor(anchor->rule(), active);
  return Redex{std::move(anchorPath), std::move(active), tag};
}

Redex findRedexNegative(const DerivPtr& d, const Path& raaPos) {
  if (raaPos.empty()) rerr(RewriteCode::RootRaa, "the focused raa is the last rule");
  Path anchorPath(raaPos.begin(), raaPos.end() - 1);
  const Derivation* anchor = nodeAt(d, anchorPath);
  if (raaPos.back() != 0 || anchor->premises().empty() ||
      !anchor->premises()[0]->isRaa())
    rerr(RewriteCode::ShapeMismatch, "position does not point at a raa premise");
  if (anchor->rule() == Rule::ImpI)
    return Redex{std::move(anchorPath), {0}, CaseTag::ImpIntro};
  if (anchor->rule() == Rule::ForallI)
    return Redex{std::move(anchorPath), {0}, CaseTag::ForallIntroNegative};
  rerr(RewriteCode::ShapeMismatch, "anchor must be imp-i or forall-i");
}

DerivPtr reduceAt(const DerivPtr& d, const Redex& redex, FreshLabels& labels,
                  Orientation orientation) {
  DerivPtr anchor = subtreeAt(d, redex.anchor);
  // recompute the active set as a shape guard
  std::set<int> active;
  if (anchor->rule() == Rule::Raa) {
    if (!anchor->premise(0)->isRaa())
      rerr(RewriteCode::InternalShapeError, "redex no longer matches the tree");
    active.insert(0);
  } else {
    for (size_t i = 0; i < anchor->premises().size(); ++i)
      if (anchor->premises()[i]->isRaa()) active.insert(static_cast<int>(i));
  }
  if (active != redex.active || tagFor(anchor->rule(), active) != redex.tag)
    rerr(RewriteCode::InternalShapeError, "redex no longer matches the tree");
  DerivPtr reduct = buildReduct(anchor, redex.tag, labels, orientation);
  DerivPtr out = replaceAt(d, redex.anchor, reduct);
  try {
    check(out);
  } catch (const CheckError& e) {
    rerr(RewriteCode::BrokenReduct,
         std::string("reduct fails to check: ") + e.what());
  }
  return out;
}

bool isNegative(const FormulaPtr& f) {
  switch (f->kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Top:
      return false;
    case Kind::Or:
    case Kind::Exists:
      return false;
    case Kind::Not: {
      const FormulaPtr& b = f->body();
      if (b->is(Kind::Atom) || b->is(Kind::Bottom) || b->is(Kind::Top)) return true;
      return isNegative(b);
    }
    case Kind::And:
    case Kind::Imp:
      return isNegative(f->left()) && isNegative(f->right());
    case Kind::Forall:
      return isNegative(f->body());
  }
  return false;
}

DerivPtr dneForNegative(const FormulaPtr& b, FreshLabels& L) {
  using D = Derivation;
  if (!isNegative(b)) rerr(RewriteCode::NotNegative, "formula is not negative");
  FormulaPtr nnb = neg(neg(b));
  switch (b->kind()) {
    case Kind::Not: {
      // triple negation drops to single, for any body
      const FormulaPtr& c = b->body();
      Label la = L.take(), lb = L.take();
      DerivPtr step1 = D::notE(D::assume(neg(c), lb), D::assume(c, la));
      DerivPtr step2 = D::notI(lb, neg(c), step1);
      DerivPtr step3 = D::notE(D::assume(nnb, 0), step2);
      return D::notI(la, c, step3);
    }
    case Kind::And: {
      DerivPtr d1 = dneForNegative(b->left(), L);
      DerivPtr d2 = dneForNegative(b->right(), L);
      auto half = [&](const FormulaPtr& side, bool first, const DerivPtr& dside) {
        Label g = L.take(), h = L.take();
        DerivPtr proj = first ? D::andE1(D::assume(b, h)) : D::andE2(D::assume(b, h));
        DerivPtr inner = D::notI(h, b, D::notE(D::assume(neg(side), g), proj));
        DerivPtr nnSide = D::notI(g, neg(side), D::notE(D::assume(nnb, 0), inner));
        FreshLabels& LL = L;
        return substFreeAssumptions(dside, neg(neg(side)), nnSide, LL);
      };
      return D::andI(half(b->left(), true, d1), half(b->right(), false, d2));
    }
    case Kind::Imp: {
      DerivPtr d2 = dneForNegative(b->right(), L);
      const FormulaPtr& ant = b->left();
      const FormulaPtr& con = b->right();
      Label fAnt = L.take(), g = L.take(), h = L.take();
      DerivPtr app = D::impE(D::assume(b, h), D::assume(ant, fAnt));
      DerivPtr inner = D::notI(h, b, D::notE(D::assume(neg(con), g), app));
      DerivPtr nnCon = D::notI(g, neg(con), D::notE(D::assume(nnb, 0), inner));
      DerivPtr body = substFreeAssumptions(d2, neg(neg(con)), nnCon, L);
      return D::impI(fAnt, ant, body);
    }
    case Kind::Forall: {
      DerivPtr d1 = dneForNegative(b->body(), L);
      const std::string& x = b->name();
      const FormulaPtr& inside = b->body();
      Label g = L.take(), h = L.take();
      DerivPtr use = D::forallE(Term::var(x), D::assume(b, h));
      DerivPtr inner = D::notI(h, b, D::notE(D::assume(neg(inside), g), use));
      DerivPtr nnInside = D::notI(g, neg(inside), D::notE(D::assume(nnb, 0), inner));
      DerivPtr body = substFreeAssumptions(d1, neg(neg(inside)), nnInside, L);
      return D::forallI(x, body);
    }
    default:
      rerr(RewriteCode::InternalShapeError, "negative formula shape not covered");
  }
}

DerivPtr reduceAtNegative(const DerivPtr& d, const Redex& redex, FreshLabels& L) {
  using D = Derivation;
  DerivPtr anchor = subtreeAt(d, redex.anchor);
  if (anchor->rule() == Rule::ImpI) {
    if (!anchor->premise(0)->isRaa())
      rerr(RewriteCode::ShapeMismatch, "imp-i premise does not end in raa");
    RaaParts r = parts(anchor->premise(0));
    const FormulaPtr& c = anchor->conclusion();
    const FormulaPtr& B = r.concl;
    if (!isNegative(B)) rerr(RewriteCode::NotNegative, "consequent is not negative");
    Label fNew = L.take(), fB = L.take(), fI = L.take();
    DerivPtr vac = D::impI(fI, c->left(), D::assume(B, fB));
    DerivPtr repl = D::notI(fB, B, D::notE(D::assume(neg(c), fNew), vac));
    DerivPtr core = dischargeInto(r.body, r.label, repl, L);
    DerivPtr nn = D::notI(0, neg(B), core);  // vacuous: all not-B occurrences replaced
    DerivPtr dne = dneForNegative(B, L);
    DerivPtr spliced = substFreeAssumptions(dne, neg(neg(B)), nn, L);
    DerivPtr arrow = D::withPremises(anchor, {spliced});
    DerivPtr reduct = D::raa(fNew, c, D::notE(D::assume(neg(c), fNew), arrow));
    DerivPtr out = replaceAt(d, redex.anchor, reduct);
    check(out);
    return out;
  }
  if (anchor->rule() == Rule::ForallI) {
    if (!anchor->premise(0)->isRaa())
      rerr(RewriteCode::ShapeMismatch, "forall-i premise does not end in raa");
    RaaParts r = parts(anchor->premise(0));
    const FormulaPtr& A = r.concl;
    if (!isNegative(A)) rerr(RewriteCode::NotNegative, "body is not negative");
    DerivPtr nn = D::notI(r.label, neg(A), r.body);  // the raa turns into a not-i
    DerivPtr dne = dneForNegative(A, L);
    DerivPtr spliced = substFreeAssumptions(dne, neg(neg(A)), nn, L);
    DerivPtr reduct = D::withPremises(anchor, {spliced});
    DerivPtr out = replaceAt(d, redex.anchor, reduct);
    check(out);
    return out;
  }
  rerr(RewriteCode::ShapeMismatch, "anchor must be imp-i or forall-i");
}

}  // namespace nd
