#include "nd/glivenko.hpp"

#include <algorithm>

namespace nd {

using D = Derivation;
using Kind = Formula::Kind;

namespace {

FormulaPtr neg(const FormulaPtr& f) { return Formula::negation(f); }

[[noreturn]] void gerr(GlivenkoCode code, const std::string& msg) {
  throw GlivenkoError(code, msg);
}

void seedAbove(FreshLabels& L, const DerivPtr& d) {
  L.next = std::max(L.next, maxLabel(d) + 1);
}

}  // namespace

FormulaPtr translate(const FormulaPtr& f, TranslationMode mode) {
  switch (f->kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Top:
      return f;
    case Kind::Not:
      return neg(translate(f->body(), mode));
    case Kind::And:
      return Formula::conj(translate(f->left(), mode), translate(f->right(), mode));
    case Kind::Or:
      return Formula::disj(translate(f->left(), mode), translate(f->right(), mode));
    case Kind::Imp: {
      FormulaPtr l = translate(f->left(), mode);
      FormulaPtr r = translate(f->right(), mode);
      switch (mode) {
        case TranslationMode::Minimal:
          return Formula::disj(neg(l), r);
        case TranslationMode::Intuitionistic:
          return Formula::impl(l, r);
        case TranslationMode::MinimalStar:
          if (!isNegative(r))
            gerr(GlivenkoCode::StarRestrictionViolated,
                 "implication consequent is not negative after translation");
          return Formula::impl(l, neg(neg(r)));
      }
      return f;
    }
    case Kind::Forall: {
      FormulaPtr b = translate(f->body(), mode);
      if (mode == TranslationMode::MinimalStar) {
        if (!isNegative(b))
          gerr(GlivenkoCode::StarRestrictionViolated,
               "universally quantified body is not negative after translation");
        return Formula::forall(f->name(), b);
      }
      return neg(Formula::exists(f->name(), neg(b)));
    }
    case Kind::Exists:
      return Formula::exists(f->name(), translate(f->body(), mode));
  }
  return f;
}

FormulaPtr translatePrime(const FormulaPtr& f, TranslationMode mode) {
  if (mode == TranslationMode::MinimalStar)
    gerr(GlivenkoCode::ShapeMismatch, "no prime variant of the star translation");
  switch (f->kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Top:
      return f;
    case Kind::Not:
      return neg(translatePrime(f->body(), mode));
    case Kind::And:
      return Formula::conj(translatePrime(f->left(), mode),
                           translatePrime(f->right(), mode));
    case Kind::Or:
      return Formula::disj(translatePrime(f->left(), mode),
                           translatePrime(f->right(), mode));
    case Kind::Imp: {
      FormulaPtr l = translatePrime(f->left(), mode);
      FormulaPtr r = translatePrime(f->right(), mode);
      return mode == TranslationMode::Minimal ? Formula::disj(neg(l), r)
                                              : Formula::impl(l, r);
    }
    case Kind::Forall:
      return Formula::forall(f->name(), neg(neg(translatePrime(f->body(), mode))));
    case Kind::Exists:
      return Formula::exists(f->name(), translatePrime(f->body(), mode));
  }
  return f;
}

namespace {

class DerivTranslator {
public:
  DerivTranslator(TranslationMode mode, FreshLabels& labels)
      : mode_(mode), L_(labels) {}

  DerivPtr go(const DerivPtr& d) {
    FormulaPtr c = t(d->conclusion());
    switch (d->rule()) {
      case Rule::Assume:
        return D::assume(c, d->label());
      case Rule::TopI:
        return D::topI();
      case Rule::Raa:
        return D::raa(d->label(), c, go(d->premise(0)));
      case Rule::NotI:
        return D::notI(d->label(), c->body(), go(d->premise(0)));
      case Rule::NotE:
        return D::notE(go(d->premise(0)), go(d->premise(1)));
      case Rule::AndI:
        return D::andI(go(d->premise(0)), go(d->premise(1)));
      case Rule::AndE1:
        return D::andE1(go(d->premise(0)));
      case Rule::AndE2:
        return D::andE2(go(d->premise(0)));
      case Rule::OrI1:
        return D::orI1(go(d->premise(0)), c->right());
      case Rule::OrI2:
        return D::orI2(c->left(), go(d->premise(0)));
      case Rule::OrE:
        return D::orE(d->label(), go(d->premise(0)), go(d->premise(1)),
                      go(d->premise(2)));
      case Rule::ImpI: {
        const FormulaPtr& orig = d->conclusion();
        DerivPtr body = go(d->premise(0));
        if (mode_ == TranslationMode::Intuitionistic)
          return D::impI(d->label(), t(orig->left()), body);
        return minimalImpIntro(t(orig->left()), t(orig->right()), d->label(), body);
      }
      case Rule::ImpE: {
        DerivPtr major = go(d->premise(0));
        DerivPtr minor = go(d->premise(1));
        if (mode_ == TranslationMode::Intuitionistic) return D::impE(major, minor);
        return minimalImpElim(major, minor);
      }
      case Rule::ForallI: {
        // exists_e + not_i in place of the quantifier introduction
        DerivPtr body = go(d->premise(0));
        FormulaPtr a = body->conclusion();
        const std::string& x = d->variable();
        Label f2 = L_.take(), f1 = L_.take();
        FormulaPtr exF = Formula::exists(x, neg(a));
        DerivPtr inner = D::notE(D::assume(neg(a), f1), body);
        DerivPtr elim = D::existsE(f1, x, D::assume(exF, f2), inner);
        return D::notI(f2, exF, elim);
      }
      case Rule::ForallE: {
        // exists_i + raa in place of the quantifier elimination
        DerivPtr body = go(d->premise(0));  // not exists x not A'
        FormulaPtr exF = body->conclusion()->body();
        FormulaPtr instNeg = subst(exF->body(), exF->name(), d->witness());
        Label f = L_.take();
        DerivPtr inj = D::existsI(exF, d->witness(), D::assume(instNeg, f));
        return D::raa(f, instNeg->body(), D::notE(body, inj));
      }
      case Rule::ExistsI:
        return D::existsI(c, d->witness(), go(d->premise(0)));
      case Rule::ExistsE:
        return D::existsE(d->label(), d->variable(), go(d->premise(0)),
                          go(d->premise(1)));
    }
    throw std::logic_error("unhandled rule in translation");
  }

private:
  TranslationMode mode_;
  FreshLabels& L_;

  FormulaPtr t(const FormulaPtr& f) { return translate(f, mode_); }

  // (A -> B)^m = not A' or B'; the excluded-middle gadget supplies not A' or A',
  // then or_e routes the two sides into the translated implication.
  DerivPtr minimalImpIntro(const FormulaPtr& am, const FormulaPtr& bm, Label k,
                           const DerivPtr& body) {
    FormulaPtr lemF = Formula::disj(neg(am), am);
    Label f2 = L_.take(), f1 = L_.take();
    DerivPtr in1 = D::orI2(neg(am), D::assume(am, f1));
    DerivPtr in2 = D::notE(D::assume(neg(lemF), f2), in1);
    DerivPtr in3 = D::notI(f1, am, in2);
    DerivPtr in4 = D::orI1(in3, am);
    DerivPtr in5 = D::notE(D::assume(neg(lemF), f2), in4);
    DerivPtr lem = D::raa(f2, lemF, in5);
    Label kk = k != 0 ? k : L_.take();
    DerivPtr left = D::orI1(D::assume(neg(am), kk), bm);
    DerivPtr right = D::orI2(neg(am), body);
    return D::orE(kk, lem, left, right);
  }

  // (A -> B)^m eliminated by cases: the not A' branch refutes the translated
  // argument and explodes.
  DerivPtr minimalImpElim(const DerivPtr& major, const DerivPtr& minor) {
    const FormulaPtr& orF = major->conclusion();  // not A' or B'
    const FormulaPtr& bm = orF->right();
    Label f = L_.take();
    DerivPtr efq = D::raa(0, bm, D::notE(D::assume(orF->left(), f), minor));
    return D::orE(f, major, efq, D::assume(bm, f));
  }
};

}  // namespace

DerivPtr translateDerivation(const DerivPtr& d, TranslationMode mode,
                             FreshLabels& labels) {
  if (mode == TranslationMode::MinimalStar)
    gerr(GlivenkoCode::ShapeMismatch,
         "derivations are translated in Minimal or Intuitionistic mode");
  check(d);
  seedAbove(labels, d);
  DerivTranslator tr(mode, labels);
  DerivPtr out = tr.go(d);
  check(out);
  return out;
}

GlivenkoResult glivenko(const DerivPtr& d, TranslationMode mode, FreshLabels& labels) {
  DerivPtr t = translateDerivation(d, mode, labels);
  ReductionTrace trace =
      mode == TranslationMode::Minimal ? postponeM(t) : postponeJ(t);
  DerivPtr p = trace.result;
  seedAbove(labels, p);
  FormulaPtr a = p->conclusion();
  GlivenkoResult res;
  if (p->isRaa()) {
    // replace the final raa by a not_i discharging the same assumptions
    res.doubleNegation = D::notI(p->label(), neg(a), p->premise(0));
    res.refutation =
        p->label() == 0 ? p->premise(0) : relabelAssumptions(p->premise(0), p->label(), 0);
  } else {
    Label f = labels.take();
    res.doubleNegation = D::notI(f, neg(a), D::notE(D::assume(neg(a), f), p));
    res.refutation = D::notE(D::assume(neg(a), 0), p);
  }
  check(res.doubleNegation);
  check(res.refutation);
  return res;
}

DerivPtr stripTripleNegation(const DerivPtr& d, FreshLabels& labels) {
  const FormulaPtr& c = d->conclusion();
  if (!(c->is(Kind::Not) && c->body()->is(Kind::Not) && c->body()->body()->is(Kind::Not)))
    gerr(GlivenkoCode::ShapeMismatch, "conclusion is not triply negated");
  FormulaPtr b = c->body()->body()->body();
  seedAbove(labels, d);
  Label l1 = labels.take(), l2 = labels.take(), l3 = labels.take();
  DerivPtr in1 = D::notE(D::assume(neg(b), l1), D::assume(b, l2));
  DerivPtr in2 = D::notI(l1, neg(b), in1);
  DerivPtr in3 = D::notE(D::assume(c, l3), in2);
  DerivPtr in4 = D::notI(l2, b, in3);
  DerivPtr in5 = D::impI(l3, c, in4);
  return D::impE(in5, d);
}

DerivPtr consistencyTransfer(const DerivPtr& d, TranslationMode mode,
                             FreshLabels& labels) {
  Judgment j = check(d);
  if (!j.conclusion->is(Kind::Bottom))
    gerr(GlivenkoCode::ShapeMismatch, "expected a refutation (conclusion bot)");
  for (const auto& g : j.assumptions.items()) {
    bool bad = containsConnective(g, Kind::Forall) ||
               (mode == TranslationMode::Minimal && containsConnective(g, Kind::Imp));
    if (bad)
      gerr(GlivenkoCode::VocabularyViolation,
           "assumption vocabulary outside the transferable fragment");
  }
  DerivPtr t = translateDerivation(d, mode, labels);
  ReductionTrace trace =
      mode == TranslationMode::Minimal ? postponeM(t) : postponeJ(t);
  DerivPtr p = trace.result;
  seedAbove(labels, p);
  if (!p->isRaa()) return p;
  // the root raa discharges assumptions of shape not bot; close them off
  Label f = labels.take();
  DerivPtr notBot = D::notI(f, Formula::bottom(), D::assume(Formula::bottom(), f));
  if (p->label() == 0) return p->premise(0);
  return substDischarge(p->premise(0), p->label(), notBot, labels);
}

namespace {

class EquivBuilder {
public:
  EquivBuilder(TranslationMode mode, FreshLabels& labels) : mode_(mode), L_(labels) {}

  EquivPair build(const FormulaPtr& a) {
    FormulaPtr am = translate(a, mode_);
    switch (a->kind()) {
      case Kind::Atom:
      case Kind::Bottom:
      case Kind::Top:
        return {D::assume(a, 0), D::assume(a, 0)};
      case Kind::Not: {
        EquivPair sub = build(a->body());
        Label f = L_.take(), g = L_.take();
        DerivPtr fwd = D::notI(
            f, am->body(),
            D::notE(D::assume(a, 0), bindFreeAssumptions(sub.bwd, am->body(), f)));
        DerivPtr bwd = D::notI(
            g, a->body(),
            D::notE(D::assume(am, 0), bindFreeAssumptions(sub.fwd, a->body(), g)));
        return {fwd, bwd};
      }
      case Kind::And: {
        EquivPair l = build(a->left());
        EquivPair r = build(a->right());
        DerivPtr fwd = D::andI(
            substFreeAssumptions(l.fwd, a->left(), D::andE1(D::assume(a, 0)), L_),
            substFreeAssumptions(r.fwd, a->right(), D::andE2(D::assume(a, 0)), L_));
        DerivPtr bwd = D::andI(
            substFreeAssumptions(l.bwd, am->left(), D::andE1(D::assume(am, 0)), L_),
            substFreeAssumptions(r.bwd, am->right(), D::andE2(D::assume(am, 0)), L_));
        return {fwd, bwd};
      }
      case Kind::Or: {
        EquivPair l = build(a->left());
        EquivPair r = build(a->right());
        Label f = L_.take(), g = L_.take();
        DerivPtr fwd =
            D::orE(f, D::assume(a, 0),
                   D::orI1(bindFreeAssumptions(l.fwd, a->left(), f), am->right()),
                   D::orI2(am->left(), bindFreeAssumptions(r.fwd, a->right(), f)));
        DerivPtr bwd =
            D::orE(g, D::assume(am, 0),
                   D::orI1(bindFreeAssumptions(l.bwd, am->left(), g), a->right()),
                   D::orI2(a->left(), bindFreeAssumptions(r.bwd, am->right(), g)));
        return {fwd, bwd};
      }
      case Kind::Imp:
        return mode_ == TranslationMode::Intuitionistic ? impIntuit(a, am)
                                                        : impMinimal(a, am);
      case Kind::Forall:
        return forallCase(a, am);
      case Kind::Exists: {
        EquivPair sub = build(a->body());
        Label f = L_.take(), g = L_.take();
        const std::string& x = a->name();
        DerivPtr fwd = D::existsE(
            f, x, D::assume(a, 0),
            D::existsI(am, Term::var(x), bindFreeAssumptions(sub.fwd, a->body(), f)));
        DerivPtr bwd = D::existsE(
            g, x, D::assume(am, 0),
            D::existsI(a, Term::var(x), bindFreeAssumptions(sub.bwd, am->body(), g)));
        return {fwd, bwd};
      }
    }
    throw std::logic_error("unhandled formula kind");
  }

private:
  TranslationMode mode_;
  FreshLabels& L_;

  // (A -> B)^j = A^j -> B^j: route through both subformula equivalences.
  EquivPair impIntuit(const FormulaPtr& a, const FormulaPtr& am) {
    EquivPair l = build(a->left());
    EquivPair r = build(a->right());
    Label f = L_.take(), g = L_.take();
    DerivPtr fwd = D::impI(
        f, am->left(),
        substFreeAssumptions(
            r.fwd, a->right(),
            D::impE(D::assume(a, 0), bindFreeAssumptions(l.bwd, am->left(), f)), L_));
    DerivPtr bwd = D::impI(
        g, a->left(),
        substFreeAssumptions(
            r.bwd, am->right(),
            D::impE(D::assume(am, 0), bindFreeAssumptions(l.fwd, a->left(), g)), L_));
    return {fwd, bwd};
  }

  // (A -> B)^m = not A^m or B^m: the forward direction decides A^m classically.
  EquivPair impMinimal(const FormulaPtr& a, const FormulaPtr& am) {
    EquivPair l = build(a->left());
    EquivPair r = build(a->right());
    const FormulaPtr& lm = am->left()->body();  // A^m
    const FormulaPtr& rm = am->right();         // B^m
    Label g = L_.take(), f = L_.take();
    DerivPtr viaC = substFreeAssumptions(
        r.fwd, a->right(),
        D::impE(D::assume(a, 0), bindFreeAssumptions(l.bwd, lm, f)), L_);
    DerivPtr in1 = D::notE(D::assume(neg(am), g), D::orI2(neg(lm), viaC));
    DerivPtr in2 = D::orI1(D::notI(f, lm, in1), rm);
    DerivPtr fwd = D::raa(g, am, D::notE(D::assume(neg(am), g), in2));

    Label h = L_.take(), e = L_.take();
    DerivPtr fromA = bindFreeAssumptions(l.fwd, a->left(), e);  // proves A^m
    DerivPtr exploded =
        D::raa(0, a->right(), D::notE(D::assume(neg(lm), h), fromA));
    DerivPtr viaB = bindFreeAssumptions(r.bwd, rm, h);
    DerivPtr bwd = D::impI(e, a->left(), D::orE(h, D::assume(am, 0), exploded, viaB));
    return {fwd, bwd};
  }

  // (forall x A)^mode = not exists x not A^mode, in both modes.
  EquivPair forallCase(const FormulaPtr& a, const FormulaPtr& am) {
    EquivPair sub = build(a->body());
    const std::string& x = a->name();
    const FormulaPtr& exF = am->body();          // exists x not A^mode
    const FormulaPtr& bodyM = exF->body()->body();  // A^mode
    Label f = L_.take(), g = L_.take();
    DerivPtr inst = substFreeAssumptions(
        sub.fwd, a->body(), D::forallE(Term::var(x), D::assume(a, 0)), L_);
    DerivPtr minor = D::notE(D::assume(neg(bodyM), f), inst);
    DerivPtr fwd = D::notI(g, exF, D::existsE(f, x, D::assume(exF, g), minor));

    Label h = L_.take(), e = L_.take();
    DerivPtr toBody = bindFreeAssumptions(sub.bwd, bodyM, e);
    DerivPtr negBody =
        D::notI(e, bodyM, D::notE(D::assume(neg(a->body()), h), toBody));
    DerivPtr inj = D::existsI(exF, Term::var(x), negBody);
    DerivPtr bwd =
        D::forallI(x, D::raa(h, a->body(), D::notE(D::assume(am, 0), inj)));
    return {fwd, bwd};
  }
};

}  // namespace

EquivPair classicalEquiv(const FormulaPtr& a, TranslationMode mode, FreshLabels& labels) {
  if (mode == TranslationMode::MinimalStar)
    gerr(GlivenkoCode::ShapeMismatch,
         "equivalences are built in Minimal or Intuitionistic mode");
  EquivBuilder b(mode, labels);
  EquivPair p = b.build(a);
  check(p.fwd);
  check(p.bwd);
  return p;
}

DerivPtr inverseGlivenko(const DerivPtr& d, const FormulaPtr& original,
                         const std::vector<FormulaPtr>& gamma, TranslationMode mode,
                         FreshLabels& labels) {
  Judgment j = check(d);
  FormulaPtr am = translate(original, mode);
  if (!alphaEq(j.conclusion, neg(neg(am))))
    gerr(GlivenkoCode::JudgmentMismatch,
         "conclusion is not the double negation of the translated formula");
  FormulaSet allowed;
  for (const auto& g : gamma) allowed.insert(translate(g, mode));
  for (const auto& a : j.assumptions.items())
    if (!allowed.contains(a))
      gerr(GlivenkoCode::JudgmentMismatch,
           "assumption outside the translated context");
  seedAbove(labels, d);
  DerivPtr work = d;
  for (const auto& g : gamma) {
    EquivPair eq = classicalEquiv(g, mode, labels);
    work = substFreeAssumptions(work, translate(g, mode), eq.fwd, labels);
  }
  Label f = labels.take();
  DerivPtr raaNode = D::raa(f, am, D::notE(work, D::assume(neg(am), f)));
  EquivPair eqA = classicalEquiv(original, mode, labels);
  DerivPtr out = substFreeAssumptions(eqA.bwd, am, raaNode, labels);
  check(out);
  return out;
}

}  // namespace nd
