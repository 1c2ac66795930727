#ifndef ND_GLIVENKO_HPP
#define ND_GLIVENKO_HPP

#include "nd/strategy.hpp"

namespace nd {

// Formula translations into the forall-free (Intuitionistic) and
// imp/forall-free (Minimal) fragments; MinimalStar keeps implication but is
// partial: consequents and universally quantified bodies must be negative.
enum class TranslationMode { Minimal, Intuitionistic, MinimalStar };

enum class GlivenkoCode { StarRestrictionViolated, ShapeMismatch, VocabularyViolation, JudgmentMismatch };

class GlivenkoError : public std::runtime_error {
public:
  GlivenkoError(GlivenkoCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GlivenkoCode code() const { return code_; }

private:
  GlivenkoCode code_;
};

FormulaPtr translate(const FormulaPtr& f, TranslationMode mode);

// Kuroda-prime comparison variants ((forall x A)' = forall x not not A'),
// exposed read-only; they reintroduce the universal quantifier and are not
// usable in the postponement pipeline.
FormulaPtr translatePrime(const FormulaPtr& f, TranslationMode mode);

// Rebuilds a checked NK derivation over the translated formulas. Minimal mode
// emits no imp_i/imp_e/forall_i/forall_e instance and no ->/forall symbol;
// Intuitionistic mode emits no forall rules or symbol.
DerivPtr translateDerivation(const DerivPtr& d, TranslationMode mode, FreshLabels& labels);

struct GlivenkoResult {
  DerivPtr doubleNegation;  // Gamma^mode |- not not A^mode, in NM resp. NJ
  DerivPtr refutation;      // Gamma^mode, not A^mode |- bot
};

// Constructive Glivenko pipeline: translate, postpone, then replace or wrap
// the final raa by a not_i.
GlivenkoResult glivenko(const DerivPtr& d, TranslationMode mode, FreshLabels& labels);

// From an NM derivation of not not not B, the NM derivation of not B.
DerivPtr stripTripleNegation(const DerivPtr& d, FreshLabels& labels);

// Turns a classical refutation of Gamma into one in NM (Minimal; Gamma must
// not mention -> or forall) or NJ (Intuitionistic; no forall).
DerivPtr consistencyTransfer(const DerivPtr& d, TranslationMode mode, FreshLabels& labels);

struct EquivPair {
  DerivPtr fwd;  // {A} |- A^mode, in NK
  DerivPtr bwd;  // {A^mode} |- A, in NK
};

// Classical interderivability of A and its translation, by structural
// induction with equivalence gadgets for -> and forall.
EquivPair classicalEquiv(const FormulaPtr& a, TranslationMode mode, FreshLabels& labels);

// Inverse direction: from Gamma^mode |- not not A^mode (in NM/NJ) back to an
// NK derivation of Gamma |- A.
DerivPtr inverseGlivenko(const DerivPtr& d, const FormulaPtr& original,
                         const std::vector<FormulaPtr>& gamma, TranslationMode mode,
                         FreshLabels& labels);

}  // namespace nd

#endif
