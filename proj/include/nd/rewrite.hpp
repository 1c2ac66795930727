#ifndef ND_REWRITE_HPP
#define ND_REWRITE_HPP

#include <set>
#include <stdexcept>

#include "nd/check.hpp"

namespace nd {

// One reduction case: the rule instance immediately below the focused raa,
// keyed by which of its premises end in raa.
enum class CaseTag {
  NotIntro,        // raa concluding bot below a not_i
  NotElimMajor,
  NotElimMinor,
  NotElimBoth,
  AndIntroLeft,
  AndIntroRight,
  AndIntroBoth,
  AndElim1,
  AndElim2,
  OrIntro1,
  OrIntro2,
  OrElimMajor,
  OrElimLeft,
  OrElimRight,
  OrElimMinors,
  OrElimMajorLeft,
  OrElimMajorRight,
  OrElimAll,
  ImpIntro,        // the only case that introduces a new efq
  ImpElimMajor,
  ImpElimMinor,
  ImpElimBoth,
  ExistsIntro,
  ExistsElimMajor,
  ExistsElimMinor,
  ExistsElimBoth,
  ForallElim,
  RaaBelow,        // raa concluding bot below another raa (or efq)
  ForallIntroNegative,  // only reachable through findRedexNegative
};

const char* caseTagName(CaseTag t);

struct Redex {
  Path anchor;            // the rule instance below the focused raa
  std::set<int> active;   // premise indices of the anchor ending in raa
  CaseTag tag;
};

enum class RewriteCode {
  RootRaa,
  ForallIntroBlock,
  InternalShapeError,
  NotNegative,
  ShapeMismatch,
  BrokenReduct,  // reduct fails to re-check (possible only around forall_i /
                 // exists_e eigenvariables outside the theorem's fragment)
};

class RewriteError : public std::runtime_error {
public:
  RewriteError(RewriteCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  RewriteCode code() const { return code_; }

private:
  RewriteCode code_;
};

// Locates the redex for the raa instance at `raaPos` (which must not be the
// root). All anchor premises ending in raa become active; when the anchor is
// itself a raa, only the bot-concluding upper instance is active.
Redex findRedex(const DerivPtr& d, const Path& raaPos);

// Like findRedex but for the negative-formula variant reductions, where a
// forall_i anchor is legitimate; only imp_i and forall_i anchors are accepted.
Redex findRedexNegative(const DerivPtr& d, const Path& raaPos);

// For the symmetric double-raa cases the printed reducts stack the second
// subderivation above the first; Swapped picks the other orientation.
enum class Orientation { Printed, Swapped };

// Fires one reduction step and returns the rewritten derivation. The output
// re-checks with the same conclusion and an undischarged-assumption set
// included in the input's.
DerivPtr reduceAt(const DerivPtr& d, const Redex& redex, FreshLabels& labels,
                  Orientation orientation = Orientation::Printed);

// Negative formulas: atoms (bot and top included) occur only immediately
// under a negation, and neither disjunction nor the existential occurs.
bool isNegative(const FormulaPtr& f);

// NM derivation of {not not B} |- B, by structural induction on negative B.
DerivPtr dneForNegative(const FormulaPtr& b, FreshLabels& labels);

// Variant reductions for imp_i with a negative consequent and forall_i with a
// negative body: no efq is introduced, the double-negation elimination being
// spliced in as a derivable NM step.
DerivPtr reduceAtNegative(const DerivPtr& d, const Redex& redex, FreshLabels& labels);

}  // namespace nd

#endif
