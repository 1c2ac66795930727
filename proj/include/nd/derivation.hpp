#ifndef ND_DERIVATION_HPP
#define ND_DERIVATION_HPP

#include <memory>
#include <string>
#include <vector>

#include "nd/formula.hpp"

namespace nd {

// Rule tags for Figure-style first-order natural deduction. efq is not a
// distinct tag: a Raa instance with an empty discharge set is an efq.
enum class Rule {
  Assume,
  Raa,
  TopI,
  NotI,
  NotE,
  AndI,
  AndE1,
  AndE2,
  OrI1,
  OrI2,
  OrE,
  ImpI,
  ImpE,
  ForallI,
  ForallE,
  ExistsI,
  ExistsE,
};

const char* ruleName(Rule r);
bool ruleDischarges(Rule r);  // Raa, NotI, ImpI, OrE, ExistsE

// Discharge label. 0 means "no label": a free assumption on a leaf, or a
// binder that vacuously discharges nothing.
using Label = int;

// Path from the root: premise indices.
using Path = std::vector<int>;
std::string pathToString(const Path& p);

class Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

// Rule-labeled proof tree. Leaves are Assume nodes; internal nodes carry the
// rule, its premises, and whatever annotation makes checking syntax-directed:
// a discharge label for Raa/NotI/ImpI/OrE/ExistsE, a witness term for
// ForallE/ExistsI, a generalized/eigen variable for ForallI/ExistsE, and the
// target formula for ExistsI. Conclusions are stored on every node.
class Derivation {
public:
  Rule rule() const { return rule_; }
  const FormulaPtr& conclusion() const { return concl_; }
  const std::vector<DerivPtr>& premises() const { return prems_; }
  const DerivPtr& premise(int i) const { return prems_[static_cast<size_t>(i)]; }
  Label label() const { return label_; }
  const TermPtr& witness() const { return witness_; }
  const std::string& variable() const { return var_; }

  bool isAssume() const { return rule_ == Rule::Assume; }
  bool isRaa() const { return rule_ == Rule::Raa; }

  static DerivPtr assume(FormulaPtr f, Label l = 0);
  static DerivPtr raa(Label l, FormulaPtr concl, DerivPtr prem);
  static DerivPtr topI();
  static DerivPtr notI(Label l, FormulaPtr discharged, DerivPtr prem);
  static DerivPtr notE(DerivPtr neg, DerivPtr arg);
  static DerivPtr andI(DerivPtr l, DerivPtr r);
  static DerivPtr andE1(DerivPtr prem);
  static DerivPtr andE2(DerivPtr prem);
  static DerivPtr orI1(DerivPtr prem, FormulaPtr other);  // concl = prem | other
  static DerivPtr orI2(FormulaPtr other, DerivPtr prem);  // concl = other | prem
  static DerivPtr orE(Label l, DerivPtr major, DerivPtr minor1, DerivPtr minor2);
  static DerivPtr impI(Label l, FormulaPtr antecedent, DerivPtr prem);
  static DerivPtr impE(DerivPtr major, DerivPtr minor);
  static DerivPtr forallI(std::string var, DerivPtr prem);
  static DerivPtr forallE(TermPtr witness, DerivPtr prem);
  static DerivPtr existsI(FormulaPtr target, TermPtr witness, DerivPtr prem);
  static DerivPtr existsE(Label l, std::string eigen, DerivPtr major, DerivPtr minor);

  // Generic rebuild with the same annotations but new premises.
  static DerivPtr withPremises(const DerivPtr& node, std::vector<DerivPtr> prems);

  Derivation(Rule r, FormulaPtr c, std::vector<DerivPtr> p, Label l, TermPtr w,
             std::string v)
      : rule_(r), concl_(std::move(c)), prems_(std::move(p)), label_(l),
        witness_(std::move(w)), var_(std::move(v)) {}

private:
  Rule rule_;
  FormulaPtr concl_;
  std::vector<DerivPtr> prems_;
  Label label_ = 0;
  TermPtr witness_;
  std::string var_;
};

const Derivation* nodeAt(const DerivPtr& root, const Path& p);
DerivPtr subtreeAt(const DerivPtr& root, const Path& p);
DerivPtr replaceAt(const DerivPtr& root, const Path& p, const DerivPtr& replacement);

// Largest discharge label occurring anywhere in the tree.
Label maxLabel(const DerivPtr& d);

// Strictly increasing label source for tree surgery.
struct FreshLabels {
  Label next = 1;
  Label take() { return next++; }
  static FreshLabels above(const DerivPtr& d) { return FreshLabels{maxLabel(d) + 1}; }
  static FreshLabels above(const DerivPtr& a, const DerivPtr& b) {
    return FreshLabels{std::max(maxLabel(a), maxLabel(b)) + 1};
  }
};

// Clone with every label *bound inside d* renamed freshly; labels referring to
// binders outside d are kept. Safe to splice several clones under one binder.
DerivPtr cloneFreshLabels(const DerivPtr& d, FreshLabels& labels);

// Replaces every assumption leaf carrying `label` by a fresh-labeled clone of
// `replacement`. Zero occurrences leave the tree unchanged (and drop the
// replacement); k occurrences produce k clones.
DerivPtr substDischarge(const DerivPtr& d, Label label, const DerivPtr& replacement,
                        FreshLabels& labels);

// Relabels assumption leaves: every leaf carrying `from` gets `to`.
DerivPtr relabelAssumptions(const DerivPtr& d, Label from, Label to);

// Labels every open (label-0) assumption leaf alpha-equal to `f` with `label`.
DerivPtr bindFreeAssumptions(const DerivPtr& d, const FormulaPtr& f, Label label);

// Replaces every open assumption leaf alpha-equal to `f` by a fresh clone of
// `replacement`.
DerivPtr substFreeAssumptions(const DerivPtr& d, const FormulaPtr& f,
                              const DerivPtr& replacement, FreshLabels& labels);

// Counts assumption leaves carrying `label`.
int countLabeled(const DerivPtr& d, Label label);

bool usesRule(const DerivPtr& d, Rule r);
bool usesDischargingRaa(const DerivPtr& d);
int countEfq(const DerivPtr& d);  // Raa instances with empty discharge set

// Renumbers binder labels 1,2,... in preorder (vacuous binders included), so
// that two derivations are equal up to label renaming iff their canonical
// forms are structurally equal.
DerivPtr canonicalLabels(const DerivPtr& d);

// Structural equality up to label renaming; formulas compared up to alpha.
bool derivEqUpToLabels(const DerivPtr& a, const DerivPtr& b);

int derivSize(const DerivPtr& d);

}  // namespace nd

#endif
