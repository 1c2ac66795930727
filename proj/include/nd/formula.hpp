#ifndef ND_FORMULA_HPP
#define ND_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nd/term.hpp"

namespace nd {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// First-order formula over {bot, top, not, and, or, imp, forall, exists, atoms}.
// Negation is a primitive connective, not sugar for A -> bot.
// Formulas are immutable and compared up to renaming of bound variables.
class Formula {
public:
  enum class Kind { Atom, Bottom, Top, Not, And, Or, Imp, Forall, Exists };

  static FormulaPtr atom(std::string pred, std::vector<TermPtr> args = {});
  static FormulaPtr bottom();
  static FormulaPtr top();
  static FormulaPtr negation(FormulaPtr body);
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr disj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr impl(FormulaPtr l, FormulaPtr r);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  static FormulaPtr exists(std::string var, FormulaPtr body);

  Kind kind() const { return kind_; }
  // Predicate symbol (Atom) or bound variable name (Forall/Exists).
  const std::string& name() const { return name_; }
  const std::vector<TermPtr>& args() const { return args_; }
  const FormulaPtr& left() const { return left_; }     // also: body of Not/Forall/Exists
  const FormulaPtr& right() const { return right_; }
  const FormulaPtr& body() const { return left_; }

  bool is(Kind k) const { return kind_ == k; }

  Formula(Kind k, std::string n, std::vector<TermPtr> a, FormulaPtr l, FormulaPtr r)
      : kind_(k), name_(std::move(n)), args_(std::move(a)),
        left_(std::move(l)), right_(std::move(r)) {}

private:
  Kind kind_;
  std::string name_;
  std::vector<TermPtr> args_;
  FormulaPtr left_, right_;
};

// Alpha-equivalence: equality up to renaming of bound variables.
bool alphaEq(const FormulaPtr& a, const FormulaPtr& b);

// Stable key such that alphaEq(a, b) iff canonicalKey(a) == canonicalKey(b).
// Bound variables are printed as de Bruijn indices.
std::string canonicalKey(const FormulaPtr& f);

void collectFreeVars(const FormulaPtr& f, std::set<std::string>& out);
std::set<std::string> freeVars(const FormulaPtr& f);
bool freeIn(const std::string& var, const FormulaPtr& f);

// Capture-avoiding substitution of `t` for the free occurrences of `var`;
// bound variables of `f` are renamed as needed.
FormulaPtr subst(const FormulaPtr& f, const std::string& var, const TermPtr& t);

bool containsConnective(const FormulaPtr& f, Formula::Kind k);
bool isPropositional(const FormulaPtr& f);  // no quantifiers, atoms all 0-ary
int countNodes(const FormulaPtr& f);

// A set of formulas identified up to alpha-equivalence.
class FormulaSet {
public:
  void insert(const FormulaPtr& f);
  bool contains(const FormulaPtr& f) const;
  bool subsetOf(const FormulaSet& other) const;
  std::size_t size() const { return items_.size(); }
  const std::vector<FormulaPtr>& items() const { return items_; }

private:
  std::set<std::string> keys_;
  std::vector<FormulaPtr> items_;
};

}  // namespace nd

#endif
