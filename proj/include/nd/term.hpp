#ifndef ND_TERM_HPP
#define ND_TERM_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace nd {

class Term;
using TermPtr = std::shared_ptr<const Term>;

// First-order term: a variable or an application of a function symbol.
// Immutable; shared freely between formulas and derivations.
class Term {
public:
  enum class Kind { Var, Fun };

  static TermPtr var(std::string name);
  static TermPtr fun(std::string name, std::vector<TermPtr> args = {});

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<TermPtr>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

  Term(Kind k, std::string n, std::vector<TermPtr> a)
      : kind_(k), name_(std::move(n)), args_(std::move(a)) {}

private:
  Kind kind_;
  std::string name_;
  std::vector<TermPtr> args_;
};

bool termEq(const TermPtr& a, const TermPtr& b);
void collectTermVars(const TermPtr& t, std::set<std::string>& out);
bool termContainsVar(const TermPtr& t, const std::string& var);

// Replaces every occurrence of `var` in `t` by `repl`.
TermPtr substInTerm(const TermPtr& t, const std::string& var, const TermPtr& repl);

// Picks a name based on `base` that is not in `avoid`.
std::string freshVarName(const std::string& base, const std::set<std::string>& avoid);

}  // namespace nd

#endif
