#include "nd/term.hpp"

namespace nd {

TermPtr Term::var(std::string name) {
  return std::make_shared<Term>(Kind::Var, std::move(name), std::vector<TermPtr>{});
}

TermPtr Term::fun(std::string name, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Kind::Fun, std::move(name), std::move(args));
}

bool termEq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind() != b->kind() || a->name() != b->name()) return false;
  if (a->args().size() != b->args().size()) return false;
  for (size_t i = 0; i < a->args().size(); ++i)
    if (!termEq(a->args()[i], b->args()[i])) return false;
  return true;
}

void collectTermVars(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind() == Term::Kind::Var) {
    out.insert(t->name());
    return;
  }
  for (const auto& a : t->args()) collectTermVars(a, out);
}

bool termContainsVar(const TermPtr& t, const std::string& var) {
  if (t->kind() == Term::Kind::Var) return t->name() == var;
  for (const auto& a : t->args())
    if (termContainsVar(a, var)) return true;
  return false;
}

TermPtr substInTerm(const TermPtr& t, const std::string& var, const TermPtr& repl) {
  if (t->kind() == Term::Kind::Var) return t->name() == var ? repl : t;
  if (!termContainsVar(t, var)) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args().size());
  for (const auto& a : t->args()) args.push_back(substInTerm(a, var, repl));
  return Term::fun(t->name(), std::move(args));
}

std::string freshVarName(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace nd
