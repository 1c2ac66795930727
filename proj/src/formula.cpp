#include "nd/formula.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace nd {

using Kind = Formula::Kind;

FormulaPtr Formula::atom(std::string pred, std::vector<TermPtr> args) {
  return std::make_shared<Formula>(Kind::Atom, std::move(pred), std::move(args), nullptr,
                                   nullptr);
}
FormulaPtr Formula::bottom() {
  static const FormulaPtr f =
      std::make_shared<Formula>(Kind::Bottom, "", std::vector<TermPtr>{}, nullptr, nullptr);
  return f;
}
FormulaPtr Formula::top() {
  static const FormulaPtr f =
      std::make_shared<Formula>(Kind::Top, "", std::vector<TermPtr>{}, nullptr, nullptr);
  return f;
}
FormulaPtr Formula::negation(FormulaPtr body) {
  return std::make_shared<Formula>(Kind::Not, "", std::vector<TermPtr>{}, std::move(body),
                                   nullptr);
}
FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Kind::And, "", std::vector<TermPtr>{}, std::move(l),
                                   std::move(r));
}
FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Kind::Or, "", std::vector<TermPtr>{}, std::move(l),
                                   std::move(r));
}
FormulaPtr Formula::impl(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Kind::Imp, "", std::vector<TermPtr>{}, std::move(l),
                                   std::move(r));
}
FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(Kind::Forall, std::move(var), std::vector<TermPtr>{},
                                   std::move(body), nullptr);
}
FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(Kind::Exists, std::move(var), std::vector<TermPtr>{},
                                   std::move(body), nullptr);
}

namespace {

// Bound variables are tracked with name -> binder depth maps on both sides.
struct AlphaEnv {
  std::map<std::string, int> left, right;
  int depth = 0;
};

bool alphaTerm(const TermPtr& a, const TermPtr& b, const AlphaEnv& env) {
  if (a->kind() != b->kind()) return false;
  if (a->kind() == Term::Kind::Var) {
    auto la = env.left.find(a->name());
    auto rb = env.right.find(b->name());
    if (la != env.left.end() || rb != env.right.end())
      return la != env.left.end() && rb != env.right.end() && la->second == rb->second;
    return a->name() == b->name();
  }
  if (a->name() != b->name() || a->args().size() != b->args().size()) return false;
  for (size_t i = 0; i < a->args().size(); ++i)
    if (!alphaTerm(a->args()[i], b->args()[i], env)) return false;
  return true;
}

bool alphaRec(const FormulaPtr& a, const FormulaPtr& b, AlphaEnv& env) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::Atom: {
      if (a->name() != b->name() || a->args().size() != b->args().size()) return false;
      for (size_t i = 0; i < a->args().size(); ++i)
        if (!alphaTerm(a->args()[i], b->args()[i], env)) return false;
      return true;
    }
    case Kind::Not:
      return alphaRec(a->body(), b->body(), env);
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return alphaRec(a->left(), b->left(), env) && alphaRec(a->right(), b->right(), env);
    case Kind::Forall:
    case Kind::Exists: {
      auto oldL = env.left.find(a->name()) != env.left.end()
                      ? std::optional<int>(env.left[a->name()])
                      : std::nullopt;
      auto oldR = env.right.find(b->name()) != env.right.end()
                      ? std::optional<int>(env.right[b->name()])
                      : std::nullopt;
      env.left[a->name()] = env.depth;
      env.right[b->name()] = env.depth;
      env.depth++;
      bool ok = alphaRec(a->body(), b->body(), env);
      env.depth--;
      if (oldL) env.left[a->name()] = *oldL; else env.left.erase(a->name());
      if (oldR) env.right[b->name()] = *oldR; else env.right.erase(b->name());
      return ok;
    }
  }
  return false;
}

void keyTerm(const TermPtr& t, const std::map<std::string, int>& bound, int depth,
             std::ostream& os) {
  if (t->kind() == Term::Kind::Var) {
    auto it = bound.find(t->name());
    if (it != bound.end())
      os << "#" << (depth - 1 - it->second);
    else
      os << "v:" << t->name();
    return;
  }
  os << "(f:" << t->name();
  for (const auto& a : t->args()) {
    os << " ";
    keyTerm(a, bound, depth, os);
  }
  os << ")";
}

void keyRec(const FormulaPtr& f, std::map<std::string, int>& bound, int depth,
            std::ostream& os) {
  switch (f->kind()) {
    case Kind::Bottom: os << "F"; return;
    case Kind::Top: os << "T"; return;
    case Kind::Atom:
      os << "(p:" << f->name();
      for (const auto& a : f->args()) {
        os << " ";
        keyTerm(a, bound, depth, os);
      }
      os << ")";
      return;
    case Kind::Not:
      os << "(~";
      keyRec(f->body(), bound, depth, os);
      os << ")";
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      os << "(" << (f->kind() == Kind::And ? "&" : f->kind() == Kind::Or ? "|" : ">");
      keyRec(f->left(), bound, depth, os);
      keyRec(f->right(), bound, depth, os);
      os << ")";
      return;
    case Kind::Forall:
    case Kind::Exists: {
      os << "(" << (f->kind() == Kind::Forall ? "A" : "E");
      auto old = bound.count(f->name()) ? std::optional<int>(bound[f->name()])
                                        : std::nullopt;
      bound[f->name()] = depth;
      keyRec(f->body(), bound, depth + 1, os);
      if (old) bound[f->name()] = *old; else bound.erase(f->name());
      os << ")";
      return;
    }
  }
}

void freeVarsRec(const FormulaPtr& f, std::set<std::string>& bound,
                 std::set<std::string>& out) {
  switch (f->kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return;
    case Kind::Atom: {
      std::set<std::string> vars;
      for (const auto& a : f->args()) collectTermVars(a, vars);
      for (const auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Kind::Not:
      freeVarsRec(f->body(), bound, out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      freeVarsRec(f->left(), bound, out);
      freeVarsRec(f->right(), bound, out);
      return;
    case Kind::Forall:
    case Kind::Exists: {
      bool fresh = bound.insert(f->name()).second;
      freeVarsRec(f->body(), bound, out);
      if (fresh) bound.erase(f->name());
      return;
    }
  }
}

}  // namespace

bool alphaEq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  AlphaEnv env;
  return alphaRec(a, b, env);
}

std::string canonicalKey(const FormulaPtr& f) {
  std::ostringstream os;
  std::map<std::string, int> bound;
  keyRec(f, bound, 0, os);
  return os.str();
}

void collectFreeVars(const FormulaPtr& f, std::set<std::string>& out) {
  std::set<std::string> bound;
  freeVarsRec(f, bound, out);
}

std::set<std::string> freeVars(const FormulaPtr& f) {
  std::set<std::string> out;
  collectFreeVars(f, out);
  return out;
}

bool freeIn(const std::string& var, const FormulaPtr& f) {
  return freeVars(f).count(var) > 0;
}

FormulaPtr subst(const FormulaPtr& f, const std::string& var, const TermPtr& t) {
  switch (f->kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return f;
    case Kind::Atom: {
      bool touched = false;
      for (const auto& a : f->args())
        if (termContainsVar(a, var)) { touched = true; break; }
      if (!touched) return f;
      std::vector<TermPtr> args;
      args.reserve(f->args().size());
      for (const auto& a : f->args()) args.push_back(substInTerm(a, var, t));
      return Formula::atom(f->name(), std::move(args));
    }
    case Kind::Not:
      return Formula::negation(subst(f->body(), var, t));
    case Kind::And:
      return Formula::conj(subst(f->left(), var, t), subst(f->right(), var, t));
    case Kind::Or:
      return Formula::disj(subst(f->left(), var, t), subst(f->right(), var, t));
    case Kind::Imp:
      return Formula::impl(subst(f->left(), var, t), subst(f->right(), var, t));
    case Kind::Forall:
    case Kind::Exists: {
      if (f->name() == var) return f;  // bound occurrences untouched
      if (!freeIn(var, f->body())) return f;
      std::string binder = f->name();
      FormulaPtr body = f->body();
      if (termContainsVar(t, binder)) {
        // rename the binder away from the variables of t
        std::set<std::string> avoid;
        collectTermVars(t, avoid);
        collectFreeVars(body, avoid);
        avoid.insert(var);
        std::string renamed = freshVarName(binder, avoid);
        body = subst(body, binder, Term::var(renamed));
        binder = renamed;
      }
      FormulaPtr newBody = subst(body, var, t);
      return f->kind() == Kind::Forall ? Formula::forall(binder, newBody)
                                       : Formula::exists(binder, newBody);
    }
  }
  return f;
}

bool containsConnective(const FormulaPtr& f, Kind k) {
  if (f->kind() == k) return true;
  switch (f->kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Top:
      return false;
    case Kind::Not:
    case Kind::Forall:
    case Kind::Exists:
      return containsConnective(f->body(), k);
    default:
      return containsConnective(f->left(), k) || containsConnective(f->right(), k);
  }
}

bool isPropositional(const FormulaPtr& f) {
  switch (f->kind()) {
    case Kind::Atom:
      return f->args().empty();
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::Not:
      return isPropositional(f->body());
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return isPropositional(f->left()) && isPropositional(f->right());
    case Kind::Forall:
    case Kind::Exists:
      return false;
  }
  return false;
}

int countNodes(const FormulaPtr& f) {
  switch (f->kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Top:
      return 1;
    case Kind::Not:
    case Kind::Forall:
    case Kind::Exists:
      return 1 + countNodes(f->body());
    default:
      return 1 + countNodes(f->left()) + countNodes(f->right());
  }
}

void FormulaSet::insert(const FormulaPtr& f) {
  if (keys_.insert(canonicalKey(f)).second) items_.push_back(f);
}

bool FormulaSet::contains(const FormulaPtr& f) const {
  return keys_.count(canonicalKey(f)) > 0;
}

bool FormulaSet::subsetOf(const FormulaSet& other) const {
  for (const auto& k : keys_)
    if (!other.keys_.count(k)) return false;
  return true;
}

}  // namespace nd
