#include "nd/check.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace nd {

using Kind = Formula::Kind;

const char* checkCodeName(CheckCode c) {
  switch (c) {
    case CheckCode::SchemaMismatch: return "SchemaMismatch";
    case CheckCode::BadDischarge: return "BadDischarge";
    case CheckCode::EigenvariableViolation: return "EigenvariableViolation";
    case CheckCode::UnboundLabel: return "UnboundLabel";
    case CheckCode::AnnotationMismatch: return "AnnotationMismatch";
  }
  return "?";
}

namespace {

struct OpenAssumption {
  FormulaPtr formula;
  Label label;  // 0 = free
};

using OpenList = std::vector<OpenAssumption>;

[[noreturn]] void fail(CheckCode code, const Path& pos, const std::string& msg) {
  throw CheckError(code, pos, std::string(checkCodeName(code)) + " at " +
                                  pathToString(pos) + ": " + msg);
}

void requireShape(bool ok, const Path& pos, const std::string& msg) {
  if (!ok) fail(CheckCode::SchemaMismatch, pos, msg);
}

class Checker {
public:
  Judgment run(const DerivPtr& root) {
    Path p;
    collectBinders(root, p);
    std::map<Label, FormulaPtr> env;
    OpenList open = visit(root, p, env);
    Judgment j;
    j.conclusion = root->conclusion();
    for (const auto& a : open) j.assumptions.insert(a.formula);
    return j;
  }

private:
  std::set<Label> seenBinders_;

  void collectBinders(const DerivPtr& d, Path& p) {
    if (ruleDischarges(d->rule()) && d->label() != 0) {
      if (!seenBinders_.insert(d->label()).second)
        fail(CheckCode::UnboundLabel, p,
             "label " + std::to_string(d->label()) + " bound more than once");
    }
    for (size_t i = 0; i < d->premises().size(); ++i) {
      p.push_back(static_cast<int>(i));
      collectBinders(d->premises()[i], p);
      p.pop_back();
    }
  }

  OpenList visitChild(const DerivPtr& d, int idx, Path& p,
                      std::map<Label, FormulaPtr>& env) {
    p.push_back(idx);
    OpenList r = visit(d->premises()[static_cast<size_t>(idx)], p, env);
    p.pop_back();
    return r;
  }

  // Descend into premise idx with the binder label mapped to `expected`.
  OpenList visitBound(const DerivPtr& d, int idx, Path& p,
                      std::map<Label, FormulaPtr>& env, const FormulaPtr& expected) {
    Label l = d->label();
    if (l == 0) return visitChild(d, idx, p, env);
    auto old = env.find(l) != env.end() ? std::optional<FormulaPtr>(env[l]) : std::nullopt;
    env[l] = expected;
    OpenList r = visitChild(d, idx, p, env);
    if (old) env[l] = *old; else env.erase(l);
    return r;
  }

  static OpenList merge(OpenList a, const OpenList& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  // Removes occurrences discharged by label l; no shape check needed here,
  // the leaves were validated against the binder's expected formula.
  static OpenList discharge(OpenList a, Label l) {
    if (l == 0) return a;
    a.erase(std::remove_if(a.begin(), a.end(),
                           [&](const OpenAssumption& o) { return o.label == l; }),
            a.end());
    return a;
  }

  static bool freeInOpen(const std::string& var, const OpenList& open) {
    for (const auto& o : open)
      if (freeIn(var, o.formula)) return true;
    return false;
  }

  OpenList visit(const DerivPtr& d, Path& p, std::map<Label, FormulaPtr>& env) {
    const FormulaPtr& c = d->conclusion();
    switch (d->rule()) {
      case Rule::Assume: {
        if (d->label() != 0) {
          auto it = env.find(d->label());
          if (it == env.end())
            fail(CheckCode::UnboundLabel, p,
                 "assumption marked " + std::to_string(d->label()) +
                     " has no enclosing binder");
          if (!alphaEq(c, it->second))
            fail(CheckCode::BadDischarge, p,
                 "assumption shape does not match its binder");
        }
        return {OpenAssumption{c, d->label()}};
      }
      case Rule::TopI:
        requireShape(d->premises().empty() && c->is(Kind::Top), p, "top-i concludes top");
        return {};
      case Rule::Raa: {
        requireShape(d->premises().size() == 1, p, "raa has one premise");
        requireShape(d->premise(0)->conclusion()->is(Kind::Bottom), p,
                     "raa premise must conclude bot");
        OpenList r = visitBound(d, 0, p, env, Formula::negation(c));
        return discharge(std::move(r), d->label());
      }
      case Rule::NotI: {
        requireShape(d->premises().size() == 1 && c->is(Kind::Not), p,
                     "not-i concludes a negation");
        requireShape(d->premise(0)->conclusion()->is(Kind::Bottom), p,
                     "not-i premise must conclude bot");
        OpenList r = visitBound(d, 0, p, env, c->body());
        return discharge(std::move(r), d->label());
      }
      case Rule::NotE: {
        requireShape(d->premises().size() == 2 && c->is(Kind::Bottom), p,
                     "not-e concludes bot");
        const FormulaPtr& neg = d->premise(0)->conclusion();
        requireShape(neg->is(Kind::Not), p, "not-e major premise must be a negation");
        requireShape(alphaEq(neg->body(), d->premise(1)->conclusion()), p,
                     "not-e premises must contradict");
        return merge(visitChild(d, 0, p, env), visitChild(d, 1, p, env));
      }
      case Rule::AndI: {
        requireShape(d->premises().size() == 2 && c->is(Kind::And), p, "and-i shape");
        requireShape(alphaEq(c->left(), d->premise(0)->conclusion()) &&
                         alphaEq(c->right(), d->premise(1)->conclusion()),
                     p, "and-i conclusion mismatch");
        return merge(visitChild(d, 0, p, env), visitChild(d, 1, p, env));
      }
      case Rule::AndE1:
      case Rule::AndE2: {
        requireShape(d->premises().size() == 1, p, "and-e has one premise");
        const FormulaPtr& pc = d->premise(0)->conclusion();
        requireShape(pc->is(Kind::And), p, "and-e premise must be a conjunction");
        const FormulaPtr& side = d->rule() == Rule::AndE1 ? pc->left() : pc->right();
        requireShape(alphaEq(c, side), p, "and-e conclusion mismatch");
        return visitChild(d, 0, p, env);
      }
      case Rule::OrI1:
      case Rule::OrI2: {
        requireShape(d->premises().size() == 1 && c->is(Kind::Or), p,
                     "or-i concludes a disjunction");
        const FormulaPtr& side = d->rule() == Rule::OrI1 ? c->left() : c->right();
        requireShape(alphaEq(side, d->premise(0)->conclusion()), p,
                     "or-i premise mismatch");
        return visitChild(d, 0, p, env);
      }
      case Rule::OrE: {
        requireShape(d->premises().size() == 3, p, "or-e has three premises");
        const FormulaPtr& maj = d->premise(0)->conclusion();
        requireShape(maj->is(Kind::Or), p, "or-e major premise must be a disjunction");
        requireShape(alphaEq(c, d->premise(1)->conclusion()) &&
                         alphaEq(c, d->premise(2)->conclusion()),
                     p, "or-e minors must conclude the conclusion");
        OpenList r = visitChild(d, 0, p, env);
        r = merge(std::move(r), discharge(visitBound(d, 1, p, env, maj->left()),
                                          d->label()));
        r = merge(std::move(r), discharge(visitBound(d, 2, p, env, maj->right()),
                                          d->label()));
        return r;
      }
      case Rule::ImpI: {
        requireShape(d->premises().size() == 1 && c->is(Kind::Imp), p,
                     "imp-i concludes an implication");
        requireShape(alphaEq(c->right(), d->premise(0)->conclusion()), p,
                     "imp-i premise mismatch");
        OpenList r = visitBound(d, 0, p, env, c->left());
        return discharge(std::move(r), d->label());
      }
      case Rule::ImpE: {
        requireShape(d->premises().size() == 2, p, "imp-e has two premises");
        const FormulaPtr& maj = d->premise(0)->conclusion();
        requireShape(maj->is(Kind::Imp), p, "imp-e major premise must be an implication");
        requireShape(alphaEq(maj->left(), d->premise(1)->conclusion()), p,
                     "imp-e minor premise mismatch");
        requireShape(alphaEq(c, maj->right()), p, "imp-e conclusion mismatch");
        return merge(visitChild(d, 0, p, env), visitChild(d, 1, p, env));
      }
      case Rule::ForallI: {
        requireShape(d->premises().size() == 1 && c->is(Kind::Forall), p,
                     "forall-i concludes a universal");
        requireShape(!d->variable().empty(), p, "forall-i needs its variable");
        requireShape(
            alphaEq(c, Formula::forall(d->variable(), d->premise(0)->conclusion())), p,
            "forall-i conclusion mismatch");
        OpenList r = visitChild(d, 0, p, env);
        if (freeInOpen(d->variable(), r))
          fail(CheckCode::EigenvariableViolation, p,
               "variable " + d->variable() + " free in an undischarged assumption");
        return r;
      }
      case Rule::ForallE: {
        requireShape(d->premises().size() == 1, p, "forall-e has one premise");
        requireShape(d->witness() != nullptr, p, "forall-e needs a witness term");
        const FormulaPtr& pc = d->premise(0)->conclusion();
        requireShape(pc->is(Kind::Forall), p, "forall-e premise must be a universal");
        if (!alphaEq(c, subst(pc->body(), pc->name(), d->witness())))
          fail(CheckCode::AnnotationMismatch, p,
               "forall-e conclusion is not the instance at the witness");
        return visitChild(d, 0, p, env);
      }
      case Rule::ExistsI: {
        requireShape(d->premises().size() == 1 && c->is(Kind::Exists), p,
                     "exists-i concludes an existential");
        requireShape(d->witness() != nullptr, p, "exists-i needs a witness term");
        if (!alphaEq(d->premise(0)->conclusion(), subst(c->body(), c->name(), d->witness())))
          fail(CheckCode::AnnotationMismatch, p,
               "exists-i premise is not the instance at the witness");
        return visitChild(d, 0, p, env);
      }
      case Rule::ExistsE: {
        requireShape(d->premises().size() == 2, p, "exists-e has two premises");
        requireShape(!d->variable().empty(), p, "exists-e needs its eigenvariable");
        const FormulaPtr& maj = d->premise(0)->conclusion();
        requireShape(maj->is(Kind::Exists), p, "exists-e major premise must be existential");
        requireShape(alphaEq(c, d->premise(1)->conclusion()), p,
                     "exists-e minor must conclude the conclusion");
        const std::string& z = d->variable();
        FormulaPtr expected = subst(maj->body(), maj->name(), Term::var(z));
        OpenList r = visitChild(d, 0, p, env);
        OpenList minor = visitBound(d, 1, p, env, expected);
        minor = discharge(std::move(minor), d->label());
        if (freeIn(z, c))
          fail(CheckCode::EigenvariableViolation, p,
               "eigenvariable " + z + " free in the conclusion");
        if (freeInOpen(z, minor))
          fail(CheckCode::EigenvariableViolation, p,
               "eigenvariable " + z + " free in an undischarged assumption");
        return merge(std::move(r), std::move(minor));
      }
    }
    fail(CheckCode::SchemaMismatch, p, "unknown rule");
  }
};

}  // namespace

Judgment check(const DerivPtr& d) {
  Checker ck;
  return ck.run(d);
}

bool checks(const DerivPtr& d) {
  try {
    check(d);
    return true;
  } catch (const CheckError&) {
    return false;
  }
}

bool inSystem(const DerivPtr& d, const SystemId& sys) {
  for (Rule r : sys.removed)
    if (d->rule() == r) return false;
  if (d->isRaa()) {
    bool discharging = d->label() != 0 && countLabeled(d->premise(0), d->label()) > 0;
    if (sys.base == SystemId::Base::NM) return false;
    if (sys.base == SystemId::Base::NJ && discharging) return false;
  }
  for (const auto& p : d->premises())
    if (!inSystem(p, sys)) return false;
  return true;
}

}  // namespace nd
