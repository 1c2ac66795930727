#include "nd/derivation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace nd {

const char* ruleName(Rule r) {
  switch (r) {
    case Rule::Assume: return "assume";
    case Rule::Raa: return "raa";
    case Rule::TopI: return "top-i";
    case Rule::NotI: return "not-i";
    case Rule::NotE: return "not-e";
    case Rule::AndI: return "and-i";
    case Rule::AndE1: return "and-e1";
    case Rule::AndE2: return "and-e2";
    case Rule::OrI1: return "or-i1";
    case Rule::OrI2: return "or-i2";
    case Rule::OrE: return "or-e";
    case Rule::ImpI: return "imp-i";
    case Rule::ImpE: return "imp-e";
    case Rule::ForallI: return "forall-i";
    case Rule::ForallE: return "forall-e";
    case Rule::ExistsI: return "exists-i";
    case Rule::ExistsE: return "exists-e";
  }
  return "?";
}

bool ruleDischarges(Rule r) {
  return r == Rule::Raa || r == Rule::NotI || r == Rule::ImpI || r == Rule::OrE ||
         r == Rule::ExistsE;
}

std::string pathToString(const Path& p) {
  if (p.empty()) return "root";
  std::ostringstream os;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ".";
    os << p[i];
  }
  return os.str();
}

namespace {
DerivPtr mk(Rule r, FormulaPtr c, std::vector<DerivPtr> p, Label l = 0,
            TermPtr w = nullptr, std::string v = "") {
  return std::make_shared<Derivation>(r, std::move(c), std::move(p), l, std::move(w),
                                      std::move(v));
}
}  // namespace

DerivPtr Derivation::assume(FormulaPtr f, Label l) {
  return mk(Rule::Assume, std::move(f), {}, l);
}
DerivPtr Derivation::raa(Label l, FormulaPtr concl, DerivPtr prem) {
  return mk(Rule::Raa, std::move(concl), {std::move(prem)}, l);
}
DerivPtr Derivation::topI() { return mk(Rule::TopI, Formula::top(), {}); }
DerivPtr Derivation::notI(Label l, FormulaPtr discharged, DerivPtr prem) {
  return mk(Rule::NotI, Formula::negation(std::move(discharged)), {std::move(prem)}, l);
}
DerivPtr Derivation::notE(DerivPtr neg, DerivPtr arg) {
  return mk(Rule::NotE, Formula::bottom(), {std::move(neg), std::move(arg)});
}
DerivPtr Derivation::andI(DerivPtr l, DerivPtr r) {
  FormulaPtr c = Formula::conj(l->conclusion(), r->conclusion());
  return mk(Rule::AndI, std::move(c), {std::move(l), std::move(r)});
}
DerivPtr Derivation::andE1(DerivPtr prem) {
  const FormulaPtr& pc = prem->conclusion();
  FormulaPtr c = pc->is(Formula::Kind::And) ? pc->left() : pc;  // checker reports misuse
  return mk(Rule::AndE1, std::move(c), {std::move(prem)});
}
DerivPtr Derivation::andE2(DerivPtr prem) {
  const FormulaPtr& pc = prem->conclusion();
  FormulaPtr c = pc->is(Formula::Kind::And) ? pc->right() : pc;
  return mk(Rule::AndE2, std::move(c), {std::move(prem)});
}
DerivPtr Derivation::orI1(DerivPtr prem, FormulaPtr other) {
  FormulaPtr c = Formula::disj(prem->conclusion(), std::move(other));
  return mk(Rule::OrI1, std::move(c), {std::move(prem)});
}
DerivPtr Derivation::orI2(FormulaPtr other, DerivPtr prem) {
  FormulaPtr c = Formula::disj(std::move(other), prem->conclusion());
  return mk(Rule::OrI2, std::move(c), {std::move(prem)});
}
DerivPtr Derivation::orE(Label l, DerivPtr major, DerivPtr minor1, DerivPtr minor2) {
  FormulaPtr c = minor1->conclusion();
  return mk(Rule::OrE, std::move(c), {std::move(major), std::move(minor1), std::move(minor2)},
            l);
}
DerivPtr Derivation::impI(Label l, FormulaPtr antecedent, DerivPtr prem) {
  FormulaPtr c = Formula::impl(std::move(antecedent), prem->conclusion());
  return mk(Rule::ImpI, std::move(c), {std::move(prem)}, l);
}
DerivPtr Derivation::impE(DerivPtr major, DerivPtr minor) {
  const FormulaPtr& mc = major->conclusion();
  FormulaPtr c = mc->is(Formula::Kind::Imp) ? mc->right() : mc;
  return mk(Rule::ImpE, std::move(c), {std::move(major), std::move(minor)});
}
DerivPtr Derivation::forallI(std::string var, DerivPtr prem) {
  FormulaPtr c = Formula::forall(var, prem->conclusion());
  return mk(Rule::ForallI, std::move(c), {std::move(prem)}, 0, nullptr, std::move(var));
}
DerivPtr Derivation::forallE(TermPtr witness, DerivPtr prem) {
  const FormulaPtr& pc = prem->conclusion();
  FormulaPtr c = pc->is(Formula::Kind::Forall) ? subst(pc->body(), pc->name(), witness) : pc;
  return mk(Rule::ForallE, std::move(c), {std::move(prem)}, 0, std::move(witness));
}
DerivPtr Derivation::existsI(FormulaPtr target, TermPtr witness, DerivPtr prem) {
  return mk(Rule::ExistsI, std::move(target), {std::move(prem)}, 0, std::move(witness));
}
DerivPtr Derivation::existsE(Label l, std::string eigen, DerivPtr major, DerivPtr minor) {
  FormulaPtr c = minor->conclusion();
  return mk(Rule::ExistsE, std::move(c), {std::move(major), std::move(minor)}, l, nullptr,
            std::move(eigen));
}

DerivPtr Derivation::withPremises(const DerivPtr& node, std::vector<DerivPtr> prems) {
  return mk(node->rule(), node->conclusion(), std::move(prems), node->label(),
            node->witness(), node->variable());
}

const Derivation* nodeAt(const DerivPtr& root, const Path& p) {
  const Derivation* cur = root.get();
  for (int i : p) cur = cur->premises().at(static_cast<size_t>(i)).get();
  return cur;
}

DerivPtr subtreeAt(const DerivPtr& root, const Path& p) {
  DerivPtr cur = root;
  for (int i : p) cur = cur->premises().at(static_cast<size_t>(i));
  return cur;
}

DerivPtr replaceAt(const DerivPtr& root, const Path& p, const DerivPtr& replacement) {
  if (p.empty()) return replacement;
  std::vector<DerivPtr> prems = root->premises();
  Path rest(p.begin() + 1, p.end());
  prems[static_cast<size_t>(p[0])] =
      replaceAt(prems[static_cast<size_t>(p[0])], rest, replacement);
  return Derivation::withPremises(root, std::move(prems));
}

Label maxLabel(const DerivPtr& d) {
  Label m = d->label();
  for (const auto& p : d->premises()) m = std::max(m, maxLabel(p));
  return m;
}

namespace {

void collectBinderLabels(const DerivPtr& d, std::set<Label>& out) {
  if (ruleDischarges(d->rule()) && d->label() != 0) out.insert(d->label());
  for (const auto& p : d->premises()) collectBinderLabels(p, out);
}

DerivPtr applyLabelMap(const DerivPtr& d, const std::map<Label, Label>& m) {
  std::vector<DerivPtr> prems;
  prems.reserve(d->premises().size());
  bool changed = false;
  for (const auto& p : d->premises()) {
    DerivPtr q = applyLabelMap(p, m);
    changed = changed || q.get() != p.get();
    prems.push_back(std::move(q));
  }
  Label l = d->label();
  bool relabel = false;
  if (l != 0 && (d->rule() == Rule::Assume || ruleDischarges(d->rule()))) {
    auto it = m.find(l);
    if (it != m.end()) {
      l = it->second;
      relabel = true;
    }
  }
  if (!changed && !relabel) return d;
  return std::make_shared<Derivation>(d->rule(), d->conclusion(),
                                      std::move(prems), l, d->witness(), d->variable());
}

}  // namespace

DerivPtr cloneFreshLabels(const DerivPtr& d, FreshLabels& labels) {
  std::set<Label> internal;
  collectBinderLabels(d, internal);
  if (internal.empty()) return d;
  std::map<Label, Label> m;
  for (Label l : internal) m[l] = labels.take();
  return applyLabelMap(d, m);
}

DerivPtr substDischarge(const DerivPtr& d, Label label, const DerivPtr& replacement,
                        FreshLabels& labels) {
  if (d->isAssume()) {
    if (d->label() == label) return cloneFreshLabels(replacement, labels);
    return d;
  }
  std::vector<DerivPtr> prems;
  prems.reserve(d->premises().size());
  bool changed = false;
  for (const auto& p : d->premises()) {
    DerivPtr q = substDischarge(p, label, replacement, labels);
    changed = changed || q.get() != p.get();
    prems.push_back(std::move(q));
  }
  if (!changed) return d;
  return Derivation::withPremises(d, std::move(prems));
}

DerivPtr relabelAssumptions(const DerivPtr& d, Label from, Label to) {
  if (d->isAssume())
    return d->label() == from ? Derivation::assume(d->conclusion(), to) : d;
  std::vector<DerivPtr> prems;
  bool changed = false;
  for (const auto& p : d->premises()) {
    DerivPtr q = relabelAssumptions(p, from, to);
    changed = changed || q.get() != p.get();
    prems.push_back(std::move(q));
  }
  if (!changed) return d;
  return Derivation::withPremises(d, std::move(prems));
}

DerivPtr bindFreeAssumptions(const DerivPtr& d, const FormulaPtr& f, Label label) {
  if (d->isAssume()) {
    if (d->label() == 0 && alphaEq(d->conclusion(), f))
      return Derivation::assume(d->conclusion(), label);
    return d;
  }
  std::vector<DerivPtr> prems;
  bool changed = false;
  for (const auto& p : d->premises()) {
    DerivPtr q = bindFreeAssumptions(p, f, label);
    changed = changed || q.get() != p.get();
    prems.push_back(std::move(q));
  }
  if (!changed) return d;
  return Derivation::withPremises(d, std::move(prems));
}

DerivPtr substFreeAssumptions(const DerivPtr& d, const FormulaPtr& f,
                              const DerivPtr& replacement, FreshLabels& labels) {
  if (d->isAssume()) {
    if (d->label() == 0 && alphaEq(d->conclusion(), f))
      return cloneFreshLabels(replacement, labels);
    return d;
  }
  std::vector<DerivPtr> prems;
  bool changed = false;
  for (const auto& p : d->premises()) {
    DerivPtr q = substFreeAssumptions(p, f, replacement, labels);
    changed = changed || q.get() != p.get();
    prems.push_back(std::move(q));
  }
  if (!changed) return d;
  return Derivation::withPremises(d, std::move(prems));
}

int countLabeled(const DerivPtr& d, Label label) {
  if (d->isAssume()) return d->label() == label ? 1 : 0;
  int n = 0;
  for (const auto& p : d->premises()) n += countLabeled(p, label);
  return n;
}

bool usesRule(const DerivPtr& d, Rule r) {
  if (d->rule() == r) return true;
  for (const auto& p : d->premises())
    if (usesRule(p, r)) return true;
  return false;
}

bool usesDischargingRaa(const DerivPtr& d) {
  if (d->isRaa() && d->label() != 0 && countLabeled(d->premise(0), d->label()) > 0)
    return true;
  for (const auto& p : d->premises())
    if (usesDischargingRaa(p)) return true;
  return false;
}

int countEfq(const DerivPtr& d) {
  int n = 0;
  if (d->isRaa() && (d->label() == 0 || countLabeled(d->premise(0), d->label()) == 0)) n = 1;
  for (const auto& p : d->premises()) n += countEfq(p);
  return n;
}

namespace {
DerivPtr canonRec(const DerivPtr& d, std::map<Label, Label>& env, Label& next) {
  if (d->isAssume()) {
    Label l = d->label();
    if (l != 0) {
      auto it = env.find(l);
      l = it == env.end() ? -1 : it->second;  // unbound: normalized apart
    }
    return l == d->label() ? d : Derivation::assume(d->conclusion(), l);
  }
  Label l = d->label();
  std::optional<std::pair<Label, std::optional<Label>>> saved;
  if (ruleDischarges(d->rule())) {
    Label fresh = next++;
    if (l != 0) {
      auto it = env.find(l);
      saved = {l, it == env.end() ? std::nullopt : std::optional<Label>(it->second)};
      env[l] = fresh;
    }
    l = fresh;
  }
  std::vector<DerivPtr> prems;
  prems.reserve(d->premises().size());
  for (const auto& p : d->premises()) prems.push_back(canonRec(p, env, next));
  if (saved) {
    if (saved->second) env[saved->first] = *saved->second;
    else env.erase(saved->first);
  }
  return std::make_shared<Derivation>(d->rule(), d->conclusion(), std::move(prems), l,
                                      d->witness(), d->variable());
}
}  // namespace

DerivPtr canonicalLabels(const DerivPtr& d) {
  std::map<Label, Label> env;
  Label next = 1;
  return canonRec(d, env, next);
}

namespace {
bool structEq(const DerivPtr& a, const DerivPtr& b) {
  if (a->rule() != b->rule() || a->label() != b->label()) return false;
  if (!alphaEq(a->conclusion(), b->conclusion())) return false;
  if ((a->witness() == nullptr) != (b->witness() == nullptr)) return false;
  if (a->witness() && !termEq(a->witness(), b->witness())) return false;
  if (a->variable() != b->variable()) return false;
  if (a->premises().size() != b->premises().size()) return false;
  for (size_t i = 0; i < a->premises().size(); ++i)
    if (!structEq(a->premises()[i], b->premises()[i])) return false;
  return true;
}
}  // namespace

bool derivEqUpToLabels(const DerivPtr& a, const DerivPtr& b) {
  return structEq(canonicalLabels(a), canonicalLabels(b));
}

int derivSize(const DerivPtr& d) {
  int n = 1;
  for (const auto& p : d->premises()) n += derivSize(p);
  return n;
}

}  // namespace nd
