#include "nd/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>
#include <unordered_map>

#include "nd/check.hpp"

namespace nd {

using Kind = Formula::Kind;

namespace {

void collectAtoms(const FormulaPtr& f, std::set<std::string>& atoms) {
  switch (f->kind()) {
    case Kind::Atom:
      if (!f->args().empty()) throw OracleError("not propositional: non-nullary atom");
      atoms.insert(f->name());
      return;
    case Kind::Bottom:
    case Kind::Top:
      return;
    case Kind::Not:
      collectAtoms(f->body(), atoms);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      collectAtoms(f->left(), atoms);
      collectAtoms(f->right(), atoms);
      return;
    case Kind::Forall:
    case Kind::Exists:
      throw OracleError("not propositional: quantifier");
  }
}

bool evalUnder(const FormulaPtr& f, const std::map<std::string, bool>& val) {
  switch (f->kind()) {
    case Kind::Atom: return val.at(f->name());
    case Kind::Bottom: return false;
    case Kind::Top: return true;
    case Kind::Not: return !evalUnder(f->body(), val);
    case Kind::And: return evalUnder(f->left(), val) && evalUnder(f->right(), val);
    case Kind::Or: return evalUnder(f->left(), val) || evalUnder(f->right(), val);
    case Kind::Imp: return !evalUnder(f->left(), val) || evalUnder(f->right(), val);
    default: throw OracleError("not propositional");
  }
}

}  // namespace

bool classicalValid(const FormulaPtr& f) {
  std::set<std::string> atoms;
  collectAtoms(f, atoms);
  if (atoms.size() > 24) throw OracleError("too many atoms for a truth table");
  std::vector<std::string> names(atoms.begin(), atoms.end());
  std::map<std::string, bool> val;
  for (std::uint32_t mask = 0; mask < (1u << names.size()); ++mask) {
    for (size_t i = 0; i < names.size(); ++i) val[names[i]] = (mask >> i) & 1;
    if (!evalUnder(f, val)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// G4ip: contraction-free backward search over an interned formula pool.
// Antecedents are sorted id vectors; results are memoized per sequent.

struct PropositionalProver::Impl {
  enum class Op : char { Atom, Bot, Top, And, Or, Imp };

  struct Node {
    Op op;
    int a = -1, b = -1;   // children
    std::string name;     // atoms
  };

  std::vector<Node> pool;
  std::map<std::string, int> atomIds;
  std::map<std::tuple<char, int, int>, int> binIds;
  std::unordered_map<std::string, bool> memo;
  int botId = -1, topId = -1, pseudoFalsum = -1;

  Impl() {
    botId = addNode({Op::Bot, -1, -1, ""});
    topId = addNode({Op::Top, -1, -1, ""});
    // deliberately not registered in atomIds, so no user atom can collide
    pseudoFalsum = addNode({Op::Atom, -1, -1, "<falsum>"});
  }

  int addNode(Node n) {
    pool.push_back(std::move(n));
    return static_cast<int>(pool.size()) - 1;
  }

  int atom(const std::string& name) {
    auto it = atomIds.find(name);
    if (it != atomIds.end()) return it->second;
    int id = addNode({Op::Atom, -1, -1, name});
    atomIds[name] = id;
    return id;
  }

  int bin(Op op, int a, int b) {
    auto key = std::make_tuple(static_cast<char>(op), a, b);
    auto it = binIds.find(key);
    if (it != binIds.end()) return it->second;
    int id = addNode({op, a, b, ""});
    binIds[key] = id;
    return id;
  }

  // Negation becomes implication into falsum (the real one, or the fresh
  // pseudo-falsum when deciding minimal provability).
  int intern(const FormulaPtr& f, int falsum) {
    switch (f->kind()) {
      case Kind::Atom:
        if (!f->args().empty()) throw OracleError("not propositional: non-nullary atom");
        return atom(f->name());
      case Kind::Bottom: return falsum;
      case Kind::Top: return topId;
      case Kind::Not: return bin(Op::Imp, intern(f->body(), falsum), falsum);
      case Kind::And:
        return bin(Op::And, intern(f->left(), falsum), intern(f->right(), falsum));
      case Kind::Or:
        return bin(Op::Or, intern(f->left(), falsum), intern(f->right(), falsum));
      case Kind::Imp:
        return bin(Op::Imp, intern(f->left(), falsum), intern(f->right(), falsum));
      default: throw OracleError("not propositional: quantifier");
    }
  }

  const Node& at(int id) const { return pool[static_cast<size_t>(id)]; }

  static void insertSorted(std::vector<int>& xs, int x) {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end() || *it != x) xs.insert(it, x);
  }

  bool member(const std::vector<int>& xs, int x) const {
    return std::binary_search(xs.begin(), xs.end(), x);
  }

  bool prove(std::vector<int> gamma, int goal) {
    // saturate the invertible left rules; note bin() may grow the pool, so
    // node fields are copied out before any allocation
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < gamma.size(); ++i) {
        int id = gamma[i];
        Op op = at(id).op;
        int na = at(id).a, nb = at(id).b;
        if (op == Op::Bot) return true;
        if (op == Op::Top) {
          gamma.erase(gamma.begin() + static_cast<long>(i));
          changed = true;
          break;
        }
        if (op == Op::And) {
          gamma.erase(gamma.begin() + static_cast<long>(i));
          insertSorted(gamma, na);
          insertSorted(gamma, nb);
          changed = true;
          break;
        }
        if (op == Op::Imp) {
          Op antOp = at(na).op;
          int antA = at(na).a, antB = at(na).b;
          if (antOp == Op::Bot) {  // bot -> C is vacuous
            gamma.erase(gamma.begin() + static_cast<long>(i));
            changed = true;
            break;
          }
          if (antOp == Op::Top || (antOp == Op::Atom && member(gamma, na))) {
            gamma.erase(gamma.begin() + static_cast<long>(i));
            insertSorted(gamma, nb);
            changed = true;
            break;
          }
          if (antOp == Op::And) {  // (A&B)->C  ~>  A->(B->C)
            int inner = bin(Op::Imp, antB, nb);
            int c = bin(Op::Imp, antA, inner);
            gamma.erase(gamma.begin() + static_cast<long>(i));
            insertSorted(gamma, c);
            changed = true;
            break;
          }
          if (antOp == Op::Or) {  // (A|B)->C  ~>  A->C, B->C
            int c1 = bin(Op::Imp, antA, nb);
            int c2 = bin(Op::Imp, antB, nb);
            gamma.erase(gamma.begin() + static_cast<long>(i));
            insertSorted(gamma, c1);
            insertSorted(gamma, c2);
            changed = true;
            break;
          }
        }
      }
    }

    if (at(goal).op == Op::Top) return true;
    if (member(gamma, goal)) return true;

    std::string key;
    key.reserve(gamma.size() * 4 + 8);
    for (int id : gamma) {
      key += std::to_string(id);
      key += ',';
    }
    key += '|';
    key += std::to_string(goal);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo[key] = false;  // cycles resolve to failure; the calculus terminates anyway

    bool res = proveCore(gamma, goal);
    memo[key] = res;
    return res;
  }

  bool proveCore(const std::vector<int>& gamma, int goal) {
    Op gop = at(goal).op;
    int ga = at(goal).a, gb = at(goal).b;
    // invertible right rules
    if (gop == Op::And) {
      return prove(gamma, ga) && prove(gamma, gb);
    }
    if (gop == Op::Imp) {
      std::vector<int> g2 = gamma;
      insertSorted(g2, ga);
      return prove(std::move(g2), gb);
    }
    // left split on a disjunction
    for (size_t i = 0; i < gamma.size(); ++i) {
      if (at(gamma[i]).op == Op::Or) {
        int a = at(gamma[i]).a, b = at(gamma[i]).b;
        std::vector<int> base = gamma;
        base.erase(base.begin() + static_cast<long>(i));
        std::vector<int> g1 = base, g2 = base;
        insertSorted(g1, a);
        insertSorted(g2, b);
        return prove(std::move(g1), goal) && prove(std::move(g2), goal);
      }
    }
    // choice points
    if (gop == Op::Or) {
      if (prove(gamma, ga) || prove(gamma, gb)) return true;
    }
    for (size_t i = 0; i < gamma.size(); ++i) {
      int id = gamma[i];
      if (at(id).op != Op::Imp) continue;
      int antId = at(id).a;
      if (at(antId).op != Op::Imp) continue;
      // ((A->B)->C): first premise with B->C, then continue with C
      int B = at(antId).b, C = at(id).b;
      std::vector<int> base = gamma;
      base.erase(base.begin() + static_cast<long>(i));
      std::vector<int> g1 = base;
      insertSorted(g1, bin(Op::Imp, B, C));
      if (prove(std::move(g1), antId)) {
        std::vector<int> g2 = base;
        insertSorted(g2, C);
        if (prove(std::move(g2), goal)) return true;
      }
    }
    return false;
  }

  bool decideIntuitionistic(const FormulaPtr& f) {
    int id = intern(f, botId);
    return prove({}, id);
  }

  bool decideMinimal(const FormulaPtr& f) {
    // Johansson embedding: falsum behaves like an ordinary atom
    int id = intern(f, pseudoFalsum);
    return prove({}, id);
  }
};

PropositionalProver::PropositionalProver() : impl_(std::make_unique<Impl>()) {}
PropositionalProver::~PropositionalProver() = default;

bool PropositionalProver::classical(const FormulaPtr& f) { return classicalValid(f); }
bool PropositionalProver::intuitionistic(const FormulaPtr& f) {
  return impl_->decideIntuitionistic(f);
}
bool PropositionalProver::minimal(const FormulaPtr& f) { return impl_->decideMinimal(f); }

bool intuitionisticProvable(const FormulaPtr& f) {
  PropositionalProver p;
  return p.intuitionistic(f);
}

bool minimalProvable(const FormulaPtr& f) {
  PropositionalProver p;
  return p.minimal(f);
}

// ---------------------------------------------------------------------------
// Random derivation generator

bool GeneratorProfile::allows(Rule r) const {
  if (allowed.empty()) return true;
  return std::find(allowed.begin(), allowed.end(), r) != allowed.end();
}

GeneratorProfile GeneratorProfile::nkNoForallI(std::uint64_t seed, int depth,
                                               double density) {
  GeneratorProfile p;
  p.seed = seed;
  p.maxDepth = depth;
  p.raaDensity = density;
  p.allowed = {Rule::Assume, Rule::Raa,   Rule::TopI,  Rule::NotI,  Rule::NotE,
               Rule::AndI,   Rule::AndE1, Rule::AndE2, Rule::OrI1,  Rule::OrI2,
               Rule::OrE,    Rule::ImpI,  Rule::ImpE,  Rule::ForallE,
               Rule::ExistsI, Rule::ExistsE};
  return p;
}

GeneratorProfile GeneratorProfile::nm(std::uint64_t seed, int depth) {
  GeneratorProfile p;
  p.seed = seed;
  p.maxDepth = depth;
  p.raaDensity = 0.0;
  p.allowed = {Rule::Assume, Rule::TopI, Rule::NotI, Rule::NotE, Rule::AndI,
               Rule::AndE1,  Rule::AndE2, Rule::OrI1, Rule::OrI2, Rule::OrE,
               Rule::ImpI,   Rule::ImpE};
  return p;
}

namespace {

class Generator {
public:
  explicit Generator(const GeneratorProfile& p) : p_(p), rng_(p.seed) {}

  DerivPtr run() {
    for (int attempt = 0; attempt < 64; ++attempt) {
      FormulaPtr goal = randomFormula(2);
      DerivPtr d = gen(goal, p_.maxDepth, {});
      if (p_.raaDensity > 0 && p_.allows(Rule::Raa) && !usesRule(d, Rule::Raa)) {
        Label f = nextLabel_++;
        d = Derivation::raa(
            f, d->conclusion(),
            Derivation::notE(
                Derivation::assume(Formula::negation(d->conclusion()), f), d));
      }
      if (p_.allows(Rule::ForallI) && coin(0.3))
        d = Derivation::forallI("x", d);  // vacuous; propositional bodies are closed
      if (checks(d)) return d;
    }
    throw GenerationExhausted("generator retry budget exceeded");
  }

private:
  const GeneratorProfile& p_;
  std::mt19937_64 rng_;
  Label nextLabel_ = 1;

  using Env = std::vector<std::pair<FormulaPtr, Label>>;

  bool coin(double p) {
    std::uniform_real_distribution<double> d(0.0, 1.0);
    return d(rng_) < p;
  }

  int pick(int n) {
    std::uniform_int_distribution<int> d(0, n - 1);
    return d(rng_);
  }

  FormulaPtr randomAtom() {
    return Formula::atom(p_.atoms[static_cast<size_t>(pick(
        static_cast<int>(p_.atoms.size())))]);
  }

  FormulaPtr randomFormula(int depth) {
    if (depth <= 0 || coin(0.4)) {
      int r = pick(6);
      if (r == 0) return Formula::bottom();
      if (r == 1) return Formula::top();
      return randomAtom();
    }
    switch (pick(4)) {
      case 0: return Formula::negation(randomFormula(depth - 1));
      case 1: return Formula::conj(randomFormula(depth - 1), randomFormula(depth - 1));
      case 2: return Formula::disj(randomFormula(depth - 1), randomFormula(depth - 1));
      default:
        return p_.allows(Rule::ImpI) || p_.allows(Rule::ImpE)
                   ? Formula::impl(randomFormula(depth - 1), randomFormula(depth - 1))
                   : Formula::conj(randomFormula(depth - 1), randomFormula(depth - 1));
    }
  }

  DerivPtr leaf(const FormulaPtr& goal, const Env& env) {
    std::vector<const std::pair<FormulaPtr, Label>*> hits;
    for (const auto& e : env)
      if (alphaEq(e.first, goal)) hits.push_back(&e);
    if (!hits.empty() && coin(0.75)) {
      const auto* h = hits[static_cast<size_t>(pick(static_cast<int>(hits.size())))];
      return Derivation::assume(h->first, h->second);
    }
    return Derivation::assume(goal, 0);
  }

  DerivPtr gen(const FormulaPtr& goal, int depth, Env env) {
    if (depth <= 0) return leaf(goal, env);
    // bias raa away from the root so postponement has work to do
    double density = depth == p_.maxDepth ? p_.raaDensity * 0.25 : p_.raaDensity;
    if (p_.allows(Rule::Raa) && coin(density)) {
      Label f = nextLabel_++;
      Env inner = env;
      FormulaPtr ng = Formula::negation(goal);
      inner.emplace_back(ng, f);
      DerivPtr body = genBottom(depth - 1, inner, ng);
      return Derivation::raa(f, goal, body);
    }
    // a few tries to pick an applicable rule, otherwise fall back to a leaf
    for (int attempt = 0; attempt < 4; ++attempt) {
      switch (pick(8)) {
        case 0: {  // introduction by goal shape
          DerivPtr d = intro(goal, depth, env);
          if (d) return d;
          break;
        }
        case 1: {
          if (!p_.allows(Rule::AndE1)) break;
          FormulaPtr other = randomFormula(1);
          DerivPtr prem = gen(Formula::conj(goal, other), depth - 1, env);
          return Derivation::andE1(prem);
        }
        case 2: {
          if (!p_.allows(Rule::AndE2)) break;
          FormulaPtr other = randomFormula(1);
          DerivPtr prem = gen(Formula::conj(other, goal), depth - 1, env);
          return Derivation::andE2(prem);
        }
        case 3: {
          if (!p_.allows(Rule::ImpE)) break;
          FormulaPtr arg = randomFormula(1);
          DerivPtr fun = gen(Formula::impl(arg, goal), depth - 1, env);
          DerivPtr a = gen(arg, depth - 1, env);
          return Derivation::impE(fun, a);
        }
        case 4: {
          if (!p_.allows(Rule::OrE)) break;
          FormulaPtr a = randomFormula(1);
          FormulaPtr b = randomFormula(1);
          DerivPtr major = gen(Formula::disj(a, b), depth - 1, env);
          Label f = nextLabel_++;
          Env envA = env, envB = env;
          envA.emplace_back(a, f);
          envB.emplace_back(b, f);
          DerivPtr m1 = gen(goal, depth - 1, envA);
          DerivPtr m2 = gen(goal, depth - 1, envB);
          return Derivation::orE(f, major, m1, m2);
        }
        case 5: {
          // vacuous universal: the propositional goal has no term variables
          if (!p_.allows(Rule::ForallE)) break;
          DerivPtr prem = gen(Formula::forall("x", goal), depth - 1, env);
          return Derivation::forallE(Term::fun("c"), prem);
        }
        case 6: {
          if (!p_.allows(Rule::ExistsE)) break;
          FormulaPtr a = randomFormula(1);
          FormulaPtr ex = Formula::exists("x", a);
          DerivPtr major = gen(ex, depth - 1, env);
          Label f = nextLabel_++;
          Env envA = env;
          envA.emplace_back(a, f);
          DerivPtr minor = gen(goal, depth - 1, envA);
          return Derivation::existsE(f, "w", major, minor);
        }
        default: {
          DerivPtr d = intro(goal, depth, env);
          if (d) return d;
          break;
        }
      }
    }
    return leaf(goal, env);
  }

  // bottom is a goal like any other, but not_e gives it more shapes
  DerivPtr genBottom(int depth, const Env& env, const FormulaPtr& negHint) {
    if (depth > 0 && p_.allows(Rule::NotE) && coin(0.85)) {
      FormulaPtr target;
      if (negHint && coin(0.8))
        target = negHint->body();
      else
        target = randomFormula(1);
      DerivPtr lhs = gen(Formula::negation(target), depth - 1, env);
      DerivPtr rhs = gen(target, depth - 1, env);
      return Derivation::notE(lhs, rhs);
    }
    return gen(Formula::bottom(), depth, env);
  }

  DerivPtr intro(const FormulaPtr& goal, int depth, Env env) {
    switch (goal->kind()) {
      case Kind::Top:
        return p_.allows(Rule::TopI) ? Derivation::topI() : nullptr;
      case Kind::And: {
        if (!p_.allows(Rule::AndI)) return nullptr;
        return Derivation::andI(gen(goal->left(), depth - 1, env),
                                gen(goal->right(), depth - 1, env));
      }
      case Kind::Or: {
        if (!p_.allows(Rule::OrI1) || !p_.allows(Rule::OrI2)) return nullptr;
        if (coin(0.5))
          return Derivation::orI1(gen(goal->left(), depth - 1, env), goal->right());
        return Derivation::orI2(goal->left(), gen(goal->right(), depth - 1, env));
      }
      case Kind::Imp: {
        if (!p_.allows(Rule::ImpI)) return nullptr;
        Label f = nextLabel_++;
        env.emplace_back(goal->left(), f);
        return Derivation::impI(f, goal->left(), gen(goal->right(), depth - 1, env));
      }
      case Kind::Not: {
        if (!p_.allows(Rule::NotI)) return nullptr;
        Label f = nextLabel_++;
        env.emplace_back(goal->body(), f);
        return Derivation::notI(f, goal->body(),
                                genBottom(depth - 1, env, nullptr));
      }
      case Kind::Forall: {
        if (!p_.allows(Rule::ForallI) || freeIn(goal->name(), goal->body()))
          return nullptr;
        return Derivation::forallI(goal->name(), gen(goal->body(), depth - 1, env));
      }
      case Kind::Exists: {
        if (!p_.allows(Rule::ExistsI) || freeIn(goal->name(), goal->body()))
          return nullptr;
        return Derivation::existsI(goal, Term::fun("c"),
                                   gen(goal->body(), depth - 1, env));
      }
      default:
        return nullptr;
    }
  }
};

}  // namespace

DerivPtr genDerivation(const GeneratorProfile& profile) {
  Generator g(profile);
  return g.run();
}

}  // namespace nd
