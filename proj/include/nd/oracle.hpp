#ifndef ND_ORACLE_HPP
#define ND_ORACLE_HPP

#include <cstdint>

#include "nd/derivation.hpp"

namespace nd {

class OracleError : public std::runtime_error {
public:
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

// Truth-table validity. Requires a propositional formula (no quantifiers, no
// predicate arguments); throws OracleError otherwise.
bool classicalValid(const FormulaPtr& f);

// Contraction-free backward search (G4ip), with primitive negation handled as
// A -> bot. Decides propositional NJ-provability.
bool intuitionisticProvable(const FormulaPtr& f);

// Propositional NM-provability via the falsum-as-fresh-atom embedding: bot is
// replaced by a fresh atom and not A by A -> that atom.
bool minimalProvable(const FormulaPtr& f);

// Reusable prover with an internal formula pool and memo table; the free
// functions above each run on a fresh instance.
class PropositionalProver {
public:
  PropositionalProver();
  ~PropositionalProver();
  PropositionalProver(const PropositionalProver&) = delete;
  PropositionalProver& operator=(const PropositionalProver&) = delete;

  bool classical(const FormulaPtr& f);
  bool intuitionistic(const FormulaPtr& f);
  bool minimal(const FormulaPtr& f);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct GeneratorProfile {
  int maxDepth = 4;
  std::vector<std::string> atoms = {"P", "Q"};
  std::vector<Rule> allowed;  // empty = all of NK
  double raaDensity = 0.5;
  std::uint64_t seed = 0;

  bool allows(Rule r) const;
  static GeneratorProfile nkNoForallI(std::uint64_t seed, int depth = 4,
                                      double density = 0.5);
  static GeneratorProfile nm(std::uint64_t seed, int depth = 4);
};

class GenerationExhausted : public std::runtime_error {
public:
  explicit GenerationExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Goal-directed random derivation builder with backtracking; the result
// always passes check and is deterministic per seed.
DerivPtr genDerivation(const GeneratorProfile& profile);

}  // namespace nd

#endif
