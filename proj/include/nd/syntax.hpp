#ifndef ND_SYNTAX_HPP
#define ND_SYNTAX_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "nd/derivation.hpp"

namespace nd {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
  ParseError(SourceSpan span, const std::string& what)
      : std::runtime_error(what), span_(span) {}
  SourceSpan span() const { return span_; }

private:
  SourceSpan span_;
};

// S-expression syntax (";" starts a comment):
//   formula := "bot" | "top" | "(pred" NAME term*")" | "(not" f ")"
//            | "(and" f f ")" | "(or" f f ")" | "(imp" f f ")"
//            | "(forall" VAR f ")" | "(exists" VAR f ")"
//   term    := VAR | "(fun" NAME term* ")"
// Reuse of a pred/fun symbol at a different arity is an error.
FormulaPtr parseFormula(std::string_view text);
TermPtr parseTerm(std::string_view text);

//   deriv := "(assume" LABEL? formula ")"
//          | "(raa" LABEL formula? deriv ")" | "(efq" formula deriv ")"
//          | "(top-i)" | "(not-i" LABEL formula? deriv ")"
//          | "(not-e" deriv deriv ")" | "(and-i" deriv deriv ")"
//          | "(and-e1" deriv ")" | "(and-e2" deriv ")"
//          | "(or-i1" formula deriv ")" | "(or-i2" formula deriv ")"
//          | "(or-e" LABEL deriv deriv deriv ")"
//          | "(imp-i" LABEL formula deriv ")" | "(imp-e" deriv deriv ")"
//          | "(forall-i" VAR deriv ")" | "(forall-e" term deriv ")"
//          | "(exists-i" formula term deriv ")"
//          | "(exists-e" LABEL VAR deriv deriv ")"
// or-i carries the other disjunct, imp-i the antecedent, exists-i the target
// formula and witness. raa and not-i infer their formula from the assumptions
// the label binds; the explicit formula (the conclusion for raa, the
// discharged formula for not-i) is required when the label binds none, which
// is how efq and vacuous not-i instances are written. "(efq F D)" is sugar
// for a raa binding nothing.
DerivPtr parseDerivation(std::string_view text);

// Parses a file with several formulas, one after the other.
std::vector<FormulaPtr> parseFormulaList(std::string_view text);

enum class RenderFormat { Text, AsciiTree, Latex };

std::string renderFormula(const FormulaPtr& f);
std::string renderTerm(const TermPtr& t);

// Text re-parses to a structurally identical tree up to label renaming;
// ascii/latex print one line resp. inference block per rule, with efq shown
// for zero-discharge raa instances. Latex emits bussproofs markup.
std::string render(const DerivPtr& d, RenderFormat format);

}  // namespace nd

#endif
