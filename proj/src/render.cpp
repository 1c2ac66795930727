#include <sstream>

#include "nd/syntax.hpp"

namespace nd {

using Kind = Formula::Kind;

namespace {

void renderTermRec(const TermPtr& t, std::ostream& os) {
  if (t->kind() == Term::Kind::Var) {
    os << t->name();
    return;
  }
  os << "(fun " << t->name();
  for (const auto& a : t->args()) {
    os << " ";
    renderTermRec(a, os);
  }
  os << ")";
}

void renderFormulaRec(const FormulaPtr& f, std::ostream& os) {
  switch (f->kind()) {
    case Kind::Bottom: os << "bot"; return;
    case Kind::Top: os << "top"; return;
    case Kind::Atom:
      os << "(pred " << f->name();
      for (const auto& a : f->args()) {
        os << " ";
        renderTermRec(a, os);
      }
      os << ")";
      return;
    case Kind::Not:
      os << "(not ";
      renderFormulaRec(f->body(), os);
      os << ")";
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      os << "(" << (f->kind() == Kind::And ? "and" : f->kind() == Kind::Or ? "or" : "imp")
         << " ";
      renderFormulaRec(f->left(), os);
      os << " ";
      renderFormulaRec(f->right(), os);
      os << ")";
      return;
    case Kind::Forall:
    case Kind::Exists:
      os << "(" << (f->kind() == Kind::Forall ? "forall" : "exists") << " " << f->name()
         << " ";
      renderFormulaRec(f->body(), os);
      os << ")";
      return;
  }
}

bool isEfq(const DerivPtr& d) {
  return d->isRaa() &&
         (d->label() == 0 || countLabeled(d->premise(0), d->label()) == 0);
}

void renderTextRec(const DerivPtr& d, std::ostream& os) {
  switch (d->rule()) {
    case Rule::Assume:
      os << "(assume ";
      if (d->label() != 0) os << d->label() << " ";
      renderFormulaRec(d->conclusion(), os);
      os << ")";
      return;
    case Rule::Raa:
      if (isEfq(d)) {
        os << "(efq ";
        renderFormulaRec(d->conclusion(), os);
        os << " ";
        renderTextRec(d->premise(0), os);
        os << ")";
        return;
      }
      os << "(raa " << d->label() << " ";
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    case Rule::TopI:
      os << "(top-i)";
      return;
    case Rule::NotI: {
      bool vacuous =
          d->label() == 0 || countLabeled(d->premise(0), d->label()) == 0;
      os << "(not-i " << d->label() << " ";
      if (vacuous) {
        renderFormulaRec(d->conclusion()->body(), os);
        os << " ";
      }
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    }
    case Rule::NotE:
    case Rule::AndI:
    case Rule::ImpE:
      os << "(" << ruleName(d->rule()) << " ";
      renderTextRec(d->premise(0), os);
      os << " ";
      renderTextRec(d->premise(1), os);
      os << ")";
      return;
    case Rule::AndE1:
    case Rule::AndE2:
      os << "(" << ruleName(d->rule()) << " ";
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    case Rule::OrI1:
      os << "(or-i1 ";
      renderFormulaRec(d->conclusion()->right(), os);
      os << " ";
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    case Rule::OrI2:
      os << "(or-i2 ";
      renderFormulaRec(d->conclusion()->left(), os);
      os << " ";
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    case Rule::OrE:
      os << "(or-e " << d->label() << " ";
      renderTextRec(d->premise(0), os);
      os << " ";
      renderTextRec(d->premise(1), os);
      os << " ";
      renderTextRec(d->premise(2), os);
      os << ")";
      return;
    case Rule::ImpI:
      os << "(imp-i " << d->label() << " ";
      renderFormulaRec(d->conclusion()->left(), os);
      os << " ";
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    case Rule::ForallI:
      os << "(forall-i " << d->variable() << " ";
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    case Rule::ForallE:
      os << "(forall-e ";
      renderTermRec(d->witness(), os);
      os << " ";
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    case Rule::ExistsI:
      os << "(exists-i ";
      renderFormulaRec(d->conclusion(), os);
      os << " ";
      renderTermRec(d->witness(), os);
      os << " ";
      renderTextRec(d->premise(0), os);
      os << ")";
      return;
    case Rule::ExistsE:
      os << "(exists-e " << d->label() << " " << d->variable() << " ";
      renderTextRec(d->premise(0), os);
      os << " ";
      renderTextRec(d->premise(1), os);
      os << ")";
      return;
  }
}

std::string displayRule(const DerivPtr& d) {
  if (isEfq(d)) return "efq";
  std::string name = ruleName(d->rule());
  if (ruleDischarges(d->rule()) && d->label() != 0)
    name += "^" + std::to_string(d->label());
  if (d->rule() == Rule::ForallI || d->rule() == Rule::ExistsE)
    name += " {" + d->variable() + "}";
  return name;
}

void renderAsciiRec(const DerivPtr& d, std::ostream& os, const std::string& prefix,
                    bool last) {
  os << prefix;
  if (!prefix.empty()) os << (last ? "`- " : "|- ");
  if (d->isAssume()) {
    os << "assume";
    if (d->label() != 0) os << "[" << d->label() << "]";
  } else {
    os << displayRule(d);
  }
  os << " :: ";
  renderFormulaRec(d->conclusion(), os);
  os << "\n";
  std::string childPrefix = prefix;
  if (!prefix.empty()) childPrefix += last ? "   " : "|  ";
  for (size_t i = 0; i < d->premises().size(); ++i)
    renderAsciiRec(d->premises()[i], os, childPrefix.empty() ? " " : childPrefix,
                   i + 1 == d->premises().size());
}

// --- LaTeX (bussproofs) ---

void latexTerm(const TermPtr& t, std::ostream& os) {
  if (t->kind() == Term::Kind::Var) {
    os << t->name();
    return;
  }
  os << t->name();
  if (!t->args().empty()) {
    os << "(";
    for (size_t i = 0; i < t->args().size(); ++i) {
      if (i) os << ", ";
      latexTerm(t->args()[i], os);
    }
    os << ")";
  }
}

int precedence(const FormulaPtr& f) {
  switch (f->kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Top:
      return 4;
    case Kind::Not:
    case Kind::Forall:
    case Kind::Exists:
      return 3;
    case Kind::And:
    case Kind::Or:
      return 2;
    case Kind::Imp:
      return 1;
  }
  return 0;
}

void latexFormula(const FormulaPtr& f, std::ostream& os, int parent) {
  int prec = precedence(f);
  bool paren = prec < parent;
  if (paren) os << "(";
  switch (f->kind()) {
    case Kind::Bottom: os << "\\bot"; break;
    case Kind::Top: os << "\\top"; break;
    case Kind::Atom:
      os << f->name();
      if (!f->args().empty()) {
        os << "(";
        for (size_t i = 0; i < f->args().size(); ++i) {
          if (i) os << ", ";
          latexTerm(f->args()[i], os);
        }
        os << ")";
      }
      break;
    case Kind::Not:
      os << "\\lnot ";
      latexFormula(f->body(), os, 3);
      break;
    case Kind::And:
      latexFormula(f->left(), os, 3);
      os << " \\land ";
      latexFormula(f->right(), os, 3);
      break;
    case Kind::Or:
      latexFormula(f->left(), os, 3);
      os << " \\lor ";
      latexFormula(f->right(), os, 3);
      break;
    case Kind::Imp:
      latexFormula(f->left(), os, 2);
      os << " \\to ";
      latexFormula(f->right(), os, 2);
      break;
    case Kind::Forall:
    case Kind::Exists:
      os << (f->kind() == Kind::Forall ? "\\forall " : "\\exists ") << f->name()
         << " \\, ";
      latexFormula(f->body(), os, 3);
      break;
  }
  if (paren) os << ")";
}

std::string latexRuleLabel(const DerivPtr& d) {
  std::string sup =
      ruleDischarges(d->rule()) && d->label() != 0 ? "^{" + std::to_string(d->label()) + "}"
                                                   : "";
  if (isEfq(d)) return "$\\mathsf{efq}$";
  switch (d->rule()) {
    case Rule::Raa: return "$\\mathsf{raa}" + sup + "$";
    case Rule::TopI: return "$\\top_{\\mathsf{i}}$";
    case Rule::NotI: return "$\\lnot_{\\mathsf{i}}" + sup + "$";
    case Rule::NotE: return "$\\lnot_{\\mathsf{e}}$";
    case Rule::AndI: return "$\\land_{\\mathsf{i}}$";
    case Rule::AndE1: return "$\\land_{\\mathsf{e}_1}$";
    case Rule::AndE2: return "$\\land_{\\mathsf{e}_2}$";
    case Rule::OrI1: return "$\\lor_{\\mathsf{i}_1}$";
    case Rule::OrI2: return "$\\lor_{\\mathsf{i}_2}$";
    case Rule::OrE: return "$\\lor_{\\mathsf{e}}" + sup + "$";
    case Rule::ImpI: return "$\\to_{\\mathsf{i}}" + sup + "$";
    case Rule::ImpE: return "$\\to_{\\mathsf{e}}$";
    case Rule::ForallI: return "$\\forall_{\\mathsf{i}}$";
    case Rule::ForallE: return "$\\forall_{\\mathsf{e}}$";
    case Rule::ExistsI: return "$\\exists_{\\mathsf{i}}$";
    case Rule::ExistsE: return "$\\exists_{\\mathsf{e}}" + sup + "$";
    default: return "";
  }
}

void latexRec(const DerivPtr& d, std::ostream& os) {
  if (d->isAssume()) {
    os << "\\AxiomC{$";
    if (d->label() != 0) os << "[\\," ;
    latexFormula(d->conclusion(), os, 0);
    if (d->label() != 0) os << "\\,]^{" << d->label() << "}";
    os << "$}\n";
    return;
  }
  for (const auto& p : d->premises()) latexRec(p, os);
  if (d->premises().empty()) os << "\\AxiomC{}\n";
  os << "\\RightLabel{" << latexRuleLabel(d) << "}\n";
  const char* inf = d->premises().size() <= 1
                        ? "\\UnaryInfC"
                        : d->premises().size() == 2 ? "\\BinaryInfC" : "\\TrinaryInfC";
  os << inf << "{$";
  latexFormula(d->conclusion(), os, 0);
  os << "$}\n";
}

}  // namespace

std::string renderFormula(const FormulaPtr& f) {
  std::ostringstream os;
  renderFormulaRec(f, os);
  return os.str();
}

std::string renderTerm(const TermPtr& t) {
  std::ostringstream os;
  renderTermRec(t, os);
  return os.str();
}

std::string render(const DerivPtr& d, RenderFormat format) {
  std::ostringstream os;
  switch (format) {
    case RenderFormat::Text:
      renderTextRec(d, os);
      break;
    case RenderFormat::AsciiTree:
      renderAsciiRec(d, os, "", true);
      break;
    case RenderFormat::Latex:
      os << "\\begin{prooftree}\n";
      latexRec(d, os);
      os << "\\end{prooftree}\n";
      break;
  }
  return os.str();
}

}  // namespace nd
