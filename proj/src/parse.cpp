#include <cctype>
#include <map>
#include <optional>

#include "nd/syntax.hpp"

namespace nd {

namespace {

struct Token {
  enum class Type { LParen, RParen, Symbol, End };
  Type type;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token peek() {
    if (!ahead_) ahead_ = lex();
    return *ahead_;
  }

  Token next() {
    Token t = peek();
    ahead_.reset();
    return t;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<Token> ahead_;

  Token lex() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') pos_++;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        pos_++;
        continue;
      }
      break;
    }
    if (pos_ >= text_.size())
      return Token{Token::Type::End, "", {text_.size(), text_.size()}};
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == '(') {
      pos_++;
      return Token{Token::Type::LParen, "(", {start, pos_}};
    }
    if (c == ')') {
      pos_++;
      return Token{Token::Type::RParen, ")", {start, pos_}};
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' ||
          std::isspace(static_cast<unsigned char>(d)))
        break;
      pos_++;
    }
    return Token{Token::Type::Symbol, std::string(text_.substr(start, pos_ - start)),
                 {start, pos_}};
  }
};

[[noreturn]] void perr(SourceSpan span, const std::string& msg) {
  throw ParseError(span, msg + " (at bytes " + std::to_string(span.start) + ".." +
                             std::to_string(span.end) + ")");
}

bool isInteger(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  FormulaPtr formula() {
    FormulaPtr f = parseFormula();
    expectEnd();
    return f;
  }

  TermPtr term() {
    TermPtr t = parseTerm();
    expectEnd();
    return t;
  }

  DerivPtr derivation() {
    DerivPtr d = parseDeriv();
    expectEnd();
    return d;
  }

  std::vector<FormulaPtr> formulaList() {
    std::vector<FormulaPtr> out;
    while (lex_.peek().type != Token::Type::End) out.push_back(parseFormula());
    return out;
  }

private:
  Lexer lex_;
  std::map<std::string, size_t> predArity_;
  std::map<std::string, size_t> funArity_;

  void expectEnd() {
    Token t = lex_.peek();
    if (t.type != Token::Type::End) perr(t.span, "trailing input");
  }

  Token expect(Token::Type ty, const std::string& what) {
    Token t = lex_.next();
    if (t.type != ty) perr(t.span, "expected " + what);
    return t;
  }

  std::string symbol(const std::string& what) {
    Token t = lex_.next();
    if (t.type != Token::Type::Symbol) perr(t.span, "expected " + what);
    return t.text;
  }

  void checkArity(std::map<std::string, size_t>& table, const std::string& name,
                  size_t arity, SourceSpan span) {
    auto it = table.find(name);
    if (it == table.end()) {
      table[name] = arity;
      return;
    }
    if (it->second != arity)
      perr(span, "symbol " + name + " reused at arity " + std::to_string(arity) +
                     " (declared " + std::to_string(it->second) + ")");
  }

  TermPtr parseTerm() {
    Token t = lex_.next();
    if (t.type == Token::Type::Symbol) return Term::var(t.text);
    if (t.type != Token::Type::LParen) perr(t.span, "expected a term");
    Token head = lex_.next();
    if (head.type != Token::Type::Symbol || head.text != "fun")
      perr(head.span, "expected fun");
    std::string name = symbol("function symbol");
    std::vector<TermPtr> args;
    while (lex_.peek().type != Token::Type::RParen &&
           lex_.peek().type != Token::Type::End)
      args.push_back(parseTerm());
    Token close = expect(Token::Type::RParen, ")");
    checkArity(funArity_, name, args.size(), close.span);
    return Term::fun(name, std::move(args));
  }

  FormulaPtr parseFormula() {
    Token t = lex_.next();
    if (t.type == Token::Type::Symbol) {
      if (t.text == "bot") return Formula::bottom();
      if (t.text == "top") return Formula::top();
      perr(t.span, "expected a formula");
    }
    if (t.type != Token::Type::LParen) perr(t.span, "expected a formula");
    Token head = lex_.next();
    if (head.type != Token::Type::Symbol) perr(head.span, "expected a connective");
    const std::string& h = head.text;
    FormulaPtr out;
    if (h == "pred") {
      std::string name = symbol("predicate symbol");
      std::vector<TermPtr> args;
      while (lex_.peek().type != Token::Type::RParen &&
             lex_.peek().type != Token::Type::End)
        args.push_back(parseTerm());
      Token close = expect(Token::Type::RParen, ")");
      checkArity(predArity_, name, args.size(), close.span);
      return Formula::atom(name, std::move(args));
    }
    if (h == "not") {
      out = Formula::negation(parseFormula());
    } else if (h == "and" || h == "or" || h == "imp") {
      FormulaPtr l = parseFormula();
      if (lex_.peek().type == Token::Type::RParen)
        perr(lex_.peek().span, h + " needs two operands");
      FormulaPtr r = parseFormula();
      out = h == "and" ? Formula::conj(l, r)
            : h == "or" ? Formula::disj(l, r)
                        : Formula::impl(l, r);
    } else if (h == "forall" || h == "exists") {
      std::string var = symbol("variable");
      FormulaPtr body = parseFormula();
      out = h == "forall" ? Formula::forall(var, body) : Formula::exists(var, body);
    } else {
      perr(head.span, "unknown connective " + h);
    }
    expect(Token::Type::RParen, ")");
    return out;
  }

  Label parseLabel() {
    Token t = lex_.next();
    if (t.type != Token::Type::Symbol || !isInteger(t.text))
      perr(t.span, "expected a discharge label");
    return std::stoi(t.text);
  }

  // The formula an assumption marked `l` carries, if any leaf uses it.
  static FormulaPtr findLabeled(const DerivPtr& d, Label l) {
    if (d->isAssume()) return d->label() == l ? d->conclusion() : nullptr;
    for (const auto& p : d->premises())
      if (FormulaPtr f = findLabeled(p, l)) return f;
    return nullptr;
  }

  // raa and not-i take an optional formula between label and premise; sniff
  // whether the next form is a formula or a derivation by its head symbol.
  bool nextIsFormula() {
    Token t = lex_.peek();
    if (t.type == Token::Type::Symbol) return t.text == "bot" || t.text == "top";
    return false;
  }

  DerivPtr parseDeriv() {
    Token t = lex_.next();
    if (t.type != Token::Type::LParen) perr(t.span, "expected a derivation");
    Token head = lex_.next();
    if (head.type != Token::Type::Symbol) perr(head.span, "expected a rule name");
    const std::string& h = head.text;
    DerivPtr out;
    if (h == "assume") {
      Label l = 0;
      Token p = lex_.peek();
      if (p.type == Token::Type::Symbol && isInteger(p.text)) l = parseLabel();
      FormulaPtr f = parseFormula();
      out = Derivation::assume(f, l);
    } else if (h == "raa" || h == "not-i") {
      Label l = parseLabel();
      FormulaPtr annot;
      if (nextIsFormula() || peekFormulaParen()) annot = parseFormula();
      DerivPtr prem = parseDeriv();
      if (h == "raa") {
        FormulaPtr concl = annot;
        if (!concl) {
          FormulaPtr bound = findLabeled(prem, l);
          if (!bound)
            perr(head.span,
                 "raa label binds no assumption; write (raa L CONCLUSION ...) "
                 "or (efq CONCLUSION ...)");
          if (!bound->is(Formula::Kind::Not))
            perr(head.span, "raa discharges negations only");
          concl = bound->body();
        }
        out = Derivation::raa(l, concl, prem);
      } else {
        FormulaPtr discharged = annot;
        if (!discharged) {
          discharged = findLabeled(prem, l);
          if (!discharged)
            perr(head.span,
                 "not-i label binds no assumption; write (not-i L FORMULA ...)");
        }
        out = Derivation::notI(l, discharged, prem);
      }
    } else if (h == "efq") {
      FormulaPtr concl = parseFormula();
      out = Derivation::raa(0, concl, parseDeriv());
    } else if (h == "top-i") {
      out = Derivation::topI();
    } else if (h == "not-e") {
      DerivPtr a = parseDeriv();
      out = Derivation::notE(a, parseDeriv());
    } else if (h == "and-i") {
      DerivPtr a = parseDeriv();
      out = Derivation::andI(a, parseDeriv());
    } else if (h == "and-e1") {
      out = Derivation::andE1(parseDeriv());
    } else if (h == "and-e2") {
      out = Derivation::andE2(parseDeriv());
    } else if (h == "or-i1") {
      FormulaPtr other = parseFormula();
      out = Derivation::orI1(parseDeriv(), other);
    } else if (h == "or-i2") {
      FormulaPtr other = parseFormula();
      out = Derivation::orI2(other, parseDeriv());
    } else if (h == "or-e") {
      Label l = parseLabel();
      DerivPtr major = parseDeriv();
      DerivPtr m1 = parseDeriv();
      DerivPtr m2 = parseDeriv();
      out = Derivation::orE(l, major, m1, m2);
    } else if (h == "imp-i") {
      Label l = parseLabel();
      FormulaPtr ant = parseFormula();
      out = Derivation::impI(l, ant, parseDeriv());
    } else if (h == "imp-e") {
      DerivPtr major = parseDeriv();
      out = Derivation::impE(major, parseDeriv());
    } else if (h == "forall-i") {
      std::string var = symbol("variable");
      out = Derivation::forallI(var, parseDeriv());
    } else if (h == "forall-e") {
      TermPtr w = parseTerm();
      out = Derivation::forallE(w, parseDeriv());
    } else if (h == "exists-i") {
      FormulaPtr target = parseFormula();
      TermPtr w = parseTerm();
      out = Derivation::existsI(target, w, parseDeriv());
    } else if (h == "exists-e") {
      Label l = parseLabel();
      std::string var = symbol("eigenvariable");
      DerivPtr major = parseDeriv();
      out = Derivation::existsE(l, var, major, parseDeriv());
    } else {
      perr(head.span, "unknown rule " + h);
    }
    expect(Token::Type::RParen, ")");
    return out;
  }

  // Distinguishes "(pred ..)"-style formulas from "(rule ..)" derivations
  // after raa/not-i labels.
  bool peekFormulaParen() {
    Token t = lex_.peek();
    if (t.type != Token::Type::LParen) return false;
    // single-token lookahead is not enough; sniff the head symbol
    Lexer probe = lex_;
    probe.next();  // (
    Token head = probe.next();
    if (head.type != Token::Type::Symbol) return false;
    static const char* kFormulaHeads[] = {"pred", "not",    "and",   "or",
                                          "imp",  "forall", "exists"};
    for (const char* k : kFormulaHeads)
      if (head.text == k) return true;
    return false;
  }
};

}  // namespace

FormulaPtr parseFormula(std::string_view text) { return Parser(text).formula(); }
TermPtr parseTerm(std::string_view text) { return Parser(text).term(); }
DerivPtr parseDerivation(std::string_view text) { return Parser(text).derivation(); }
std::vector<FormulaPtr> parseFormulaList(std::string_view text) {
  return Parser(text).formulaList();
}

}  // namespace nd
