#include <cctype>
#include <sstream>

#include "cscycle/syntax.hpp"

namespace csc {

namespace {

enum class Tok {
  End, Ident, Numeral, Zero, LParen, RParen, LBracket, RBracket, Comma, Dot,
  Plus, Eq, Neq, Tilde, Amp, Bar, Arrow, DArrow, Forall, Exists
};

struct Token {
  Tok kind;
  std::string text;
  unsigned number = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.col); }

  struct State {
    std::size_t pos;
    int line, col;
    Token tok;
  };
  State save() const { return {pos_, line_, col_, tok_}; }
  void restore(const State& s) {
    pos_ = s.pos;
    line_ = s.line;
    col_ = s.col;
    tok_ = s.tok;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) bump();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (c == '#') {
      bump();
      std::string digits;
      while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
        digits += text_[pos_];
        bump();
      }
      if (digits.empty()) throw ParseError("expected digits after '#'", line_, col_);
      tok_.kind = Tok::Numeral;
      tok_.number = (unsigned)std::stoul(digits);
      return;
    }
    if (c == '0') {
      bump();
      tok_.kind = Tok::Zero;
      return;
    }
    if (std::isalpha((unsigned char)c)) {
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_')) {
        id += text_[pos_];
        bump();
      }
      if (id == "forall") tok_.kind = Tok::Forall;
      else if (id == "exists") tok_.kind = Tok::Exists;
      else {
        tok_.kind = Tok::Ident;
        tok_.text = id;
      }
      return;
    }
    switch (c) {
      case '(': bump(); tok_.kind = Tok::LParen; return;
      case ')': bump(); tok_.kind = Tok::RParen; return;
      case '[': bump(); tok_.kind = Tok::LBracket; return;
      case ']': bump(); tok_.kind = Tok::RBracket; return;
      case ',': bump(); tok_.kind = Tok::Comma; return;
      case '.': bump(); tok_.kind = Tok::Dot; return;
      case '+': bump(); tok_.kind = Tok::Plus; return;
      case '~': bump(); tok_.kind = Tok::Tilde; return;
      case '&': bump(); tok_.kind = Tok::Amp; return;
      case '|': bump(); tok_.kind = Tok::Bar; return;
      case '=': bump(); tok_.kind = Tok::Eq; return;
      case '!':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          bump();
          tok_.kind = Tok::Neq;
          return;
        }
        throw ParseError("expected '=' after '!'", line_, col_);
      case '-':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          bump();
          tok_.kind = Tok::Arrow;
          return;
        }
        throw ParseError("expected '>' after '-'", line_, col_);
      case '<':
        bump();
        if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
          bump();
          bump();
          tok_.kind = Tok::DArrow;
          return;
        }
        throw ParseError("expected '->' after '<'", line_, col_);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

bool is_variable_name(const std::string& id) {
  if (id.empty() || !std::islower((unsigned char)id[0])) return false;
  for (char c : id)
    if (!std::islower((unsigned char)c) && !std::isdigit((unsigned char)c) && c != '_')
      return false;
  return true;
}

class Parser {
 public:
  Parser(const std::string& text, const Language& lang) : lex_(text), lang_(lang) {}

  Term term_all() {
    Term t = term();
    expect_end();
    return t;
  }

  Literal literal_all() {
    Literal l = literal();
    expect_end();
    return l;
  }

  Clause clause_all() {
    Clause c = clause();
    expect_end();
    return c;
  }

  Formula formula_all() {
    Formula f = formula();
    expect_end();
    return f;
  }

  Clause clause() {
    expect(Tok::LBracket, "expected '['");
    std::vector<Literal> lits;
    if (lex_.peek().kind != Tok::RBracket) {
      lits.push_back(literal());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        lits.push_back(literal());
      }
    }
    expect(Tok::RBracket, "expected ']'");
    return Clause(std::move(lits));
  }

  Formula formula() {  // iff level, left-associative
    Formula f = impl();
    while (lex_.peek().kind == Tok::DArrow) {
      lex_.take();
      f = Formula::iff(std::move(f), impl());
    }
    return f;
  }

 private:
  Lexer lex_;
  const Language& lang_;

  void expect(Tok k, const std::string& msg) {
    if (lex_.peek().kind != k) lex_.fail(msg);
    lex_.take();
  }

  void expect_end() {
    if (lex_.peek().kind != Tok::End) lex_.fail("trailing input");
  }

  Term term() {
    Term t = term_atom();
    while (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      t = Term::app("+", {std::move(t), term_atom()});
    }
    return t;
  }

  Term term_atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Zero:
        lex_.take();
        return numeral(0);
      case Tok::Numeral: {
        Token tok = lex_.take();
        return numeral(tok.number);
      }
      case Tok::LParen: {
        lex_.take();
        Term inner = term();
        expect(Tok::RParen, "expected ')'");
        return inner;
      }
      case Tok::Ident: {
        Token tok = lex_.take();
        if (tok.text == kEtaName) {
          if (!lang_.has_eta()) throw ParseError("eta is not available in this language", tok.line, tok.col);
          return eta_term();
        }
        if (lex_.peek().kind == Tok::LParen) {
          if (!lang_.functions().count(tok.text))
            throw ParseError("undeclared function symbol " + tok.text, tok.line, tok.col);
          lex_.take();
          std::vector<Term> args;
          if (lex_.peek().kind != Tok::RParen) {
            args.push_back(term());
            while (lex_.peek().kind == Tok::Comma) {
              lex_.take();
              args.push_back(term());
            }
          }
          expect(Tok::RParen, "expected ')'");
          int arity = lang_.function_arity(tok.text);
          if ((int)args.size() != arity)
            throw ParseError("arity mismatch for " + tok.text + ": expected " +
                                 std::to_string(arity) + ", got " + std::to_string(args.size()),
                             tok.line, tok.col);
          return Term::app(tok.text, std::move(args));
        }
        if (lang_.functions().count(tok.text)) {
          int arity = lang_.function_arity(tok.text);
          if (arity != 0)
            throw ParseError("arity mismatch for " + tok.text + ": expected " +
                                 std::to_string(arity) + " arguments",
                             tok.line, tok.col);
          return Term::app(tok.text);
        }
        if (!is_variable_name(tok.text))
          throw ParseError("undeclared symbol " + tok.text, tok.line, tok.col);
        return Term::var(tok.text);
      }
      default:
        lex_.fail("expected a term");
    }
  }

  Literal literal() {
    if (lex_.peek().kind == Tok::Tilde) {
      lex_.take();
      Literal l = literal();
      return l.negated();
    }
    if (lex_.peek().kind == Tok::Ident && lang_.predicates().count(lex_.peek().text))
      return predicate_atom();
    Term lhs = term();
    bool positive;
    if (lex_.peek().kind == Tok::Eq) positive = true;
    else if (lex_.peek().kind == Tok::Neq) positive = false;
    else lex_.fail("expected '=' or '!='");
    lex_.take();
    Term rhs = term();
    return Literal::oriented_equality(std::move(lhs), std::move(rhs), positive);
  }

  Literal predicate_atom() {
    Token tok = lex_.take();
    int arity = lang_.predicate_arity(tok.text);
    std::vector<Term> args;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      if (lex_.peek().kind != Tok::RParen) {
        args.push_back(term());
        while (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "expected ')'");
    }
    if ((int)args.size() != arity)
      throw ParseError("arity mismatch for " + tok.text + ": expected " + std::to_string(arity) +
                           ", got " + std::to_string(args.size()),
                       tok.line, tok.col);
    return Literal::predicate(tok.text, std::move(args));
  }

  Formula impl() {  // right-associative
    Formula f = disj();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Formula::implies(std::move(f), impl());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (lex_.peek().kind == Tok::Bar) {
      lex_.take();
      f = Formula::disj(std::move(f), conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Tilde:
        lex_.take();
        return Formula::negation(unary());
      case Tok::Forall:
      case Tok::Exists: {
        Token q = lex_.take();
        if (lex_.peek().kind != Tok::Ident || !is_variable_name(lex_.peek().text))
          lex_.fail("expected a variable after quantifier");
        std::string var = lex_.take().text;
        if (var == kEtaName) lex_.fail("eta cannot be bound");
        expect(Tok::Dot, "expected '.' after quantified variable");
        Formula body = formula();
        return q.kind == Tok::Forall ? Formula::forall(var, std::move(body))
                                     : Formula::exists(var, std::move(body));
      }
      default:
        return atomic();
    }
  }

  Formula atomic() {
    if (lex_.peek().kind == Tok::Ident && lang_.predicates().count(lex_.peek().text))
      return Formula::atom(predicate_atom());
    if (lex_.peek().kind == Tok::LParen) {
      // Could be a parenthesized term (as in "(x + y) = z") or a
      // parenthesized formula; try the term reading first.
      auto saved = lex_.save();
      try {
        Term lhs = term();
        if (lex_.peek().kind == Tok::Eq || lex_.peek().kind == Tok::Neq)
          return equality_tail(std::move(lhs));
        lex_.restore(saved);
      } catch (const ParseError&) {
        lex_.restore(saved);
      }
      lex_.take();
      Formula f = formula();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    Term lhs = term();
    if (lex_.peek().kind != Tok::Eq && lex_.peek().kind != Tok::Neq)
      lex_.fail("expected '=' or '!='");
    return equality_tail(std::move(lhs));
  }

  Formula equality_tail(Term lhs) {
    bool positive = lex_.take().kind == Tok::Eq;
    Term rhs = term();
    return Formula::atom(Literal::oriented_equality(std::move(lhs), std::move(rhs), positive));
  }
};

}  // namespace

Term parse_term(const std::string& text, const Language& lang) {
  return Parser(text, lang).term_all();
}

Literal parse_literal(const std::string& text, const Language& lang) {
  return Parser(text, lang).literal_all();
}

Clause parse_clause(const std::string& text, const Language& lang) {
  return Parser(text, lang).clause_all();
}

ClauseSet parse_clause_set(const std::string& text, const Language& lang) {
  std::vector<Clause> clauses;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    clauses.push_back(Parser(line, lang).clause_all());
  }
  return ClauseSet(std::move(clauses));
}

Formula parse_formula(const std::string& text, const Language& lang) {
  return Parser(text, lang).formula_all();
}

}  // namespace csc
