// Recursive-descent parser for the `.thy` theory language.

#include <cctype>

#include "aq/theory.hpp"

namespace aq {

namespace {

enum class Tok { Ident, Var, LBrace, RBrace, LParen, RParen, Comma, Colon, Equals, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '@' || c == '/' || c == '[' ||
         c == ']' || c == '\'';
}

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int l = line, cl = col;
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    Tok single = Tok::End;
    switch (c) {
      case '{': single = Tok::LBrace; break;
      case '}': single = Tok::RBrace; break;
      case '(': single = Tok::LParen; break;
      case ')': single = Tok::RParen; break;
      case ',': single = Tok::Comma; break;
      case ':': single = Tok::Colon; break;
      case '=': single = Tok::Equals; break;
      default: break;
    }
    if (single != Tok::End) {
      out.push_back({single, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    const bool is_var = c == '$';
    std::size_t j = i + (is_var ? 1 : 0);
    while (j < src.size() && ident_char(src[j])) ++j;
    const std::size_t start = i + (is_var ? 1 : 0);
    if (j == start) throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
    out.push_back({is_var ? Tok::Var : Tok::Ident, src.substr(start, j - start), l, cl});
    advance(j - i);
  }
  out.push_back({Tok::End, "end of input", line, col});
  return out;
}

bool is_keyword(const std::string& s) { return s == "sort" || s == "op" || s == "eq" || s == "group"; }

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TheoryPresentation theory() {
    TheoryPresentation t;
    expect_word("theory");
    t.name = expect(Tok::Ident, "theory name").text;
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      const Token& kw = peek();
      if (kw.kind != Tok::Ident) throw SyntaxError("expected a declaration, found '" + kw.text + "'", kw.line, kw.col);
      if (kw.text == "sort") {
        next();
        if (peek().kind != Tok::Ident || is_keyword(peek().text))
          throw SyntaxError("expected a sort name", peek().line, peek().col);
        while (peek().kind == Tok::Ident && !is_keyword(peek().text)) t.sorts.push_back(next().text);
      } else if (kw.text == "op") {
        next();
        OpSig op;
        op.name = expect(Tok::Ident, "op name").text;
        expect(Tok::Colon, "':'");
        while (peek().kind == Tok::Ident) op.args.push_back(next().text);
        expect(Tok::Arrow, "'->'");
        op.result = expect(Tok::Ident, "result sort").text;
        t.ops.push_back(op);
      } else if (kw.text == "eq") {
        next();
        Equation e;
        e.lhs = term();
        expect(Tok::Equals, "'='");
        e.rhs = term();
        t.equations.push_back(e);
      } else if (kw.text == "group") {
        next();
        const Token sort = expect(Tok::Ident, "sort name");
        expect(Tok::LBrace, "'{'");
        GroupOps g;
        g.mul = field("mul");
        expect(Tok::Comma, "','");
        g.inv = field("inv");
        expect(Tok::Comma, "','");
        g.unit = field("unit");
        expect(Tok::RBrace, "'}'");
        if (t.group_witness.count(sort.text))
          throw DuplicateNameError("group structure declared twice for sort " + sort.text);
        t.group_witness[sort.text] = g;
      } else {
        throw SyntaxError("unknown declaration '" + kw.text + "'", kw.line, kw.col);
      }
    }
    expect(Tok::RBrace, "'}'");
    expect(Tok::End, "end of input");
    return t;
  }

  Term single_term() {
    Term t = term();
    expect(Tok::End, "end of term");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) throw SyntaxError("expected " + what + ", found '" + t.text + "'", t.line, t.col);
    return next();
  }
  void expect_word(const std::string& w) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text != w)
      throw SyntaxError("expected '" + w + "', found '" + t.text + "'", t.line, t.col);
    next();
  }
  std::string field(const std::string& key) {
    expect_word(key);
    expect(Tok::Equals, "'='");
    return expect(Tok::Ident, key + " op name").text;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Var) return Term::var(next().text);
    const std::string op = expect(Tok::Ident, "a term").text;
    std::vector<Term> args;
    if (peek().kind == Tok::LParen) {
      next();
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          next();
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
    }
    return Term::app(op, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

TheoryPresentation parse_theory(const std::string& text) {
  Parser p(tokenize(text));
  TheoryPresentation t = p.theory();
  t.validate();
  return t;
}

Term parse_term(const std::string& text) { return Parser(tokenize(text)).single_term(); }

}  // namespace aq
