#include "dlex/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace dlex {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Subsumes,  // [=
  Dot,
  Bang,
  AndAnd,
  OrOr,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view in) : in_(in) { tokenize(); }

  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void tokenize() {
    size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (in_[i + k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    while (i < in_.size()) {
      char c = in_[i];
      if (c == '#') {
        while (i < in_.size() && in_[i] != '\n') advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      int tl = line, tc = col;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < in_.size() && (std::isalnum(static_cast<unsigned char>(in_[j])) ||
                                  in_[j] == '_' || in_[j] == '\''))
          ++j;
        toks_.push_back({Tok::Ident, std::string(in_.substr(i, j - i)), tl, tc});
        advance(j - i);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < in_.size() && std::isdigit(static_cast<unsigned char>(in_[j]))) ++j;
        toks_.push_back({Tok::Number, std::string(in_.substr(i, j - i)), tl, tc});
        advance(j - i);
        continue;
      }
      if (c == '[' && i + 1 < in_.size() && in_[i + 1] == '=') {
        toks_.push_back({Tok::Subsumes, "[=", tl, tc});
        advance(2);
        continue;
      }
      if (c == '&' && i + 1 < in_.size() && in_[i + 1] == '&') {
        toks_.push_back({Tok::AndAnd, "&&", tl, tc});
        advance(2);
        continue;
      }
      if (c == '|' && i + 1 < in_.size() && in_[i + 1] == '|') {
        toks_.push_back({Tok::OrOr, "||", tl, tc});
        advance(2);
        continue;
      }
      switch (c) {
        case '(': toks_.push_back({Tok::LParen, "(", tl, tc}); break;
        case ')': toks_.push_back({Tok::RParen, ")", tl, tc}); break;
        case '{': toks_.push_back({Tok::LBrace, "{", tl, tc}); break;
        case '}': toks_.push_back({Tok::RBrace, "}", tl, tc}); break;
        case '.': toks_.push_back({Tok::Dot, ".", tl, tc}); break;
        case '!': toks_.push_back({Tok::Bang, "!", tl, tc}); break;
        default:
          throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
      }
      advance(1);
    }
    toks_.push_back({Tok::End, "", line, col});
  }

  std::string_view in_;
  std::vector<Token> toks_;
};

class Parser {
 public:
  explicit Parser(std::string_view in) : lexer_(in) {}

  Concept concept_all() {
    Concept c = concept_expr();
    expect(Tok::End, "end of input");
    return c;
  }

  TBox tbox_all() {
    TBox t;
    while (peek().kind != Tok::End) {
      ConceptInclusion ci = inclusion();
      expect(Tok::Dot, "'.'");
      t.add(std::move(ci));
    }
    return t;
  }

  ConceptInclusion inclusion_all() {
    ConceptInclusion ci = inclusion();
    if (peek().kind == Tok::Dot) next();
    expect(Tok::End, "end of input");
    return ci;
  }

  BooleanTBox btbox_all() {
    BooleanTBox b = bor();
    expect(Tok::End, "end of input");
    return b;
  }

 private:
  const Token& peek(size_t ahead = 0) const { return lexer_.tokens()[pos_ + ahead]; }
  const Token& next() { return lexer_.tokens()[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& what) {
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, "expected " + what + ", got " + got);
  }

  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(peek(), what);
    return next();
  }

  bool at_keyword(const char* kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  bool is_keyword(const std::string& s) const {
    static const char* kws[] = {"top", "bot", "not", "and", "or",      "some",
                                "only", "atleast", "atmost", "inv"};
    for (const char* k : kws)
      if (s == k) return true;
    return false;
  }

  Role role() {
    if (at_keyword("inv")) {
      next();
      expect(Tok::LParen, "'('");
      const Token& t = expect(Tok::Ident, "role name");
      if (is_keyword(t.text)) fail(t, "role name");
      expect(Tok::RParen, "')'");
      return Role(t.text, true);
    }
    const Token& t = expect(Tok::Ident, "role name");
    if (is_keyword(t.text)) fail(t, "role name");
    return Role(t.text);
  }

  unsigned number() {
    const Token& t = expect(Tok::Number, "number");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  Concept concept_expr() { return or_expr(); }

  Concept or_expr() {
    Concept c = and_expr();
    while (at_keyword("or")) {
      next();
      c = Concept::disj(std::move(c), and_expr());
    }
    return c;
  }

  Concept and_expr() {
    Concept c = unary();
    while (at_keyword("and")) {
      next();
      c = Concept::conj(std::move(c), unary());
    }
    return c;
  }

  Concept unary() {
    if (at_keyword("not")) {
      next();
      return Concept::negation(unary());
    }
    if (at_keyword("some")) {
      next();
      Role r = role();
      return Concept::exists(std::move(r), unary());
    }
    if (at_keyword("only")) {
      next();
      Role r = role();
      return Concept::forall(std::move(r), unary());
    }
    if (at_keyword("atleast")) {
      next();
      unsigned n = number();
      Role r = role();
      return Concept::at_least(n, std::move(r), unary());
    }
    if (at_keyword("atmost")) {
      next();
      unsigned n = number();
      Role r = role();
      return Concept::at_most(n, std::move(r), unary());
    }
    return primary();
  }

  Concept primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        if (t.text == "top") {
          next();
          return Concept::top();
        }
        if (t.text == "bot") {
          next();
          return Concept::bot();
        }
        if (is_keyword(t.text)) fail(t, "a concept");
        next();
        return Concept::name(t.text);
      case Tok::LBrace: {
        next();
        const Token& n = expect(Tok::Ident, "individual name");
        if (is_keyword(n.text)) fail(n, "individual name");
        expect(Tok::RBrace, "'}'");
        return Concept::nominal(n.text);
      }
      case Tok::LParen: {
        next();
        Concept c = concept_expr();
        expect(Tok::RParen, "')'");
        return c;
      }
      default:
        fail(t, "a concept");
    }
  }

  ConceptInclusion inclusion() {
    Concept l = concept_expr();
    expect(Tok::Subsumes, "'[='");
    Concept r = concept_expr();
    return {std::move(l), std::move(r)};
  }

  // A parenthesized group is a CI atom when it contains '[=' at relative
  // paren depth 0; otherwise it is a nested Boolean expression.
  bool group_is_inclusion() const {
    int depth = 0;
    for (size_t k = 1;; ++k) {
      const Token& t = peek(k);
      if (t.kind == Tok::End) return false;
      if (t.kind == Tok::LParen) ++depth;
      if (t.kind == Tok::RParen) {
        if (depth == 0) return false;
        --depth;
      }
      if (t.kind == Tok::Subsumes && depth == 0) return true;
    }
  }

  BooleanTBox bor() {
    BooleanTBox b = band();
    while (peek().kind == Tok::OrOr) {
      next();
      b = BooleanTBox::disj(std::move(b), band());
    }
    return b;
  }

  BooleanTBox band() {
    BooleanTBox b = bunary();
    while (peek().kind == Tok::AndAnd) {
      next();
      b = BooleanTBox::conj(std::move(b), bunary());
    }
    return b;
  }

  BooleanTBox bunary() {
    if (peek().kind == Tok::Bang) {
      next();
      return BooleanTBox::negation(bunary());
    }
    if (peek().kind == Tok::LParen) {
      if (group_is_inclusion()) {
        next();
        ConceptInclusion ci = inclusion();
        expect(Tok::RParen, "')'");
        return BooleanTBox::atom(std::move(ci));
      }
      next();
      BooleanTBox b = bor();
      expect(Tok::RParen, "')'");
      return b;
    }
    // Bare CI, e.g. a whole file holding "top [= A".
    return BooleanTBox::atom(inclusion());
  }

  Lexer lexer_;
  size_t pos_ = 0;
};

}  // namespace

Concept parse_concept(std::string_view text) { return Parser(text).concept_all(); }

TBox parse_tbox(std::string_view text) { return Parser(text).tbox_all(); }

BooleanTBox parse_boolean_tbox(std::string_view text) { return Parser(text).btbox_all(); }

ConceptInclusion parse_inclusion(std::string_view text) { return Parser(text).inclusion_all(); }

}  // namespace dlex
