#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "rdivm/errors.hpp"
#include "rdivm/syntax.hpp"

namespace rdivm {

namespace {

enum class Tok {
  Ident,   // lowercase-first: relation symbol or constant
  Var,     // uppercase-first
  Quoted,  // quoted constant
  LParen,
  RParen,
  Comma,
  Dot,
  Turnstile,
  Pipe,
  PlusOp,
  MinusOp,
  StarOp,
  Equals,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SrcPos pos;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws();
    SrcPos pos{line_, col_};
    if (i_ >= src_.size()) return {Tok::End, "", pos};
    char c = src_[i_];
    if (c == '(') return take(Tok::LParen, pos);
    if (c == ')') return take(Tok::RParen, pos);
    if (c == ',') return take(Tok::Comma, pos);
    if (c == '.') return take(Tok::Dot, pos);
    if (c == '|') return take(Tok::Pipe, pos);
    if (c == '+') return take(Tok::PlusOp, pos);
    if (c == '*') return take(Tok::StarOp, pos);
    if (c == '=') return take(Tok::Equals, pos);
    if (c == ':') {
      advance();
      if (i_ < src_.size() && src_[i_] == '-') {
        advance();
        return {Tok::Turnstile, ":-", pos};
      }
      throw ParseError("expected ':-'", pos.line, pos.col);
    }
    if (c == '-') return take(Tok::MinusOp, pos);
    if (c == '"') return quoted(pos);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
        text += src_[i_];
        advance();
      }
      bool is_var = std::isupper(static_cast<unsigned char>(text[0]));
      return {is_var ? Tok::Var : Tok::Ident, text, pos};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text;
      while (i_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[i_]))) {
        text += src_[i_];
        advance();
      }
      return {Tok::Ident, text, pos};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos.line, pos.col);
  }

private:
  Token take(Tok kind, SrcPos pos) {
    std::string text(1, src_[i_]);
    advance();
    return {kind, text, pos};
  }

  Token quoted(SrcPos pos) {
    advance();  // opening quote
    std::string text;
    while (i_ < src_.size() && src_[i_] != '"') {
      if (src_[i_] == '\\' && i_ + 1 < src_.size()) advance();
      if (src_[i_] == '\n') throw ParseError("unterminated string", pos.line, pos.col);
      text += src_[i_];
      advance();
    }
    if (i_ >= src_.size()) throw ParseError("unterminated string", pos.line, pos.col);
    advance();  // closing quote
    return {Tok::Quoted, text, pos};
  }

  void skip_ws() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '%') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (src_[i_] == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    i_++;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
public:
  explicit Parser(std::string_view src) : lex_(src) { bump(); }

  SurfaceProgram program() {
    SurfaceProgram p;
    while (cur_.kind != Tok::End) p.clauses.push_back(clause());
    return p;
  }

private:
  void bump() { cur_ = lex_.next(); }

  Token expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      throw ParseError(std::string("expected ") + what + ", got '" + cur_.text + "'",
                       cur_.pos.line, cur_.pos.col);
    Token t = cur_;
    bump();
    return t;
  }

  SurfaceClause clause() {
    SurfaceClause c;
    c.pos = cur_.pos;
    Token head = expect(Tok::Ident, "relation symbol");
    c.head = Symbol{head.text};
    expect(Tok::LParen, "'('");
    c.h1 = term();
    expect(Tok::Comma, "','");
    c.h2 = term();
    expect(Tok::RParen, "')'");
    if (cur_.kind == Tok::Turnstile) {
      bump();
      c.body.push_back(conjunct());
      while (cur_.kind == Tok::Comma) {
        bump();
        c.body.push_back(conjunct());
      }
    }
    expect(Tok::Dot, "'.'");
    return c;
  }

  SurfaceTerm term() {
    SrcPos pos = cur_.pos;
    if (cur_.kind == Tok::Var) {
      std::string t = cur_.text;
      bump();
      return {true, t, pos};
    }
    if (cur_.kind == Tok::Ident || cur_.kind == Tok::Quoted) {
      std::string t = cur_.text;
      bump();
      return {false, t, pos};
    }
    throw ParseError("expected term, got '" + cur_.text + "'", pos.line, pos.col);
  }

  // conjunct := term '=' term | pathexpr '(' term ',' term ')'
  SurfaceAtom conjunct() {
    SurfaceAtom a;
    a.pos = cur_.pos;
    if (cur_.kind == Tok::Var || cur_.kind == Tok::Quoted) {
      a.a = term();
      expect(Tok::Equals, "'='");
      a.b = term();
      return a;
    }
    if (cur_.kind == Tok::Ident) {
      // Could be a path atom or the constant left of an equality.
      Token id = cur_;
      bump();
      if (cur_.kind == Tok::Equals) {
        bump();
        a.a = {false, id.text, id.pos};
        a.b = term();
        return a;
      }
      PathExpr e{PathExpr::Kind::Sym, Symbol{id.text}, {}, id.pos};
      a.path = postfixes(std::move(e));
      args(a);
      return a;
    }
    if (cur_.kind == Tok::LParen) {
      a.path = path_primary();
      args(a);
      return a;
    }
    throw ParseError("expected body atom, got '" + cur_.text + "'", a.pos.line, a.pos.col);
  }

  void args(SurfaceAtom& a) {
    expect(Tok::LParen, "'('");
    a.a = term();
    expect(Tok::Comma, "','");
    a.b = term();
    expect(Tok::RParen, "')'");
  }

  // primary := SYMBOL | '(' alt ')', with trailing postfix operators
  PathExpr path_primary() {
    SrcPos pos = cur_.pos;
    PathExpr e;
    if (cur_.kind == Tok::Ident) {
      e = PathExpr{PathExpr::Kind::Sym, Symbol{cur_.text}, {}, pos};
      bump();
    } else if (cur_.kind == Tok::LParen) {
      bump();
      e = alternation();
      expect(Tok::RParen, "')'");
      e.pos = pos;
    } else {
      throw ParseError("expected path expression, got '" + cur_.text + "'", pos.line,
                       pos.col);
    }
    return postfixes(std::move(e));
  }

  PathExpr postfixes(PathExpr e) {
    for (;;) {
      PathExpr::Kind k;
      if (cur_.kind == Tok::PlusOp)
        k = PathExpr::Kind::Plus;
      else if (cur_.kind == Tok::MinusOp)
        k = PathExpr::Kind::Inv;
      else if (cur_.kind == Tok::StarOp)
        k = PathExpr::Kind::Star;
      else
        return e;
      SrcPos pos = cur_.pos;
      bump();
      PathExpr wrapped{k, {}, {std::move(e)}, pos};
      e = std::move(wrapped);
    }
  }

  // alt := seq ('|' seq)*
  PathExpr alternation() {
    SrcPos pos = cur_.pos;
    PathExpr first = sequence();
    if (cur_.kind != Tok::Pipe) return first;
    PathExpr alt{PathExpr::Kind::Alt, {}, {std::move(first)}, pos};
    while (cur_.kind == Tok::Pipe) {
      bump();
      alt.args.push_back(sequence());
    }
    return alt;
  }

  // seq := postfixed ('.' postfixed)*   (only inside parentheses)
  PathExpr sequence() {
    SrcPos pos = cur_.pos;
    PathExpr first = path_primary();
    if (cur_.kind != Tok::Dot) return first;
    PathExpr seq{PathExpr::Kind::Seq, {}, {std::move(first)}, pos};
    while (cur_.kind == Tok::Dot) {
      bump();
      seq.args.push_back(path_primary());
    }
    return seq;
  }

  Lexer lex_;
  Token cur_{Tok::End, "", {}};
};

} // namespace

SurfaceProgram parse_program(std::string_view text) { return Parser(text).program(); }

} // namespace rdivm
