#include "kamp/parser.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace kamp {

namespace {

enum class Tok {
  ident,
  lparen,
  rparen,
  dot,
  comma,
  bang,
  amp,
  bar,
  arrow,
  less,
  greater,
  equal,
  k_plus,
  k_minus,
  end
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view text, bool temporal) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)), line, column});
    i += len;
    column += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    if (temporal && c == 'K' && i + 1 < text.size()) {
      const char next = text[i + 1];
      const bool arrow_follows = i + 2 < text.size() && text[i + 2] == '>';
      if (next == '+') {
        push(Tok::k_plus, 2);
        continue;
      }
      if (next == '-' && !arrow_follows) {
        push(Tok::k_minus, 2);
        continue;
      }
    }
    if (ident_start(c)) {
      std::size_t len = 1;
      while (i + len < text.size() && ident_char(text[i + len])) ++len;
      push(Tok::ident, len);
      continue;
    }
    switch (c) {
      case '(':
        push(Tok::lparen, 1);
        continue;
      case ')':
        push(Tok::rparen, 1);
        continue;
      case '.':
        push(Tok::dot, 1);
        continue;
      case ',':
        push(Tok::comma, 1);
        continue;
      case '!':
        push(Tok::bang, 1);
        continue;
      case '&':
        push(Tok::amp, 1);
        continue;
      case '|':
        push(Tok::bar, 1);
        continue;
      case '<':
        push(Tok::less, 1);
        continue;
      case '>':
        push(Tok::greater, 1);
        continue;
      case '=':
        push(Tok::equal, 1);
        continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::arrow, 2);
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(ParseError::Kind::unknown_token, line, column,
                     std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", line, column});
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t at = pos_ + ahead;
    return at < tokens_.size() ? tokens_[at] : tokens_.back();
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_ident(std::string_view text) const { return at(Tok::ident) && peek().text == text; }

  Token take() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  Token expect(Tok kind, const char* what) {
    if (!at(kind)) fail(std::string("expected ") + what);
    return take();
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(ParseError::Kind::syntax, t.line, t.column, message + ", found " + found);
  }

  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// First-order formulas

class FoParser {
 public:
  explicit FoParser(std::string_view text) : ts_(tokenize(text, false)) {}

  FoFormula parse() {
    FoFormula f = implication();
    if (!ts_.at(Tok::end)) ts_.fail("expected end of formula");
    return f;
  }

 private:
  struct Bound {
    enum class Kind { none, above, below, between } kind = Kind::none;
    std::string lo;
    std::string hi;
  };

  static bool is_quantifier(const Token& t) {
    return t.kind == Tok::ident && (t.text == "E" || t.text == "A");
  }

  std::string variable() {
    if (!ts_.at(Tok::ident) || is_quantifier(ts_.peek())) ts_.fail("expected a variable");
    return ts_.take().text;
  }

  FoFormula implication() {
    FoFormula lhs = disjunction();
    if (ts_.at(Tok::arrow)) {
      ts_.take();
      return FoFormula::implication(lhs, implication());
    }
    return lhs;
  }

  FoFormula disjunction() {
    FoFormula f = conjunction();
    while (ts_.at(Tok::bar)) {
      ts_.take();
      f = FoFormula::disjunction(f, conjunction());
    }
    return f;
  }

  FoFormula conjunction() {
    FoFormula f = unary();
    while (ts_.at(Tok::amp)) {
      ts_.take();
      f = FoFormula::conjunction(f, unary());
    }
    return f;
  }

  Bound bound() {
    Bound b;
    if (ts_.at(Tok::less)) {
      ts_.take();
      b.kind = Bound::Kind::below;
      b.hi = variable();
    } else if (ts_.at(Tok::greater)) {
      ts_.take();
      b.kind = Bound::Kind::above;
      b.lo = variable();
    } else if (ts_.at_ident("in")) {
      ts_.take();
      ts_.expect(Tok::lparen, "'('");
      b.kind = Bound::Kind::between;
      b.lo = variable();
      ts_.expect(Tok::comma, "','");
      b.hi = variable();
      ts_.expect(Tok::rparen, "')'");
    }
    return b;
  }

  static FoFormula quantify(bool existential, const std::string& var, const Bound& b,
                            const FoFormula& body) {
    std::optional<FoFormula> guard;
    switch (b.kind) {
      case Bound::Kind::none:
        break;
      case Bound::Kind::above:
        guard = FoFormula::less(b.lo, var);
        break;
      case Bound::Kind::below:
        guard = FoFormula::less(var, b.hi);
        break;
      case Bound::Kind::between:
        guard = FoFormula::conjunction(FoFormula::less(b.lo, var), FoFormula::less(var, b.hi));
        break;
    }
    if (existential) {
      return FoFormula::exists(var, guard ? FoFormula::conjunction(*guard, body) : body);
    }
    return FoFormula::forall(var, guard ? FoFormula::implication(*guard, body) : body);
  }

  // Header form '(' Q var bound? ')'. Consumes nothing and returns false if
  // the parenthesis opens an ordinary subformula instead.
  bool try_header(bool& existential, std::string& var, Bound& b) {
    const std::size_t start = ts_.position();
    if (!ts_.at(Tok::lparen) || !is_quantifier(ts_.peek(1)) || ts_.peek(2).kind != Tok::ident) {
      return false;
    }
    ts_.take();
    existential = ts_.take().text == "E";
    var = variable();
    try {
      b = bound();
    } catch (const ParseError&) {
      ts_.rewind(start);
      return false;
    }
    if (!ts_.at(Tok::rparen)) {
      ts_.rewind(start);
      return false;
    }
    ts_.take();
    return true;
  }

  FoFormula unary() {
    if (ts_.at(Tok::bang)) {
      ts_.take();
      return FoFormula::negation(unary());
    }
    if (is_quantifier(ts_.peek())) {
      const bool existential = ts_.take().text == "E";
      const std::string var = variable();
      const Bound b = bound();
      ts_.expect(Tok::dot, "'.' after quantified variable");
      return quantify(existential, var, b, implication());
    }
    bool existential = false;
    std::string var;
    Bound b;
    if (try_header(existential, var, b)) return quantify(existential, var, b, implication());
    return primary();
  }

  FoFormula primary() {
    if (ts_.at(Tok::lparen)) {
      ts_.take();
      FoFormula f = implication();
      ts_.expect(Tok::rparen, "')'");
      return f;
    }
    if (!ts_.at(Tok::ident)) ts_.fail("expected a formula");
    const Token name = ts_.take();
    if (ts_.at(Tok::lparen)) {
      ts_.take();
      const std::string var = variable();
      ts_.expect(Tok::rparen, "')'");
      return FoFormula::predicate(name.text, var);
    }
    if (is_quantifier(name)) ts_.fail("expected a variable after quantifier");
    if (ts_.at(Tok::less)) {
      ts_.take();
      return FoFormula::less(name.text, variable());
    }
    if (ts_.at(Tok::greater)) {
      ts_.take();
      return FoFormula::less(variable(), name.text);
    }
    if (ts_.at(Tok::equal)) {
      ts_.take();
      return FoFormula::equal(name.text, variable());
    }
    ts_.fail("expected '(', '<', '>' or '=' after '" + name.text + "'");
  }

  TokenStream ts_;
};

// ---------------------------------------------------------------------------
// Temporal formulas

class TlParser {
 public:
  explicit TlParser(std::string_view text) : ts_(tokenize(text, true)) {}

  TlFormula parse() {
    TlFormula f = implication();
    if (!ts_.at(Tok::end)) ts_.fail("expected end of formula");
    return f;
  }

 private:
  static bool is_keyword(const std::string& s) {
    return s == "U" || s == "S" || s == "G" || s == "H" || s == "true" || s == "false";
  }

  TlFormula implication() {
    TlFormula lhs = disjunction();
    if (ts_.at(Tok::arrow)) {
      ts_.take();
      return TlFormula::implication(lhs, implication());
    }
    return lhs;
  }

  TlFormula disjunction() {
    TlFormula f = conjunction();
    while (ts_.at(Tok::bar)) {
      ts_.take();
      f = TlFormula::disjunction(f, conjunction());
    }
    return f;
  }

  TlFormula conjunction() {
    TlFormula f = temporal();
    while (ts_.at(Tok::amp)) {
      ts_.take();
      f = TlFormula::conjunction(f, temporal());
    }
    return f;
  }

  TlFormula temporal() {
    TlFormula lhs = unary();
    if (ts_.at_ident("U")) {
      ts_.take();
      return TlFormula::until(lhs, temporal());
    }
    if (ts_.at_ident("S")) {
      ts_.take();
      return TlFormula::since(lhs, temporal());
    }
    return lhs;
  }

  TlFormula unary() {
    if (ts_.at(Tok::bang)) {
      ts_.take();
      return TlFormula::negation(unary());
    }
    if (ts_.at_ident("G")) {
      ts_.take();
      return TlFormula::always(unary());
    }
    if (ts_.at_ident("H")) {
      ts_.take();
      return TlFormula::historically(unary());
    }
    if (ts_.at(Tok::k_plus)) {
      ts_.take();
      return TlFormula::limit_future(unary());
    }
    if (ts_.at(Tok::k_minus)) {
      ts_.take();
      return TlFormula::limit_past(unary());
    }
    return primary();
  }

  TlFormula primary() {
    if (ts_.at(Tok::lparen)) {
      ts_.take();
      TlFormula f = implication();
      ts_.expect(Tok::rparen, "')'");
      return f;
    }
    if (ts_.at_ident("true")) {
      ts_.take();
      return TlFormula::top();
    }
    if (ts_.at_ident("false")) {
      ts_.take();
      return TlFormula::bottom();
    }
    if (ts_.at(Tok::ident) && !is_keyword(ts_.peek().text)) {
      return TlFormula::atom(ts_.take().text);
    }
    ts_.fail("expected a formula");
  }

  TokenStream ts_;
};

}  // namespace

FoFormula parse_fo(std::string_view text) { return FoParser(text).parse(); }

TlFormula parse_tl(std::string_view text) { return TlParser(text).parse(); }

}  // namespace kamp
