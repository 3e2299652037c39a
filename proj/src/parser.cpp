#include <cctype>
#include <charconv>
#include <numbers>
#include <string>

#include "fracdiff/expr.hpp"

namespace fracdiff {
namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
  double number = 0.0;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take()
  {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance()
  {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    const std::size_t start = i_;
    if (i_ >= src_.size()) {
      current_ = {Tok::end, start, {}};
      return;
    }
    const char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number(start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
        ++i_;
      current_ = {Tok::ident, start, src_.substr(start, i_ - start)};
      return;
    }
    ++i_;
    switch (c) {
      case '+': current_ = {Tok::plus, start, "+"}; return;
      case '-': current_ = {Tok::minus, start, "-"}; return;
      case '*':
        if (i_ < src_.size() && src_[i_] == '*')
          throw ParseError(start, "'**' is not an operator (use '^' for powers)");
        current_ = {Tok::star, start, "*"};
        return;
      case '/': current_ = {Tok::slash, start, "/"}; return;
      case '^': current_ = {Tok::caret, start, "^"}; return;
      case '(': current_ = {Tok::lparen, start, "("}; return;
      case ')': current_ = {Tok::rparen, start, ")"}; return;
      default: throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
  }

  // digits [. digits] [(e|E) [+|-] digits]; a trailing 'e' without digits is
  // left for the identifier lexer so that "2*e" style input still works.
  void lex_number(std::size_t start)
  {
    auto digits = [&] {
      std::size_t n = 0;
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (i_ < src_.size() && src_[i_] == '.') {
      ++i_;
      n += digits();
    }
    if (n == 0) throw ParseError(start, "malformed number");
    if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
      if (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
        i_ = j;
        digits();
      }
    }
    const std::string_view text = src_.substr(start, i_ - start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ParseError(start, "malformed number '" + std::string(text) + "'");
    current_ = {Tok::number, start, text, value};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token current_{Tok::end, 0, {}};
};

class Parser {
public:
  explicit Parser(std::string_view src) : lex_(src), size_(src.size()) {}

  Expr parse_all()
  {
    if (lex_.peek().kind == Tok::end) throw ParseError(0, "empty expression");
    Expr e = expr();
    const Token& t = lex_.peek();
    if (t.kind != Tok::end) {
      if (t.kind == Tok::rparen) throw ParseError(t.pos, "unbalanced ')'");
      throw ParseError(t.pos, "unexpected '" + std::string(t.text) + "'");
    }
    return e;
  }

private:
  Expr expr()
  {
    Expr lhs = term();
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      const BinaryOp op = lex_.take().kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
      lhs = Expr::binary(op, lhs, term());
    }
    return lhs;
  }

  Expr term()
  {
    Expr lhs = factor();
    while (lex_.peek().kind == Tok::star || lex_.peek().kind == Tok::slash) {
      const BinaryOp op = lex_.take().kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
      lhs = Expr::binary(op, lhs, factor());
    }
    return lhs;
  }

  Expr factor()
  {
    if (lex_.peek().kind == Tok::minus) {
      lex_.take();
      return Expr::unary(UnaryOp::neg, factor());
    }
    return power();
  }

  Expr power()
  {
    Expr base = atom();
    if (lex_.peek().kind == Tok::caret) {
      lex_.take();
      return Expr::binary(BinaryOp::pow, base, factor());
    }
    return base;
  }

  Expr atom()
  {
    const Token t = lex_.take();
    switch (t.kind) {
      case Tok::number: return Expr::constant(t.number);
      case Tok::lparen: {
        Expr inner = expr();
        expect_rparen(t.pos);
        return inner;
      }
      case Tok::ident: return identifier(t);
      case Tok::end: throw ParseError(size_, "unexpected end of input");
      default: throw ParseError(t.pos, "unexpected '" + std::string(t.text) + "'");
    }
  }

  Expr identifier(const Token& t)
  {
    if (t.text == "t") return Expr::variable();
    if (t.text == "pi") return Expr::constant(std::numbers::pi);
    if (t.text == "e") return Expr::constant(std::numbers::e);

    UnaryOp op;
    if (t.text == "sin") op = UnaryOp::sin;
    else if (t.text == "cos") op = UnaryOp::cos;
    else if (t.text == "exp") op = UnaryOp::exp;
    else if (t.text == "ln") op = UnaryOp::ln;
    else if (t.text == "sqrt") op = UnaryOp::sqrt;
    else if (t.text == "abs") op = UnaryOp::abs;
    else throw ParseError(t.pos, "unknown identifier '" + std::string(t.text) + "'");

    const Token open = lex_.take();
    if (open.kind != Tok::lparen)
      throw ParseError(open.pos, "expected '(' after function '" + std::string(t.text) + "'");
    Expr arg = expr();
    expect_rparen(open.pos);
    return Expr::unary(op, arg);
  }

  void expect_rparen(std::size_t open_pos)
  {
    const Token t = lex_.take();
    if (t.kind == Tok::rparen) return;
    if (t.kind == Tok::end)
      throw ParseError(size_, "unbalanced '(' opened at offset " + std::to_string(open_pos));
    throw ParseError(t.pos, "expected ')' but found '" + std::string(t.text) + "'");
  }

  Lexer lex_;
  std::size_t size_;
};

} // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

} // namespace fracdiff
