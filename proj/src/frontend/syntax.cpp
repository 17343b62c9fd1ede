#include "fqdyn/frontend/syntax.hpp"

#include <cctype>

namespace fqdyn::frontend {

namespace {

std::string format_error(const std::string& msg, const Span& s, const std::set<std::string>& expected) {
  std::string out = std::to_string(s.line) + ":" + std::to_string(s.column) + ": " + msg;
  if (!expected.empty()) {
    out += " (expected ";
    std::size_t i = 0;
    for (const auto& e : expected) {
      if (i++) out += i == expected.size() ? " or " : ", ";
      out += e;
    }
    out += ")";
  }
  return out;
}

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string wrap_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

}  // namespace

ParseError::ParseError(std::string message, Span span, std::set<std::string> expected)
    : std::runtime_error(format_error(message, span, expected)),
      message_(std::move(message)),
      span_(span),
      expected_(std::move(expected)) {}

std::string ParseError::excerpt(std::string_view source) const {
  std::size_t start = span_.offset;
  while (start > 0 && source[start - 1] != '\n') --start;
  std::size_t end = span_.offset;
  while (end < source.size() && source[end] != '\n') ++end;
  std::string out(source.substr(start, end - start));
  out += '\n';
  out += std::string(span_.offset - start, ' ');
  out += std::string(std::max<std::size_t>(1, std::min(span_.length, end - span_.offset)), '^');
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Int:
      return "integer";
    case Tok::Ident:
      return "identifier";
    case Tok::Plus:
      return "'+'";
    case Tok::Minus:
      return "'-'";
    case Tok::Star:
      return "'*'";
    case Tok::Slash:
      return "'/'";
    case Tok::Caret:
      return "'^'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::LBracket:
      return "'['";
    case Tok::RBracket:
      return "']'";
    case Tok::Equals:
      return "'='";
    case Tok::Comma:
      return "','";
    case Tok::End:
      return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto span_at = [&](std::size_t off, std::size_t len) { return Span{off, len, line, col}; };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    std::size_t len = 1;
    Tok kind;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + len < text.size() && std::isdigit(static_cast<unsigned char>(text[i + len]))) ++len;
      kind = Tok::Int;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + len])) || text[i + len] == '_'))
        ++len;
      kind = Tok::Ident;
    } else {
      switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case '=': kind = Tok::Equals; break;
        case ',': kind = Tok::Comma; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", span_at(i, 1));
      }
    }
    out.push_back({kind, std::string(text.substr(i, len)), span_at(i, len)});
    i += len;
    col += len;
  }
  out.push_back({Tok::End, "", span_at(i, 0)});
  return out;
}

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(a.args[i], b.args[i])) return false;
  return true;
}

std::string to_source(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Int:
      return e.value.str();
    case K::Var:
      return e.name;
    case K::Neg:
      return "-" + wrap_if(precedence(e.args[0].kind) < precedence(K::Neg), to_source(e.args[0]));
    case K::Pow:
      return wrap_if(precedence(e.args[0].kind) <= precedence(K::Pow), to_source(e.args[0])) + "^" + e.value.str();
    default:
      break;
  }
  const int p = precedence(e.kind);
  const char* op = e.kind == K::Add ? "+" : e.kind == K::Sub ? "-" : e.kind == K::Mul ? "*" : "/";
  // Left-associative: the right operand needs parentheses at equal precedence.
  return wrap_if(precedence(e.args[0].kind) < p, to_source(e.args[0])) + op +
         wrap_if(precedence(e.args[1].kind) <= p, to_source(e.args[1]));
}

Parser::Parser(std::string_view text) : toks_(tokenize(text)) {}

const Token& Parser::expect(Tok t) {
  if (!at(t)) {
    expected_.insert(describe(t));
    fail(std::string("unexpected ") + (peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'"));
  }
  expected_.clear();
  return advance();
}

const Token& Parser::expect_ident(std::string_view name) {
  if (!at_ident(name)) {
    expected_.insert("'" + std::string(name) + "'");
    fail(std::string("unexpected ") + (peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'"));
  }
  expected_.clear();
  return advance();
}

std::uint64_t Parser::expect_uint() {
  const Token& tok = expect(Tok::Int);
  if (tok.text.size() > 18) throw ParseError("integer too large", tok.span);
  return std::stoull(tok.text);
}

void Parser::finish() {
  if (!at(Tok::End)) {
    expected_.insert(describe(Tok::End));
    fail("unexpected '" + peek().text + "'");
  }
}

void Parser::fail(const std::string& what) {
  auto expected = std::move(expected_);
  expected_.clear();
  throw ParseError(what, peek().span, std::move(expected));
}

Span Parser::join(const Span& a, const Span& b) const {
  Span s = a;
  s.length = b.offset + b.length - a.offset;
  return s;
}

Expr Parser::expression() {
  Expr lhs = term();
  while (true) {
    Expr::Kind k;
    if (at(Tok::Plus)) {
      k = Expr::Kind::Add;
    } else if (at(Tok::Minus)) {
      k = Expr::Kind::Sub;
    } else {
      expected_.insert(describe(Tok::Plus));
      expected_.insert(describe(Tok::Minus));
      return lhs;
    }
    advance();
    expected_.clear();
    Expr rhs = term();
    Expr e;
    e.kind = k;
    e.span = join(lhs.span, rhs.span);
    e.args = {std::move(lhs), std::move(rhs)};
    lhs = std::move(e);
  }
}

Expr Parser::term() {
  Expr lhs = unary();
  while (true) {
    Expr::Kind k;
    if (at(Tok::Star)) {
      k = Expr::Kind::Mul;
    } else if (at(Tok::Slash)) {
      k = Expr::Kind::Div;
    } else {
      expected_.insert(describe(Tok::Star));
      expected_.insert(describe(Tok::Slash));
      return lhs;
    }
    advance();
    expected_.clear();
    Expr rhs = unary();
    Expr e;
    e.kind = k;
    e.span = join(lhs.span, rhs.span);
    e.args = {std::move(lhs), std::move(rhs)};
    lhs = std::move(e);
  }
}

Expr Parser::unary() {
  if (at(Tok::Minus)) {
    const Span start = advance().span;
    expected_.clear();
    Expr inner = unary();
    Expr e;
    e.kind = Expr::Kind::Neg;
    e.span = join(start, inner.span);
    e.args = {std::move(inner)};
    return e;
  }
  expected_.insert(describe(Tok::Minus));
  return power();
}

Expr Parser::power() {
  Expr base = primary();
  if (!at(Tok::Caret)) {
    expected_.insert(describe(Tok::Caret));
    return base;
  }
  advance();
  expected_.clear();
  const Token& ex = expect(Tok::Int);
  Expr e;
  e.kind = Expr::Kind::Pow;
  e.value = boost::multiprecision::cpp_int(ex.text);
  e.span = join(base.span, ex.span);
  e.args = {std::move(base)};
  return e;
}

Expr Parser::primary() {
  Expr e;
  if (at(Tok::Int)) {
    const Token& tok = advance();
    expected_.clear();
    e.kind = Expr::Kind::Int;
    e.value = boost::multiprecision::cpp_int(tok.text);
    e.span = tok.span;
    return e;
  }
  if (at(Tok::Ident)) {
    const Token& tok = advance();
    expected_.clear();
    e.kind = Expr::Kind::Var;
    e.name = tok.text;
    e.span = tok.span;
    return e;
  }
  if (at(Tok::LParen)) {
    const Span open = advance().span;
    expected_.clear();
    Expr inner = expression();
    if (!at(Tok::RParen)) {
      expected_.insert(describe(Tok::RParen));
      auto expected = std::move(expected_);
      expected_.clear();
      throw ParseError("unmatched '('", at(Tok::End) ? open : peek().span, std::move(expected));
    }
    inner.span = join(open, advance().span);
    expected_.clear();
    return inner;
  }
  expected_.insert(describe(Tok::Int));
  expected_.insert(describe(Tok::Ident));
  expected_.insert(describe(Tok::LParen));
  fail(at(Tok::End) ? "unexpected end of input" : "unexpected '" + peek().text + "'");
}

Expr parse_expression(std::string_view text) {
  Parser p(text);
  Expr e = p.expression();
  p.finish();
  return e;
}

}  // namespace fqdyn::frontend
