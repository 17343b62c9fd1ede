#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fqdyn::frontend {

/// Half-open byte range [offset, offset + length) with 1-based line/column
/// of its start.
struct Span {
  std::size_t offset = 0, length = 0;
  std::size_t line = 1, column = 1;
};

/// Syntax or semantic error in user text.  The CLI maps it to exit code 2.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, Span span, std::set<std::string> expected = {});

  const std::string& message() const { return message_; }
  const Span& span() const { return span_; }
  const std::set<std::string>& expected() const { return expected_; }
  /// The offending line of `source` with a caret under the span.
  std::string excerpt(std::string_view source) const;

 private:
  std::string message_;
  Span span_;
  std::set<std::string> expected_;
};

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Equals, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

/// Splits text into tokens; the last token is End.
std::vector<Token> tokenize(std::string_view text);
const char* describe(Tok t);

struct Expr {
  enum class Kind { Int, Var, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Int;
  boost::multiprecision::cpp_int value;  // literal, or the exponent of Pow
  std::string name;                      // Var
  std::vector<Expr> args;
  Span span;
};

/// Structural equality; spans are ignored.
bool same_tree(const Expr& a, const Expr& b);

/// Source text for a tree with the fewest parentheses that reparse to the
/// same tree.
std::string to_source(const Expr& e);

/// Recursive-descent parser over a token stream.  Grammar in docs/grammar.md.
class Parser {
 public:
  explicit Parser(std::string_view text);

  Expr expression();
  bool at(Tok t) const { return toks_[pos_].kind == t; }
  bool at_ident(std::string_view name) const { return at(Tok::Ident) && toks_[pos_].text == name; }
  const Token& peek() const { return toks_[pos_]; }
  const Token& expect(Tok t);
  const Token& expect_ident(std::string_view name);
  std::uint64_t expect_uint();
  /// Throws unless all input was consumed.
  void finish();
  [[noreturn]] void fail(const std::string& what);

 private:
  Expr term();
  Expr unary();
  Expr power();
  Expr primary();
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  Span join(const Span& a, const Span& b) const;

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> expected_;
};

/// Parses a whole string as one expression.
Expr parse_expression(std::string_view text);

}  // namespace fqdyn::frontend
