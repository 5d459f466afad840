#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nltl::spec::detail {

enum class Tok {
  Ident,
  Number,
  // keywords
  KwInput, KwOutput, KwReal, KwPred, KwAssume, KwIn,
  KwAlways, KwEventually, KwNext, KwUntil, KwTrue, KwFalse,
  // punctuation
  LParen, RParen, LBracket, RBracket, Comma, Define,
  Not, And, Or, Implies, Iff,
  Plus, Minus, Star, Slash, Caret,
  Less, LessEq, Greater, GreaterEq, Equal,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Thrown for the first problem on a line; the parser turns it into a
/// Diagnostic and moves on to the next line.
struct SyntaxError : std::runtime_error {
  SyntaxError(std::size_t l, std::size_t c, const std::string& msg) : std::runtime_error(msg), line(l), column(c) {}
  std::size_t line;
  std::size_t column;
};

/// Tokenizes one line (comment already stripped). The result always ends
/// with an End token positioned just past the last character.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no);

/// Human-readable token description for diagnostics.
std::string describe(const Token& t);

}  // namespace nltl::spec::detail
