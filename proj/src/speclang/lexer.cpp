#include "lexer.hpp"

#include <cctype>
#include <map>

namespace nltl::spec::detail {

namespace {

const std::map<std::string_view, Tok>& keywords() {
  static const std::map<std::string_view, Tok> kw{
      {"INPUT", Tok::KwInput},   {"OUTPUT", Tok::KwOutput},         {"REAL", Tok::KwReal},
      {"PRED", Tok::KwPred},     {"ASSUME", Tok::KwAssume},         {"IN", Tok::KwIn},
      {"ALWAYS", Tok::KwAlways}, {"EVENTUALLY", Tok::KwEventually}, {"NEXT", Tok::KwNext},
      {"UNTIL", Tok::KwUntil},   {"TRUE", Tok::KwTrue},             {"FALSE", Tok::KwFalse},
  };
  return kw;
}

struct Punct {
  std::string_view text;
  Tok kind;
};

// Longest first, so "<->" wins over "<=" and "<", "->" over "-".
constexpr Punct kPunct[] = {
    {"<->", Tok::Iff}, {"->", Tok::Implies}, {"&&", Tok::And},     {"||", Tok::Or},     {":=", Tok::Define},
    {"<=", Tok::LessEq}, {">=", Tok::GreaterEq}, {"(", Tok::LParen}, {")", Tok::RParen}, {"[", Tok::LBracket},
    {"]", Tok::RBracket}, {",", Tok::Comma},  {"!", Tok::Not},      {"+", Tok::Plus},    {"-", Tok::Minus},
    {"*", Tok::Star},     {"/", Tok::Slash},  {"^", Tok::Caret},    {"<", Tok::Less},    {">", Tok::Greater},
    {"=", Tok::Equal},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.line = line_no;
    t.column = i + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      t.text = std::string(line.substr(i, j - i));
      auto kw = keywords().find(t.text);
      t.kind = kw == keywords().end() ? Tok::Ident : kw->second;
      i = j;
    } else if (digit(c) || (c == '.' && i + 1 < line.size() && digit(line[i + 1]))) {
      std::size_t j = i;
      while (j < line.size() && digit(line[j])) ++j;
      if (j < line.size() && line[j] == '.') {
        ++j;
        while (j < line.size() && digit(line[j])) ++j;
      }
      if (j < line.size() && ident_char(line[j]))
        throw SyntaxError(line_no, j + 1, "malformed number '" + std::string(line.substr(i, j + 1 - i)) + "'");
      t.kind = Tok::Number;
      t.text = std::string(line.substr(i, j - i));
      i = j;
    } else {
      bool matched = false;
      for (const auto& p : kPunct) {
        if (line.substr(i, p.text.size()) == p.text) {
          t.kind = p.kind;
          t.text = std::string(p.text);
          i += p.text.size();
          matched = true;
          break;
        }
      }
      if (!matched) throw SyntaxError(line_no, i + 1, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line_no;
  end.column = line.size() + 1;
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of line";
  return "'" + t.text + "'";
}

}  // namespace nltl::spec::detail
