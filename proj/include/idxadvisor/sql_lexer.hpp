#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace idxadvisor::sql {

enum class TokenKind {
  Identifier,        // bare word; keywords are identifiers matched case-insensitively
  QuotedIdentifier,  // "x", `x` or [x]; text holds the unquoted body
  String,            // '...'; text holds the unescaped body
  Number,
  Symbol,            // punctuation and operators, text holds the spelling
  Semicolon,
  Error,             // unterminated string, quoted identifier or comment
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t begin = 0;  // byte offsets into the lexed source
  std::size_t end = 0;

  bool is_keyword(std::string_view upper) const;
  bool is_symbol(std::string_view spelling) const {
    return kind == TokenKind::Symbol && text == spelling;
  }
};

/// Splits the source into tokens. Comments and whitespace are dropped. The
/// returned vector always ends with an End token.
std::vector<Token> tokenize(std::string_view source);

/// ASCII lower-casing; identifiers in this tool are compared in lower case.
std::string to_lower(std::string_view s);

/// True for [A-Za-z_][A-Za-z0-9_]*.
bool is_plain_identifier(std::string_view s);

}  // namespace idxadvisor::sql
