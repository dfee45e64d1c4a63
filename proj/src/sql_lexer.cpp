#include "idxadvisor/sql_lexer.hpp"

#include <cctype>

namespace idxadvisor::sql {

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_part(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (failed_) {
        out.push_back(error_token_);
        break;
      }
      if (pos_ >= src_.size()) break;
      out.push_back(next());
      if (out.back().kind == TokenKind::Error) break;
    }
    Token end;
    end.kind = TokenKind::End;
    end.begin = end.end = src_.size();
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '-' && peek(1) == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '/' && peek(1) == '*') {
        std::size_t start = pos_;
        auto close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
          fail(start, "unterminated block comment");
          return;
        }
        pos_ = close + 2;
      } else {
        return;
      }
    }
  }

  void fail(std::size_t start, std::string message) {
    failed_ = true;
    error_token_.kind = TokenKind::Error;
    error_token_.text = std::move(message);
    error_token_.begin = start;
    error_token_.end = src_.size();
    pos_ = src_.size();
  }

  Token make(TokenKind kind, std::size_t start, std::string text) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.begin = start;
    t.end = pos_;
    return t;
  }

  Token quoted(char close, TokenKind kind, const char* what) {
    std::size_t start = pos_++;
    std::string body;
    while (pos_ < src_.size()) {
      char c = src_[pos_++];
      if (c == close) {
        if (peek() == close && close != ']') {  // doubled quote escapes itself
          body.push_back(c);
          ++pos_;
          continue;
        }
        return make(kind, start, std::move(body));
      }
      body.push_back(c);
    }
    fail(start, std::string("unterminated ") + what);
    return error_token_;
  }

  Token next() {
    std::size_t start = pos_;
    unsigned char c = static_cast<unsigned char>(src_[pos_]);
    if (c == ';') {
      ++pos_;
      return make(TokenKind::Semicolon, start, ";");
    }
    if (c == '\'') return quoted('\'', TokenKind::String, "string literal");
    if (c == '"') return quoted('"', TokenKind::QuotedIdentifier, "quoted identifier");
    if (c == '`') return quoted('`', TokenKind::QuotedIdentifier, "quoted identifier");
    if (c == '[') return quoted(']', TokenKind::QuotedIdentifier, "quoted identifier");
    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return make(TokenKind::Identifier, start, std::string(src_.substr(start, pos_ - start)));
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (peek() == '.') {
        ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(peek(1))) ||
           ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
        pos_ += 2;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
      return make(TokenKind::Number, start, std::string(src_.substr(start, pos_ - start)));
    }
    static constexpr std::string_view two_char[] = {"<=", ">=", "<>", "!=", "||", "::"};
    for (auto op : two_char) {
      if (src_.substr(pos_, 2) == op) {
        pos_ += 2;
        return make(TokenKind::Symbol, start, std::string(op));
      }
    }
    ++pos_;
    return make(TokenKind::Symbol, start, std::string(1, static_cast<char>(c)));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  bool failed_ = false;
  Token error_token_;
};

}  // namespace

bool Token::is_keyword(std::string_view upper) const {
  if (kind != TokenKind::Identifier || text.size() != upper.size()) return false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(text[i])) != upper[i]) return false;
  }
  return true;
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_plain_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace idxadvisor::sql
