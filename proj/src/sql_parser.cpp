#include "idxadvisor/sql_parser.hpp"

#include <array>
#include <utility>

namespace idxadvisor::sql {

std::string_view to_string(StatementKind kind) {
  switch (kind) {
    case StatementKind::Select: return "SELECT";
    case StatementKind::Update: return "UPDATE";
    case StatementKind::Delete: return "DELETE";
    case StatementKind::Insert: return "INSERT";
    case StatementKind::Other: return "OTHER";
  }
  return "OTHER";
}

std::string_view to_string(ClausePosition position) {
  switch (position) {
    case ClausePosition::Projection: return "projection";
    case ClausePosition::Where: return "where";
    case ClausePosition::JoinOn: return "join";
    case ClausePosition::GroupBy: return "group-by";
    case ClausePosition::Having: return "having";
    case ClausePosition::OrderBy: return "order-by";
    case ClausePosition::Set: return "set";
  }
  return "projection";
}

std::string canonical_identifier(const Token& token) {
  if (token.kind == TokenKind::QuotedIdentifier && !is_plain_identifier(token.text)) {
    return token.text;
  }
  return to_lower(token.text);
}

StatementKind classify(const std::vector<Token>& tokens) {
  if (tokens.empty()) return StatementKind::Other;
  const Token& first = tokens.front();
  if (first.is_keyword("SELECT")) return StatementKind::Select;
  if (first.is_keyword("UPDATE")) return StatementKind::Update;
  if (first.is_keyword("DELETE")) return StatementKind::Delete;
  if (first.is_keyword("INSERT")) return StatementKind::Insert;
  return StatementKind::Other;
}

namespace {

// Words that end a table reference or expression and so can never be an alias.
constexpr std::array kReserved = {
    "SELECT", "FROM",  "WHERE", "GROUP",  "BY",     "HAVING", "ORDER",     "LIMIT", "OFFSET",
    "JOIN",   "INNER", "LEFT",  "RIGHT",  "FULL",   "OUTER",  "CROSS",     "ON",    "USING",
    "UNION",  "EXCEPT", "INTERSECT", "AND", "OR",   "NOT",    "SET",       "VALUES", "AS",
    "WHEN",   "THEN",  "ELSE",  "END",    "ASC",    "DESC",   "BETWEEN",   "IN",    "LIKE",
    "IS",     "NULL",  "CASE",  "EXISTS", "INTO",   "ESCAPE", "NULLS",     "FETCH", "FOR",
};

bool is_reserved(const Token& t) {
  for (const char* word : kReserved) {
    if (t.is_keyword(word)) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  ParsedStatement statement() {
    ParsedStatement out;
    out.kind = classify(tokens_);
    switch (out.kind) {
      case StatementKind::Select: out.block = select_statement(); break;
      case StatementKind::Update: out.block = update_statement(); break;
      case StatementKind::Delete: out.block = delete_statement(); break;
      case StatementKind::Insert: insert_statement(); break;
      case StatementKind::Other:
        if (peek().kind == TokenKind::Error) fail(peek().text);
        fail("unsupported statement");
    }
    expect_end();
    return out;
  }

  CreateIndexStatement create_index() {
    CreateIndexStatement out;
    expect_keyword("CREATE");
    out.unique = accept_keyword("UNIQUE");
    expect_keyword("INDEX");
    out.name = identifier("index name");
    expect_keyword("ON");
    out.table = qualified_table_name();
    expect_symbol("(");
    do {
      out.columns.push_back(identifier("column name"));
      if (!accept_keyword("ASC")) accept_keyword("DESC");
    } while (accept_symbol(","));
    expect_symbol(")");
    expect_end();
    return out;
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool accept_keyword(std::string_view kw) {
    if (!peek().is_keyword(kw)) return false;
    advance();
    return true;
  }
  bool accept_symbol(std::string_view s) {
    if (!peek().is_symbol(s)) return false;
    advance();
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail("expected " + std::string(kw));
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail("expected '" + std::string(s) + "'");
  }
  void expect_end() {
    if (peek().kind != TokenKind::End) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string where = t.kind == TokenKind::End ? "end of statement" : "'" + t.text + "'";
    if (t.kind == TokenKind::Error) throw SyntaxError(t.text, t.begin);
    throw SyntaxError(message + " near " + where, t.begin);
  }

  bool is_name(const Token& t) const {
    return (t.kind == TokenKind::Identifier && !is_reserved(t)) ||
           t.kind == TokenKind::QuotedIdentifier;
  }

  std::string identifier(const char* what) {
    if (!is_name(peek())) fail(std::string("expected ") + what);
    return canonical_identifier(advance());
  }

  // schema.table collapses to table.
  std::string qualified_table_name() {
    std::string name = identifier("table name");
    while (peek().is_symbol(".") && is_name(peek(1))) {
      advance();
      name = canonical_identifier(advance());
    }
    return name;
  }

  std::string optional_alias() {
    if (accept_keyword("AS")) return identifier("alias");
    if (is_name(peek())) return canonical_identifier(advance());
    return {};
  }

  void add_column(std::string qualifier, std::string column) {
    block_->columns.push_back({std::move(qualifier), std::move(column), position_});
  }

  // -- statements -----------------------------------------------------------

  QueryBlock select_statement() {
    QueryBlock block;
    QueryBlock* saved = block_;
    block_ = &block;
    select_body();
    block_ = saved;
    return block;
  }

  // Parses a SELECT into *block_, including the set-operation tail.
  void select_body() {
    select_core();
    while (peek().is_keyword("UNION") || peek().is_keyword("EXCEPT") ||
           peek().is_keyword("INTERSECT")) {
      advance();
      if (!accept_keyword("ALL")) accept_keyword("DISTINCT");
      // Each further operand is an independent block nested under this one.
      block_->subqueries.push_back(select_statement_core_only());
    }
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      with_position(ClausePosition::OrderBy, [&] {
        do {
          if (peek().kind == TokenKind::Number) {
            advance();  // ordinal reference
          } else {
            expression();
          }
          if (!accept_keyword("ASC")) accept_keyword("DESC");
          if (accept_keyword("NULLS")) {
            if (!accept_keyword("FIRST")) expect_keyword("LAST");
          }
        } while (accept_symbol(","));
      });
    }
    if (accept_keyword("LIMIT")) {
      number();
      if (accept_keyword("OFFSET") || accept_symbol(",")) number();
    }
  }

  QueryBlock select_statement_core_only() {
    QueryBlock block;
    QueryBlock* saved = block_;
    block_ = &block;
    select_core();
    block_ = saved;
    return block;
  }

  void number() {
    if (peek().kind != TokenKind::Number) fail("expected number");
    advance();
  }

  void select_core() {
    expect_keyword("SELECT");
    if (!accept_keyword("DISTINCT")) accept_keyword("ALL");
    if (accept_keyword("TOP")) number();
    with_position(ClausePosition::Projection, [&] {
      do {
        select_item();
      } while (accept_symbol(","));
    });
    if (accept_keyword("FROM")) from_clause();
    if (accept_keyword("WHERE")) {
      with_position(ClausePosition::Where, [&] { expression(); });
    }
    if (accept_keyword("GROUP")) {
      expect_keyword("BY");
      with_position(ClausePosition::GroupBy, [&] {
        do {
          if (peek().kind == TokenKind::Number) {
            advance();
          } else {
            expression();
          }
        } while (accept_symbol(","));
      });
    }
    if (accept_keyword("HAVING")) {
      with_position(ClausePosition::Having, [&] { expression(); });
    }
  }

  void select_item() {
    if (accept_symbol("*")) return;
    if (is_name(peek()) && peek(1).is_symbol(".") && peek(2).is_symbol("*")) {
      pos_ += 3;
      return;
    }
    expression();
    std::string alias = optional_alias();
    if (!alias.empty()) block_->output_aliases.push_back(std::move(alias));
  }

  void from_clause() {
    table_primary();
    while (true) {
      if (accept_symbol(",")) {
        table_primary();
        continue;
      }
      bool join = false;
      bool needs_on = true;
      if (accept_keyword("JOIN")) {
        join = true;
      } else if (accept_keyword("INNER")) {
        expect_keyword("JOIN");
        join = true;
      } else if (accept_keyword("LEFT") || accept_keyword("RIGHT") || accept_keyword("FULL")) {
        accept_keyword("OUTER");
        expect_keyword("JOIN");
        join = true;
      } else if (accept_keyword("CROSS")) {
        expect_keyword("JOIN");
        join = true;
        needs_on = false;
      }
      if (!join) break;
      table_primary();
      if (needs_on) {
        expect_keyword("ON");
        with_position(ClausePosition::JoinOn, [&] { expression(); });
      }
    }
  }

  void table_primary() {
    if (accept_symbol("(")) {
      if (!peek().is_keyword("SELECT")) fail("expected subquery");
      QueryBlock derived = subquery_block();
      expect_symbol(")");
      TableRef ref;
      ref.derived = true;
      ref.alias = optional_alias();
      if (ref.alias.empty()) fail("derived table requires an alias");
      block_->subqueries.push_back(std::move(derived));
      block_->tables.push_back(std::move(ref));
      return;
    }
    TableRef ref;
    ref.table = qualified_table_name();
    ref.alias = optional_alias();
    block_->tables.push_back(std::move(ref));
  }

  QueryBlock subquery_block() {
    QueryBlock block;
    QueryBlock* saved = block_;
    ClausePosition saved_position = position_;
    block_ = &block;
    select_body();
    block_ = saved;
    position_ = saved_position;
    return block;
  }

  QueryBlock update_statement() {
    QueryBlock block;
    block_ = &block;
    expect_keyword("UPDATE");
    TableRef target;
    target.table = qualified_table_name();
    if (!peek().is_keyword("SET")) target.alias = optional_alias();
    block.tables.push_back(target);
    expect_keyword("SET");
    with_position(ClausePosition::Set, [&] {
      do {
        column_reference_or_fail();
        expect_symbol("=");
        expression();
      } while (accept_symbol(","));
    });
    if (accept_keyword("WHERE")) {
      with_position(ClausePosition::Where, [&] { expression(); });
    }
    block_ = nullptr;
    return block;
  }

  QueryBlock delete_statement() {
    QueryBlock block;
    block_ = &block;
    expect_keyword("DELETE");
    expect_keyword("FROM");
    TableRef target;
    target.table = qualified_table_name();
    if (!peek().is_keyword("WHERE")) target.alias = optional_alias();
    block.tables.push_back(target);
    if (accept_keyword("WHERE")) {
      with_position(ClausePosition::Where, [&] { expression(); });
    }
    block_ = nullptr;
    return block;
  }

  // INSERT yields no items; only the target is validated.
  void insert_statement() {
    expect_keyword("INSERT");
    expect_keyword("INTO");
    qualified_table_name();
    while (peek().kind != TokenKind::End) {
      if (peek().kind == TokenKind::Error) fail(peek().text);
      advance();
    }
  }

  void column_reference_or_fail() {
    if (!is_name(peek())) fail("expected column name");
    std::string first = canonical_identifier(advance());
    if (accept_symbol(".")) {
      add_column(std::move(first), identifier("column name"));
    } else {
      add_column({}, std::move(first));
    }
  }

  template <typename F>
  void with_position(ClausePosition p, F&& body) {
    ClausePosition saved = position_;
    position_ = p;
    body();
    position_ = saved;
  }

  // -- expressions ----------------------------------------------------------

  void expression() {
    and_expression();
    while (accept_keyword("OR")) and_expression();
  }

  void and_expression() {
    not_expression();
    while (accept_keyword("AND")) not_expression();
  }

  void not_expression() {
    if (accept_keyword("NOT")) {
      not_expression();
      return;
    }
    predicate();
  }

  void predicate() {
    additive();
    while (true) {
      const Token& t = peek();
      if (t.kind == TokenKind::Symbol &&
          (t.text == "=" || t.text == "<" || t.text == ">" || t.text == "<=" || t.text == ">=" ||
           t.text == "<>" || t.text == "!=")) {
        advance();
        if ((accept_keyword("ANY") || accept_keyword("ALL") || accept_keyword("SOME"))) {
          expect_symbol("(");
          block_->subqueries.push_back(subquery_block());
          expect_symbol(")");
        } else {
          additive();
        }
        continue;
      }
      bool negated = false;
      if (t.is_keyword("NOT") &&
          (peek(1).is_keyword("BETWEEN") || peek(1).is_keyword("IN") || peek(1).is_keyword("LIKE"))) {
        advance();
        negated = true;
      }
      if (accept_keyword("BETWEEN")) {
        additive();
        expect_keyword("AND");
        additive();
        continue;
      }
      if (accept_keyword("IN")) {
        expect_symbol("(");
        if (peek().is_keyword("SELECT")) {
          block_->subqueries.push_back(subquery_block());
        } else {
          do {
            expression();
          } while (accept_symbol(","));
        }
        expect_symbol(")");
        continue;
      }
      if (accept_keyword("LIKE")) {
        additive();
        if (accept_keyword("ESCAPE")) additive();
        continue;
      }
      if (negated) fail("expected BETWEEN, IN or LIKE");
      if (accept_keyword("IS")) {
        accept_keyword("NOT");
        if (!accept_keyword("NULL") && !accept_keyword("TRUE")) expect_keyword("FALSE");
        continue;
      }
      break;
    }
  }

  void additive() {
    multiplicative();
    while (peek().is_symbol("+") || peek().is_symbol("-") || peek().is_symbol("||")) {
      advance();
      multiplicative();
    }
  }

  void multiplicative() {
    unary();
    while (peek().is_symbol("*") || peek().is_symbol("/") || peek().is_symbol("%")) {
      advance();
      unary();
    }
  }

  void unary() {
    if (accept_symbol("-") || accept_symbol("+")) {
      unary();
      return;
    }
    primary();
    while (accept_symbol("::")) type_name();
  }

  void type_name() {
    identifier("type name");
    while (is_name(peek())) advance();  // e.g. DOUBLE PRECISION
    if (accept_symbol("(")) {
      number();
      if (accept_symbol(",")) number();
      expect_symbol(")");
    }
  }

  void primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number:
      case TokenKind::String:
        advance();
        return;
      case TokenKind::Error:
        fail(t.text);
      case TokenKind::End:
      case TokenKind::Semicolon:
        fail("expected expression");
      default:
        break;
    }
    if (accept_symbol("(")) {
      if (peek().is_keyword("SELECT")) {
        block_->subqueries.push_back(subquery_block());
      } else {
        do {
          expression();
        } while (accept_symbol(","));
      }
      expect_symbol(")");
      return;
    }
    if (t.kind == TokenKind::Symbol) fail("expected expression");
    if (accept_keyword("NULL") || accept_keyword("TRUE") || accept_keyword("FALSE")) return;
    if (accept_keyword("EXISTS")) {
      expect_symbol("(");
      block_->subqueries.push_back(subquery_block());
      expect_symbol(")");
      return;
    }
    if (accept_keyword("CASE")) {
      case_expression();
      return;
    }
    if (t.kind == TokenKind::Identifier && peek(1).kind == TokenKind::String &&
        (t.is_keyword("DATE") || t.is_keyword("TIME") || t.is_keyword("TIMESTAMP"))) {
      pos_ += 2;
      return;
    }
    if (t.is_keyword("INTERVAL") && peek(1).kind == TokenKind::String) {
      pos_ += 2;
      interval_unit();
      return;
    }
    if (!is_name(t)) fail("expected expression");
    if (peek(1).is_symbol("(")) {
      function_call();
      return;
    }
    column_reference_or_fail();
  }

  void interval_unit() {
    static constexpr std::array units = {"YEAR", "MONTH", "DAY", "HOUR", "MINUTE", "SECOND"};
    for (const char* unit : units) {
      if (accept_keyword(unit)) {
        if (peek().is_symbol("(") && peek(1).kind == TokenKind::Number && peek(2).is_symbol(")")) {
          pos_ += 3;
        }
        return;
      }
    }
  }

  void case_expression() {
    if (!peek().is_keyword("WHEN")) expression();
    if (!peek().is_keyword("WHEN")) fail("expected WHEN");
    while (accept_keyword("WHEN")) {
      expression();
      expect_keyword("THEN");
      expression();
    }
    if (accept_keyword("ELSE")) expression();
    expect_keyword("END");
  }

  // Arguments may be separated by the keywords that EXTRACT, SUBSTRING,
  // TRIM, POSITION and CAST use in place of commas.
  void function_call() {
    const Token& name = advance();
    expect_symbol("(");
    if (accept_symbol(")")) return;
    if (name.is_keyword("EXTRACT")) {
      advance();  // date part keyword
      expect_keyword("FROM");
      expression();
      expect_symbol(")");
      return;
    }
    if (name.is_keyword("CAST")) {
      expression();
      expect_keyword("AS");
      type_name();
      expect_symbol(")");
      return;
    }
    if (accept_symbol("*")) {
      expect_symbol(")");
      return;
    }
    if (!accept_keyword("DISTINCT")) accept_keyword("ALL");
    while (true) {
      expression();
      if (accept_symbol(",") || accept_keyword("FROM") || accept_keyword("FOR") ||
          accept_keyword("IN")) {
        continue;
      }
      break;
    }
    expect_symbol(")");
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  QueryBlock* block_ = nullptr;
  ClausePosition position_ = ClausePosition::Projection;
};

std::vector<Token> checked_tokens(std::string_view text) {
  auto tokens = tokenize(text);
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::Semicolon) {
      throw SyntaxError("unexpected ';' inside statement", t.begin);
    }
  }
  return tokens;
}

}  // namespace

ParsedStatement parse_statement(const std::vector<Token>& tokens) {
  if (tokens.empty() || tokens.back().kind != TokenKind::End) {
    throw SyntaxError("token stream must end with End", 0);
  }
  return Parser(tokens).statement();
}

ParsedStatement parse_statement(std::string_view text) {
  return parse_statement(checked_tokens(text));
}

CreateIndexStatement parse_create_index(std::string_view text) {
  auto tokens = checked_tokens(text);
  return Parser(tokens).create_index();
}

}  // namespace idxadvisor::sql
