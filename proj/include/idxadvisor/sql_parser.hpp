#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idxadvisor/sql_lexer.hpp"

namespace idxadvisor::sql {

enum class StatementKind { Select, Update, Delete, Insert, Other };

/// Syntactic position a column reference was found in.
enum class ClausePosition { Projection, Where, JoinOn, GroupBy, Having, OrderBy, Set };

std::string_view to_string(StatementKind kind);
std::string_view to_string(ClausePosition position);

struct ColumnRef {
  std::string qualifier;  // canonical; empty when unqualified
  std::string column;     // canonical
  ClausePosition position = ClausePosition::Projection;
};

struct TableRef {
  std::string table;  // canonical base table name; empty for a derived table
  std::string alias;  // canonical; empty when none was given
  bool derived = false;

  /// The name this entry is visible under inside its block.
  const std::string& visible_name() const { return alias.empty() ? table : alias; }
};

/// One SELECT block (or the body of an UPDATE/DELETE). Nested blocks hold
/// derived tables and subqueries; their column references may be correlated
/// with tables of the enclosing blocks.
struct QueryBlock {
  std::vector<TableRef> tables;
  std::vector<ColumnRef> columns;
  std::vector<std::string> output_aliases;
  std::vector<QueryBlock> subqueries;
};

struct ParsedStatement {
  StatementKind kind = StatementKind::Other;
  QueryBlock block;  // empty for INSERT
};

struct CreateIndexStatement {
  std::string name;
  std::string table;
  std::vector<std::string> columns;
  bool unique = false;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : std::runtime_error(message), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Canonical spelling of an identifier token: bare identifiers are
/// lower-cased, quoted ones are lower-cased only when the body is itself a
/// plain identifier.
std::string canonical_identifier(const Token& token);

/// Kind implied by the first keyword; does not validate the rest.
StatementKind classify(const std::vector<Token>& tokens);

/// Parses one statement of the supported SELECT/UPDATE/DELETE/INSERT subset.
/// `tokens` must not contain semicolons and must end with an End token.
/// Throws SyntaxError.
ParsedStatement parse_statement(const std::vector<Token>& tokens);
ParsedStatement parse_statement(std::string_view text);

/// CREATE [UNIQUE] INDEX name ON table (col [ASC|DESC], ...). Throws SyntaxError.
CreateIndexStatement parse_create_index(std::string_view text);

}  // namespace idxadvisor::sql
