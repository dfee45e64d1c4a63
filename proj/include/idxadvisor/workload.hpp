#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idxadvisor/sql_parser.hpp"

namespace idxadvisor {

using sql::ClausePosition;
using sql::StatementKind;

/// One statement of the workload, in file order.
struct WorkloadQuery {
  std::size_t ordinal = 0;
  std::string raw_text;
  StatementKind kind = StatementKind::Other;
  bool flagged = false;    // failed the supported SQL subset
  std::string diagnostic;  // reason when flagged
};

/// A (table, column) attribute: the item of the mining step.
struct AttributeItem {
  std::string table;
  std::string column;

  auto operator<=>(const AttributeItem&) const = default;

  std::string qualified_name() const { return table + "." + column; }
};

struct TransactionContext {
  std::size_t query_ordinal = 0;
  std::set<AttributeItem> items;
  std::vector<std::string> diagnostics;
};

/// Table name -> ordered column list.
class SchemaMap {
 public:
  /// Throws InputError on a duplicate table or a duplicate column.
  void add_table(const std::string& table, std::vector<std::string> columns);

  bool has_table(const std::string& table) const { return tables_.contains(table); }
  bool has_column(const std::string& table, const std::string& column) const;
  const std::vector<std::string>& columns(const std::string& table) const;
  const std::map<std::string, std::vector<std::string>>& tables() const { return tables_; }

 private:
  std::map<std::string, std::vector<std::string>> tables_;
};

/// Parses the schema file format:
///
///   # comment
///   TABLE lineitem
///     l_orderkey
///     l_partkey
///
///   TABLE orders
///     o_orderkey
///
/// A `TABLE <name>` line opens a stanza; each following indented line names
/// one column. Names are canonicalized like SQL identifiers. Throws
/// InputError naming the offending line.
SchemaMap parse_schema(std::string_view text);

/// Which syntactic positions contribute items.
class ExtractionPolicy {
 public:
  ExtractionPolicy() = default;
  explicit ExtractionPolicy(std::set<ClausePosition> positions) : positions_(std::move(positions)) {}

  /// WHERE, JOIN ... ON, GROUP BY, ORDER BY and HAVING.
  static ExtractionPolicy defaults();

  /// Comma-separated list of: where, join, group-by, order-by, having,
  /// projection, set. Throws ConfigError on an unknown or empty list.
  static ExtractionPolicy parse(std::string_view list);

  bool includes(ClausePosition p) const { return positions_.contains(p); }
  const std::set<ClausePosition>& positions() const { return positions_; }

 private:
  std::set<ClausePosition> positions_;
};

/// Splits a workload into statements. Comments and empty statements are
/// skipped; statements outside the supported subset come back as OTHER
/// with `flagged` set. Throws InputError if the text is not valid UTF-8.
std::vector<WorkloadQuery> parse_workload(std::string_view workload_text);

/// Joins statement texts back into a workload file.
std::string serialize_workload(std::span<const WorkloadQuery> queries);

/// Attributes referenced by `query` in the positions selected by `policy`.
/// Aliases resolve through the FROM clause of the enclosing blocks and
/// unqualified columns through `schema`. Unresolvable or ambiguous
/// references are reported in `diagnostics` and skipped. OTHER and INSERT
/// statements yield no items.
TransactionContext extract_items(const WorkloadQuery& query, const SchemaMap& schema,
                                 const ExtractionPolicy& policy);

bool is_valid_utf8(std::string_view text);

}  // namespace idxadvisor
