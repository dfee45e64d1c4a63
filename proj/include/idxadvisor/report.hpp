#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idxadvisor/advisor.hpp"

namespace idxadvisor {

/// Longest generated index name; longer names are cut and get a hash suffix.
inline constexpr std::size_t kMaxIndexNameLength = 60;

struct WorkloadSummary {
  std::size_t total = 0;
  std::map<StatementKind, std::size_t> by_kind;
  std::size_t flagged = 0;
  std::size_t with_items = 0;
};

struct Diagnostic {
  std::optional<std::size_t> ordinal;  // empty for findings not tied to a statement
  std::string message;
};

struct Recommendation {
  IndexConfiguration configuration;
  std::size_t minsup_used = 0;
  std::string minsup_spec;  // as given: "0.25" or "6"
  std::uint64_t threshold_rows = kDefaultLargeTableRows;
  bool maximal_only = true;
  WorkloadSummary workload_summary;
  std::vector<Diagnostic> diagnostics;
};

enum class ReportFormat { Text, Structured };

/// `<prefix>_<table>_<col1>_<col2>...`, with characters outside
/// [A-Za-z0-9_] replaced by '_'. Names over kMaxIndexNameLength keep their
/// first 53 characters followed by '_' and six hex digits of an FNV-1a hash
/// of the full name.
std::string index_name(std::string_view prefix, const std::string& table,
                       const std::vector<std::string>& columns);

/// One CREATE INDEX statement per candidate, in configuration order.
std::string emit_ddl(const IndexConfiguration& configuration, std::string_view naming_prefix);

std::string emit_report(const Recommendation& recommendation, ReportFormat format);

struct ReportedCandidate {
  std::string table;
  std::vector<std::string> columns;
  std::size_t support = 0;

  bool operator==(const ReportedCandidate&) const = default;
};

/// Reads the candidate rows back out of a structured report. Throws
/// InputError on a malformed candidate row.
std::vector<ReportedCandidate> parse_structured_report(std::string_view text);

/// `support<TAB>table.column,table.column,...` per itemset, in the given order.
std::string dump_itemsets(std::span<const mining::ClosedItemset> itemsets,
                          const ItemDictionary& dictionary);

}  // namespace idxadvisor
