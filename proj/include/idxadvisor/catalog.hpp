#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace idxadvisor {

/// Row width assumed when the stats file omits it.
inline constexpr std::uint64_t kDefaultAvgRowBytes = 100;

/// Row count at or above which a table counts as large.
inline constexpr std::uint64_t kDefaultLargeTableRows = 100000;

struct TableStats {
  std::string table;
  std::uint64_t row_count = 0;
  std::uint64_t avg_row_bytes = kDefaultAvgRowBytes;

  std::uint64_t table_bytes() const { return row_count * avg_row_bytes; }
  bool operator==(const TableStats&) const = default;
};

class CatalogSnapshot {
 public:
  CatalogSnapshot() = default;
  explicit CatalogSnapshot(std::string captured_at) : captured_at_(std::move(captured_at)) {}

  /// Throws InputError on a duplicate table.
  void add(TableStats stats);

  bool contains(const std::string& table) const { return stats_.contains(table); }
  /// Throws MissingStatsError for an unknown table.
  const TableStats& at(const std::string& table) const;

  const std::map<std::string, TableStats>& stats() const { return stats_; }
  const std::string& captured_at() const { return captured_at_; }
  bool empty() const { return stats_.empty(); }

  bool operator==(const CatalogSnapshot&) const = default;

 private:
  std::map<std::string, TableStats> stats_;
  std::string captured_at_;
};

/// Parses the stats format, one table per line:
///
///   # captured_at 2003-06-01T00:00:00
///   lineitem<TAB>6000000<TAB>120
///   region<TAB>5
///
/// Fields may be separated by tabs or spaces. `#` lines are comments; a
/// `# captured_at <timestamp>` comment sets the snapshot timestamp. Table
/// names are canonicalized like SQL identifiers. Throws InputError naming the
/// line on malformed input, duplicates, negative counts or a zero row width.
CatalogSnapshot load_stats(std::string_view stats_text);

/// Inverse of load_stats.
std::string serialize_stats(const CatalogSnapshot& snapshot);

/// row_count(table) >= threshold_rows. Throws MissingStatsError when the
/// table has no entry.
bool is_large(const std::string& table, const CatalogSnapshot& snapshot, std::uint64_t threshold_rows);

}  // namespace idxadvisor
