#include "idxadvisor/catalog.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "idxadvisor/errors.hpp"
#include "idxadvisor/sql_parser.hpp"
#include "idxadvisor/workload.hpp"

namespace idxadvisor {

void CatalogSnapshot::add(TableStats stats) {
  std::string key = stats.table;
  if (!stats_.emplace(key, std::move(stats)).second) {
    throw InputError("duplicate statistics for table '" + key + "'");
  }
}

const TableStats& CatalogSnapshot::at(const std::string& table) const {
  auto it = stats_.find(table);
  if (it == stats_.end()) throw MissingStatsError(table);
  return it->second;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_count(std::string_view field, const std::string& where, const char* what) {
  if (!field.empty() && field.front() == '-') throw InputError(where + ": negative " + what);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError(where + ": invalid " + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

CatalogSnapshot load_stats(std::string_view stats_text) {
  if (!is_valid_utf8(stats_text)) throw InputError("stats: malformed UTF-8");
  CatalogSnapshot snapshot;
  std::string captured_at;
  std::vector<TableStats> rows;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < stats_text.size()) {
    auto nl = stats_text.find('\n', start);
    std::string_view line =
        stats_text.substr(start, nl == std::string_view::npos ? stats_text.npos : nl - start);
    start = nl == std::string_view::npos ? stats_text.size() : nl + 1;
    ++line_no;
    std::string where = "stats line " + std::to_string(line_no);

    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.front().front() == '#') {
      // "# captured_at <ts>" or "#captured_at <ts>"
      std::size_t k = fields.front() == "#" ? 1 : 0;
      std::string_view key = k == 1 ? (fields.size() > 1 ? fields[1] : "") : fields[0].substr(1);
      if (key == "captured_at" && fields.size() == k + 2) captured_at = std::string(fields[k + 1]);
      continue;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw InputError(where + ": expected '<table> <row_count> [<avg_row_bytes>]'");
    }
    auto tokens = sql::tokenize(fields[0]);
    if (tokens.size() != 2 || (tokens[0].kind != sql::TokenKind::Identifier &&
                               tokens[0].kind != sql::TokenKind::QuotedIdentifier)) {
      throw InputError(where + ": invalid table name '" + std::string(fields[0]) + "'");
    }
    TableStats s;
    s.table = sql::canonical_identifier(tokens[0]);
    s.row_count = parse_count(fields[1], where, "row count");
    if (fields.size() == 3) {
      s.avg_row_bytes = parse_count(fields[2], where, "row width");
      if (s.avg_row_bytes == 0) throw InputError(where + ": row width must be at least 1");
    }
    if (snapshot.contains(s.table)) {
      throw InputError(where + ": duplicate statistics for table '" + s.table + "'");
    }
    snapshot.add(std::move(s));
  }

  CatalogSnapshot out(captured_at);
  for (const auto& [name, s] : snapshot.stats()) out.add(s);
  return out;
}

std::string serialize_stats(const CatalogSnapshot& snapshot) {
  std::ostringstream os;
  if (!snapshot.captured_at().empty()) os << "# captured_at " << snapshot.captured_at() << "\n";
  for (const auto& [name, s] : snapshot.stats()) {
    std::string shown = sql::is_plain_identifier(name) ? name : "\"" + name + "\"";
    os << shown << '\t' << s.row_count << '\t' << s.avg_row_bytes << '\n';
  }
  return os.str();
}

bool is_large(const std::string& table, const CatalogSnapshot& snapshot, std::uint64_t threshold_rows) {
  return snapshot.at(table).row_count >= threshold_rows;
}

}  // namespace idxadvisor
