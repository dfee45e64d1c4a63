#include "idxadvisor/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "idxadvisor/errors.hpp"

namespace idxadvisor {

namespace {

std::uint32_t fnv1a(std::string_view s) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : s) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

std::string sanitize(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) c = '_';
  }
  return out;
}

std::string quote_if_needed(const std::string& name) {
  if (sql::is_plain_identifier(name) && sql::to_lower(name) == name) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v, int precision = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Tabs and newlines would break the line-oriented structured form.
std::string one_line(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return s;
}

double ratio(std::size_t support, std::size_t total) {
  return total == 0 ? 0.0 : static_cast<double>(support) / static_cast<double>(total);
}

std::string kind_name(StatementKind k) { return std::string(sql::to_string(k)); }

constexpr StatementKind kKinds[] = {StatementKind::Select, StatementKind::Update, StatementKind::Delete,
                                    StatementKind::Insert, StatementKind::Other};

std::size_t count_of(const WorkloadSummary& s, StatementKind k) {
  auto it = s.by_kind.find(k);
  return it == s.by_kind.end() ? 0 : it->second;
}

std::string text_report(const Recommendation& rec) {
  const auto& config = rec.configuration;
  const auto& summary = rec.workload_summary;
  std::ostringstream os;

  std::string title = "Index recommendation (strategy: " + std::string(to_string(config.strategy)) + ")";
  os << title << "\n" << std::string(title.size(), '=') << "\n";
  os << "Workload: " << summary.total << " statements (";
  for (std::size_t i = 0; i < std::size(kKinds); ++i) {
    os << (i ? ", " : "") << kind_name(kKinds[i]) << " " << count_of(summary, kKinds[i]);
  }
  os << "); " << summary.flagged << " flagged; " << summary.with_items << " with indexable attributes\n";
  os << "Minimum support: " << rec.minsup_used << " statements (requested " << rec.minsup_spec << ")\n";
  os << "Large-table threshold: " << rec.threshold_rows << " rows\n";
  os << "Maximal-only candidates: " << (rec.maximal_only ? "on" : "off") << "\n";
  os << "Candidates: " << config.totals.candidate_count << "; tables touched: "
     << config.totals.tables_touched << "; estimated index bytes: " << config.totals.estimated_bytes;
  if (config.totals.unscored) os << " (" << config.totals.unscored << " without statistics)";
  os << "\n";

  if (!config.candidates.empty()) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"rank", "table", "columns", "support", "ratio", "score", "est_bytes"});
    for (std::size_t i = 0; i < config.candidates.size(); ++i) {
      const auto& sc = config.candidates[i];
      rows.push_back({std::to_string(i + 1), sc.candidate.table, join(sc.candidate.columns, ","),
                      std::to_string(sc.candidate.support),
                      fixed(ratio(sc.candidate.support, summary.total), 4),
                      sc.score ? fixed(*sc.score, 4) : "n/a",
                      sc.estimated_bytes ? std::to_string(*sc.estimated_bytes) : "n/a"});
    }
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    os << "\n";
    for (const auto& r : rows) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        std::string cell = r[c];
        if (c + 1 < r.size()) cell.resize(width[c] + 2, ' ');
        line += cell;
      }
      os << line << "\n";
    }
    os << "\nScores and sizes are estimates: score = support ratio * log2(1 + rows), "
          "est_bytes = rows * (8 + 16 per key column).\n";
  }

  if (!rec.diagnostics.empty()) {
    os << "\nDiagnostics:\n";
    for (const auto& d : rec.diagnostics) {
      os << "  [" << (d.ordinal ? std::to_string(*d.ordinal) : std::string("-")) << "] "
         << one_line(d.message) << "\n";
    }
  }
  return os.str();
}

std::string structured_report(const Recommendation& rec) {
  const auto& config = rec.configuration;
  const auto& summary = rec.workload_summary;
  std::ostringstream os;
  os << "# idxadvisor structured report\n";
  os << "format\t1\n";
  os << "strategy\t" << to_string(config.strategy) << "\n";
  os << "minsup\t" << rec.minsup_used << "\n";
  os << "minsup_requested\t" << rec.minsup_spec << "\n";
  os << "threshold_rows\t" << rec.threshold_rows << "\n";
  os << "maximal_only\t" << (rec.maximal_only ? 1 : 0) << "\n";
  os << "workload.total\t" << summary.total << "\n";
  for (auto k : kKinds) os << "workload." << sql::to_lower(kind_name(k)) << "\t" << count_of(summary, k) << "\n";
  os << "workload.flagged\t" << summary.flagged << "\n";
  os << "workload.with_items\t" << summary.with_items << "\n";
  os << "candidates\t" << config.totals.candidate_count << "\n";
  os << "tables_touched\t" << config.totals.tables_touched << "\n";
  os << "estimated_bytes\t" << config.totals.estimated_bytes << "\n";
  os << "#candidate\trank\ttable\tcolumns\tsupport\tratio\tscore\testimated_bytes\n";
  for (std::size_t i = 0; i < config.candidates.size(); ++i) {
    const auto& sc = config.candidates[i];
    os << "candidate\t" << i + 1 << "\t" << sc.candidate.table << "\t" << join(sc.candidate.columns, ",")
       << "\t" << sc.candidate.support << "\t" << fixed(ratio(sc.candidate.support, summary.total))
       << "\t" << (sc.score ? fixed(*sc.score) : "na") << "\t"
       << (sc.estimated_bytes ? std::to_string(*sc.estimated_bytes) : "na") << "\n";
  }
  os << "#diagnostic\tordinal\tmessage\n";
  for (const auto& d : rec.diagnostics) {
    os << "diagnostic\t" << (d.ordinal ? std::to_string(*d.ordinal) : std::string("-")) << "\t"
       << one_line(d.message) << "\n";
  }
  return os.str();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string index_name(std::string_view prefix, const std::string& table,
                       const std::vector<std::string>& columns) {
  std::string name = prefix.empty() ? "" : sanitize(prefix) + "_";
  name += sanitize(table);
  for (const auto& c : columns) name += "_" + sanitize(c);
  if (name.size() <= kMaxIndexNameLength) return name;

  std::ostringstream hash;
  hash << std::hex << std::setw(6) << std::setfill('0') << (fnv1a(name) & 0xFFFFFF);
  return name.substr(0, kMaxIndexNameLength - 7) + "_" + hash.str();
}

std::string emit_ddl(const IndexConfiguration& configuration, std::string_view naming_prefix) {
  std::string out;
  for (const auto& sc : configuration.candidates) {
    const auto& c = sc.candidate;
    std::vector<std::string> cols;
    cols.reserve(c.columns.size());
    for (const auto& col : c.columns) cols.push_back(quote_if_needed(col));
    out += "CREATE INDEX " + index_name(naming_prefix, c.table, c.columns) + " ON " +
           quote_if_needed(c.table) + " (" + join(cols, ", ") + ");\n";
  }
  return out;
}

std::string emit_report(const Recommendation& recommendation, ReportFormat format) {
  return format == ReportFormat::Text ? text_report(recommendation) : structured_report(recommendation);
}

std::vector<ReportedCandidate> parse_structured_report(std::string_view text) {
  std::vector<ReportedCandidate> out;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    auto fields = split(line, '\t');
    if (fields.front() != "candidate") continue;
    if (fields.size() != 8) {
      throw InputError("report line " + std::to_string(line_no) + ": expected 8 fields");
    }
    ReportedCandidate c;
    c.table = std::string(fields[2]);
    for (auto col : split(fields[3], ',')) c.columns.emplace_back(col);
    try {
      std::size_t used = 0;
      c.support = std::stoull(std::string(fields[4]), &used);
      if (used != fields[4].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("report line " + std::to_string(line_no) + ": invalid support");
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string dump_itemsets(std::span<const mining::ClosedItemset> itemsets,
                          const ItemDictionary& dictionary) {
  std::string out;
  for (const auto& c : itemsets) {
    out += std::to_string(c.support) + "\t";
    for (std::size_t i = 0; i < c.items.size(); ++i) {
      if (i) out += ",";
      out += dictionary.item(c.items[i]).qualified_name();
    }
    out += "\n";
  }
  return out;
}

}  // namespace idxadvisor
