#include "idxadvisor/workload.hpp"

#include <algorithm>
#include <cstdint>

#include "idxadvisor/errors.hpp"

namespace idxadvisor {

using sql::QueryBlock;
using sql::Token;
using sql::TokenKind;

void SchemaMap::add_table(const std::string& table, std::vector<std::string> columns) {
  if (tables_.contains(table)) throw InputError("duplicate table '" + table + "'");
  std::set<std::string> seen;
  for (const auto& c : columns) {
    if (!seen.insert(c).second) {
      throw InputError("duplicate column '" + c + "' in table '" + table + "'");
    }
  }
  tables_.emplace(table, std::move(columns));
}

bool SchemaMap::has_column(const std::string& table, const std::string& column) const {
  auto it = tables_.find(table);
  if (it == tables_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), column) != it->second.end();
}

const std::vector<std::string>& SchemaMap::columns(const std::string& table) const {
  static const std::vector<std::string> none;
  auto it = tables_.find(table);
  return it == tables_.end() ? none : it->second;
}

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// A single identifier token, canonicalized; empty if `s` is anything else.
std::string schema_name(std::string_view s) {
  auto tokens = sql::tokenize(s);
  if (tokens.size() != 2) return {};
  const Token& t = tokens[0];
  if (t.kind != TokenKind::Identifier && t.kind != TokenKind::QuotedIdentifier) return {};
  return sql::canonical_identifier(t);
}

}  // namespace

SchemaMap parse_schema(std::string_view text) {
  if (!is_valid_utf8(text)) throw InputError("schema: malformed UTF-8");
  SchemaMap schema;
  std::string current;
  std::vector<std::string> columns;
  bool open = false;
  auto flush = [&] {
    if (open) schema.add_table(current, std::move(columns));
    columns.clear();
    open = false;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto error = [&](const std::string& what) {
      return InputError("schema line " + std::to_string(line_no) + ": " + what);
    };

    bool indented = line.front() == ' ' || line.front() == '\t';
    if (!indented) {
      if (body.size() < 6 || sql::to_lower(body.substr(0, 5)) != "table" ||
          (body[5] != ' ' && body[5] != '\t')) {
        throw error("expected 'TABLE <name>'");
      }
      std::string name = schema_name(trim(body.substr(5)));
      if (name.empty()) throw error("invalid table name");
      try {
        flush();
      } catch (const InputError& e) {
        throw error(e.what());
      }
      if (schema.has_table(name)) throw error("duplicate table '" + name + "'");
      current = name;
      open = true;
      continue;
    }
    if (!open) throw error("column outside of a TABLE stanza");
    std::string column = schema_name(body);
    if (column.empty()) throw error("invalid column name");
    if (std::find(columns.begin(), columns.end(), column) != columns.end()) {
      throw error("duplicate column '" + column + "' in table '" + current + "'");
    }
    columns.push_back(std::move(column));
  }
  flush();
  return schema;
}

ExtractionPolicy ExtractionPolicy::defaults() {
  return ExtractionPolicy({ClausePosition::Where, ClausePosition::JoinOn, ClausePosition::GroupBy,
                           ClausePosition::OrderBy, ClausePosition::Having});
}

ExtractionPolicy ExtractionPolicy::parse(std::string_view list) {
  static constexpr ClausePosition all[] = {
      ClausePosition::Where,   ClausePosition::JoinOn,     ClausePosition::GroupBy,
      ClausePosition::OrderBy, ClausePosition::Having,     ClausePosition::Projection,
      ClausePosition::Set};
  std::set<ClausePosition> positions;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    std::string name = sql::to_lower(
        trim(list.substr(start, comma == std::string_view::npos ? list.npos : comma - start)));
    start = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
    if (name.empty()) continue;
    auto it = std::find_if(std::begin(all), std::end(all),
                           [&](ClausePosition p) { return sql::to_string(p) == name; });
    if (it == std::end(all)) throw ConfigError("unknown policy position '" + name + "'");
    positions.insert(*it);
  }
  if (positions.empty()) throw ConfigError("extraction policy lists no positions");
  return ExtractionPolicy(std::move(positions));
}

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= text.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

std::vector<WorkloadQuery> parse_workload(std::string_view workload_text) {
  if (!is_valid_utf8(workload_text)) throw InputError("workload: malformed UTF-8");
  auto tokens = sql::tokenize(workload_text);
  std::vector<WorkloadQuery> out;

  std::vector<Token> statement;
  auto finish = [&] {
    if (statement.empty()) return;
    WorkloadQuery q;
    q.ordinal = out.size();
    q.raw_text = std::string(workload_text.substr(
        statement.front().begin, statement.back().end - statement.front().begin));

    Token end;
    end.kind = TokenKind::End;
    end.begin = end.end = statement.back().end;
    statement.push_back(end);

    q.kind = sql::classify(statement);
    try {
      if (q.kind == StatementKind::Other && statement.front().is_keyword("CREATE")) {
        // CREATE INDEX belongs to the subset; any other CREATE does not.
        sql::parse_create_index(q.raw_text);
      } else {
        sql::parse_statement(statement);
        if (q.kind == StatementKind::Other) throw sql::SyntaxError("unsupported statement", 0);
      }
    } catch (const sql::SyntaxError& e) {
      q.kind = StatementKind::Other;
      q.flagged = true;
      q.diagnostic = e.what();
    }
    out.push_back(std::move(q));
    statement.clear();
  };

  for (const Token& t : tokens) {
    if (t.kind == TokenKind::Semicolon || t.kind == TokenKind::End) {
      finish();
      continue;
    }
    statement.push_back(t);
  }
  finish();
  return out;
}

std::string serialize_workload(std::span<const WorkloadQuery> queries) {
  std::string out;
  for (const auto& q : queries) {
    out += q.raw_text;
    out += ";\n";
  }
  return out;
}

namespace {

// Name resolution over the chain of enclosing query blocks.
class Resolver {
 public:
  Resolver(const SchemaMap& schema, const ExtractionPolicy& policy, TransactionContext& ctx)
      : schema_(schema), policy_(policy), ctx_(ctx) {}

  void visit(const QueryBlock& block) {
    scopes_.push_back(&block);
    for (const auto& ref : block.columns) {
      if (policy_.includes(ref.position)) resolve(ref);
    }
    for (const auto& sub : block.subqueries) visit(sub);
    scopes_.pop_back();
  }

 private:
  void diagnose(const std::string& message) { ctx_.diagnostics.push_back(message); }

  void resolve(const sql::ColumnRef& ref) {
    if (!ref.qualifier.empty()) {
      resolve_qualified(ref);
    } else {
      resolve_unqualified(ref);
    }
  }

  // Explicit aliases hide the table name; unaliased tables are visible by name.
  const sql::TableRef* find_visible(const QueryBlock& block, const std::string& name) const {
    for (const auto& t : block.tables) {
      if (t.visible_name() == name) return &t;
    }
    return nullptr;
  }

  void resolve_qualified(const sql::ColumnRef& ref) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      const sql::TableRef* t = find_visible(**it, ref.qualifier);
      if (t == nullptr) continue;
      if (t->derived) return;  // not a base attribute
      if (!schema_.has_table(t->table)) {
        diagnose("unknown table '" + t->table + "' for column '" + ref.column + "'");
      } else if (!schema_.has_column(t->table, ref.column)) {
        diagnose("unknown column '" + t->table + "." + ref.column + "'");
      } else {
        ctx_.items.insert({t->table, ref.column});
      }
      return;
    }
    diagnose("unknown table or alias '" + ref.qualifier + "' for column '" + ref.column + "'");
  }

  void resolve_unqualified(const sql::ColumnRef& ref) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      const QueryBlock& block = **it;
      const bool is_output_alias =
          std::find(block.output_aliases.begin(), block.output_aliases.end(), ref.column) !=
          block.output_aliases.end();
      if (is_output_alias && ref.position == ClausePosition::OrderBy) return;

      std::vector<std::string> owners;
      bool has_derived = false;
      for (const auto& t : block.tables) {
        if (t.derived) {
          has_derived = true;
        } else if (schema_.has_column(t.table, ref.column) &&
                   std::find(owners.begin(), owners.end(), t.table) == owners.end()) {
          owners.push_back(t.table);
        }
      }
      if (owners.size() == 1) {
        ctx_.items.insert({owners.front(), ref.column});
        return;
      }
      if (owners.size() > 1) {
        std::string list;
        for (const auto& o : owners) list += (list.empty() ? "" : ", ") + o;
        diagnose("ambiguous column '" + ref.column + "' (in " + list + ")");
        return;
      }
      if (is_output_alias || has_derived) return;
    }
    diagnose("unresolvable column '" + ref.column + "'");
  }

  const SchemaMap& schema_;
  const ExtractionPolicy& policy_;
  TransactionContext& ctx_;
  std::vector<const QueryBlock*> scopes_;
};

}  // namespace

TransactionContext extract_items(const WorkloadQuery& query, const SchemaMap& schema,
                                 const ExtractionPolicy& policy) {
  TransactionContext ctx;
  ctx.query_ordinal = query.ordinal;
  if (query.kind == StatementKind::Other || query.kind == StatementKind::Insert) return ctx;

  sql::ParsedStatement parsed;
  try {
    parsed = sql::parse_statement(query.raw_text);
  } catch (const sql::SyntaxError& e) {
    ctx.diagnostics.push_back(std::string("syntax error: ") + e.what());
    return ctx;
  }
  Resolver(schema, policy, ctx).visit(parsed.block);
  return ctx;
}

}  // namespace idxadvisor
