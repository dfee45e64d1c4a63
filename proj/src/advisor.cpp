#include "idxadvisor/advisor.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "idxadvisor/errors.hpp"

namespace idxadvisor {

std::string_view to_string(Strategy s) {
  return s == Strategy::All ? "all" : "large-tables";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "all") return Strategy::All;
  if (text == "large-tables") return Strategy::LargeTables;
  throw ConfigError("unknown strategy '" + std::string(text) + "' (expected all or large-tables)");
}

ItemDictionary ItemDictionary::build(std::span<const TransactionContext> contexts) {
  std::set<AttributeItem> all;
  for (const auto& ctx : contexts) all.insert(ctx.items.begin(), ctx.items.end());
  ItemDictionary d;
  d.items_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < d.items_.size(); ++i) {
    d.ids_.emplace(d.items_[i], static_cast<mining::ItemId>(i));
  }
  return d;
}

std::optional<mining::ItemId> ItemDictionary::find(const AttributeItem& item) const {
  auto it = ids_.find(item);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

mining::TransactionDatabase to_database(std::span<const TransactionContext> contexts,
                                        const ItemDictionary& dictionary) {
  std::vector<mining::ItemSet> transactions;
  transactions.reserve(contexts.size());
  for (const auto& ctx : contexts) {
    mining::ItemSet t;
    for (const auto& item : ctx.items) {
      if (auto id = dictionary.find(item)) t.push_back(*id);
    }
    transactions.push_back(std::move(t));
  }
  return mining::TransactionDatabase(std::move(transactions));
}

std::vector<IndexCandidate> derive_candidates(std::span<const mining::ClosedItemset> closed,
                                              const ItemDictionary& dictionary,
                                              const mining::TransactionDatabase& db,
                                              const SchemaMap& schema, const CandidateOptions& options,
                                              std::vector<std::string>* diagnostics) {
  auto note = [&](std::string message) {
    if (diagnostics) diagnostics->push_back(std::move(message));
  };

  std::map<mining::ItemId, std::size_t> singleton_support;
  auto column_support = [&](mining::ItemId id) {
    auto it = singleton_support.find(id);
    if (it == singleton_support.end()) it = singleton_support.emplace(id, db.support({id})).first;
    return it->second;
  };

  // Keyed by (table, column set in name order).
  std::map<std::pair<std::string, std::vector<std::string>>, IndexCandidate> merged;
  std::map<std::pair<std::string, std::string>, std::size_t> support_of_column;

  for (const auto& itemset : closed) {
    std::map<std::string, std::vector<std::string>> fragments;
    for (mining::ItemId id : itemset.items) {
      if (id >= dictionary.size()) {
        note("item id " + std::to_string(id) + " has no attribute mapping");
        continue;
      }
      const AttributeItem& item = dictionary.item(id);
      if (!schema.has_column(item.table, item.column)) {
        note("attribute '" + item.qualified_name() + "' is not in the schema");
        continue;
      }
      fragments[item.table].push_back(item.column);
      support_of_column[{item.table, item.column}] = column_support(id);
    }
    if (fragments.empty()) {
      note("closed itemset with support " + std::to_string(itemset.support) +
           " has no attributes on known tables; skipped");
      continue;
    }
    for (auto& [table, columns] : fragments) {
      std::sort(columns.begin(), columns.end());
      auto [it, inserted] = merged.try_emplace({table, columns});
      IndexCandidate& c = it->second;
      if (inserted) {
        c.table = table;
        c.columns = columns;
      }
      c.support = std::max(c.support, itemset.support);
      c.source_itemsets.push_back(itemset);
    }
  }

  if (options.maximal_only) {
    for (auto it = merged.begin(); it != merged.end();) {
      const auto& [table, columns] = it->first;
      bool subsumed = std::any_of(merged.begin(), merged.end(), [&](const auto& other) {
        const auto& [other_table, other_columns] = other.first;
        return other_table == table && other_columns.size() > columns.size() &&
               std::includes(other_columns.begin(), other_columns.end(), columns.begin(),
                             columns.end());
      });
      it = subsumed ? merged.erase(it) : std::next(it);
    }
  }

  std::vector<IndexCandidate> out;
  out.reserve(merged.size());
  for (auto& [key, c] : merged) {
    std::stable_sort(c.columns.begin(), c.columns.end(),
                     [&](const std::string& a, const std::string& b) {
                       auto sa = support_of_column[{c.table, a}];
                       auto sb = support_of_column[{c.table, b}];
                       if (sa != sb) return sa > sb;
                       return a < b;
                     });
    out.push_back(std::move(c));
  }
  return out;
}

double score(const IndexCandidate& candidate, const CatalogSnapshot& snapshot,
             std::size_t workload_size) {
  const TableStats& stats = snapshot.at(candidate.table);
  if (workload_size == 0 || candidate.support == 0) return 0.0;
  double ratio = static_cast<double>(candidate.support) / static_cast<double>(workload_size);
  return ratio * std::log2(1.0 + static_cast<double>(stats.row_count));
}

std::uint64_t estimated_index_bytes(const IndexCandidate& candidate, const CatalogSnapshot& snapshot) {
  const TableStats& stats = snapshot.at(candidate.table);
  return stats.row_count * (8 + 16 * static_cast<std::uint64_t>(candidate.columns.size()));
}

IndexConfiguration select_configuration(std::vector<IndexCandidate> candidates, Strategy strategy,
                                        const CatalogSnapshot& snapshot, std::uint64_t threshold_rows,
                                        std::size_t workload_size) {
  if (strategy == Strategy::LargeTables) {
    std::set<std::string> missing;
    for (const auto& c : candidates) {
      if (!snapshot.contains(c.table)) missing.insert(c.table);
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& t : missing) list += (list.empty() ? "" : ", ") + t;
      throw ConfigError("large-tables strategy needs statistics for: " + list);
    }
  }

  IndexConfiguration config;
  config.strategy = strategy;
  for (auto& c : candidates) {
    if (strategy == Strategy::LargeTables && !is_large(c.table, snapshot, threshold_rows)) continue;
    ScoredCandidate sc;
    if (snapshot.contains(c.table)) {
      sc.score = score(c, snapshot, workload_size);
      sc.estimated_bytes = estimated_index_bytes(c, snapshot);
    }
    sc.candidate = std::move(c);
    config.candidates.push_back(std::move(sc));
  }

  std::sort(config.candidates.begin(), config.candidates.end(),
            [](const ScoredCandidate& a, const ScoredCandidate& b) {
              if (a.score.has_value() != b.score.has_value()) return a.score.has_value();
              if (a.score && *a.score != *b.score) return *a.score > *b.score;
              if (!a.score && a.candidate.support != b.candidate.support) {
                return a.candidate.support > b.candidate.support;
              }
              return std::tie(a.candidate.table, a.candidate.columns) <
                     std::tie(b.candidate.table, b.candidate.columns);
            });

  std::set<std::string> tables;
  for (const auto& sc : config.candidates) {
    tables.insert(sc.candidate.table);
    if (sc.estimated_bytes) {
      config.totals.estimated_bytes += *sc.estimated_bytes;
    } else {
      ++config.totals.unscored;
    }
  }
  config.totals.candidate_count = config.candidates.size();
  config.totals.tables_touched = tables.size();
  return config;
}

}  // namespace idxadvisor
