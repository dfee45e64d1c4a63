#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idxadvisor/catalog.hpp"
#include "idxadvisor/miner.hpp"
#include "idxadvisor/workload.hpp"

namespace idxadvisor {

enum class Strategy {
  All,          // create every candidate
  LargeTables,  // only candidates on tables with row_count >= threshold
};

std::string_view to_string(Strategy s);
/// "all" or "large-tables". Throws ConfigError.
Strategy parse_strategy(std::string_view text);

/// Bidirectional mapping between attributes and the miner's integer ids.
/// Ids follow the sorted order of the attributes.
class ItemDictionary {
 public:
  ItemDictionary() = default;
  static ItemDictionary build(std::span<const TransactionContext> contexts);

  std::optional<mining::ItemId> find(const AttributeItem& item) const;
  const AttributeItem& item(mining::ItemId id) const { return items_.at(id); }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<AttributeItem> items_;
  std::map<AttributeItem, mining::ItemId> ids_;
};

/// One transaction per context, in context order.
mining::TransactionDatabase to_database(std::span<const TransactionContext> contexts,
                                        const ItemDictionary& dictionary);

struct IndexCandidate {
  std::string table;
  std::vector<std::string> columns;  // index key order
  std::size_t support = 0;
  std::vector<mining::ClosedItemset> source_itemsets;
};

struct CandidateOptions {
  /// Drop a candidate whose column set is a strict subset of another
  /// candidate's on the same table.
  bool maximal_only = true;
};

/// Splits each closed itemset by table; every non-empty fragment is a
/// candidate. Identical fragments merge (max support, sources accumulate).
/// Columns are ordered by descending singleton support in `db`, ties by
/// name. Items missing from `schema` are dropped with a diagnostic.
/// Returned sorted by table, then columns.
std::vector<IndexCandidate> derive_candidates(std::span<const mining::ClosedItemset> closed,
                                              const ItemDictionary& dictionary,
                                              const mining::TransactionDatabase& db,
                                              const SchemaMap& schema, const CandidateOptions& options,
                                              std::vector<std::string>* diagnostics = nullptr);

/// (support / workload_size) * log2(1 + row_count). Heuristic ranking, not a
/// cost model. Throws MissingStatsError.
double score(const IndexCandidate& candidate, const CatalogSnapshot& snapshot,
             std::size_t workload_size);

/// Estimated index size: row_count * (8 + 16 per key column). Throws
/// MissingStatsError.
std::uint64_t estimated_index_bytes(const IndexCandidate& candidate, const CatalogSnapshot& snapshot);

struct ScoredCandidate {
  IndexCandidate candidate;
  // Empty when the snapshot has no entry for the table (strategy All only).
  std::optional<double> score;
  std::optional<std::uint64_t> estimated_bytes;
};

struct ConfigurationTotals {
  std::size_t candidate_count = 0;
  std::uint64_t estimated_bytes = 0;  // over scored candidates
  std::size_t tables_touched = 0;
  std::size_t unscored = 0;
};

struct IndexConfiguration {
  Strategy strategy = Strategy::All;
  std::vector<ScoredCandidate> candidates;
  ConfigurationTotals totals;
};

/// Applies `strategy` and ranks the survivors by descending score, then
/// table and columns. Candidates without statistics rank after all scored
/// ones, by descending support. Under LargeTables, missing statistics for
/// any candidate table raise ConfigError naming every such table.
IndexConfiguration select_configuration(std::vector<IndexCandidate> candidates, Strategy strategy,
                                        const CatalogSnapshot& snapshot, std::uint64_t threshold_rows,
                                        std::size_t workload_size);

}  // namespace idxadvisor
