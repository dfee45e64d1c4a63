#pragma once

#include <string_view>
#include <vector>

#include "idxadvisor/report.hpp"

namespace idxadvisor {

struct PipelineOptions {
  mining::MinSupport minsup = mining::MinSupport::fraction(0.10);
  ExtractionPolicy policy = ExtractionPolicy::defaults();
  Strategy strategy = Strategy::All;
  std::uint64_t threshold_rows = kDefaultLargeTableRows;
  bool maximal_only = true;
};

/// Everything up to and including the mining step.
struct MinedWorkload {
  std::vector<WorkloadQuery> queries;
  std::vector<TransactionContext> contexts;  // one per query, same order
  ItemDictionary dictionary;
  mining::TransactionDatabase database;
  std::size_t minsup_used = 0;
  std::vector<mining::ClosedItemset> closed;
  std::vector<Diagnostic> diagnostics;
};

/// parse -> extract -> mine. Every statement is one transaction, including
/// flagged and INSERT statements, whose transactions are empty.
MinedWorkload mine_workload(std::string_view workload_text, const SchemaMap& schema,
                            const PipelineOptions& options);

/// derive -> select -> score over an already mined workload.
Recommendation recommend(const MinedWorkload& mined, const SchemaMap& schema,
                         const CatalogSnapshot& snapshot, const PipelineOptions& options);

}  // namespace idxadvisor
