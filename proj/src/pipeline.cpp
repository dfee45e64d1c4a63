#include "idxadvisor/pipeline.hpp"

namespace idxadvisor {

MinedWorkload mine_workload(std::string_view workload_text, const SchemaMap& schema,
                            const PipelineOptions& options) {
  MinedWorkload out;
  out.queries = parse_workload(workload_text);
  out.contexts.reserve(out.queries.size());
  for (const auto& q : out.queries) {
    if (q.flagged) out.diagnostics.push_back({q.ordinal, "unsupported SQL: " + q.diagnostic});
    auto ctx = extract_items(q, schema, options.policy);
    for (auto& message : ctx.diagnostics) out.diagnostics.push_back({q.ordinal, std::move(message)});
    ctx.diagnostics.clear();
    out.contexts.push_back(std::move(ctx));
  }
  out.dictionary = ItemDictionary::build(out.contexts);
  out.database = to_database(out.contexts, out.dictionary);
  out.minsup_used = options.minsup.resolve(out.database.size());
  out.closed = mining::mine_closed(out.database, options.minsup);
  return out;
}

Recommendation recommend(const MinedWorkload& mined, const SchemaMap& schema,
                         const CatalogSnapshot& snapshot, const PipelineOptions& options) {
  Recommendation rec;
  rec.minsup_used = mined.minsup_used;
  rec.minsup_spec = options.minsup.to_string();
  rec.threshold_rows = options.threshold_rows;
  rec.maximal_only = options.maximal_only;
  rec.diagnostics = mined.diagnostics;

  auto& summary = rec.workload_summary;
  summary.total = mined.queries.size();
  for (auto kind : {StatementKind::Select, StatementKind::Update, StatementKind::Delete,
                    StatementKind::Insert, StatementKind::Other}) {
    summary.by_kind[kind] = 0;
  }
  for (std::size_t i = 0; i < mined.queries.size(); ++i) {
    ++summary.by_kind[mined.queries[i].kind];
    if (mined.queries[i].flagged) ++summary.flagged;
    if (!mined.contexts[i].items.empty()) ++summary.with_items;
  }

  std::vector<std::string> notes;
  auto candidates = derive_candidates(mined.closed, mined.dictionary, mined.database, schema,
                                      CandidateOptions{options.maximal_only}, &notes);
  for (auto& n : notes) rec.diagnostics.push_back({std::nullopt, std::move(n)});
  rec.configuration = select_configuration(std::move(candidates), options.strategy, snapshot,
                                           options.threshold_rows, summary.total);
  return rec;
}

}  // namespace idxadvisor
