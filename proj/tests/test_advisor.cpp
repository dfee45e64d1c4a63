#include <cmath>

#include "doctest.h"
#include "idxadvisor/advisor.hpp"
#include "idxadvisor/errors.hpp"

using namespace idxadvisor;
using mining::ClosedItemset;

namespace {

SchemaMap schema() { return parse_schema("TABLE t\n  a\n  b\n  c\nTABLE s\n  k\nTABLE r\n  z\n"); }

TransactionContext ctx(std::size_t ordinal, std::set<AttributeItem> items) {
  TransactionContext c;
  c.query_ordinal = ordinal;
  c.items = std::move(items);
  return c;
}

// t.b is more frequent than t.a, so composite keys lead with b.
std::vector<TransactionContext> contexts() {
  return {
      ctx(0, {{"t", "a"}, {"t", "b"}, {"s", "k"}}), ctx(1, {{"t", "a"}, {"t", "b"}, {"s", "k"}}),
      ctx(2, {{"t", "a"}, {"t", "b"}, {"s", "k"}}), ctx(3, {{"t", "a"}, {"t", "b"}, {"s", "k"}}),
      ctx(4, {{"t", "b"}}),                         ctx(5, {{"t", "c"}}),
  };
}

mining::ItemSet ids(const ItemDictionary& d, std::initializer_list<AttributeItem> items) {
  mining::ItemSet out;
  for (const auto& i : items) out.push_back(*d.find(i));
  std::sort(out.begin(), out.end());
  return out;
}

IndexCandidate cand(std::string table, std::vector<std::string> cols, std::size_t support) {
  IndexCandidate c;
  c.table = std::move(table);
  c.columns = std::move(cols);
  c.support = support;
  return c;
}

}  // namespace

TEST_CASE("item dictionary ids follow attribute order") {
  auto d = ItemDictionary::build(contexts());
  REQUIRE(d.size() == 4);
  CHECK(d.item(0) == AttributeItem{"s", "k"});
  CHECK(d.item(1) == AttributeItem{"t", "a"});
  CHECK(d.item(3) == AttributeItem{"t", "c"});
  CHECK_FALSE(d.find({"t", "zzz"}).has_value());
  auto db = to_database(contexts(), d);
  CHECK(db.size() == 6);
  CHECK(db.support({*d.find({"t", "b"})}) == 5);
}

TEST_CASE("derive_candidates: cross-table itemset splits per table") {
  auto ctxs = contexts();
  auto d = ItemDictionary::build(ctxs);
  auto db = to_database(ctxs, d);
  std::vector<ClosedItemset> closed = {{ids(d, {{"t", "a"}, {"t", "b"}, {"s", "k"}}), 4}};
  auto out = derive_candidates(closed, d, db, schema(), {});
  REQUIRE(out.size() == 2);
  CHECK(out[0].table == "s");
  CHECK(out[0].columns == std::vector<std::string>{"k"});
  CHECK(out[0].support == 4);
  CHECK(out[1].table == "t");
  CHECK(out[1].columns == std::vector<std::string>{"b", "a"});  // b: 5 > a: 4
  CHECK(out[1].support == 4);
  CHECK(out[1].source_itemsets.size() == 1);
}

TEST_CASE("derive_candidates: singleton passthrough") {
  auto ctxs = contexts();
  auto d = ItemDictionary::build(ctxs);
  auto db = to_database(ctxs, d);
  std::vector<ClosedItemset> closed = {{ids(d, {{"t", "a"}}), 3}};
  auto out = derive_candidates(closed, d, db, schema(), {});
  REQUIRE(out.size() == 1);
  CHECK(out[0].table == "t");
  CHECK(out[0].columns == std::vector<std::string>{"a"});
  CHECK(out[0].support == 3);
}

TEST_CASE("derive_candidates: maximal-only subsumption") {
  auto ctxs = contexts();
  auto d = ItemDictionary::build(ctxs);
  auto db = to_database(ctxs, d);
  std::vector<ClosedItemset> closed = {{ids(d, {{"t", "a"}}), 5}, {ids(d, {{"t", "a"}, {"t", "b"}}), 3}};

  auto on = derive_candidates(closed, d, db, schema(), {true});
  REQUIRE(on.size() == 1);
  CHECK(on[0].columns.size() == 2);
  CHECK(on[0].support == 3);

  auto off = derive_candidates(closed, d, db, schema(), {false});
  REQUIRE(off.size() == 2);
  CHECK(off[0].columns == std::vector<std::string>{"a"});
  CHECK(off[0].support == 5);
}

TEST_CASE("derive_candidates: identical fragments merge with max support") {
  auto ctxs = contexts();
  auto d = ItemDictionary::build(ctxs);
  auto db = to_database(ctxs, d);
  std::vector<ClosedItemset> closed = {{ids(d, {{"t", "a"}, {"s", "k"}}), 2},
                                       {ids(d, {{"t", "a"}, {"t", "c"}}), 1},
                                       {ids(d, {{"t", "a"}}), 5}};
  auto out = derive_candidates(closed, d, db, schema(), {false});
  auto it = std::find_if(out.begin(), out.end(), [](const IndexCandidate& c) {
    return c.table == "t" && c.columns == std::vector<std::string>{"a"};
  });
  REQUIRE(it != out.end());
  CHECK(it->support == 5);
  CHECK(it->source_itemsets.size() == 2);
}

TEST_CASE("derive_candidates: column order follows singleton support, ties by name") {
  std::vector<TransactionContext> ctxs = {ctx(0, {{"t", "a"}, {"t", "b"}, {"t", "c"}}),
                                          ctx(1, {{"t", "c"}}), ctx(2, {{"t", "a"}, {"t", "b"}})};
  auto d = ItemDictionary::build(ctxs);
  auto db = to_database(ctxs, d);
  std::vector<ClosedItemset> closed = {{ids(d, {{"t", "a"}, {"t", "b"}, {"t", "c"}}), 1}};
  auto out = derive_candidates(closed, d, db, schema(), {});
  REQUIRE(out.size() == 1);
  // a: 2, b: 2, c: 2 -> all tied, name order
  CHECK(out[0].columns == std::vector<std::string>{"a", "b", "c"});

  ctxs.push_back(ctx(3, {{"t", "c"}}));
  d = ItemDictionary::build(ctxs);
  db = to_database(ctxs, d);
  out = derive_candidates(closed, d, db, schema(), {});
  CHECK(out[0].columns == std::vector<std::string>{"c", "a", "b"});
}

TEST_CASE("derive_candidates: attributes outside the schema are skipped with a diagnostic") {
  std::vector<TransactionContext> ctxs = {ctx(0, {{"ghost", "x"}, {"t", "a"}}), ctx(1, {{"ghost", "y"}})};
  auto d = ItemDictionary::build(ctxs);
  auto db = to_database(ctxs, d);
  std::vector<ClosedItemset> closed = {{ids(d, {{"ghost", "x"}, {"t", "a"}}), 1},
                                       {ids(d, {{"ghost", "y"}}), 1}};
  std::vector<std::string> notes;
  auto out = derive_candidates(closed, d, db, schema(), {}, &notes);
  REQUIRE(out.size() == 1);
  CHECK(out[0].table == "t");
  CHECK(notes.size() == 3);
}

TEST_CASE("score formula") {
  auto snap = load_stats("t\t1\nbig\t6000000\n");
  CHECK(score(cand("t", {"a"}, 0), snap, 20) == 0.0);
  CHECK(score(cand("t", {"a"}, 10), snap, 20) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(score(cand("big", {"a"}, 10), snap, 20) ==
        doctest::Approx(0.5 * std::log2(6000001.0)).epsilon(1e-12));
  CHECK_THROWS_AS(score(cand("nope", {"a"}, 1), snap, 20), MissingStatsError);
}

TEST_CASE("score is increasing in support and in row count") {
  for (std::uint64_t rows = 1; rows < (1u << 20); rows *= 2) {
    auto snap = load_stats("t\t" + std::to_string(rows) + "\nu\t" + std::to_string(rows * 2) + "\n");
    CHECK(score(cand("u", {"a"}, 3), snap, 10) > score(cand("t", {"a"}, 3), snap, 10));
    CHECK(score(cand("t", {"a"}, 4), snap, 10) > score(cand("t", {"a"}, 3), snap, 10));
  }
}

TEST_CASE("estimated index bytes") {
  auto snap = load_stats("t\t1000\n");
  CHECK(estimated_index_bytes(cand("t", {"a"}, 1), snap) == 1000 * 24);
  CHECK(estimated_index_bytes(cand("t", {"a", "b", "c"}, 1), snap) == 1000 * 56);
}

TEST_CASE("select_configuration: ALL keeps every candidate in score order") {
  auto snap = load_stats("t\t1000\ns\t10\n");
  std::vector<IndexCandidate> cands = {cand("t", {"a"}, 2), cand("t", {"b"}, 5), cand("s", {"k"}, 5),
                                       cand("t", {"a", "c"}, 1), cand("s", {"z"}, 2)};
  auto config = select_configuration(cands, Strategy::All, snap, 100000, 10);
  REQUIRE(config.candidates.size() == 5);
  for (std::size_t i = 1; i < config.candidates.size(); ++i) {
    CHECK(*config.candidates[i - 1].score >= *config.candidates[i].score);
  }
  CHECK(config.candidates[0].candidate.columns == std::vector<std::string>{"b"});
  CHECK(config.totals.candidate_count == 5);
  CHECK(config.totals.tables_touched == 2);
  CHECK(config.totals.estimated_bytes == 1000 * 24 * 2 + 1000 * 40 + 10 * 24 * 2);
}

TEST_CASE("select_configuration: LARGE_TABLES keeps only large tables") {
  auto snap = load_stats("lineitem\t6000000\nregion\t25\n");
  std::vector<IndexCandidate> cands = {cand("lineitem", {"l_shipdate"}, 3), cand("region", {"r_name"}, 9)};
  auto config = select_configuration(cands, Strategy::LargeTables, snap, 100000, 10);
  REQUIRE(config.candidates.size() == 1);
  CHECK(config.candidates[0].candidate.table == "lineitem");
  CHECK(config.strategy == Strategy::LargeTables);
}

TEST_CASE("select_configuration: missing stats under LARGE_TABLES lists the tables") {
  auto snap = load_stats("t\t5\n");
  std::vector<IndexCandidate> cands = {cand("t", {"a"}, 1), cand("x", {"a"}, 1), cand("y", {"a"}, 1)};
  CHECK_THROWS_WITH_AS(select_configuration(cands, Strategy::LargeTables, snap, 1, 3),
                       doctest::Contains("x, y"), ConfigError);
}

TEST_CASE("select_configuration: ALL without stats ranks unscored candidates last") {
  auto snap = load_stats("t\t5\n");
  std::vector<IndexCandidate> cands = {cand("x", {"a"}, 1), cand("y", {"a"}, 4), cand("t", {"a"}, 1)};
  auto config = select_configuration(cands, Strategy::All, snap, 1, 4);
  REQUIRE(config.candidates.size() == 3);
  CHECK(config.candidates[0].candidate.table == "t");
  CHECK(config.candidates[1].candidate.table == "y");
  CHECK_FALSE(config.candidates[1].score.has_value());
  CHECK(config.totals.unscored == 2);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("all") == Strategy::All);
  CHECK(parse_strategy("large-tables") == Strategy::LargeTables);
  CHECK(to_string(Strategy::LargeTables) == "large-tables");
  CHECK_THROWS_AS(parse_strategy("LARGE"), ConfigError);
}
