#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idxadvisor::mining {

using ItemId = std::uint32_t;

/// Sorted, duplicate-free list of item ids.
using ItemSet = std::vector<ItemId>;

/// Horizontal transaction database over opaque integer items. Transactions
/// are normalized (sorted, deduplicated) on construction; empty transactions
/// are kept.
class TransactionDatabase {
 public:
  TransactionDatabase() = default;
  explicit TransactionDatabase(std::vector<ItemSet> transactions);

  const std::vector<ItemSet>& transactions() const { return transactions_; }
  /// Items occurring in at least one transaction, ascending.
  const ItemSet& universe() const { return universe_; }
  std::size_t size() const { return transactions_.size(); }

  /// Number of transactions containing every item of `items`, by direct scan.
  std::size_t support(const ItemSet& items) const;

 private:
  std::vector<ItemSet> transactions_;
  ItemSet universe_;
};

struct ClosedItemset {
  ItemSet items;
  std::size_t support = 0;

  bool operator==(const ClosedItemset&) const = default;
};

/// Minimum support threshold, absolute or relative to the database size.
class MinSupport {
 public:
  /// Throws ConfigError unless count >= 1.
  static MinSupport absolute(std::uint64_t count);
  /// Throws ConfigError unless 0 < f <= 1.
  static MinSupport fraction(double f);
  /// "3" is absolute, "0.25" or "1.0" is a fraction. Throws ConfigError.
  static MinSupport parse(std::string_view text);

  bool is_fraction() const { return is_fraction_; }
  double value() const { return value_; }

  /// Absolute count for a database of `n` transactions: the count itself,
  /// or ceil(f * n) for a fraction. Zero only when n == 0.
  std::size_t resolve(std::size_t n) const;

  std::string to_string() const;

 private:
  MinSupport(bool is_fraction, double value) : is_fraction_(is_fraction), value_(value) {}

  bool is_fraction_ = false;
  double value_ = 1;
};

/// Largest universe mine_bruteforce accepts.
inline constexpr std::size_t kBruteForceMaxUniverse = 20;

/// Intersection of all transactions containing `items`; std::nullopt when no
/// transaction does. closure({}) is the intersection of every transaction.
std::optional<ItemSet> closure(const ItemSet& items, const TransactionDatabase& db);

/// All closed itemsets with support >= minsup, computed level-wise over
/// minimal generators. Returned in canonical order.
std::vector<ClosedItemset> mine_closed(const TransactionDatabase& db, const MinSupport& minsup);

/// Exhaustive enumeration of all non-empty subsets of the universe. Same
/// contract as mine_closed; throws std::invalid_argument when the universe
/// exceeds kBruteForceMaxUniverse items.
std::vector<ClosedItemset> mine_bruteforce(const TransactionDatabase& db, const MinSupport& minsup);

/// Descending support, then lexicographic items.
void sort_canonical(std::vector<ClosedItemset>& itemsets);

}  // namespace idxadvisor::mining
