#include "idxadvisor/miner.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "idxadvisor/errors.hpp"

namespace idxadvisor::mining {

TransactionDatabase::TransactionDatabase(std::vector<ItemSet> transactions)
    : transactions_(std::move(transactions)) {
  std::set<ItemId> all;
  for (auto& t : transactions_) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    all.insert(t.begin(), t.end());
  }
  universe_.assign(all.begin(), all.end());
}

std::size_t TransactionDatabase::support(const ItemSet& items) const {
  std::size_t count = 0;
  for (const auto& t : transactions_) {
    if (std::includes(t.begin(), t.end(), items.begin(), items.end())) ++count;
  }
  return count;
}

MinSupport MinSupport::absolute(std::uint64_t count) {
  if (count < 1) throw ConfigError("minimum support must be at least 1");
  return MinSupport(false, static_cast<double>(count));
}

MinSupport MinSupport::fraction(double f) {
  if (!(f > 0.0 && f <= 1.0)) throw ConfigError("minimum support fraction must be in (0, 1]");
  return MinSupport(true, f);
}

MinSupport MinSupport::parse(std::string_view text) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (text.find_first_of(".eE") == std::string_view::npos) {
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last) {
      throw ConfigError("invalid minimum support '" + std::string(text) + "'");
    }
    return absolute(count);
  }
  double f = 0;
  auto [ptr, ec] = std::from_chars(first, last, f);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("invalid minimum support '" + std::string(text) + "'");
  }
  return fraction(f);
}

std::size_t MinSupport::resolve(std::size_t n) const {
  if (!is_fraction_) return static_cast<std::size_t>(value_);
  if (n == 0) return 0;
  // Products such as 0.1 * 30 land a hair above the integer in binary
  // floating point; treat those as exact before taking the ceiling.
  double product = value_ * static_cast<double>(n);
  double nearest = std::round(product);
  double resolved = std::abs(product - nearest) <= 1e-9 * std::max(1.0, product) ? nearest
                                                                                  : std::ceil(product);
  return std::max<std::size_t>(1, static_cast<std::size_t>(resolved));
}

std::string MinSupport::to_string() const {
  if (!is_fraction_) return std::to_string(static_cast<std::uint64_t>(value_));
  std::ostringstream os;
  os << value_;
  return os.str();
}

void sort_canonical(std::vector<ClosedItemset>& itemsets) {
  std::sort(itemsets.begin(), itemsets.end(), [](const ClosedItemset& a, const ClosedItemset& b) {
    if (a.support != b.support) return a.support > b.support;
    return a.items < b.items;
  });
}

std::optional<ItemSet> closure(const ItemSet& items, const TransactionDatabase& db) {
  std::optional<ItemSet> acc;
  for (const auto& t : db.transactions()) {
    if (!std::includes(t.begin(), t.end(), items.begin(), items.end())) continue;
    if (!acc) {
      acc = t;
      continue;
    }
    ItemSet next;
    std::set_intersection(acc->begin(), acc->end(), t.begin(), t.end(), std::back_inserter(next));
    *acc = std::move(next);
  }
  return acc;
}

namespace {

// Set of transaction indices as a packed bit vector.
class TidSet {
 public:
  TidSet() = default;
  explicit TidSet(std::size_t n, bool full = false)
      : words_((n + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    if (full && n % 64 != 0) words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
  }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool subset_of(const TidSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
  }

  TidSet operator&(const TidSet& other) const {
    TidSet out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Generator {
  ItemSet items;  // universe positions, ascending
  TidSet tids;
  std::size_t support = 0;
  ItemSet closure;  // universe positions, ascending
};

class CloseMiner {
 public:
  CloseMiner(const TransactionDatabase& db, std::size_t minsup) : db_(db), minsup_(minsup) {
    const auto& universe = db.universe();
    const std::size_t n = db.size();
    item_tids_.assign(universe.size(), TidSet(n));
    for (std::size_t t = 0; t < n; ++t) {
      for (ItemId item : db.transactions()[t]) {
        auto pos = std::lower_bound(universe.begin(), universe.end(), item) - universe.begin();
        item_tids_[static_cast<std::size_t>(pos)].set(t);
      }
    }
  }

  std::vector<ClosedItemset> run() {
    const std::size_t n = db_.size();
    Generator root;
    root.tids = TidSet(n, true);
    root.support = n;
    root.closure = closure_of(root.tids);
    if (root.support < minsup_) return {};
    emit(root);

    // Level 1: single items outside closure({}); those inside it have the
    // support of the empty set and so are not minimal generators.
    std::vector<Generator> level;
    for (std::size_t i = 0; i < item_tids_.size(); ++i) {
      if (std::binary_search(root.closure.begin(), root.closure.end(), i)) continue;
      Generator g;
      g.items = {static_cast<ItemId>(i)};
      g.tids = item_tids_[i];
      g.support = g.tids.count();
      if (g.support < minsup_) continue;
      g.closure = closure_of(g.tids);
      emit(g);
      level.push_back(std::move(g));
    }

    while (!level.empty()) level = next_level(level);

    std::vector<ClosedItemset> out;
    out.reserve(found_.size());
    for (auto& [items, support] : found_) out.push_back({items, support});
    sort_canonical(out);
    return out;
  }

 private:
  ItemSet closure_of(const TidSet& tids) const {
    ItemSet out;
    for (std::size_t i = 0; i < item_tids_.size(); ++i) {
      if (tids.subset_of(item_tids_[i])) out.push_back(static_cast<ItemId>(i));
    }
    return out;
  }

  void emit(const Generator& g) {
    if (g.closure.empty()) return;  // the empty itemset is never reported
    ItemSet items;
    items.reserve(g.closure.size());
    for (ItemId pos : g.closure) items.push_back(db_.universe()[pos]);
    found_.emplace(std::move(items), g.support);
  }

  // Joins generators sharing all but their last item. A candidate survives
  // when every one-smaller subset is a generator, none of those subsets
  // already has the new item in its closure, and it is frequent.
  std::vector<Generator> next_level(const std::vector<Generator>& level) {
    std::map<ItemSet, const Generator*> index;
    for (const auto& g : level) index.emplace(g.items, &g);

    std::vector<Generator> next;
    for (std::size_t a = 0; a < level.size(); ++a) {
      for (std::size_t b = a + 1; b < level.size(); ++b) {
        const ItemSet& x = level[a].items;
        const ItemSet& y = level[b].items;
        if (!std::equal(x.begin(), x.end() - 1, y.begin(), y.end() - 1)) continue;

        ItemSet candidate = x;
        candidate.push_back(y.back());
        if (candidate[candidate.size() - 2] > candidate.back()) {
          std::swap(candidate[candidate.size() - 2], candidate.back());
        }
        if (!admissible(candidate, index)) continue;

        Generator g;
        g.tids = level[a].tids & level[b].tids;
        g.support = g.tids.count();
        if (g.support < minsup_) continue;
        g.items = std::move(candidate);
        g.closure = closure_of(g.tids);
        emit(g);
        next.push_back(std::move(g));
      }
    }
    std::sort(next.begin(), next.end(),
              [](const Generator& l, const Generator& r) { return l.items < r.items; });
    return next;
  }

  static bool admissible(const ItemSet& candidate, const std::map<ItemSet, const Generator*>& index) {
    for (std::size_t skip = 0; skip < candidate.size(); ++skip) {
      ItemSet subset;
      subset.reserve(candidate.size() - 1);
      for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (i != skip) subset.push_back(candidate[i]);
      }
      auto it = index.find(subset);
      if (it == index.end()) return false;
      const ItemSet& cl = it->second->closure;
      if (std::binary_search(cl.begin(), cl.end(), candidate[skip])) return false;
    }
    return true;
  }

  const TransactionDatabase& db_;
  std::size_t minsup_;
  std::vector<TidSet> item_tids_;
  std::map<ItemSet, std::size_t> found_;
};

void check_threshold(const TransactionDatabase& db, std::size_t resolved) {
  if (db.size() > 0 && resolved == 0) {
    throw ConfigError("minimum support resolves to 0");
  }
}

}  // namespace

std::vector<ClosedItemset> mine_closed(const TransactionDatabase& db, const MinSupport& minsup) {
  if (db.size() == 0) return {};
  std::size_t resolved = minsup.resolve(db.size());
  check_threshold(db, resolved);
  return CloseMiner(db, resolved).run();
}

std::vector<ClosedItemset> mine_bruteforce(const TransactionDatabase& db, const MinSupport& minsup) {
  const auto& universe = db.universe();
  if (universe.size() > kBruteForceMaxUniverse) {
    throw std::invalid_argument("brute-force miner refuses a universe of " +
                                std::to_string(universe.size()) + " items");
  }
  if (db.size() == 0) return {};
  std::size_t resolved = minsup.resolve(db.size());
  check_threshold(db, resolved);

  const std::size_t m = universe.size();
  const std::size_t subsets = std::size_t{1} << m;
  // exact[mask] counts transactions equal to mask; summing over supersets
  // turns it into the support of every subset.
  std::vector<std::size_t> support(subsets, 0);
  for (const auto& t : db.transactions()) {
    std::size_t mask = 0;
    for (ItemId item : t) {
      auto pos = std::lower_bound(universe.begin(), universe.end(), item) - universe.begin();
      mask |= std::size_t{1} << pos;
    }
    ++support[mask];
  }
  for (std::size_t bit = 0; bit < m; ++bit) {
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      if ((mask & (std::size_t{1} << bit)) == 0) support[mask] += support[mask | (std::size_t{1} << bit)];
    }
  }

  std::vector<ClosedItemset> out;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    if (support[mask] < resolved) continue;
    bool closed = true;
    for (std::size_t bit = 0; bit < m && closed; ++bit) {
      std::size_t b = std::size_t{1} << bit;
      if ((mask & b) == 0 && support[mask | b] == support[mask]) closed = false;
    }
    if (!closed) continue;
    ClosedItemset c;
    c.support = support[mask];
    for (std::size_t bit = 0; bit < m; ++bit) {
      if (mask & (std::size_t{1} << bit)) c.items.push_back(universe[bit]);
    }
    out.push_back(std::move(c));
  }
  sort_canonical(out);
  return out;
}

}  // namespace idxadvisor::mining
