#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace idxadvisor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitInput = 2;

/// Environment variable consulted when --out is not given.
inline constexpr const char* kOutDirEnv = "IDXADVISOR_OUT";

struct RunConfig {
  std::filesystem::path workload_path;
  std::filesystem::path schema_path;
  std::optional<std::filesystem::path> stats_path;
  std::string minsup = "0.10";
  std::string strategy = "all";
  std::uint64_t threshold_rows = 100000;
  bool maximal_only = true;
  std::string policy = "where,join,group-by,order-by,having";
  std::filesystem::path out_dir = "idxadvisor-out";
  std::string dialect = "generic";
  std::string index_prefix = "idx";
  bool dump_itemsets = false;
  bool verbose = false;
};

/// parse -> extract -> mine -> derive -> select -> score -> emit. Writes
/// recommendation.sql, report.txt and report.dat into out_dir and prints the
/// text report to `out`. Returns 0, 1 (configuration) or 2 (input files).
int run_recommend(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Stops after mining and prints `support<TAB>items` lines to `out`.
int run_mine_debug(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses flags (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idxadvisor::cli
