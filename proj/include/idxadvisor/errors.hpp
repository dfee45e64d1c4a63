#pragma once

#include <stdexcept>
#include <string>

namespace idxadvisor {

/// Invalid user configuration: bad flags, bad thresholds, missing statistics
/// required by the chosen strategy. The CLI maps it to exit status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-level input failure: unreadable file, malformed encoding, malformed
/// schema or stats file. The CLI maps it to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookup of a table that has no statistics in the catalog snapshot.
class MissingStatsError : public ConfigError {
 public:
  explicit MissingStatsError(const std::string& table)
      : ConfigError("no statistics for table '" + table + "'"), table_(table) {}

  const std::string& table() const noexcept { return table_; }

 private:
  std::string table_;
};

}  // namespace idxadvisor
