#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "belyi/mass.hpp"
#include "belyi/permutation.hpp"

namespace belyi {

/// Classification of one ordered ramification scheme.
struct CensusRow {
  int degree = 0;
  RamificationScheme scheme;
  int genus = 0;
  std::uint64_t num_connected = 0;
  /// (aut order, number of connected classes with it), increasing aut order.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> aut_counts;
  Mass total_mass;      // character formula: all coverings, connected or not
  Mass connected_mass;  // sum of 1/aut over connected classes
  bool exceptional = false;
  std::optional<MonodromyTriple> representative;  // canonical, iff exceptional

  /// One entry per connected class, sorted.
  std::vector<std::uint64_t> aut_orders() const;
  /// Disconnected coverings share the scheme, so total_mass exceeds the
  /// connected mass.
  bool disconnected_companion() const { return total_mass > connected_mass; }
  /// Throws InvariantError if the row is internally inconsistent.
  void check() const;
};

struct CensusSummary {
  int degree = 0;
  int genus = 0;
  std::uint64_t schemes_examined = 0;
  std::uint64_t schemes_realized = 0;  // rows emitted
  std::uint64_t classes = 0;           // connected classes over all rows
  std::uint64_t exceptional = 0;
  bool loaded_from_store = false;
};

struct CensusResult {
  std::vector<CensusRow> rows;
  CensusSummary summary;
};

enum class CensusEngine {
  /// Rooted breadth-first labelings, one search per unordered scheme.
  kRooted,
  /// enumerate_classes on every ordered scheme (slow; cross-check only).
  kFixedSlot,
};

struct CensusOptions {
  int jobs = 1;
  CensusEngine engine = CensusEngine::kRooted;
  std::uint64_t node_budget = ~std::uint64_t{0};
  bool allow_large = false;
  std::optional<std::filesystem::path> cache_dir;
  /// Restrict to schemes accepted by this predicate (used by --scheme).
  std::function<bool(const RamificationScheme&)> filter;
};

/// One row per ordered scheme of degree n and genus g that has at least one
/// connected covering, in scheme order.
CensusResult run_census(int n, int g, const CensusOptions& opts = {});
std::vector<CensusRow> census(int n, int g, const CensusOptions& opts = {});

/// A single ordered scheme, computed directly (rows are also produced for
/// schemes without connected coverings).
CensusRow classify_scheme(const RamificationScheme& s, const CensusOptions& opts = {});

/// Persisted census results, one file per (degree, genus).
class ResultStore {
 public:
  static constexpr int kFormatVersion = 1;

  explicit ResultStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(int n, int g) const;
  /// True if a complete file with the current format version exists.
  bool has(int n, int g) const;
  CensusResult load(int n, int g) const;
  /// Atomic replace; throws ResourceError on write failure.
  void save(const CensusResult& result) const;

 private:
  std::filesystem::path dir_;
};

/// Runs census per degree in [n_min, n_max], skipping degrees already in the
/// store and persisting each finished degree.
std::vector<CensusSummary> run_range(int n_min, int n_max, int g, const ResultStore& store,
                                     const CensusOptions& opts = {});

enum class OutputFormat { kCsv, kJson };

void write_rows(std::ostream& out, const std::vector<CensusRow>& rows, OutputFormat format);
std::string csv_header();
std::string to_csv(const CensusRow& row);
/// Parses the JSON document produced by write_rows.
std::vector<CensusRow> parse_json_rows(const std::string& text);

}  // namespace belyi
