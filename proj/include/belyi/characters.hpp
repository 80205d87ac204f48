#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "belyi/partition.hpp"

namespace belyi {

/// chi_lambda(mu) by the Murnaghan-Nakayama border-strip recursion, memoized.
/// Exact; throws InvariantError on 64-bit overflow.
std::int64_t mn_character(const Partition& lambda, const Partition& mu);

/// n! divided by the product of hook lengths.
BigInt dimension(const Partition& lambda);

/// Irreducible character table of S_n. Rows are irreps, columns are classes,
/// both in reverse-lexicographic partition order.
struct CharacterTable {
  static constexpr int kFormatVersion = 1;

  int n = 0;
  std::vector<Partition> irreps;
  std::vector<Partition> classes;
  std::vector<std::int64_t> values;  // row-major, irreps x classes

  std::int64_t at(std::size_t irrep, std::size_t cls) const { return values[irrep * classes.size() + cls]; }
  std::size_t size() const { return irreps.size(); }

  /// Index of a class label; throws on an unknown partition.
  std::size_t class_index(const Partition& mu) const;

  /// Column of the identity class, i.e. the irrep dimensions.
  std::size_t identity_class() const { return classes.size() - 1; }

  /// Both orthogonality relations, exactly. Also checks labels are the
  /// partitions of n in the expected order.
  bool verify() const;

  std::string to_json() const;
  /// Throws InputError on malformed documents; does not verify.
  static CharacterTable from_json(const std::string& text);
};

/// Computes the table directly, bypassing all caches.
CharacterTable compute_character_table(int n);

/// Shared, immutable table for S_n. With a cache directory the table is read
/// from (and written to) "<dir>/chartable-<n>.json"; loaded tables are verified
/// and a corrupt file is recomputed, overwritten and reported on stderr.
std::shared_ptr<const CharacterTable> character_table(
    int n, const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

std::filesystem::path character_cache_file(const std::filesystem::path& dir, int n);

}  // namespace belyi
