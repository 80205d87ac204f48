#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "belyi/permutation.hpp"

namespace belyi {

/// Connected classes found for one ramification scheme.
struct ConnectedTally {
  std::uint64_t classes = 0;
  std::map<std::uint64_t, std::uint64_t> aut_histogram;  // aut order -> number of classes
  std::optional<MonodromyTriple> representative;         // some member, any class
  /// Every class as (aut order, member), when collection was requested.
  std::vector<std::pair<std::uint64_t, MonodromyTriple>> members;

  void add(std::uint64_t aut_order, const MonodromyTriple* triple);
  void merge(const ConnectedTally& other);
};

struct RootedSearchOptions {
  std::uint64_t node_budget = ~std::uint64_t{0};
  /// Only explore the shard-th residue class of subtrees at a fixed depth.
  int shard = 0;
  int shards = 1;
  /// Reject partial labelings that are already beaten by another root.
  bool prefix_pruning = true;
  /// Keep one member of every class in ConnectedTally::members.
  bool collect_members = false;
};

/// Connected coverings with g0 of type `a`, g1 of type `b` and product type in
/// `thirds` (the cycle type of g_inf). Works on rooted labelings: every
/// transitive pair is labeled by breadth-first discovery from a root point,
/// and a class is counted at the root whose labeling is lexicographically
/// smallest; the number of roots giving that same labeling is |Aut|.
/// Returns one tally per entry of `thirds`, in the same order.
std::vector<ConnectedTally> search_connected(const Partition& a, const Partition& b,
                                             const std::vector<Partition>& thirds,
                                             const RootedSearchOptions& opts = {});

/// Convenience for a single scheme, in its own slot order.
ConnectedTally search_connected(const RamificationScheme& s, const RootedSearchOptions& opts = {});

}  // namespace belyi
