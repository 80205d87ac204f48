#pragma once

#include <cstdint>
#include <vector>

#include "belyi/mass.hpp"
#include "belyi/permutation.hpp"

namespace belyi {

/// One isomorphism class of (possibly disconnected) coverings: a
/// simultaneous-conjugation orbit of monodromy triples.
struct CoveringClass {
  RamificationScheme scheme;
  MonodromyTriple triple;  // canonical: g0 = canonical_rep(lambda0), g1 minimal
  std::uint64_t aut_order = 0;
  bool connected = false;

  /// Checks the product relation, cycle types, connectivity flag and, for
  /// connected classes, that aut_order divides the degree. Throws InvariantError.
  void check() const;
};

struct EnumerateOptions {
  /// Upper bound on candidate-generator nodes per scheme; ResourceError past it.
  std::uint64_t node_budget = 4'000'000'000ULL;
  /// Classes smaller than this are iterated without product pruning.
  std::uint64_t plain_iteration_threshold = 64;
  int jobs = 1;
};

/// Every conjugation orbit of triples with the given cycle types, connected
/// and disconnected, sorted by g1's image array. One slot is fixed to a
/// canonical permutation and candidates for a second slot are generated up to
/// the centralizer of the first; results are reported in the original slot
/// order.
std::vector<CoveringClass> enumerate_classes(const RamificationScheme& s, const EnumerateOptions& opts = {});

/// Sum of 1/aut_order over connected classes.
Mass connected_mass(const RamificationScheme& s, const EnumerateOptions& opts = {});

std::uint64_t count_connected(const RamificationScheme& s, const EnumerateOptions& opts = {});

/// Sum of 1/aut_order over the given classes (all of them).
Mass total_class_mass(const std::vector<CoveringClass>& classes);

/// The slot order used by enumerate_classes: order[0] has the largest
/// centralizer, order[1] the largest of the remaining two.
std::array<int, 3> enumeration_slot_order(const RamificationScheme& s);

}  // namespace belyi
