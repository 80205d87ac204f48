#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "belyi/permutation.hpp"

namespace belyi {

/// Canonical form of a pair (g0, g1) under simultaneous conjugation: g0 is
/// relabeled to canonical_rep(cycle_type(g0)) and, among all such
/// relabelings, g1's image array is the lexicographically smallest.
struct CanonicalPair {
  std::vector<int> g1_images;   // 0-based images of the canonical g1
  std::uint64_t aut_order = 0;  // relabelings attaining the minimum
  Permutation labeling;         // one minimizing relabeling, original -> canonical
};

CanonicalPair canonicalize_pair(const Permutation& g0, const Permutation& g1);

/// Orbit representative: g0 = canonical_rep(lambda0), g1 minimal.
MonodromyTriple canonical_triple(const MonodromyTriple& t);

/// c with conjugate(a.gi, c) == b.gi for all three slots, if one exists.
std::optional<Permutation> find_conjugator(const MonodromyTriple& a, const MonodromyTriple& b);

}  // namespace belyi
