#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "belyi/partition.hpp"

namespace belyi {

/// A bijection of {1..n}. Stored 0-based; all text I/O is 1-based cycle
/// notation.
class Permutation {
 public:
  Permutation() = default;
  /// Identity of the given degree.
  explicit Permutation(int degree);

  /// images[i] is the image of point i, 0-based. Throws InputError unless
  /// the array is a bijection of {0..n-1}.
  static Permutation from_images(std::vector<int> images);

  /// Parses "(2,3,4,5,6)" or "(1)(2,3,4,5,6)"; fixed points may be omitted.
  /// The empty string and "()" denote the identity.
  static Permutation parse(std::string_view cycles, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[static_cast<std::size_t>(point)]; }
  std::span<const int> images() const { return images_; }

  bool is_identity() const;

  /// Cycles (0-based), each rotated to start at its smallest point, sorted by
  /// that point. Fixed points are included.
  std::vector<std::vector<int>> cycles() const;

  /// Cycle notation, 1-based, fixed points omitted; "()" for the identity.
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;
  std::strong_ordering operator<=>(const Permutation& other) const {
    return images_ <=> other.images_;
  }

 private:
  std::vector<int> images_;
};

/// Left-to-right product: apply p first, then q, so (p*q)(x) = q(p(x)).
Permutation compose(const Permutation& p, const Permutation& q);

Permutation inverse(const Permutation& p);

Partition cycle_type(const Permutation& p);

/// c^-1 * p * c under the left-to-right product: relabels p by c, so that
/// conjugate(p, c)(c(x)) == c(p(x)).
Permutation conjugate(const Permutation& p, const Permutation& c);

/// Cycles of decreasing length filled with 1, 2, 3, ...: [3,2] -> (1,2,3)(4,5).
Permutation canonical_rep(const Partition& lambda);

/// Generators of the centralizer of p in S_n: one rotation per cycle and one
/// swap for every pair of consecutive cycles of equal length.
std::vector<Permutation> centralizer_generators(const Permutation& p);

/// True iff the orbit of the first point under the generated group is
/// everything.
bool is_transitive(std::span<const Permutation> gens, int n);

/// Monodromy data over 0, 1 and infinity with g0 * g1 * g_inf = id.
struct MonodromyTriple {
  Permutation g0;
  Permutation g1;
  Permutation g_inf;

  /// Builds the triple from (g0, g1); g_inf = (g0 * g1)^-1.
  static MonodromyTriple from_pair(Permutation g0, Permutation g1);

  /// "(1)(2,3,4,5,6)|(4,2,1)(3,5,6)|(1,6,4)(2,3,5)".
  static MonodromyTriple parse(std::string_view text, int degree);

  int degree() const { return g0.degree(); }
  const Permutation& slot(int i) const;
  bool multiplies_to_identity() const;
  RamificationScheme scheme() const;
  bool transitive() const;
  std::string to_string() const;

  bool operator==(const MonodromyTriple&) const = default;
};

/// Reorders the three slots: result slot i comes from input slot order[i].
/// Odd reorderings invert all three permutations so the product relation
/// still holds. Classes, automorphism groups and connectivity are preserved.
MonodromyTriple permute_slots(const MonodromyTriple& t, const std::array<int, 3>& order);

}  // namespace belyi
