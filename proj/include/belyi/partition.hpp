#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "belyi/common.hpp"

namespace belyi {

/// A weakly decreasing sequence of positive integers; used as a cycle type
/// and as a conjugacy-class label in S_n.
class Partition {
 public:
  Partition() = default;
  /// Parts may come in any order; they are normalized to weakly decreasing.
  explicit Partition(std::vector<int> parts);

  /// Accepts "6,1,1", "1,5" or "[1,5]"; order of parts is irrelevant.
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int degree() const { return degree_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  /// multiplicities()[i] is the number of parts equal to i (index 0 unused).
  std::vector<int> multiplicities() const;

  /// Conjugate (transposed) partition.
  Partition transpose() const;

  /// "6,1,1"
  std::string to_string() const;
  /// "[6,1,1]"
  std::string bracketed() const;

  bool operator==(const Partition&) const = default;
  /// Plain lexicographic order on parts. Listings use the reverse of it.
  std::strong_ordering operator<=>(const Partition& other) const {
    return parts_ <=> other.parts_;
  }

 private:
  std::vector<int> parts_;
  int degree_ = 0;
};

/// Ordered triple of cycle types over 0, 1 and infinity.
struct RamificationScheme {
  Partition lambda0;
  Partition lambda1;
  Partition lambda_inf;

  RamificationScheme() = default;
  RamificationScheme(Partition l0, Partition l1, Partition linf);

  /// "6,2|6,1,1|4,2,2"; each part list may be bracketed and in any order.
  static RamificationScheme parse(std::string_view text);

  int degree() const { return lambda0.degree(); }
  const Partition& slot(int i) const;

  /// "6,2|6,1,1|4,2,2"
  std::string to_string() const;
  /// "[6,2][6,1,1][4,2,2]"
  std::string bracketed() const;

  bool operator==(const RamificationScheme&) const = default;
  auto operator<=>(const RamificationScheme&) const = default;
};

/// All partitions of n in reverse-lexicographic order ([n] first, [1^n] last).
std::vector<Partition> partitions_of(int n);

/// Number of permutations of cycle type lambda: n! / z_lambda.
BigInt class_size(const Partition& lambda);

/// z_lambda = prod_i i^{m_i} m_i!, the order of the centralizer of any
/// permutation with this cycle type.
BigInt centralizer_order(const Partition& lambda);

/// Riemann-Hurwitz genus of a three-point covering with this scheme, or
/// nullopt when the parity obstruction fails or the genus would be negative.
std::optional<int> genus_of(const RamificationScheme& s);

/// Ordered schemes of degree n and genus g, in componentwise
/// reverse-lexicographic order.
std::vector<RamificationScheme> schemes_of_genus(int n, int g);

}  // namespace belyi
