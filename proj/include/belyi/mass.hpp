#pragma once

#include <string>

#include "belyi/characters.hpp"
#include "belyi/partition.hpp"

namespace belyi {

/// Exact nonnegative rational: an automorphism-weighted count of coverings.
class Mass {
 public:
  Mass() = default;
  explicit Mass(Rational value);
  Mass(BigInt numerator, BigInt denominator);

  const Rational& value() const { return value_; }
  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  bool is_zero() const { return value_ == 0; }

  /// "p/q" in lowest terms, or "p" for integers.
  std::string to_string() const;
  static Mass parse(const std::string& text);

  Mass& operator+=(const Mass& other) {
    value_ += other.value_;
    return *this;
  }
  friend Mass operator+(Mass a, const Mass& b) { return a += b; }
  bool operator==(const Mass& other) const { return value_ == other.value_; }
  auto operator<=>(const Mass& other) const {
    if (value_ < other.value_) return std::strong_ordering::less;
    if (value_ > other.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_ = 0;
};

/// Total mass sum 1/|Aut| over all coverings with these cycle types,
/// connected or not, via the character sum
///   |C0||C1||Cinf| / (n!)^2 * sum_chi chi(c0) chi(c1) chi(cinf) / chi(1).
Mass frobenius_mass(const RamificationScheme& s, const CharacterTable& table);
Mass frobenius_mass(const RamificationScheme& s);

/// Independent oracle: fixes g0, scans every permutation of S_n for g1 and
/// counts solutions. Throws ResourceError beyond degree 7.
Mass bruteforce_mass(const RamificationScheme& s);

inline constexpr int kBruteforceMaxDegree = 7;

}  // namespace belyi
