#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "belyi/census.hpp"
#include "belyi/enumerate.hpp"

namespace belyi {

struct VerifyReport {
  std::uint64_t schemes = 0;
  std::uint64_t classes = 0;            // all classes, connected or not
  std::uint64_t connected_classes = 0;
  std::vector<std::string> failures;    // one message per violated check

  bool ok() const { return failures.empty(); }
};

/// Cross-checks for one ordered scheme:
///  - character-formula mass equals sum 1/aut over all enumerated classes,
///  - the rooted connected search agrees with the connected enumerated classes,
///  - every connected class has aut order dividing n and Euler genus equal to
///    the Riemann-Hurwitz genus.
void verify_scheme(const RamificationScheme& s, VerifyReport& report, const EnumerateOptions& opts = {});

/// verify_scheme over every scheme of degree n (all genera when genus is
/// empty).
VerifyReport verify_degree(int n, std::optional<int> genus, const EnumerateOptions& opts = {});

}  // namespace belyi
