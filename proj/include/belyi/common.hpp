#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace belyi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Largest degree the fixed-width search kernels are compiled for.
inline constexpr int kMaxDegree = 32;

// Default soft cap on degrees; lifted explicitly by callers (--allow-large).
inline constexpr int kDefaultDegreeCap = 12;

/// Malformed user input: bad cycle notation, unequal degrees, and so on.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed its configured budget. Never a silent truncation.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

BigInt factorial(int n);

}  // namespace belyi
