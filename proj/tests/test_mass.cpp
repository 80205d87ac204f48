#include <random>

#include "belyi/mass.hpp"
#include "doctest.h"

using namespace belyi;

namespace {

RamificationScheme scheme(const char* text) { return RamificationScheme::parse(text); }

}  // namespace

TEST_CASE("mass text form") {
  CHECK(Mass(1, 2).to_string() == "1/2");
  CHECK(Mass(4, 2).to_string() == "2");
  CHECK(Mass().to_string() == "0");
  CHECK(Mass::parse("5/9") == Mass(5, 9));
  CHECK(Mass::parse("17") == Mass(17, 1));
  CHECK_THROWS_AS(Mass::parse("x"), InputError);
  CHECK_THROWS_AS(Mass::parse("1/0"), InputError);
  CHECK_THROWS_AS(Mass(-1, 2), InvariantError);
  CHECK(Mass(1, 3) + Mass(1, 6) == Mass(1, 2));
  CHECK(Mass(1, 3) < Mass(1, 2));
}

TEST_CASE("known masses") {
  CHECK(frobenius_mass(scheme("1|1|1")) == Mass(1, 1));
  CHECK(frobenius_mass(scheme("2|2|1,1")) == Mass(1, 2));
  CHECK(frobenius_mass(scheme("6|3,3|2,2,2")) == Mass(1, 6));
  CHECK(frobenius_mass(scheme("5,1|3,3|3,3")) == Mass(1, 1));
  CHECK(frobenius_mass(scheme("6,2|6,1,1|4,2,2")) == Mass(17, 1));
  CHECK(frobenius_mass(scheme("3,3|3,3|3,3")) == Mass(5, 9));
  // Identity everywhere: one covering with the whole of S_n as automorphisms.
  CHECK(frobenius_mass(scheme("1,1,1,1|1,1,1,1|1,1,1,1")) == Mass(1, 24));
}

TEST_CASE("parity obstruction gives zero mass") {
  CHECK(frobenius_mass(scheme("3|3|2,1")).is_zero());
  for (int n = 1; n <= 8; ++n) {
    auto parts = partitions_of(n);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& c : parts)
          if ((3 * n - a.length() - b.length() - c.length()) % 2 != 0)
            CHECK(frobenius_mass(RamificationScheme(a, b, c)).is_zero());
  }
}

TEST_CASE("character sum equals brute-force counting") {
  for (int n = 1; n <= 6; ++n) {
    auto parts = partitions_of(n);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& c : parts) {
          RamificationScheme s(a, b, c);
          CHECK_MESSAGE(frobenius_mass(s) == bruteforce_mass(s), s.to_string());
        }
  }
  std::mt19937 rng(77);
  auto parts7 = partitions_of(7);
  std::uniform_int_distribution<std::size_t> pick(0, parts7.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    RamificationScheme s(parts7[pick(rng)], parts7[pick(rng)], parts7[pick(rng)]);
    CHECK_MESSAGE(frobenius_mass(s) == bruteforce_mass(s), s.to_string());
  }
}

TEST_CASE("brute force refuses large degrees") {
  CHECK_THROWS_AS(bruteforce_mass(scheme("8|8|1,1,1,1,1,1,1,1")), ResourceError);
}

TEST_CASE("mass times n! is an integer") {
  // mass * n! is the number of triples with the given types.
  for (int n = 1; n <= 10; ++n) {
    auto table = character_table(n);
    for (const auto& s : schemes_of_genus(n, n <= 8 ? 1 : 0)) {
      auto m = frobenius_mass(s, *table);
      Rational scaled = m.value() * Rational(factorial(n));
      CHECK(boost::multiprecision::denominator(scaled) == 1);
    }
  }
}

TEST_CASE("mass is symmetric in the three slots") {
  const std::array<std::array<int, 3>, 5> orders{{{1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
  for (int n = 1; n <= 8; ++n) {
    auto table = character_table(n);
    for (int g = 0; g <= 1; ++g) {
      for (const auto& s : schemes_of_genus(n, g)) {
        auto m = frobenius_mass(s, *table);
        for (const auto& o : orders) {
          RamificationScheme t(s.slot(o[0]), s.slot(o[1]), s.slot(o[2]));
          CHECK(frobenius_mass(t, *table) == m);
        }
      }
    }
  }
}
