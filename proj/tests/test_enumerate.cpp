#include <random>
#include <set>

#include "belyi/canonical.hpp"
#include "belyi/enumerate.hpp"
#include "belyi/hypermap_search.hpp"
#include "belyi/verify.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace belyi;

namespace {

RamificationScheme scheme(const char* text) { return RamificationScheme::parse(text); }

const char* kTorusTriple = "(1)(2,3,4,5,6)|(4,2,1)(3,5,6)|(1,6,4)(2,3,5)";

std::vector<std::uint64_t> connected_auts(const std::vector<CoveringClass>& classes) {
  std::vector<std::uint64_t> out;
  for (const auto& c : classes)
    if (c.connected) out.push_back(c.aut_order);
  std::sort(out.begin(), out.end());
  return out;
}

// Orbits of (g0, g1) pairs under conjugation, by brute force over S_n.
struct BruteOrbits {
  std::size_t total = 0;
  std::size_t connected = 0;
  std::vector<std::size_t> connected_aut;
};

BruteOrbits brute_orbits(const RamificationScheme& s) {
  const int n = s.degree();
  std::vector<oracle::Images> all;
  oracle::for_each_perm(n, [&](const oracle::Images& p) { all.push_back(p); });
  auto inv = [](const oracle::Images& p) {
    oracle::Images r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return r;
  };
  std::set<std::pair<oracle::Images, oracle::Images>> solutions;
  for (const auto& a : all) {
    if (oracle::cycle_lengths(a) != s.lambda0.parts()) continue;
    for (const auto& b : all) {
      if (oracle::cycle_lengths(b) != s.lambda1.parts()) continue;
      if (oracle::cycle_lengths(inv(oracle::compose(a, b))) != s.lambda_inf.parts()) continue;
      solutions.insert({a, b});
    }
  }
  BruteOrbits out;
  std::set<std::pair<oracle::Images, oracle::Images>> seen;
  for (const auto& sol : solutions) {
    if (seen.count(sol)) continue;
    std::size_t stabilizer = 0;
    for (const auto& c : all) {
      auto ci = inv(c);
      std::pair<oracle::Images, oracle::Images> moved{oracle::compose(oracle::compose(ci, sol.first), c),
                                                     oracle::compose(oracle::compose(ci, sol.second), c)};
      stabilizer += moved == sol;
      seen.insert(moved);
    }
    ++out.total;
    // Connectivity: orbit of 0 under a and b.
    std::vector<char> reached(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    reached[0] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto* g : {&sol.first, &sol.second}) {
        int y = (*g)[static_cast<std::size_t>(x)];
        if (!reached[static_cast<std::size_t>(y)]) {
          reached[static_cast<std::size_t>(y)] = 1;
          stack.push_back(y);
        }
      }
    }
    if (std::all_of(reached.begin(), reached.end(), [](char r) { return r != 0; })) {
      ++out.connected;
      out.connected_aut.push_back(stabilizer);
    }
  }
  std::sort(out.connected_aut.begin(), out.connected_aut.end());
  return out;
}

}  // namespace

TEST_CASE("genus-one reference schemes") {
  auto hex = enumerate_classes(scheme("6|3,3|2,2,2"));
  CHECK(connected_auts(hex) == std::vector<std::uint64_t>{6});

  auto tri = enumerate_classes(scheme("5,1|3,3|3,3"));
  CHECK(connected_auts(tri) == std::vector<std::uint64_t>{1});

  auto big = scheme("6,2|6,1,1|4,2,2");
  CHECK(count_connected(big) == 16);
  CHECK(connected_mass(big) == Mass(15, 1));
  CHECK(total_class_mass(enumerate_classes(big)) == frobenius_mass(big));
}

TEST_CASE("the reference torus triple is found up to conjugation") {
  auto t = MonodromyTriple::parse(kTorusTriple, 6);
  CHECK(t.scheme() == scheme("5,1|3,3|3,3"));
  auto classes = enumerate_classes(t.scheme());
  REQUIRE(classes.size() == 1);
  auto c = find_conjugator(classes[0].triple, t);
  REQUIRE(c.has_value());
  for (int i = 0; i < 3; ++i) CHECK(conjugate(classes[0].triple.slot(i), *c) == t.slot(i));
  CHECK(canonical_triple(t) == classes[0].triple);

  // Independent search over S_6 for a conjugator.
  std::size_t found = 0;
  oracle::for_each_perm(6, [&](const oracle::Images& ci) {
    auto cp = Permutation::from_images(ci);
    found += conjugate(classes[0].triple.g0, cp) == t.g0 && conjugate(classes[0].triple.g1, cp) == t.g1;
  });
  CHECK(found == 1);  // trivial automorphism group
}

TEST_CASE("find_conjugator rejects non-conjugate triples") {
  auto a = MonodromyTriple::parse("(1,2)|(1,2)|()", 2);
  auto b = MonodromyTriple::parse("()|()|()", 2);
  CHECK_FALSE(find_conjugator(a, b).has_value());
  auto classes = enumerate_classes(scheme("3,1|3,1|2,2"));
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j)
      CHECK(find_conjugator(classes[i].triple, classes[j].triple).has_value() == (i == j));
}

TEST_CASE("canonical form is a class invariant") {
  std::mt19937 rng(3);
  for (int n = 2; n <= 9; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<int> a(static_cast<std::size_t>(n)), b(a.size()), c(a.size());
      std::iota(a.begin(), a.end(), 0);
      b = a;
      c = a;
      std::shuffle(a.begin(), a.end(), rng);
      std::shuffle(b.begin(), b.end(), rng);
      std::shuffle(c.begin(), c.end(), rng);
      auto t = MonodromyTriple::from_pair(Permutation::from_images(a), Permutation::from_images(b));
      auto cp = Permutation::from_images(c);
      auto u = MonodromyTriple::from_pair(conjugate(t.g0, cp), conjugate(t.g1, cp));
      auto ct = canonicalize_pair(t.g0, t.g1);
      auto cu = canonicalize_pair(u.g0, u.g1);
      CHECK(ct.g1_images == cu.g1_images);
      CHECK(ct.aut_order == cu.aut_order);
      CHECK(canonical_triple(t).g0 == canonical_rep(cycle_type(t.g0)));
      auto k = find_conjugator(t, u);
      REQUIRE(k.has_value());
      CHECK(conjugate(t.g1, *k) == u.g1);
    }
  }
}

TEST_CASE("enumeration matches brute-force orbits") {
  for (int n = 1; n <= 5; ++n) {
    auto parts = partitions_of(n);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& c : parts) {
          RamificationScheme s(a, b, c);
          auto brute = brute_orbits(s);
          auto classes = enumerate_classes(s);
          CHECK_MESSAGE(classes.size() == brute.total, s.to_string());
          auto auts = connected_auts(classes);
          CHECK(auts.size() == brute.connected);
          CHECK(std::equal(auts.begin(), auts.end(), brute.connected_aut.begin(), brute.connected_aut.end()));
        }
  }
  for (const char* text : {"6|3,3|2,2,2", "5,1|3,3|3,3", "4,2|3,3|3,1,1,1", "3,3|3,3|3,3", "2,2,2|2,2,2|3,3"}) {
    auto s = scheme(text);
    auto brute = brute_orbits(s);
    auto classes = enumerate_classes(s);
    CHECK_MESSAGE(classes.size() == brute.total, text);
    auto auts = connected_auts(classes);
    CHECK(std::equal(auts.begin(), auts.end(), brute.connected_aut.begin(), brute.connected_aut.end()));
  }
}

TEST_CASE("class masses equal the character formula") {
  for (int n = 1; n <= 7; ++n) {
    for (int g = 0; g <= 2; ++g) {
      for (const auto& s : schemes_of_genus(n, g)) {
        auto classes = enumerate_classes(s);
        CHECK_MESSAGE(total_class_mass(classes) == frobenius_mass(s), s.to_string());
        for (const auto& c : classes) {
          CHECK_NOTHROW(c.check());
          if (c.connected) CHECK(n % static_cast<int>(c.aut_order) == 0);
        }
      }
    }
  }
  for (const char* text : {"8|4,4|2,2,2,2", "6,2|6,1,1|4,2,2", "4,4|4,4|2,2,2,2", "5,3|3,3,2|4,4", "2,2,2,2|2,2,2,2|2,2,2,2"}) {
    auto s = scheme(text);
    CHECK_MESSAGE(total_class_mass(enumerate_classes(s)) == frobenius_mass(s), text);
  }
}

TEST_CASE("parity failures have no classes") {
  CHECK(enumerate_classes(scheme("3|3|2,1")).empty());
  CHECK(count_connected(scheme("4|4|2,1,1")) == 0);
}

TEST_CASE("parallel enumeration is deterministic") {
  for (const char* text : {"6,2|6,1,1|4,2,2", "3,3|3,3|3,3", "4,4|4,4|2,2,2,2"}) {
    auto s = scheme(text);
    EnumerateOptions one, four;
    four.jobs = 4;
    auto a = enumerate_classes(s, one);
    auto b = enumerate_classes(s, four);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].triple == b[i].triple);
      CHECK(a[i].aut_order == b[i].aut_order);
    }
  }
}

TEST_CASE("node budget is enforced") {
  EnumerateOptions opts;
  opts.node_budget = 10;
  CHECK_THROWS_AS(enumerate_classes(scheme("6,2|6,1,1|4,2,2"), opts), ResourceError);
  RootedSearchOptions ropts;
  ropts.node_budget = 10;
  CHECK_THROWS_AS(search_connected(scheme("6,2|6,1,1|4,2,2"), ropts), ResourceError);
}

TEST_CASE("rooted search agrees with the fixed-slot enumerator") {
  for (int n = 1; n <= 7; ++n) {
    for (int g = 0; g <= 1; ++g) {
      for (const auto& s : schemes_of_genus(n, g)) {
        VerifyReport report;
        verify_scheme(s, report);
        CHECK_MESSAGE(report.ok(), (report.failures.empty() ? "" : report.failures.front()));
      }
    }
  }
}

TEST_CASE("rooted search sharding and pruning do not change results") {
  auto s = scheme("6,2|6,1,1|4,2,2");
  auto whole = search_connected(s);
  CHECK(whole.classes == 16);
  ConnectedTally merged;
  for (int shard = 0; shard < 5; ++shard) {
    RootedSearchOptions o;
    o.shard = shard;
    o.shards = 5;
    merged.merge(search_connected(s, o));
  }
  CHECK(merged.classes == whole.classes);
  CHECK(merged.aut_histogram == whole.aut_histogram);
  RootedSearchOptions plain;
  plain.prefix_pruning = false;
  auto unpruned = search_connected(s, plain);
  CHECK(unpruned.aut_histogram == whole.aut_histogram);
}

TEST_CASE("rooted search with several thirds at once") {
  auto a = Partition({3, 3});
  auto b = Partition({3, 3});
  std::vector<Partition> thirds;
  for (const auto& p : partitions_of(6)) thirds.push_back(p);
  auto tallies = search_connected(a, b, thirds);
  REQUIRE(tallies.size() == thirds.size());
  for (std::size_t i = 0; i < thirds.size(); ++i)
    CHECK(tallies[i].classes == count_connected(RamificationScheme(a, b, thirds[i])));
}
