#include <filesystem>
#include <fstream>
#include <random>

#include "belyi/characters.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace belyi;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("belyi-test-" + name + "-" + std::to_string(std::random_device{}()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("S3 table") {
  auto t = compute_character_table(3);
  // Rows [3],[2,1],[1,1,1]; columns [3],[2,1],[1,1,1].
  const std::vector<std::int64_t> expected{1, 1, 1, -1, 0, 2, 1, -1, 1};
  CHECK(t.values == expected);
  CHECK(t.identity_class() == 2);
  CHECK(t.class_index(Partition({2, 1})) == 1);
  CHECK_THROWS(t.class_index(Partition({4})));
}

TEST_CASE("Murnaghan-Nakayama agrees with the Frobenius formula") {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& lambda : partitions_of(n))
      for (const auto& mu : partitions_of(n))
        CHECK(mn_character(lambda, mu) == oracle::frobenius_character(lambda.parts(), mu.parts()));
  }
}

TEST_CASE("dimensions") {
  CHECK(dimension(Partition({3, 2})) == 5);
  CHECK(dimension(Partition({6, 1, 1})) == 21);
  for (int n = 1; n <= 12; ++n) {
    BigInt sum = 0;
    auto identity = Partition(std::vector<int>(static_cast<std::size_t>(n), 1));
    for (const auto& lambda : partitions_of(n)) {
      CHECK(dimension(lambda) == BigInt(mn_character(lambda, identity)));
      sum += dimension(lambda) * dimension(lambda);
    }
    CHECK(sum == factorial(n));
  }
}

TEST_CASE("tables satisfy both orthogonality relations") {
  for (int n = 1; n <= 10; ++n) {
    auto t = compute_character_table(n);
    CHECK(t.verify());
    // Independent check of column orthogonality at the identity column.
    const auto k = t.size();
    for (std::size_t c = 0; c < k; ++c) {
      BigInt dot = 0;
      for (std::size_t r = 0; r < k; ++r) dot += BigInt(t.at(r, c)) * t.at(r, c);
      CHECK(dot == centralizer_order(t.classes[c]));
    }
  }
  auto t12 = compute_character_table(12);
  CHECK(t12.size() == 77);
  CHECK(t12.verify());
}

TEST_CASE("tensoring with the sign character transposes") {
  for (int n = 1; n <= 8; ++n)
    for (const auto& lambda : partitions_of(n))
      for (const auto& mu : partitions_of(n)) {
        const int sign = (n - mu.length()) % 2 ? -1 : 1;
        CHECK(mn_character(lambda.transpose(), mu) == sign * mn_character(lambda, mu));
      }
}

TEST_CASE("verify rejects a tampered table") {
  auto t = compute_character_table(5);
  t.values[3] += 1;
  CHECK_FALSE(t.verify());
  auto u = compute_character_table(5);
  std::swap(u.irreps[0], u.irreps[1]);
  CHECK_FALSE(u.verify());
}

TEST_CASE("json round trip") {
  for (int n = 1; n <= 8; ++n) {
    auto t = compute_character_table(n);
    auto u = CharacterTable::from_json(t.to_json());
    CHECK(u.n == t.n);
    CHECK(u.irreps == t.irreps);
    CHECK(u.classes == t.classes);
    CHECK(u.values == t.values);
  }
  CHECK_THROWS_AS(CharacterTable::from_json("{"), InputError);
  CHECK_THROWS_AS(CharacterTable::from_json("{\"n\": 3}"), InputError);
}

TEST_CASE("disk cache writes, reloads and repairs") {
  auto dir = fresh_dir("chars");
  auto file = character_cache_file(dir, 9);
  auto a = character_table(9, dir);
  REQUIRE(fs::exists(file));
  CHECK(CharacterTable::from_json([&] {
          std::ifstream in(file);
          return std::string(std::istreambuf_iterator<char>(in), {});
        }()).values == a->values);

  // The process cache would hide a corrupted degree-9 file; use a fresh degree.
  auto file10 = character_cache_file(dir, 10);
  {
    auto good = compute_character_table(10);
    good.values[0] = 7;
    std::ofstream out(file10);
    out << good.to_json();
  }
  auto b = character_table(10, dir);
  CHECK(b->verify());
  CHECK(b->values == compute_character_table(10).values);
  std::ifstream in(file10);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(CharacterTable::from_json(text).verify());

  auto file11 = character_cache_file(dir, 11);
  {
    std::ofstream out(file11);
    out << "{\"format_version\": 1, \"n\": 11, garbage";
  }
  CHECK(character_table(11, dir)->verify());
  std::ifstream in11(file11);
  CHECK(CharacterTable::from_json(std::string((std::istreambuf_iterator<char>(in11)), {})).n == 11);
  fs::remove_all(dir);
}
