#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "belyi/canonical.hpp"
#include "belyi/census.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace belyi;
namespace fs = std::filesystem;

namespace {

const CensusRow* find_row(const std::vector<CensusRow>& rows, const char* text) {
  auto s = RamificationScheme::parse(text);
  for (const auto& r : rows)
    if (r.scheme == s) return &r;
  return nullptr;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

std::string csv_of(const std::vector<CensusRow>& rows) {
  std::ostringstream out;
  write_rows(out, rows, OutputFormat::kCsv);
  return out.str();
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("belyi-test-" + name + "-" + std::to_string(std::random_device{}()));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("degree six genus one") {
  auto result = run_census(6, 1);
  const auto& rows = result.rows;
  for (const char* text : {"6|3,3|2,2,2", "1,5|3,3|3,3"}) {
    auto row = find_row(rows, text);
    REQUIRE(row != nullptr);
    CHECK(row->exceptional);
    CHECK(row->num_connected == 1);
    CHECK(row->genus == 1);
    REQUIRE(row->representative.has_value());
    CHECK(row->representative->multiplies_to_identity());
    CHECK(row->representative->scheme() == row->scheme);
  }
  CHECK(find_row(rows, "6|3,3|2,2,2")->aut_orders() == std::vector<std::uint64_t>{6});
  CHECK(find_row(rows, "5,1|3,3|3,3")->aut_orders() == std::vector<std::uint64_t>{1});

  auto known = MonodromyTriple::parse("(2,3,4,5,6)|(4,2,1)(3,5,6)|(1,6,4)(2,3,5)", 6);
  CHECK(find_conjugator(*find_row(rows, "5,1|3,3|3,3")->representative, known).has_value());

  auto hexagon = find_row(rows, "3,3|3,3|3,3");
  REQUIRE(hexagon != nullptr);
  CHECK(hexagon->disconnected_companion());

  CHECK(result.summary.schemes_realized == rows.size());
  std::uint64_t exceptional = 0;
  for (const auto& r : rows) {
    CHECK_NOTHROW(r.check());
    CHECK(r.num_connected >= 1);
    exceptional += r.exceptional;
  }
  CHECK(result.summary.exceptional == exceptional);
}

TEST_CASE("degree seven genus one has no exceptional scheme") {
  auto result = run_census(7, 1);
  CHECK(result.summary.exceptional == 0);
  CHECK(result.summary.schemes_realized > 0);
}

TEST_CASE("trivial census") {
  auto rows = census(1, 0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].scheme == RamificationScheme::parse("1|1|1"));
  CHECK(rows[0].exceptional);
  CHECK(census(2, 1).empty());
  CHECK_THROWS_AS(census(0, 1), InputError);
  CHECK_THROWS_AS(census(13, 1), InputError);
  CHECK_THROWS_AS(census(40, 1), ResourceError);
}

TEST_CASE("classify_scheme") {
  auto row = classify_scheme(RamificationScheme::parse("6,2|6,1,1|4,2,2"));
  CHECK(row.genus == 1);
  CHECK(row.num_connected == 16);
  CHECK_FALSE(row.exceptional);
  CHECK(row.total_mass == Mass(17, 1));
  CHECK(row.connected_mass == Mass(15, 1));

  auto parity = classify_scheme(RamificationScheme::parse("2,1|1,1,1|1,1,1"));
  CHECK(parity.num_connected == 0);
  CHECK(parity.total_mass.is_zero());
}

TEST_CASE("rooted and fixed-slot engines produce the same rows") {
  CensusOptions fixed;
  fixed.engine = CensusEngine::kFixedSlot;
  for (int n = 1; n <= 7; ++n) {
    for (int g = 0; g <= 1; ++g) {
      auto a = csv_of(census(n, g));
      auto b = csv_of(census(n, g, fixed));
      CHECK_MESSAGE(a == b, "degree " << n << " genus " << g);
    }
  }
}

TEST_CASE("output is independent of the job count") {
  CensusOptions four;
  four.jobs = 4;
  for (int n = 6; n <= 8; ++n) CHECK(csv_of(census(n, 1)) == csv_of(census(n, 1, four)));
}

TEST_CASE("csv and json formats") {
  auto rows = census(6, 1);
  auto csv = csv_of(rows);
  CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
  CHECK(csv.find("6,\"6|3,3|2,2,2\",1,1,\"6\",1/6,1/6,true,") != std::string::npos);
  std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == rows.size() + 1);

  std::ostringstream json;
  write_rows(json, rows, OutputFormat::kJson);
  auto back = parse_json_rows(json.str());
  REQUIRE(back.size() == rows.size());
  CHECK(csv_of(back) == csv);
  CHECK_THROWS_AS(parse_json_rows("[{]"), InputError);

  std::ostringstream empty;
  write_rows(empty, {}, OutputFormat::kJson);
  CHECK(parse_json_rows(empty.str()).empty());
}

TEST_CASE("scheme filter") {
  CensusOptions opts;
  opts.filter = [](const RamificationScheme& s) { return s.lambda0 == Partition({6}); };
  auto result = run_census(6, 1, opts);
  for (const auto& r : result.rows) CHECK(r.scheme.lambda0 == Partition({6}));
  CHECK(find_row(result.rows, "6|3,3|2,2,2") != nullptr);
}

TEST_CASE("result store resumes and is idempotent") {
  auto dir = fresh_dir("store");
  ResultStore store(dir);
  CHECK_FALSE(store.has(5, 1));
  auto first = run_range(3, 6, 1, store);
  REQUIRE(first.size() == 4);
  for (const auto& s : first) CHECK_FALSE(s.loaded_from_store);
  for (int n = 3; n <= 6; ++n) CHECK(store.has(n, 1));
  auto bytes = read_file(store.file_for(6, 1));

  auto second = run_range(3, 7, 1, store);
  REQUIRE(second.size() == 5);
  for (int i = 0; i < 4; ++i) {
    CHECK(second[static_cast<std::size_t>(i)].loaded_from_store);
    CHECK(second[static_cast<std::size_t>(i)].exceptional == first[static_cast<std::size_t>(i)].exceptional);
    CHECK(second[static_cast<std::size_t>(i)].classes == first[static_cast<std::size_t>(i)].classes);
  }
  CHECK_FALSE(second[4].loaded_from_store);
  CHECK(read_file(store.file_for(6, 1)) == bytes);

  auto loaded = store.load(6, 1);
  CHECK(csv_of(loaded.rows) == csv_of(census(6, 1)));
  store.save(loaded);
  CHECK(read_file(store.file_for(6, 1)) == bytes);

  {
    std::ofstream out(store.file_for(5, 1), std::ios::trunc);
    out << "{\"format_version\": 1";
  }
  CHECK_FALSE(store.has(5, 1));
  auto third = run_range(5, 5, 1, store);
  CHECK_FALSE(third[0].loaded_from_store);
  CHECK(store.has(5, 1));
  fs::remove_all(dir);
}

TEST_CASE("rooted genus-one counts match a scan of all transitive pairs") {
  // Every transitive pair (g0, g1) of genus one, divided by (n-1)!, is the
  // number of rooted coverings, which the census gives as sum n / |Aut|.
  for (int n = 3; n <= 7; ++n) {
    std::vector<oracle::Images> all;
    oracle::for_each_perm(n, [&](const oracle::Images& p) { all.push_back(p); });
    std::vector<int> cycles(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) cycles[i] = static_cast<int>(oracle::cycle_lengths(all[i]).size());
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        const auto& a = all[i];
        const auto& b = all[j];
        auto h = oracle::compose(a, b);
        if (n + 2 - cycles[i] - cycles[j] - static_cast<int>(oracle::cycle_lengths(h).size()) != 2) continue;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (int y : {a[static_cast<std::size_t>(x)], b[static_cast<std::size_t>(x)]}) {
            if (!seen[static_cast<std::size_t>(y)]) {
              seen[static_cast<std::size_t>(y)] = 1;
              ++reached;
              stack.push_back(y);
            }
          }
        }
        pairs += reached == n;
      }
    }
    Rational rooted = 0;
    for (const auto& row : census(n, 1)) rooted += row.connected_mass.value() * n;
    CHECK(Rational(BigInt(pairs), factorial(n - 1)) == rooted);
  }
}
