#include "belyi/census.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "belyi/canonical.hpp"
#include "belyi/enumerate.hpp"
#include "belyi/hypermap_search.hpp"
#include "json.hpp"

namespace belyi {

namespace {

using Json = nlohmann::ordered_json;

// Order in which the slots of an unordered scheme are assigned to the search:
// smallest conjugacy classes first (ties broken by the partition itself).
struct SlotKey {
  BigInt size;
  Partition p;
  bool operator<(const SlotKey& o) const {
    if (size != o.size) return size < o.size;
    return p > o.p;
  }
};

std::array<int, 3> search_order(const RamificationScheme& s, const std::array<SlotKey, 3>& keys) {
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  (void)s;
  return order;
}

std::array<int, 3> inverse_order(const std::array<int, 3>& order) {
  std::array<int, 3> back{};
  for (int i = 0; i < 3; ++i) back[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  return back;
}

void check_degree(int n, const CensusOptions& opts) {
  if (n < 1) throw InputError("degree must be positive");
  if (n > kMaxDegree) throw ResourceError("degree exceeds the compiled maximum of " + std::to_string(kMaxDegree));
  if (n > kDefaultDegreeCap && !opts.allow_large) {
    throw InputError("degree " + std::to_string(n) + " is above the default cap of " +
                     std::to_string(kDefaultDegreeCap) + "; pass --allow-large to proceed");
  }
}

CensusRow make_row(const RamificationScheme& s, int genus, const ConnectedTally& tally, const CharacterTable& table,
                   const std::optional<MonodromyTriple>& rep_in_scheme_order) {
  CensusRow row;
  row.degree = s.degree();
  row.scheme = s;
  row.genus = genus;
  row.num_connected = tally.classes;
  Rational connected = 0;
  for (const auto& [aut, count] : tally.aut_histogram) {
    row.aut_counts.emplace_back(aut, count);
    connected += Rational(BigInt(count), BigInt(aut));
  }
  row.connected_mass = Mass(connected);
  row.total_mass = frobenius_mass(s, table);
  row.exceptional = tally.classes == 1;
  if (row.exceptional) row.representative = canonical_triple(*rep_in_scheme_order);
  row.check();
  return row;
}

template <typename Task>
void run_pool(std::size_t count, int jobs, Task&& task) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (int j = 0; j < jobs; ++j) {
    threads.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<CensusRow> rooted_rows(int n, int g, const std::vector<RamificationScheme>& schemes,
                                   const CharacterTable& table, const CensusOptions& opts) {
  std::map<Partition, SlotKey> keys;
  for (const auto& p : partitions_of(n)) keys.emplace(p, SlotKey{class_size(p), p});
  auto keys_of = [&](const RamificationScheme& s) {
    return std::array<SlotKey, 3>{keys.at(s.lambda0), keys.at(s.lambda1), keys.at(s.lambda_inf)};
  };

  // Group the unordered schemes by the pair of slots that gets searched.
  std::map<std::pair<Partition, Partition>, std::vector<Partition>> groups;
  for (const auto& s : schemes) {
    auto order = search_order(s, keys_of(s));
    auto& thirds = groups[{s.slot(order[0]), s.slot(order[1])}];
    const Partition& c = s.slot(order[2]);
    if (std::find(thirds.begin(), thirds.end(), c) == thirds.end()) thirds.push_back(c);
  }

  struct Task {
    const Partition* a;
    const Partition* b;
    std::vector<Partition> thirds;
    int shard;
    int shards;
    double cost;
  };
  std::vector<Task> tasks;
  const BigInt rooted_scale = factorial(n - 1);
  for (auto& [pair, thirds] : groups) {
    std::sort(thirds.begin(), thirds.end(), std::greater<>());
    BigInt estimate = class_size(pair.first) * class_size(pair.second) / rooted_scale;
    double cost = estimate.convert_to<double>();
    // Large searches are split so that workers stay balanced.
    int shards = (opts.jobs > 1 && cost > 2e5) ? 4 * opts.jobs : 1;
    for (std::size_t from = 0; from < thirds.size(); from += 64) {
      std::vector<Partition> chunk(thirds.begin() + static_cast<std::ptrdiff_t>(from),
                                   thirds.begin() + static_cast<std::ptrdiff_t>(std::min(thirds.size(), from + 64)));
      for (int shard = 0; shard < shards; ++shard) {
        tasks.push_back(Task{&pair.first, &pair.second, chunk, shard, shards, cost / shards});
      }
    }
  }
  // Expensive tasks first; results are keyed, so execution order is irrelevant.
  std::vector<std::size_t> schedule(tasks.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) schedule[i] = i;
  std::stable_sort(schedule.begin(), schedule.end(),
                   [&](std::size_t x, std::size_t y) { return tasks[x].cost > tasks[y].cost; });

  std::vector<std::vector<ConnectedTally>> results(tasks.size());
  run_pool(schedule.size(), opts.jobs, [&](std::size_t k) {
    const Task& t = tasks[schedule[k]];
    RootedSearchOptions ro;
    ro.node_budget = opts.node_budget;
    ro.shard = t.shard;
    ro.shards = t.shards;
    try {
      results[schedule[k]] = search_connected(*t.a, *t.b, t.thirds, ro);
    } catch (const ResourceError& e) {
      throw ResourceError(std::string(e.what()) + " for schemes [" + t.a->to_string() + "][" + t.b->to_string() +
                          "][*] of degree " + std::to_string(n));
    }
  });

  using Key = std::tuple<Partition, Partition, Partition>;
  std::map<Key, ConnectedTally> merged;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (std::size_t k = 0; k < tasks[i].thirds.size(); ++k) {
      merged[{*tasks[i].a, *tasks[i].b, tasks[i].thirds[k]}].merge(results[i][k]);
    }
  }

  std::vector<CensusRow> rows;
  for (const auto& s : schemes) {
    auto order = search_order(s, keys_of(s));
    auto it = merged.find({s.slot(order[0]), s.slot(order[1]), s.slot(order[2])});
    if (it == merged.end() || it->second.classes == 0) continue;
    std::optional<MonodromyTriple> rep;
    if (it->second.classes == 1) rep = permute_slots(*it->second.representative, inverse_order(order));
    rows.push_back(make_row(s, g, it->second, table, rep));
  }
  return rows;
}

ConnectedTally fixed_slot_tally(const RamificationScheme& s, const CensusOptions& opts) {
  EnumerateOptions eo;
  eo.jobs = opts.jobs;
  eo.node_budget = opts.node_budget;
  ConnectedTally tally;
  for (const auto& c : enumerate_classes(s, eo)) {
    if (c.connected) tally.add(c.aut_order, &c.triple);
  }
  return tally;
}

std::string triple_part(const std::optional<MonodromyTriple>& t, int slot) {
  return t ? t->slot(slot).to_string() : std::string();
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string join_auts(const CensusRow& row) {
  std::string s;
  for (const auto& [aut, count] : row.aut_counts) {
    const std::string a = std::to_string(aut);
    for (std::uint64_t i = 0; i < count; ++i) {
      if (!s.empty()) s += ';';
      s += a;
    }
  }
  return s;
}

Json row_to_json(const CensusRow& row) {
  Json j;
  j["degree"] = row.degree;
  j["scheme"] = row.scheme.to_string();
  j["genus"] = row.genus;
  j["num_connected"] = row.num_connected;
  j["aut_orders"] = row.aut_orders();
  j["total_mass"] = row.total_mass.to_string();
  j["connected_mass"] = row.connected_mass.to_string();
  j["exceptional"] = row.exceptional;
  j["representative_g0"] = triple_part(row.representative, 0);
  j["representative_g1"] = triple_part(row.representative, 1);
  j["representative_ginf"] = triple_part(row.representative, 2);
  return j;
}

CensusRow row_from_json(const Json& j, bool compact) {
  CensusRow row;
  row.degree = j.at("degree").get<int>();
  row.scheme = RamificationScheme::parse(j.at("scheme").get<std::string>());
  row.genus = j.at("genus").get<int>();
  row.num_connected = j.at("num_connected").get<std::uint64_t>();
  if (compact) {
    for (const auto& pair : j.at("aut_counts")) {
      row.aut_counts.emplace_back(pair.at(0).get<std::uint64_t>(), pair.at(1).get<std::uint64_t>());
    }
  } else {
    std::map<std::uint64_t, std::uint64_t> hist;
    for (const auto& a : j.at("aut_orders")) ++hist[a.get<std::uint64_t>()];
    row.aut_counts.assign(hist.begin(), hist.end());
  }
  row.total_mass = Mass::parse(j.at("total_mass").get<std::string>());
  row.connected_mass = Mass::parse(j.at("connected_mass").get<std::string>());
  row.exceptional = j.at("exceptional").get<bool>();
  auto g0 = j.at("representative_g0").get<std::string>();
  if (!g0.empty()) {
    row.representative = MonodromyTriple{Permutation::parse(g0, row.degree),
                                         Permutation::parse(j.at("representative_g1").get<std::string>(), row.degree),
                                         Permutation::parse(j.at("representative_ginf").get<std::string>(), row.degree)};
  }
  row.check();
  return row;
}

}  // namespace

std::vector<std::uint64_t> CensusRow::aut_orders() const {
  std::vector<std::uint64_t> out;
  for (const auto& [aut, count] : aut_counts) out.insert(out.end(), count, aut);
  return out;
}

void CensusRow::check() const {
  std::uint64_t classes = 0;
  Rational mass = 0;
  for (const auto& [aut, count] : aut_counts) {
    classes += count;
    mass += Rational(BigInt(count), BigInt(aut));
  }
  if (classes != num_connected) throw InvariantError("census row: aut_orders disagree with num_connected");
  if (Mass(mass) != connected_mass) throw InvariantError("census row: connected mass mismatch");
  if (connected_mass > total_mass) throw InvariantError("census row: connected mass exceeds total mass");
  if (exceptional != (num_connected == 1)) throw InvariantError("census row: wrong exceptional flag");
  if (representative.has_value() != exceptional) throw InvariantError("census row: representative iff exceptional");
  if (representative) {
    if (!representative->multiplies_to_identity() || representative->scheme() != scheme ||
        !representative->transitive()) {
      throw InvariantError("census row: bad representative for " + scheme.bracketed());
    }
  }
  for (const auto& [aut, count] : aut_counts) {
    if (aut == 0 || static_cast<std::uint64_t>(degree) % aut != 0) {
      throw InvariantError("census row: automorphism order does not divide the degree");
    }
  }
}

CensusRow classify_scheme(const RamificationScheme& s, const CensusOptions& opts) {
  check_degree(s.degree(), opts);
  auto table = character_table(s.degree(), opts.cache_dir);
  ConnectedTally tally;
  if (opts.engine == CensusEngine::kFixedSlot) {
    tally = fixed_slot_tally(s, opts);
  } else if ((s.degree() - s.lambda0.length() - s.lambda1.length() - s.lambda_inf.length()) % 2 == 0) {
    RootedSearchOptions ro;
    ro.node_budget = opts.node_budget;
    tally = search_connected(s, ro);
  }
  auto genus = genus_of(s);
  return make_row(s, genus.value_or(-1), tally, *table, tally.representative);
}

CensusResult run_census(int n, int g, const CensusOptions& opts) {
  check_degree(n, opts);
  if (g < 0) throw InputError("genus must be nonnegative");
  auto table = character_table(n, opts.cache_dir);
  auto schemes = n + 2 - 2 * g >= 3 ? schemes_of_genus(n, g) : std::vector<RamificationScheme>{};
  if (opts.filter) std::erase_if(schemes, [&](const RamificationScheme& s) { return !opts.filter(s); });

  CensusResult result;
  if (opts.engine == CensusEngine::kFixedSlot) {
    for (const auto& s : schemes) {
      auto tally = fixed_slot_tally(s, opts);
      if (tally.classes) result.rows.push_back(make_row(s, g, tally, *table, tally.representative));
    }
  } else {
    result.rows = rooted_rows(n, g, schemes, *table, opts);
  }

  auto& sum = result.summary;
  sum.degree = n;
  sum.genus = g;
  sum.schemes_examined = schemes.size();
  sum.schemes_realized = result.rows.size();
  for (const auto& row : result.rows) {
    sum.classes += row.num_connected;
    sum.exceptional += row.exceptional;
  }
  return result;
}

std::vector<CensusRow> census(int n, int g, const CensusOptions& opts) { return run_census(n, g, opts).rows; }

ResultStore::ResultStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultStore::file_for(int n, int g) const {
  return dir_ / ("census-d" + std::to_string(n) + "-g" + std::to_string(g) + ".json");
}

bool ResultStore::has(int n, int g) const {
  auto file = file_for(n, g);
  if (!std::filesystem::exists(file)) return false;
  try {
    std::ifstream in(file);
    auto doc = Json::parse(in);
    return doc.at("format_version").get<int>() == kFormatVersion && doc.at("degree").get<int>() == n &&
           doc.at("genus").get<int>() == g && doc.at("complete").get<bool>();
  } catch (const std::exception&) {
    return false;
  }
}

CensusResult ResultStore::load(int n, int g) const {
  std::ifstream in(file_for(n, g));
  if (!in) throw ResourceError("cannot read " + file_for(n, g).string());
  try {
    auto doc = Json::parse(in);
    if (doc.at("format_version").get<int>() != kFormatVersion) throw InputError("store format version mismatch");
    CensusResult r;
    const auto& s = doc.at("summary");
    r.summary.degree = n;
    r.summary.genus = g;
    r.summary.schemes_examined = s.at("schemes_examined").get<std::uint64_t>();
    r.summary.schemes_realized = s.at("schemes_realized").get<std::uint64_t>();
    r.summary.classes = s.at("classes").get<std::uint64_t>();
    r.summary.exceptional = s.at("exceptional").get<std::uint64_t>();
    r.summary.loaded_from_store = true;
    for (const auto& row : doc.at("rows")) r.rows.push_back(row_from_json(row, true));
    return r;
  } catch (const Json::exception& e) {
    throw InputError("malformed census store file " + file_for(n, g).string() + ": " + e.what());
  }
}

void ResultStore::save(const CensusResult& result) const {
  const auto& sum = result.summary;
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["degree"] = sum.degree;
  doc["genus"] = sum.genus;
  doc["complete"] = true;
  doc["summary"] = {{"schemes_examined", sum.schemes_examined},
                    {"schemes_realized", sum.schemes_realized},
                    {"classes", sum.classes},
                    {"exceptional", sum.exceptional}};
  Json rows = Json::array();
  for (const auto& row : result.rows) {
    Json j = row_to_json(row);
    j.erase("aut_orders");
    Json counts = Json::array();
    for (const auto& [aut, count] : row.aut_counts) counts.push_back({aut, count});
    j["aut_counts"] = counts;
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);

  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  auto file = file_for(sum.degree, sum.genus);
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump(1) << '\n';
    out.flush();
    if (!out) throw ResourceError("cannot write census store file " + tmp.string());
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw ResourceError("cannot move census store file into place: " + ec.message());
}

std::vector<CensusSummary> run_range(int n_min, int n_max, int g, const ResultStore& store, const CensusOptions& opts) {
  if (n_min < 1 || n_min > n_max) throw InputError("invalid degree range");
  std::vector<CensusSummary> out;
  for (int n = n_min; n <= n_max; ++n) {
    if (store.has(n, g)) {
      auto loaded = store.load(n, g);
      out.push_back(loaded.summary);
      continue;
    }
    auto result = run_census(n, g, opts);
    store.save(result);
    out.push_back(result.summary);
  }
  return out;
}

std::string csv_header() {
  return "degree,scheme,genus,num_connected,aut_orders,total_mass,connected_mass,exceptional,"
         "representative_g0,representative_g1,representative_ginf";
}

std::string to_csv(const CensusRow& row) {
  std::ostringstream s;
  s << row.degree << ',' << quoted(row.scheme.to_string()) << ',' << row.genus << ',' << row.num_connected << ','
    << quoted(join_auts(row)) << ',' << row.total_mass.to_string() << ',' << row.connected_mass.to_string() << ','
    << (row.exceptional ? "true" : "false") << ',' << quoted(triple_part(row.representative, 0)) << ','
    << quoted(triple_part(row.representative, 1)) << ',' << quoted(triple_part(row.representative, 2));
  return s.str();
}

void write_rows(std::ostream& out, const std::vector<CensusRow>& rows, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << csv_header() << '\n';
    for (const auto& row : rows) out << to_csv(row) << '\n';
    return;
  }
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << (i ? ",\n " : "\n ") << row_to_json(rows[i]).dump();
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

std::vector<CensusRow> parse_json_rows(const std::string& text) {
  std::vector<CensusRow> rows;
  try {
    for (const auto& j : Json::parse(text)) rows.push_back(row_from_json(j, false));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed census JSON: ") + e.what());
  }
  return rows;
}

}  // namespace belyi
