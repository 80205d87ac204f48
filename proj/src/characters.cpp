#include "belyi/characters.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace belyi {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InvariantError("character value overflows 64 bits");
  return r;
}

// First-column hook lengths live on a beta-set: beta_i = lambda_i + (l - 1 - i).
// Removing a border strip of length k is moving one bead from b to b - k onto
// an empty position; its height is the number of beads strictly in between.
class MurnaghanNakayama {
 public:
  std::int64_t eval(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t from) {
    if (from == mu.size()) return 1;
    std::vector<int> rest(mu.begin() + static_cast<std::ptrdiff_t>(from), mu.end());
    auto key = std::make_pair(lambda, rest);
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }

    const int k = mu[from];
    const int len = static_cast<int>(lambda.size());
    std::vector<int> beta(lambda.size());
    for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (len - 1 - i);

    std::int64_t total = 0;
    for (int i = 0; i < len; ++i) {
      int b = beta[static_cast<std::size_t>(i)];
      int target = b - k;
      if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
      int height = 0;
      for (int x : beta) height += (x > target && x < b);

      std::vector<int> moved = beta;
      moved[static_cast<std::size_t>(i)] = target;
      std::sort(moved.begin(), moved.end(), std::greater<>());
      std::vector<int> reduced;
      for (int j = 0; j < len; ++j) {
        int part = moved[static_cast<std::size_t>(j)] - (len - 1 - j);
        if (part > 0) reduced.push_back(part);
      }
      std::int64_t sub = eval(reduced, mu, from + 1);
      total = checked_add(total, height % 2 ? -sub : sub);
    }

    std::lock_guard lock(mutex_);
    memo_.emplace(std::move(key), total);
    return total;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> memo_;
};

MurnaghanNakayama& mn_engine() {
  static MurnaghanNakayama engine;
  return engine;
}

BigInt big(std::int64_t v) { return BigInt(v); }

}  // namespace

std::int64_t mn_character(const Partition& lambda, const Partition& mu) {
  if (lambda.degree() != mu.degree()) throw InputError("mn_character: degree mismatch");
  return mn_engine().eval(lambda.parts(), mu.parts(), 0);
}

BigInt dimension(const Partition& lambda) {
  Partition t = lambda.transpose();
  BigInt hooks = 1;
  for (int i = 0; i < lambda.length(); ++i) {
    int row = lambda.parts()[static_cast<std::size_t>(i)];
    for (int j = 0; j < row; ++j) {
      int arm = row - j - 1;
      int leg = t.parts()[static_cast<std::size_t>(j)] - i - 1;
      hooks *= arm + leg + 1;
    }
  }
  return factorial(lambda.degree()) / hooks;
}

std::size_t CharacterTable::class_index(const Partition& mu) const {
  // Labels are in strictly decreasing lexicographic order.
  auto it = std::lower_bound(classes.begin(), classes.end(), mu, std::greater<>());
  if (it == classes.end() || *it != mu) throw InputError("class " + mu.bracketed() + " not in table");
  return static_cast<std::size_t>(it - classes.begin());
}

bool CharacterTable::verify() const {
  if (n < 1) return false;
  auto expected = partitions_of(n);
  if (irreps != expected || classes != expected) return false;
  const std::size_t k = expected.size();
  if (values.size() != k * k) return false;

  const BigInt nfact = factorial(n);
  std::vector<BigInt> sizes;
  for (const auto& mu : classes) sizes.push_back(class_size(mu));

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      BigInt rows = 0;
      BigInt cols = 0;
      for (std::size_t j = 0; j < k; ++j) {
        rows += sizes[j] * big(at(a, j)) * big(at(b, j));
        cols += big(at(j, a)) * big(at(j, b));
      }
      if (rows != (a == b ? nfact : BigInt(0))) return false;
      if (a == b ? cols * sizes[a] != nfact : cols != 0) return false;
    }
  }
  return true;
}

std::string CharacterTable::to_json() const {
  nlohmann::ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["degree"] = n;
  auto labels = [](const std::vector<Partition>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
  };
  doc["irreps"] = labels(irreps);
  doc["classes"] = labels(classes);
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    rows.push_back(std::vector<std::int64_t>(values.begin() + static_cast<std::ptrdiff_t>(i * classes.size()),
                                             values.begin() + static_cast<std::ptrdiff_t>((i + 1) * classes.size())));
  }
  doc["values"] = rows;
  // One matrix row per line keeps the file diff-able.
  std::ostringstream out;
  out << "{\n";
  out << "  \"format_version\": " << doc["format_version"].dump() << ",\n";
  out << "  \"degree\": " << doc["degree"].dump() << ",\n";
  out << "  \"irreps\": " << doc["irreps"].dump() << ",\n";
  out << "  \"classes\": " << doc["classes"].dump() << ",\n";
  out << "  \"values\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << "    " << rows[i].dump() << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

CharacterTable CharacterTable::from_json(const std::string& text) {
  CharacterTable t;
  try {
    auto doc = nlohmann::json::parse(text);
    if (doc.at("format_version").get<int>() != kFormatVersion) {
      throw InputError("unsupported character table format version");
    }
    t.n = doc.at("degree").get<int>();
    for (const auto& s : doc.at("irreps")) t.irreps.push_back(Partition::parse(s.get<std::string>()));
    for (const auto& s : doc.at("classes")) t.classes.push_back(Partition::parse(s.get<std::string>()));
    for (const auto& row : doc.at("values")) {
      if (row.size() != t.classes.size()) throw InputError("ragged character table row");
      for (const auto& v : row) t.values.push_back(v.get<std::int64_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed character table: ") + e.what());
  }
  return t;
}

CharacterTable compute_character_table(int n) {
  CharacterTable t;
  t.n = n;
  t.irreps = partitions_of(n);
  t.classes = t.irreps;
  t.values.reserve(t.irreps.size() * t.classes.size());
  for (const auto& lambda : t.irreps) {
    for (const auto& mu : t.classes) t.values.push_back(mn_character(lambda, mu));
  }
  return t;
}

std::filesystem::path character_cache_file(const std::filesystem::path& dir, int n) {
  return dir / ("chartable-" + std::to_string(n) + ".json");
}

std::shared_ptr<const CharacterTable> character_table(int n, const std::optional<std::filesystem::path>& cache_dir) {
  if (n < 1) throw InputError("character_table requires n >= 1");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CharacterTable>> tables;
  std::lock_guard lock(mutex);
  if (!cache_dir) {
    if (auto it = tables.find(n); it != tables.end()) return it->second;
  }

  std::optional<CharacterTable> loaded;
  if (cache_dir) {
    auto file = character_cache_file(*cache_dir, n);
    if (std::filesystem::exists(file)) {
      std::ifstream in(file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      try {
        auto t = CharacterTable::from_json(buffer.str());
        if (t.n == n && t.verify()) {
          loaded = std::move(t);
        } else {
          std::cerr << "warning: character table cache " << file.string()
                    << " failed verification; recomputing\n";
        }
      } catch (const InputError& e) {
        std::cerr << "warning: character table cache " << file.string() << " is corrupt (" << e.what()
                  << "); recomputing\n";
      }
    }
  }

  if (!loaded) {
    if (auto it = tables.find(n); it != tables.end()) {
      loaded = *it->second;
    } else {
      loaded = compute_character_table(n);
    }
    if (cache_dir) {
      std::filesystem::create_directories(*cache_dir);
      auto file = character_cache_file(*cache_dir, n);
      std::ofstream out(file, std::ios::trunc);
      out << loaded->to_json();
      if (!out) throw ResourceError("cannot write character table cache " + file.string());
    }
  }

  auto shared = std::make_shared<const CharacterTable>(std::move(*loaded));
  tables[n] = shared;
  return shared;
}

}  // namespace belyi
