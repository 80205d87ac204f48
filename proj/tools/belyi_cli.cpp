// Command-line front end: censuses, single-scheme reports, masses, dessin
// export and character-table cache management.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "belyi/canonical.hpp"
#include "belyi/census.hpp"
#include "belyi/characters.hpp"
#include "belyi/dessin.hpp"
#include "belyi/enumerate.hpp"
#include "belyi/hypermap_search.hpp"
#include "belyi/mass.hpp"
#include "belyi/verify.hpp"

namespace fs = std::filesystem;
using namespace belyi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitEmpty = 4;
constexpr int kExitInternal = 1;

struct DegreeRange {
  int from = 0;
  int to = 0;
};

DegreeRange parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InputError("invalid degree range '" + text + "' (expected N or A..B)");
  }
}

std::optional<fs::path> cache_dir_from(const std::string& flag) {
  if (!flag.empty()) return fs::path(flag);
  if (const char* env = std::getenv("BELYI_CACHE_DIR"); env && *env) return fs::path(env);
  return std::nullopt;
}

void check_cap(const DegreeRange& r, bool allow_large) {
  if (r.from < 1 || r.from > r.to) throw InputError("invalid degree range");
  if (r.to > kDefaultDegreeCap) {
    if (!allow_large) {
      throw InputError("degree " + std::to_string(r.to) + " exceeds the default cap of " +
                       std::to_string(kDefaultDegreeCap) + "; pass --allow-large");
    }
    std::cerr << "warning: degrees above " << kDefaultDegreeCap << " can take a very long time\n";
  }
}

std::string file_stem(const RamificationScheme& s) {
  auto dotted = [](const Partition& p) {
    std::string t = p.to_string();
    for (auto& ch : t) {
      if (ch == ',') ch = '.';
    }
    return t;
  };
  return std::to_string(s.degree()) + "-" + dotted(s.lambda0) + "_" + dotted(s.lambda1) + "_" + dotted(s.lambda_inf);
}

void write_dot(const fs::path& dir, const RamificationScheme& s, int index, const MonodromyTriple& t) {
  fs::create_directories(dir);
  auto file = dir / (file_stem(s) + "-" + std::to_string(index) + ".dot");
  std::ofstream out(file);
  out << export_dot(dessin_from_triple(t), file_stem(s) + "-" + std::to_string(index));
  if (!out) throw ResourceError("cannot write " + file.string());
}

// Connected classes of one scheme, canonical and sorted.
std::vector<std::pair<MonodromyTriple, std::uint64_t>> connected_classes(const RamificationScheme& s) {
  std::vector<std::pair<MonodromyTriple, std::uint64_t>> out;
  if ((s.degree() - s.lambda0.length() - s.lambda1.length() - s.lambda_inf.length()) % 2 != 0) return out;
  RootedSearchOptions ro;
  ro.collect_members = true;
  auto tally = search_connected(s, ro);
  for (auto& [aut, triple] : tally.members) out.emplace_back(canonical_triple(triple), aut);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first.g1 < y.first.g1; });
  return out;
}

struct CensusArgs {
  std::string degree;
  std::string degrees;
  int genus = 1;
  std::string scheme;
  std::string format = "csv";
  std::string out;
  std::string cache;
  std::string store;
  std::string emit_dot;
  std::string engine = "rooted";
  int jobs = 1;
  std::uint64_t node_budget = 0;
  bool verify = false;
  bool allow_large = false;
};

int cmd_census(const CensusArgs& a) {
  if (a.degree.empty() == a.degrees.empty()) throw InputError("give exactly one of --degree or --degrees");
  DegreeRange range = parse_range(a.degree.empty() ? a.degrees : a.degree);
  check_cap(range, a.allow_large);
  if (a.jobs < 1) throw InputError("--jobs must be at least 1");
  if (a.format != "csv" && a.format != "json") throw InputError("--format must be csv or json");

  CensusOptions opts;
  opts.jobs = a.jobs;
  opts.allow_large = a.allow_large;
  if (a.node_budget) opts.node_budget = a.node_budget;
  opts.cache_dir = cache_dir_from(a.cache);
  opts.engine = a.engine == "fixed" ? CensusEngine::kFixedSlot : CensusEngine::kRooted;
  if (a.engine != "fixed" && a.engine != "rooted") throw InputError("--engine must be rooted or fixed");
  if (!a.scheme.empty()) {
    auto wanted = RamificationScheme::parse(a.scheme);
    if (wanted.degree() < range.from || wanted.degree() > range.to) {
      throw InputError("--scheme degree is outside the requested degree range");
    }
    opts.filter = [wanted](const RamificationScheme& s) { return s == wanted; };
  }

  std::vector<CensusRow> rows;
  std::vector<CensusSummary> summaries;
  for (int n = range.from; n <= range.to; ++n) {
    if (a.verify) {
      auto report = verify_degree(n, a.genus);
      std::cout << "verify degree " << n << ": " << report.schemes << " schemes, " << report.classes << " classes, "
                << (report.ok() ? "ok" : "FAILED") << "\n";
      for (const auto& f : report.failures) std::cout << "  " << f << "\n";
      if (!report.ok()) return kExitInternal;
    }
    CensusResult result;
    if (!a.store.empty() && !opts.filter) {
      ResultStore store(a.store);
      run_range(n, n, a.genus, store, opts);
      result = store.load(n, a.genus);
    } else {
      result = run_census(n, a.genus, opts);
    }
    rows.insert(rows.end(), result.rows.begin(), result.rows.end());
    summaries.push_back(result.summary);
  }

  const auto format = a.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  if (a.out.empty()) {
    write_rows(std::cout, rows, format);
  } else {
    std::ofstream out(a.out, std::ios::trunc);
    write_rows(out, rows, format);
    if (!out) throw ResourceError("cannot write " + a.out);
  }

  if (!a.emit_dot.empty()) {
    for (const auto& row : rows) {
      if (row.representative) write_dot(a.emit_dot, row.scheme, 1, *row.representative);
    }
  }

  std::uint64_t examined = 0, realized = 0, classes = 0, exceptional = 0;
  for (const auto& s : summaries) {
    std::cout << "degree " << s.degree << " genus " << s.genus << ": schemes " << s.schemes_examined << ", realized "
              << s.schemes_realized << ", connected classes " << s.classes << ", exceptional " << s.exceptional
              << (s.loaded_from_store ? " (from store)" : "") << "\n";
    examined += s.schemes_examined;
    realized += s.schemes_realized;
    classes += s.classes;
    exceptional += s.exceptional;
  }
  std::cout << "schemes examined: " << examined << "\n"
            << "schemes realized: " << realized << "\n"
            << "classes found: " << classes << "\n"
            << "exceptional: " << exceptional << "\n";
  return kExitOk;
}

int cmd_scheme(const std::string& text, const std::string& cache, bool allow_large) {
  auto s = RamificationScheme::parse(text);
  check_cap({s.degree(), s.degree()}, allow_large);
  const int n = s.degree();
  auto table = character_table(n, cache_dir_from(cache));
  std::cout << "scheme: " << s.bracketed() << "\n";
  std::cout << "degree: " << n << "\n";
  if ((n - s.lambda0.length() - s.lambda1.length() - s.lambda_inf.length()) % 2 != 0) {
    std::cout << "genus: impossible\n";
    std::cout << "no coverings (parity obstruction)\n";
    return kExitEmpty;
  }
  auto genus = genus_of(s);
  std::cout << "genus: " << (genus ? std::to_string(*genus) : std::string("negative (disconnected only)")) << "\n";
  const Mass total = frobenius_mass(s, *table);
  std::cout << "total mass: " << total.to_string() << "\n";

  auto classes = connected_classes(s);
  Rational connected = 0;
  for (const auto& [t, aut] : classes) connected += Rational(1, aut);
  std::cout << "connected mass: " << Mass(connected).to_string() << "\n";
  std::cout << "connected classes: " << classes.size() << "\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::cout << "  " << i + 1 << ": aut " << classes[i].second << "  " << classes[i].first.to_string() << "\n";
  }
  if (total > Mass(connected)) std::cout << "disconnected coverings share this scheme\n";
  if (classes.empty()) {
    std::cout << "no connected coverings\n";
    return kExitEmpty;
  }
  std::cout << (classes.size() == 1 ? "exceptional: yes" : "exceptional: no") << "\n";
  return kExitOk;
}

int cmd_mass(const std::string& text, bool bruteforce, bool classes, const std::string& cache) {
  auto s = RamificationScheme::parse(text);
  check_cap({s.degree(), s.degree()}, false);
  auto table = character_table(s.degree(), cache_dir_from(cache));
  std::cout << "frobenius: " << frobenius_mass(s, *table).to_string() << "\n";
  if (bruteforce) std::cout << "bruteforce: " << bruteforce_mass(s).to_string() << "\n";
  if (classes) {
    auto all = enumerate_classes(s);
    std::cout << "classes: " << all.size() << " (" << std::count_if(all.begin(), all.end(), [](const auto& c) {
      return c.connected;
    }) << " connected)\n";
    std::cout << "class mass: " << total_class_mass(all).to_string() << "\n";
  }
  return kExitOk;
}

int cmd_dessin(const std::string& text, const std::string& out_dir, bool allow_large) {
  auto s = RamificationScheme::parse(text);
  check_cap({s.degree(), s.degree()}, allow_large);
  auto classes = connected_classes(s);
  if (classes.empty()) {
    std::cerr << "no connected coverings for " << s.bracketed() << "\n";
    return kExitEmpty;
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    write_dot(out_dir, s, static_cast<int>(i) + 1, classes[i].first);
    std::cout << (fs::path(out_dir) / (file_stem(s) + "-" + std::to_string(i + 1) + ".dot")).string() << "\n";
  }
  return kExitOk;
}

int cmd_cache(const std::string& degrees, const std::string& cache, bool verify_only) {
  auto dir = cache_dir_from(cache);
  if (!dir) throw InputError("no cache directory: pass --cache or set BELYI_CACHE_DIR");
  DegreeRange range = parse_range(degrees);
  check_cap(range, false);
  for (int n = range.from; n <= range.to; ++n) {
    auto file = character_cache_file(*dir, n);
    if (verify_only) {
      if (!fs::exists(file)) {
        std::cout << file.string() << ": missing\n";
        continue;
      }
      std::ifstream in(file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      bool ok = false;
      try {
        auto t = CharacterTable::from_json(buffer.str());
        ok = t.n == n && t.verify();
      } catch (const InputError&) {
      }
      std::cout << file.string() << ": " << (ok ? "ok" : "corrupt") << "\n";
    } else {
      auto t = character_table(n, dir);
      std::cout << file.string() << ": " << t->size() << " classes\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate Belyi coverings by ramification scheme and find exceptional ones"};
  app.require_subcommand(1);

  CensusArgs census_args;
  auto* census = app.add_subcommand("census", "Classify every scheme of the given degrees and genus");
  census->add_option("--degree", census_args.degree, "Single degree N");
  census->add_option("--degrees", census_args.degrees, "Degree range A..B");
  census->add_option("--genus", census_args.genus, "Genus (default 1)");
  census->add_option("--scheme", census_args.scheme, "Only this ordered scheme, e.g. 6,2|6,1,1|4,2,2");
  census->add_option("--format", census_args.format, "csv or json");
  census->add_option("--out", census_args.out, "Output file (default: standard output)");
  census->add_option("--cache", census_args.cache, "Character table cache directory");
  census->add_option("--store", census_args.store, "Result store directory; finished degrees are reused");
  census->add_option("--jobs", census_args.jobs, "Worker threads");
  census->add_option("--emit-dot", census_args.emit_dot, "Write a dessin for every exceptional row here");
  census->add_option("--engine", census_args.engine, "rooted (default) or fixed");
  census->add_option("--node-budget", census_args.node_budget, "Search nodes allowed per scheme group (0: unlimited)");
  census->add_flag("--verify", census_args.verify, "Cross-check masses and genera before emitting");
  census->add_flag("--allow-large", census_args.allow_large, "Permit degrees above 12");

  std::string scheme_text, scheme_cache;
  bool scheme_large = false;
  auto* scheme = app.add_subcommand("scheme", "Report on a single scheme");
  scheme->add_option("scheme", scheme_text, "Scheme such as 6,2|6,1,1|4,2,2")->required();
  scheme->add_option("--cache", scheme_cache, "Character table cache directory");
  scheme->add_flag("--allow-large", scheme_large, "Permit degrees above 12");

  std::string mass_text, mass_cache;
  bool mass_brute = false, mass_classes = false;
  auto* mass = app.add_subcommand("mass", "Character-formula mass of a scheme");
  mass->add_option("scheme", mass_text, "Scheme")->required();
  mass->add_flag("--bruteforce", mass_brute, "Also run the brute-force oracle (degree <= 7)");
  mass->add_flag("--classes", mass_classes, "Also enumerate all classes and sum 1/|Aut|");
  mass->add_option("--cache", mass_cache, "Character table cache directory");

  std::string dessin_text, dessin_out = ".";
  bool dessin_large = false;
  auto* dessin = app.add_subcommand("dessin", "Write one Graphviz file per connected class");
  dessin->add_option("scheme", dessin_text, "Scheme")->required();
  dessin->add_option("--out", dessin_out, "Output directory");
  dessin->add_flag("--allow-large", dessin_large, "Permit degrees above 12");

  std::string cache_degrees = "1..12", cache_dir;
  auto* cache = app.add_subcommand("cache", "Build or verify character table cache files");
  auto* cache_build = cache->add_subcommand("build", "Compute and store tables");
  auto* cache_verify = cache->add_subcommand("verify", "Check stored tables");
  for (auto* sub : {cache_build, cache_verify}) {
    sub->add_option("--degrees", cache_degrees, "Degree or range A..B");
    sub->add_option("--cache", cache_dir, "Cache directory (default $BELYI_CACHE_DIR)");
  }
  cache->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*census) return cmd_census(census_args);
    if (*scheme) return cmd_scheme(scheme_text, scheme_cache, scheme_large);
    if (*mass) return cmd_mass(mass_text, mass_brute, mass_classes, mass_cache);
    if (*dessin) return cmd_dessin(dessin_text, dessin_out, dessin_large);
    if (*cache) return cmd_cache(cache_degrees, cache_dir, static_cast<bool>(*cache_verify));
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
