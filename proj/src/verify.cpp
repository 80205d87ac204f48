#include "belyi/verify.hpp"

#include <algorithm>

#include "belyi/canonical.hpp"
#include "belyi/dessin.hpp"
#include "belyi/enumerate.hpp"
#include "belyi/hypermap_search.hpp"

namespace belyi {

void verify_scheme(const RamificationScheme& s, VerifyReport& report, const EnumerateOptions& opts) {
  ++report.schemes;
  auto fail = [&](const std::string& what) { report.failures.push_back(s.bracketed() + ": " + what); };

  const auto classes = enumerate_classes(s, opts);
  report.classes += classes.size();
  const Mass expected = frobenius_mass(s);
  if (total_class_mass(classes) != expected) {
    fail("class mass " + total_class_mass(classes).to_string() + " != character mass " + expected.to_string());
  }

  std::vector<std::pair<std::vector<int>, std::uint64_t>> enumerated;
  const auto genus = genus_of(s);
  for (const auto& c : classes) {
    if (!c.connected) continue;
    ++report.connected_classes;
    enumerated.emplace_back(std::vector<int>(c.triple.g1.images().begin(), c.triple.g1.images().end()), c.aut_order);
    if (static_cast<std::uint64_t>(s.degree()) % c.aut_order != 0) fail("aut order does not divide the degree");
    const int euler = euler_genus(dessin_from_class(c));
    if (!genus || euler != *genus) fail("Euler genus " + std::to_string(euler) + " disagrees with Riemann-Hurwitz");
  }

  RootedSearchOptions ro;
  ro.collect_members = true;
  auto tally = search_connected(s, ro);
  std::vector<std::pair<std::vector<int>, std::uint64_t>> rooted;
  for (const auto& [aut, triple] : tally.members) {
    auto form = canonicalize_pair(triple.g0, triple.g1);
    if (form.aut_order != aut) fail("rooted and relabeling automorphism orders differ");
    rooted.emplace_back(form.g1_images, aut);
  }
  std::sort(enumerated.begin(), enumerated.end());
  std::sort(rooted.begin(), rooted.end());
  if (enumerated != rooted) {
    fail("rooted search found " + std::to_string(rooted.size()) + " connected classes, enumeration " +
         std::to_string(enumerated.size()));
  }
}

VerifyReport verify_degree(int n, std::optional<int> genus, const EnumerateOptions& opts) {
  VerifyReport report;
  auto parts = partitions_of(n);
  for (const auto& a : parts) {
    for (const auto& b : parts) {
      for (const auto& c : parts) {
        RamificationScheme s(a, b, c);
        if (genus && genus_of(s) != genus) continue;
        verify_scheme(s, report, opts);
      }
    }
  }
  return report;
}

}  // namespace belyi
