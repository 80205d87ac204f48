#include "belyi/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace belyi {

namespace {

void require_same_degree(const Permutation& p, const Permutation& q, const char* op) {
  if (p.degree() != q.degree()) {
    throw InputError(std::string(op) + ": degree mismatch (" + std::to_string(p.degree()) +
                     " vs " + std::to_string(q.degree()) + ")");
  }
}

}  // namespace

Permutation::Permutation(int degree) : images_(static_cast<std::size_t>(degree)) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation Permutation::from_images(std::vector<int> images) {
  if (images.empty()) throw InputError("permutation degree must be positive");
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[static_cast<std::size_t>(v)]) {
      throw InputError("image array is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::parse(std::string_view text, int degree) {
  Permutation p(degree);
  std::vector<char> used(static_cast<std::size_t>(degree), 0);
  std::size_t pos = 0;
  auto skip_spaces = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_spaces();
  while (pos < text.size()) {
    if (text[pos] != '(') throw InputError("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_spaces();
      if (pos < text.size() && text[pos] == ')' && cycle.empty()) break;  // "()"
      int value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc()) throw InputError("bad point in cycle notation: " + std::string(text));
      pos = static_cast<std::size_t>(ptr - text.data());
      if (value < 1 || value > degree) {
        throw InputError("point " + std::to_string(value) + " outside 1.." + std::to_string(degree));
      }
      if (used[static_cast<std::size_t>(value - 1)]) {
        throw InputError("point " + std::to_string(value) + " repeated in cycle notation");
      }
      used[static_cast<std::size_t>(value - 1)] = 1;
      cycle.push_back(value - 1);
      skip_spaces();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') break;
      throw InputError("expected ',' or ')' in cycle notation: " + std::string(text));
    }
    ++pos;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      p.images_[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    }
    skip_spaces();
  }
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = 1;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::string Permutation::to_string() const {
  std::string s;
  for (const auto& cycle : cycles()) {
    if (cycle.size() == 1) continue;
    s += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(cycle[i] + 1);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  require_same_degree(p, q, "compose");
  std::vector<int> images(static_cast<std::size_t>(p.degree()));
  for (int x = 0; x < p.degree(); ++x) images[static_cast<std::size_t>(x)] = q(p(x));
  return Permutation::from_images(std::move(images));
}

Permutation inverse(const Permutation& p) {
  std::vector<int> images(static_cast<std::size_t>(p.degree()));
  for (int x = 0; x < p.degree(); ++x) images[static_cast<std::size_t>(p(x))] = x;
  return Permutation::from_images(std::move(images));
}

Partition cycle_type(const Permutation& p) {
  std::vector<int> lengths;
  for (const auto& cycle : p.cycles()) lengths.push_back(static_cast<int>(cycle.size()));
  return Partition(std::move(lengths));
}

Permutation conjugate(const Permutation& p, const Permutation& c) {
  require_same_degree(p, c, "conjugate");
  std::vector<int> images(static_cast<std::size_t>(p.degree()));
  for (int x = 0; x < p.degree(); ++x) images[static_cast<std::size_t>(c(x))] = c(p(x));
  return Permutation::from_images(std::move(images));
}

Permutation canonical_rep(const Partition& lambda) {
  std::vector<int> images(static_cast<std::size_t>(lambda.degree()));
  int start = 0;
  for (int len : lambda.parts()) {
    for (int i = 0; i < len; ++i) {
      images[static_cast<std::size_t>(start + i)] = start + (i + 1) % len;
    }
    start += len;
  }
  return Permutation::from_images(std::move(images));
}

std::vector<Permutation> centralizer_generators(const Permutation& p) {
  auto cycles = p.cycles();
  std::stable_sort(cycles.begin(), cycles.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<Permutation> gens;
  const int n = p.degree();
  for (const auto& cycle : cycles) {
    if (cycle.size() < 2) continue;
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    }
    gens.push_back(Permutation::from_images(std::move(images)));
  }
  for (std::size_t k = 0; k + 1 < cycles.size(); ++k) {
    const auto& a = cycles[k];
    const auto& b = cycles[k + 1];
    if (a.size() != b.size()) continue;
    // Swap the two cycles pointwise; commutes with p since both start aligned.
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      images[static_cast<std::size_t>(a[i])] = b[i];
      images[static_cast<std::size_t>(b[i])] = a[i];
    }
    gens.push_back(Permutation::from_images(std::move(images)));
  }
  return gens;
}

bool is_transitive(std::span<const Permutation> gens, int n) {
  for (const auto& g : gens) {
    if (g.degree() != n) throw InputError("is_transitive: generator degree mismatch");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      int y = g(x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n;
}

MonodromyTriple MonodromyTriple::from_pair(Permutation g0, Permutation g1) {
  Permutation g_inf = inverse(compose(g0, g1));
  return MonodromyTriple{std::move(g0), std::move(g1), std::move(g_inf)};
}

MonodromyTriple MonodromyTriple::parse(std::string_view text, int degree) {
  auto first = text.find('|');
  auto second = first == std::string_view::npos ? first : text.find('|', first + 1);
  if (second == std::string_view::npos) {
    throw InputError("a monodromy triple needs three '|'-separated permutations");
  }
  MonodromyTriple t{Permutation::parse(text.substr(0, first), degree),
                    Permutation::parse(text.substr(first + 1, second - first - 1), degree),
                    Permutation::parse(text.substr(second + 1), degree)};
  return t;
}

const Permutation& MonodromyTriple::slot(int i) const {
  switch (i) {
    case 0: return g0;
    case 1: return g1;
    case 2: return g_inf;
  }
  throw std::out_of_range("triple slot index");
}

bool MonodromyTriple::multiplies_to_identity() const {
  return compose(compose(g0, g1), g_inf).is_identity();
}

RamificationScheme MonodromyTriple::scheme() const {
  return RamificationScheme(cycle_type(g0), cycle_type(g1), cycle_type(g_inf));
}

bool MonodromyTriple::transitive() const {
  std::array<Permutation, 2> gens{g0, g1};
  return is_transitive(gens, degree());
}

std::string MonodromyTriple::to_string() const {
  return g0.to_string() + "|" + g1.to_string() + "|" + g_inf.to_string();
}

MonodromyTriple permute_slots(const MonodromyTriple& t, const std::array<int, 3>& order) {
  std::array<int, 3> check = order;
  std::sort(check.begin(), check.end());
  if (check != std::array<int, 3>{0, 1, 2}) throw InputError("slot order must be a permutation of 0,1,2");
  int inversions = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) inversions += order[static_cast<std::size_t>(i)] > order[static_cast<std::size_t>(j)];
  }
  auto pick = [&](int i) {
    const Permutation& p = t.slot(order[static_cast<std::size_t>(i)]);
    return inversions % 2 ? inverse(p) : p;
  };
  return MonodromyTriple{pick(0), pick(1), pick(2)};
}

}  // namespace belyi
