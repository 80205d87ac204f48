#include "belyi/partition.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>

namespace belyi {

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw InputError("partition must have at least one part");
  for (int p : parts_) {
    if (p < 1) throw InputError("partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  degree_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '[')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == ']')) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty partition");

  std::vector<int> parts;
  while (true) {
    auto comma = text.find(',');
    std::string_view token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw InputError("invalid partition part '" + std::string(token) + "'");
    }
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Partition(std::move(parts));
}

std::vector<int> Partition::multiplicities() const {
  std::vector<int> m(static_cast<std::size_t>(degree_) + 1, 0);
  for (int p : parts_) ++m[static_cast<std::size_t>(p)];
  return m;
}

Partition Partition::transpose() const {
  std::vector<int> t(static_cast<std::size_t>(largest()), 0);
  for (int p : parts_) {
    for (int j = 0; j < p; ++j) ++t[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(t));
}

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

std::string Partition::bracketed() const { return "[" + to_string() + "]"; }

RamificationScheme::RamificationScheme(Partition l0, Partition l1, Partition linf)
    : lambda0(std::move(l0)), lambda1(std::move(l1)), lambda_inf(std::move(linf)) {
  if (lambda0.degree() != lambda1.degree() || lambda0.degree() != lambda_inf.degree()) {
    throw InputError("scheme partitions have unequal degrees: " + bracketed());
  }
}

RamificationScheme RamificationScheme::parse(std::string_view text) {
  std::vector<Partition> slots;
  // Either "a|b|c" or "[a][b][c]".
  if (text.find('|') != std::string_view::npos) {
    while (true) {
      auto bar = text.find('|');
      slots.push_back(Partition::parse(text.substr(0, bar)));
      if (bar == std::string_view::npos) break;
      text.remove_prefix(bar + 1);
    }
  } else {
    while (!text.empty()) {
      auto open = text.find('[');
      if (open == std::string_view::npos) break;
      auto close = text.find(']', open);
      if (close == std::string_view::npos) throw InputError("unbalanced bracket in scheme");
      slots.push_back(Partition::parse(text.substr(open + 1, close - open - 1)));
      text.remove_prefix(close + 1);
    }
  }
  if (slots.size() != 3) {
    throw InputError("a ramification scheme needs exactly three partitions");
  }
  return RamificationScheme(slots[0], slots[1], slots[2]);
}

const Partition& RamificationScheme::slot(int i) const {
  switch (i) {
    case 0: return lambda0;
    case 1: return lambda1;
    case 2: return lambda_inf;
  }
  throw std::out_of_range("scheme slot index");
}

std::string RamificationScheme::to_string() const {
  return lambda0.to_string() + "|" + lambda1.to_string() + "|" + lambda_inf.to_string();
}

std::string RamificationScheme::bracketed() const {
  return lambda0.bracketed() + lambda1.bracketed() + lambda_inf.bracketed();
}

std::vector<Partition> partitions_of(int n) {
  if (n < 1) throw InputError("partitions_of requires n >= 1");
  std::vector<Partition> out;
  std::vector<int> current;
  // Depth-first with decreasing first choice yields reverse-lexicographic order.
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
      current.push_back(k);
      rec(remaining - k, k);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

BigInt centralizer_order(const Partition& lambda) {
  BigInt z = 1;
  auto m = lambda.multiplicities();
  for (std::size_t i = 1; i < m.size(); ++i) {
    for (int k = 0; k < m[i]; ++k) z *= static_cast<int>(i);
    z *= factorial(m[i]);
  }
  return z;
}

BigInt class_size(const Partition& lambda) {
  return factorial(lambda.degree()) / centralizer_order(lambda);
}

std::optional<int> genus_of(const RamificationScheme& s) {
  int excess = s.degree() - s.lambda0.length() - s.lambda1.length() - s.lambda_inf.length() + 2;
  if (excess % 2 != 0 || excess < 0) return std::nullopt;
  return excess / 2;
}

std::vector<RamificationScheme> schemes_of_genus(int n, int g) {
  auto parts = partitions_of(n);
  // Fix the total number of cycles first to skip most of the cube.
  int cycles = n + 2 - 2 * g;
  std::vector<RamificationScheme> out;
  for (const auto& a : parts) {
    for (const auto& b : parts) {
      int rest = cycles - a.length() - b.length();
      if (rest < 1) continue;
      for (const auto& c : parts) {
        if (c.length() == rest) out.emplace_back(a, b, c);
      }
    }
  }
  return out;
}

}  // namespace belyi
