#include "belyi/canonical.hpp"

namespace belyi {

namespace {

// Depth-first over relabelings. Labels are filled in order; the only real
// branching happens when a block of canonical_rep(g0) is reached before any
// earlier label pointed into it. Everything else is forced by minimality.
class PairCanonicalizer {
 public:
  PairCanonicalizer(const Permutation& g0, const Permutation& g1) : n_(g0.degree()), g1_(g1) {
    if (g0.degree() != g1.degree()) throw InputError("canonicalize_pair: degree mismatch");
    cycles_ = g0.cycles();
    cycle_of_.assign(static_cast<std::size_t>(n_), 0);
    pos_in_cycle_.assign(static_cast<std::size_t>(n_), 0);
    for (std::size_t c = 0; c < cycles_.size(); ++c) {
      for (std::size_t j = 0; j < cycles_[c].size(); ++j) {
        cycle_of_[static_cast<std::size_t>(cycles_[c][j])] = static_cast<int>(c);
        pos_in_cycle_[static_cast<std::size_t>(cycles_[c][j])] = static_cast<int>(j);
      }
    }
    Partition type = cycle_type(g0);
    block_len_at_.assign(static_cast<std::size_t>(n_), 0);
    next_block_.assign(static_cast<std::size_t>(n_) + 1, -1);
    int start = 0;
    for (int len : type.parts()) {
      block_len_at_[static_cast<std::size_t>(start)] = len;
      block_starts_by_len_.resize(static_cast<std::size_t>(n_) + 1);
      block_starts_by_len_[static_cast<std::size_t>(len)].push_back(start);
      start += len;
    }
    next_block_.assign(static_cast<std::size_t>(n_) + 1, 0);
    label_of_.assign(static_cast<std::size_t>(n_), -1);
    orig_of_.assign(static_cast<std::size_t>(n_), -1);
    cycle_used_.assign(cycles_.size(), 0);
    cur_.assign(static_cast<std::size_t>(n_), 0);
  }

  CanonicalPair run() {
    search(0, false);
    CanonicalPair out;
    out.g1_images = best_;
    out.aut_order = count_;
    out.labeling = Permutation::from_images(best_labeling_);
    return out;
  }

 private:
  void place(int cycle, int start, int rotation) {
    const auto& c = cycles_[static_cast<std::size_t>(cycle)];
    const int len = static_cast<int>(c.size());
    for (int j = 0; j < len; ++j) {
      int x = c[static_cast<std::size_t>((rotation + j) % len)];
      label_of_[static_cast<std::size_t>(x)] = start + j;
      orig_of_[static_cast<std::size_t>(start + j)] = x;
    }
    cycle_used_[static_cast<std::size_t>(cycle)] = 1;
    ++next_block_[static_cast<std::size_t>(len)];
  }

  void unplace(int cycle, int start) {
    const auto& c = cycles_[static_cast<std::size_t>(cycle)];
    const int len = static_cast<int>(c.size());
    for (int j = 0; j < len; ++j) {
      label_of_[static_cast<std::size_t>(orig_of_[static_cast<std::size_t>(start + j)])] = -1;
      orig_of_[static_cast<std::size_t>(start + j)] = -1;
    }
    cycle_used_[static_cast<std::size_t>(cycle)] = 0;
    --next_block_[static_cast<std::size_t>(len)];
  }

  void search(int i, bool less) {
    if (i == n_) {
      if (!have_best_ || less) {
        best_ = cur_;
        best_labeling_ = label_of_;
        count_ = 1;
        have_best_ = true;
        ++epoch_;
      } else {
        ++count_;
      }
      return;
    }

    if (orig_of_[static_cast<std::size_t>(i)] < 0) {
      // Unreached block: try every unused cycle of its length, every rotation.
      const int len = block_len_at_[static_cast<std::size_t>(i)];
      for (std::size_t c = 0; c < cycles_.size(); ++c) {
        if (cycle_used_[c] || static_cast<int>(cycles_[c].size()) != len) continue;
        for (int r = 0; r < len; ++r) {
          std::uint64_t epoch = epoch_;
          place(static_cast<int>(c), i, r);
          search(i, less);
          unplace(static_cast<int>(c), i);
          if (epoch != epoch_) less = false;
        }
      }
      return;
    }

    const int x = orig_of_[static_cast<std::size_t>(i)];
    const int y = g1_(x);
    int placed_cycle = -1;
    int placed_start = 0;
    if (label_of_[static_cast<std::size_t>(y)] < 0) {
      // Smallest free block of the right length, y at its start.
      const int c = cycle_of_[static_cast<std::size_t>(y)];
      const auto len = cycles_[static_cast<std::size_t>(c)].size();
      const auto& starts = block_starts_by_len_[len];
      placed_start = starts[static_cast<std::size_t>(next_block_[len])];
      place(c, placed_start, pos_in_cycle_[static_cast<std::size_t>(y)]);
      placed_cycle = c;
    }
    const int v = label_of_[static_cast<std::size_t>(y)];
    bool child_less = less;
    bool prune = false;
    if (have_best_ && !less) {
      if (v > best_[static_cast<std::size_t>(i)]) prune = true;
      else if (v < best_[static_cast<std::size_t>(i)]) child_less = true;
    }
    if (!prune) {
      cur_[static_cast<std::size_t>(i)] = v;
      search(i + 1, child_less);
    }
    if (placed_cycle >= 0) unplace(placed_cycle, placed_start);
  }

  int n_;
  const Permutation& g1_;
  std::vector<std::vector<int>> cycles_;
  std::vector<int> cycle_of_;
  std::vector<int> pos_in_cycle_;
  std::vector<int> block_len_at_;
  std::vector<std::vector<int>> block_starts_by_len_;
  std::vector<int> next_block_;
  std::vector<int> label_of_;
  std::vector<int> orig_of_;
  std::vector<char> cycle_used_;
  std::vector<int> cur_;
  std::vector<int> best_;
  std::vector<int> best_labeling_;
  std::uint64_t count_ = 0;
  std::uint64_t epoch_ = 0;
  bool have_best_ = false;
};

}  // namespace

CanonicalPair canonicalize_pair(const Permutation& g0, const Permutation& g1) {
  return PairCanonicalizer(g0, g1).run();
}

MonodromyTriple canonical_triple(const MonodromyTriple& t) {
  auto form = canonicalize_pair(t.g0, t.g1);
  return MonodromyTriple::from_pair(canonical_rep(cycle_type(t.g0)), Permutation::from_images(form.g1_images));
}

std::optional<Permutation> find_conjugator(const MonodromyTriple& a, const MonodromyTriple& b) {
  if (a.degree() != b.degree()) return std::nullopt;
  if (cycle_type(a.g0) != cycle_type(b.g0)) return std::nullopt;
  auto fa = canonicalize_pair(a.g0, a.g1);
  auto fb = canonicalize_pair(b.g0, b.g1);
  if (fa.g1_images != fb.g1_images) return std::nullopt;
  Permutation c = compose(fa.labeling, inverse(fb.labeling));
  for (int i = 0; i < 3; ++i) {
    if (conjugate(a.slot(i), c) != b.slot(i)) return std::nullopt;
  }
  return c;
}

}  // namespace belyi
