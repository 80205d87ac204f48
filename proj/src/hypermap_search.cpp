#include "belyi/hypermap_search.hpp"

#include <array>
#include <bit>

namespace belyi {

void ConnectedTally::add(std::uint64_t aut_order, const MonodromyTriple* triple) {
  ++classes;
  ++aut_histogram[aut_order];
  if (triple && !representative) representative = *triple;
}

void ConnectedTally::merge(const ConnectedTally& other) {
  classes += other.classes;
  for (const auto& [aut, count] : other.aut_histogram) aut_histogram[aut] += count;
  if (!representative && other.representative) representative = other.representative;
  members.insert(members.end(), other.members.begin(), other.members.end());
}

namespace {

constexpr int N = kMaxDegree;
using Row = std::array<std::int8_t, N>;
using Counts = std::array<std::int16_t, N + 1>;

// Open paths of a partial injection, stored at their endpoints: for a tail
// (no image yet) `end` is its head, for a head (no preimage yet) `end` is its
// tail; `len` is the path length at both endpoints.
struct Chains {
  Row end;
  Row len;

  void reset(int n) {
    for (int i = 0; i < n; ++i) {
      end[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
      len[static_cast<std::size_t>(i)] = 1;
    }
  }
};

struct LinkUndo {
  std::int8_t head = -1, head_end = 0, head_len = 0;
  std::int8_t tail = -1, tail_end = 0, tail_len = 0;
};

// f(p) = v with p a tail and v a head. Returns the closed cycle length, or 0
// and the merged path length in `merged`.
inline int link(Chains& c, int p, int v, LinkUndo& undo, int& merged) {
  const int hp = c.end[static_cast<std::size_t>(p)];
  if (hp == v) return c.len[static_cast<std::size_t>(p)];
  const int tv = c.end[static_cast<std::size_t>(v)];
  undo = {static_cast<std::int8_t>(hp), c.end[static_cast<std::size_t>(hp)], c.len[static_cast<std::size_t>(hp)],
          static_cast<std::int8_t>(tv), c.end[static_cast<std::size_t>(tv)], c.len[static_cast<std::size_t>(tv)]};
  merged = c.len[static_cast<std::size_t>(p)] + c.len[static_cast<std::size_t>(v)];
  c.end[static_cast<std::size_t>(hp)] = static_cast<std::int8_t>(tv);
  c.end[static_cast<std::size_t>(tv)] = static_cast<std::int8_t>(hp);
  c.len[static_cast<std::size_t>(hp)] = static_cast<std::int8_t>(merged);
  c.len[static_cast<std::size_t>(tv)] = static_cast<std::int8_t>(merged);
  return 0;
}

inline void unlink(Chains& c, const LinkUndo& undo) {
  if (undo.head < 0) return;
  c.end[static_cast<std::size_t>(undo.tail)] = undo.tail_end;
  c.len[static_cast<std::size_t>(undo.tail)] = undo.tail_len;
  c.end[static_cast<std::size_t>(undo.head)] = undo.head_end;
  c.len[static_cast<std::size_t>(undo.head)] = undo.head_len;
}

class RootedSearch {
 public:
  RootedSearch(const Partition& a, const Partition& b, const std::vector<Partition>& thirds,
               const RootedSearchOptions& opts)
      : n_(a.degree()), opts_(opts), tallies_(thirds.size()) {
    if (b.degree() != n_) throw InputError("search_connected: degree mismatch");
    if (n_ > N) throw ResourceError("degree exceeds the compiled maximum of " + std::to_string(N));
    if (thirds.size() > 64) throw InputError("search_connected handles at most 64 product types per call");
    rem_a_.fill(0);
    rem_b_.fill(0);
    for (int p : a.parts()) ++rem_a_[static_cast<std::size_t>(p)];
    for (int p : b.parts()) ++rem_b_[static_cast<std::size_t>(p)];
    for (auto& row : need_) row.fill(0);
    for (std::size_t k = 0; k < thirds.size(); ++k) {
      if (thirds[k].degree() != n_) throw InputError("search_connected: degree mismatch");
      auto m = thirds[k].multiplicities();
      for (int len = 1; len <= n_; ++len) {
        for (int t = 0; t <= m[static_cast<std::size_t>(len)]; ++t) {
          need_[static_cast<std::size_t>(len)][static_cast<std::size_t>(t)] |= std::uint64_t{1} << k;
        }
      }
      largest_[k] = thirds[k].largest();
    }
    mask_ = thirds.empty() ? 0 : (thirds.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << thirds.size()) - 1);
    closed_h_.fill(0);
    ga_.fill(-1);
    ga_inv_.fill(-1);
    gb_.fill(-1);
    gb_inv_.fill(-1);
    chains_a_.reset(n_);
    chains_b_.reset(n_);
    chains_h_.reset(n_);
  }

  std::vector<ConnectedTally> run() {
    // Below the shard depth every path is shared; shard 0 takes it all.
    if (n_ < 3 && opts_.shard != 0) return std::move(tallies_);
    if (mask_ != 0) choose_a(0, 0);
    return std::move(tallies_);
  }

 private:
  bool take_shard(int depth) {
    if (opts_.shards <= 1 || depth != kShardDepth) return true;
    return shard_counter_++ % static_cast<std::uint64_t>(opts_.shards) == static_cast<std::uint64_t>(opts_.shard);
  }

  void tick() {
    if (++nodes_ > opts_.node_budget) throw ResourceError("rooted search node budget exceeded");
  }

  static bool fits(const Counts& rem, int length, int n) {
    for (int k = length; k <= n; ++k) {
      if (rem[static_cast<std::size_t>(k)]) return true;
    }
    return false;
  }

  int largest_allowed_product_cycle() const {
    int best = 0;
    for (std::uint64_t m = mask_; m; m &= m - 1) best = std::max(best, largest_[static_cast<std::size_t>(std::countr_zero(m))]);
    return best;
  }

  // Product h(p) = v. Returns false if incompatible with every target type.
  struct HUndo {
    LinkUndo link;
    int closed = 0;
    std::uint64_t mask = 0;
    bool set = false;
  };

  bool set_h(int p, int v, HUndo& u) {
    u.set = true;
    u.mask = mask_;
    int merged = 0;
    u.closed = link(chains_h_, p, v, u.link, merged);
    if (u.closed) {
      const auto len = static_cast<std::size_t>(u.closed);
      const auto have = static_cast<std::size_t>(closed_h_[len] + 1);
      ++closed_h_[len];
      if (have > static_cast<std::size_t>(N)) return false;
      mask_ &= need_[len][have];
      return mask_ != 0;
    }
    return merged <= largest_allowed_product_cycle();
  }

  void unset_h(const HUndo& u) {
    if (!u.set) return;
    mask_ = u.mask;
    if (u.closed) {
      --closed_h_[static_cast<std::size_t>(u.closed)];
    } else {
      unlink(chains_h_, u.link);
    }
  }

  // Assigns g(p) = v for g0 (which == 0) or g1 (which == 1); checks the
  // partial cycle structure against the remaining parts.
  bool set_g(Row& g, Row& g_inv, Chains& chains, Counts& rem, int p, int v, LinkUndo& undo, int& closed) {
    g[static_cast<std::size_t>(p)] = static_cast<std::int8_t>(v);
    g_inv[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(p);
    int merged = 0;
    closed = link(chains, p, v, undo, merged);
    if (closed) {
      if (rem[static_cast<std::size_t>(closed)] == 0) return false;
      --rem[static_cast<std::size_t>(closed)];
      return true;
    }
    return fits(rem, merged, n_);
  }

  void unset_g(Row& g, Row& g_inv, Chains& chains, Counts& rem, int p, int v, const LinkUndo& undo, int closed,
               bool consumed) {
    g[static_cast<std::size_t>(p)] = -1;
    g_inv[static_cast<std::size_t>(v)] = -1;
    if (closed) {
      if (consumed) ++rem[static_cast<std::size_t>(closed)];
    } else {
      unlink(chains, undo);
    }
  }

  void choose_a(int d, int depth) {
    if (d >= used_) return;  // nothing reaches d: not transitive
    if (!take_shard(depth)) return;
    tick();
    const int limit = used_ < n_ ? used_ : n_ - 1;
    for (int e = 0; e <= limit; ++e) {
      if (ga_inv_[static_cast<std::size_t>(e)] >= 0) continue;
      const bool fresh = e == used_;
      if (fresh) ++used_;
      LinkUndo undo;
      int closed = 0;
      bool ok = set_g(ga_, ga_inv_, chains_a_, rem_a_, d, e, undo, closed);
      const bool consumed = ok && closed;
      HUndo hu;
      if (ok && gb_[static_cast<std::size_t>(e)] >= 0) ok = set_h(d, gb_[static_cast<std::size_t>(e)], hu);
      if (ok) choose_b(d, depth + 1);
      unset_h(hu);
      unset_g(ga_, ga_inv_, chains_a_, rem_a_, d, e, undo, closed, consumed);
      if (fresh) --used_;
    }
  }

  void choose_b(int d, int depth) {
    if (!take_shard(depth)) return;
    tick();
    const int limit = used_ < n_ ? used_ : n_ - 1;
    for (int f = 0; f <= limit; ++f) {
      if (gb_inv_[static_cast<std::size_t>(f)] >= 0) continue;
      const bool fresh = f == used_;
      if (fresh) ++used_;
      LinkUndo undo;
      int closed = 0;
      bool ok = set_g(gb_, gb_inv_, chains_b_, rem_b_, d, f, undo, closed);
      const bool consumed = ok && closed;
      HUndo hu;
      const int pre = ga_inv_[static_cast<std::size_t>(d)];
      if (ok && pre >= 0) ok = set_h(pre, f, hu);
      if (ok) {
        if (d + 1 == n_) {
          leaf();
        } else if (!opts_.prefix_pruning || !beaten(d)) {
          choose_a(d + 1, depth + 1);
        }
      }
      unset_h(hu);
      unset_g(gb_, gb_inv_, chains_b_, rem_b_, d, f, undo, closed, consumed);
      if (fresh) --used_;
    }
  }

  // Compares the labeling from root r with the current one over the prefix
  // where both are determined. -1: r is smaller, 0: equal throughout (only
  // meaningful for complete labelings), +1: r is larger or undecided.
  int compare_root(int r, int last_done) const {
    Row label;
    Row order;
    label.fill(-1);
    label[static_cast<std::size_t>(r)] = 0;
    order[0] = static_cast<std::int8_t>(r);
    int next = 1;
    for (int d = 0; d <= last_done; ++d) {
      const int x = order[static_cast<std::size_t>(d)];
      if (x > last_done) return 1;  // undetermined
      for (int which = 0; which < 2; ++which) {
        const int y = which == 0 ? ga_[static_cast<std::size_t>(x)] : gb_[static_cast<std::size_t>(x)];
        if (label[static_cast<std::size_t>(y)] < 0) {
          label[static_cast<std::size_t>(y)] = static_cast<std::int8_t>(next);
          order[static_cast<std::size_t>(next)] = static_cast<std::int8_t>(y);
          ++next;
        }
        const int mine = which == 0 ? ga_[static_cast<std::size_t>(d)] : gb_[static_cast<std::size_t>(d)];
        const int theirs = label[static_cast<std::size_t>(y)];
        if (theirs != mine) return theirs < mine ? -1 : 1;
      }
    }
    return 0;
  }

  bool beaten(int last_done) const {
    for (int r = 1; r < used_; ++r) {
      if (compare_root(r, last_done) < 0) return true;
    }
    return false;
  }

  void leaf() {
    std::uint64_t aut = 1;
    for (int r = 1; r < n_; ++r) {
      int c = compare_root(r, n_ - 1);
      if (c < 0) return;
      if (c == 0) ++aut;
    }
    if (mask_ == 0 || (mask_ & (mask_ - 1)) != 0) throw InvariantError("rooted search: ambiguous product type");
    auto& tally = tallies_[static_cast<std::size_t>(std::countr_zero(mask_))];
    if (tally.representative && !opts_.collect_members) {
      tally.add(aut, nullptr);
      return;
    }
    std::vector<int> x(ga_.begin(), ga_.begin() + n_);
    std::vector<int> y(gb_.begin(), gb_.begin() + n_);
    auto triple = MonodromyTriple::from_pair(Permutation::from_images(std::move(x)), Permutation::from_images(std::move(y)));
    tally.add(aut, &triple);
    if (opts_.collect_members) tally.members.emplace_back(aut, std::move(triple));
  }

  static constexpr int kShardDepth = 4;

  int n_;
  RootedSearchOptions opts_;
  std::vector<ConnectedTally> tallies_;
  Counts rem_a_;
  Counts rem_b_;
  std::array<std::array<std::uint64_t, N + 2>, N + 1> need_{};
  std::array<int, 64> largest_{};
  std::uint64_t mask_ = 0;
  Counts closed_h_;
  Row ga_, ga_inv_, gb_, gb_inv_;
  Chains chains_a_, chains_b_, chains_h_;
  int used_ = 1;
  std::uint64_t nodes_ = 0;
  std::uint64_t shard_counter_ = 0;
};

}  // namespace

std::vector<ConnectedTally> search_connected(const Partition& a, const Partition& b,
                                             const std::vector<Partition>& thirds, const RootedSearchOptions& opts) {
  return RootedSearch(a, b, thirds, opts).run();
}

ConnectedTally search_connected(const RamificationScheme& s, const RootedSearchOptions& opts) {
  auto tallies = search_connected(s.lambda0, s.lambda1, {s.lambda_inf}, opts);
  return tallies.front();
}

}  // namespace belyi
