#include "belyi/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "belyi/canonical.hpp"

namespace belyi {

namespace {

// Generates every permutation y of a given cycle type, one cycle at a time:
// each cycle starts at the smallest point not yet covered. With pruning on,
// cycles of the partial product h = x*y are checked against the target type
// as soon as they close.
class CandidateGenerator {
 public:
  using Visit = std::function<void(const std::vector<int>&)>;

  CandidateGenerator(const Permutation& x, const Partition& type_y, const Partition& type_h, bool prune,
                     std::uint64_t budget, int shard, int shards, Visit visit)
      : n_(x.degree()),
        x_inv_(static_cast<std::size_t>(n_)),
        rem_y_(type_y.multiplicities()),
        rem_h_(type_h.multiplicities()),
        type_h_(type_h),
        prune_(prune),
        budget_(budget),
        shard_(shard),
        shards_(shards),
        visit_(std::move(visit)) {
    for (int i = 0; i < n_; ++i) x_inv_[static_cast<std::size_t>(x(i))] = i;
    y_.assign(static_cast<std::size_t>(n_), -1);
    h_.assign(static_cast<std::size_t>(n_), -1);
    covered_.assign(static_cast<std::size_t>(n_), 0);
  }

  void run() { next_cycle(0); }
  std::uint64_t nodes() const { return nodes_; }

 private:
  static constexpr int kShardDepth = 2;

  bool take_shard(int depth) {
    if (shards_ <= 1 || depth != kShardDepth) return true;
    return (shard_counter_++ % static_cast<std::uint64_t>(shards_)) == static_cast<std::uint64_t>(shard_);
  }

  void tick() {
    if (++nodes_ > budget_) throw ResourceError("candidate budget exceeded");
  }

  // Returns the length of the product cycle closed by h(p) = v, or 0.
  int set_product(int p, int v) {
    h_[static_cast<std::size_t>(p)] = v;
    int length = 1;
    for (int t = v; t != p; ++length) {
      t = h_[static_cast<std::size_t>(t)];
      if (t < 0) return 0;
    }
    return length;
  }

  // y(q) = v. Returns false when the product closes a cycle of a wrong length.
  bool assign(int q, int v, int& closed) {
    y_[static_cast<std::size_t>(q)] = v;
    closed = set_product(x_inv_[static_cast<std::size_t>(q)], v);
    if (!prune_ || closed == 0) return true;
    if (rem_h_[static_cast<std::size_t>(closed)] == 0) {
      closed = 0;
      return false;
    }
    --rem_h_[static_cast<std::size_t>(closed)];
    return true;
  }

  void unassign(int q, int closed) {
    y_[static_cast<std::size_t>(q)] = -1;
    h_[static_cast<std::size_t>(x_inv_[static_cast<std::size_t>(q)])] = -1;
    if (prune_ && closed) ++rem_h_[static_cast<std::size_t>(closed)];
  }

  void next_cycle(int depth) {
    if (!take_shard(depth)) return;
    tick();
    int start = 0;
    while (start < n_ && covered_[static_cast<std::size_t>(start)]) ++start;
    if (start == n_) {
      if (prune_ || cycle_type(Permutation::from_images(h_)) == type_h_) visit_(y_);
      return;
    }
    covered_[static_cast<std::size_t>(start)] = 1;
    for (int len = n_; len >= 1; --len) {
      if (rem_y_[static_cast<std::size_t>(len)] == 0) continue;
      --rem_y_[static_cast<std::size_t>(len)];
      extend(start, start, len - 1, depth + 1);
      ++rem_y_[static_cast<std::size_t>(len)];
    }
    covered_[static_cast<std::size_t>(start)] = 0;
  }

  void extend(int start, int current, int left, int depth) {
    if (!take_shard(depth)) return;
    tick();
    int closed = 0;
    if (left == 0) {
      if (assign(current, start, closed)) next_cycle(depth + 1);
      unassign(current, closed);
      return;
    }
    for (int p = start + 1; p < n_; ++p) {
      if (covered_[static_cast<std::size_t>(p)]) continue;
      covered_[static_cast<std::size_t>(p)] = 1;
      if (assign(current, p, closed)) extend(start, p, left - 1, depth + 1);
      unassign(current, closed);
      covered_[static_cast<std::size_t>(p)] = 0;
    }
  }

  int n_;
  std::vector<int> x_inv_;
  std::vector<int> rem_y_;
  std::vector<int> rem_h_;
  Partition type_h_;
  bool prune_;
  std::uint64_t budget_;
  int shard_;
  int shards_;
  std::uint64_t shard_counter_ = 0;
  Visit visit_;
  std::vector<int> y_;
  std::vector<int> h_;
  std::vector<char> covered_;
  std::uint64_t nodes_ = 0;
};

struct OrbitTally {
  std::uint64_t aut_order = 0;
  std::uint64_t members = 0;  // candidates seen in this centralizer orbit
};

}  // namespace

void CoveringClass::check() const {
  const auto& t = triple;
  if (!t.multiplies_to_identity()) throw InvariantError("class triple does not multiply to the identity");
  if (t.scheme() != scheme) throw InvariantError("class triple has the wrong cycle types");
  if (t.transitive() != connected) throw InvariantError("class connectivity flag is wrong");
  if (aut_order == 0) throw InvariantError("class has zero automorphism order");
  if (connected && static_cast<std::uint64_t>(scheme.degree()) % aut_order != 0) {
    throw InvariantError("automorphism order of a connected class does not divide the degree");
  }
}

std::array<int, 3> enumeration_slot_order(const RamificationScheme& s) {
  std::array<int, 3> order{0, 1, 2};
  std::array<BigInt, 3> z{centralizer_order(s.lambda0), centralizer_order(s.lambda1),
                          centralizer_order(s.lambda_inf)};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return z[static_cast<std::size_t>(a)] > z[static_cast<std::size_t>(b)];
  });
  return order;
}

std::vector<CoveringClass> enumerate_classes(const RamificationScheme& s, const EnumerateOptions& opts) {
  const int n = s.degree();
  if (n > kMaxDegree) throw ResourceError("degree exceeds the compiled maximum");
  if ((n - s.lambda0.length() - s.lambda1.length() - s.lambda_inf.length()) % 2 != 0) {
    return {};  // sign obstruction
  }

  const auto order = enumeration_slot_order(s);
  std::array<int, 3> back{};
  for (int i = 0; i < 3; ++i) back[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  const Partition& type_x = s.slot(order[0]);
  const Partition& type_y = s.slot(order[1]);
  const Partition& type_h = s.slot(order[2]);
  const Permutation x = canonical_rep(type_x);
  const bool prune = class_size(type_y) >= opts.plain_iteration_threshold;

  std::map<std::vector<int>, OrbitTally> orbits;
  std::mutex merge;
  auto worker = [&](int shard, int shards) {
    std::map<std::vector<int>, OrbitTally> local;
    CandidateGenerator gen(x, type_y, type_h, prune, opts.node_budget, shard, shards,
                           [&](const std::vector<int>& y) {
                             auto found = MonodromyTriple::from_pair(x, Permutation::from_images(y));
                             auto original = permute_slots(found, back);
                             auto form = canonicalize_pair(original.g0, original.g1);
                             auto& tally = local[form.g1_images];
                             tally.aut_order = form.aut_order;
                             ++tally.members;
                           });
    gen.run();
    std::lock_guard lock(merge);
    for (auto& [key, tally] : local) {
      auto& into = orbits[key];
      into.aut_order = tally.aut_order;
      into.members += tally.members;
    }
  };

  const int jobs = std::max(1, opts.jobs);
  try {
    if (jobs == 1) {
      worker(0, 1);
    } else {
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
      for (int j = 0; j < jobs; ++j) {
        threads.emplace_back([&, j] {
          try {
            worker(j, jobs);
          } catch (...) {
            errors[static_cast<std::size_t>(j)] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
  } catch (const ResourceError& e) {
    throw ResourceError(std::string(e.what()) + " for scheme " + s.bracketed());
  }

  // Orbit-stabilizer: each orbit is hit |Z(x)| / |Aut| times.
  const BigInt zx = centralizer_order(type_x);
  std::vector<CoveringClass> out;
  out.reserve(orbits.size());
  const Permutation g0 = canonical_rep(s.lambda0);
  for (const auto& [key, tally] : orbits) {
    if (BigInt(tally.members) * tally.aut_order != zx) {
      throw InvariantError("orbit-stabilizer count mismatch for scheme " + s.bracketed());
    }
    CoveringClass c;
    c.scheme = s;
    c.triple = MonodromyTriple::from_pair(g0, Permutation::from_images(key));
    c.aut_order = tally.aut_order;
    c.connected = c.triple.transitive();
    c.check();
    out.push_back(std::move(c));
  }
  return out;
}

Mass total_class_mass(const std::vector<CoveringClass>& classes) {
  Rational sum = 0;
  for (const auto& c : classes) sum += Rational(1, c.aut_order);
  return Mass(sum);
}

Mass connected_mass(const RamificationScheme& s, const EnumerateOptions& opts) {
  Rational sum = 0;
  for (const auto& c : enumerate_classes(s, opts)) {
    if (c.connected) sum += Rational(1, c.aut_order);
  }
  return Mass(sum);
}

std::uint64_t count_connected(const RamificationScheme& s, const EnumerateOptions& opts) {
  std::uint64_t count = 0;
  for (const auto& c : enumerate_classes(s, opts)) count += c.connected;
  return count;
}

}  // namespace belyi
