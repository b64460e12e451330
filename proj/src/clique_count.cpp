#include "omatch/clique.hpp"
#include "omatch/error.hpp"

namespace omatch {

namespace {

constexpr int max_rk = 24;

// Builds cliques on {0..rk-1} one edge at a time. Each new edge starts at
// the smallest uncovered vertex, so every earlier edge plays the letter A
// against it; partial words are pruned against prefixes of members.
class CliqueSearch {
 public:
  CliqueSearch(const PatternSet& ps, int k) : r_(ps.r()), k_(k), n_(ps.r() * k) {
    if (k < 0) fail(ErrorKind::range, "k must be nonnegative");
    if (n_ > max_rk) fail(ErrorKind::cap_exceeded, "r*k = " + std::to_string(n_) + " exceeds 24");
    prefix_.assign((std::size_t{1} << (2 * r_ + 1)) / 64 + 1, 0);
    for (const Pattern& p : ps.members())
      for (int len = 1; len <= 2 * r_; ++len) {
        const std::uint64_t key = (1ULL << len) | (p.bits() & ((1ULL << len) - 1));
        prefix_[key >> 6] |= 1ULL << (key & 63);
      }
    owner_.assign(static_cast<std::size_t>(n_), -1);
    flat_.assign(static_cast<std::size_t>(n_), 0);
    pos_.assign(static_cast<std::size_t>(std::max(k_, 1) * (r_ + 1) * std::max(k_, 1)), 0);
    bits_.assign(pos_.size(), 0);
  }

  template <class Visit>
  void run(Visit&& visit) {
    stop_ = false;
    if (k_ == 0) {
      visit(flat_);
      return;
    }
    place_edge(0, visit);
  }

 private:
  bool allowed(int len, std::uint64_t bits) const {
    const std::uint64_t key = (1ULL << len) | bits;
    return (prefix_[key >> 6] >> (key & 63)) & 1U;
  }
  // State of earlier edge f while the m-th vertex of edge idx is placed.
  std::size_t slot(int idx, int m, int f) const { return static_cast<std::size_t>((idx * (r_ + 1) + m) * k_ + f); }

  template <class Visit>
  void place_edge(int idx, Visit& visit) {
    if (idx == k_) {
      if (!visit(flat_)) stop_ = true;
      return;
    }
    int u = 0;
    while (owner_[static_cast<std::size_t>(u)] != -1) ++u;
    flat_[static_cast<std::size_t>(idx * r_)] = u;
    for (int f = 0; f < idx; ++f) {
      int p = 0;
      while (p < r_ && flat_[static_cast<std::size_t>(f * r_ + p)] < u) ++p;
      pos_[slot(idx, 1, f)] = p;
      bits_[slot(idx, 1, f)] = 1ULL << p;
      if (!allowed(p + 1, bits_[slot(idx, 1, f)])) return;
    }
    extend(idx, 1, u, visit);
  }

  template <class Visit>
  void extend(int idx, int m, int last, Visit& visit) {
    if (m == r_) {
      for (int f = 0; f < idx; ++f)
        if (!allowed(2 * r_, bits_[slot(idx, m, f)])) return;
      for (int a = 0; a < r_; ++a) owner_[static_cast<std::size_t>(flat_[static_cast<std::size_t>(idx * r_ + a)])] = idx;
      place_edge(idx + 1, visit);
      for (int a = 0; a < r_; ++a) owner_[static_cast<std::size_t>(flat_[static_cast<std::size_t>(idx * r_ + a)])] = -1;
      return;
    }
    const int need_after = r_ - m - 1;
    for (int v = last + 1; v < n_ - need_after && !stop_; ++v) {
      if (owner_[static_cast<std::size_t>(v)] != -1) continue;
      bool ok = true;
      for (int f = 0; f < idx && ok; ++f) {
        int p = pos_[slot(idx, m, f)];
        while (p < r_ && flat_[static_cast<std::size_t>(f * r_ + p)] < v) ++p;
        pos_[slot(idx, m + 1, f)] = p;
        bits_[slot(idx, m + 1, f)] = bits_[slot(idx, m, f)] | (1ULL << (p + m));
        ok = allowed(p + m + 1, bits_[slot(idx, m + 1, f)]);
      }
      if (!ok) continue;
      flat_[static_cast<std::size_t>(idx * r_ + m)] = v;
      extend(idx, m + 1, v, visit);
    }
  }

  int r_, k_, n_;
  std::vector<std::uint64_t> prefix_;
  std::vector<int> owner_;
  std::vector<Vertex> flat_;
  std::vector<int> pos_;
  std::vector<std::uint64_t> bits_;
  bool stop_ = false;
};

}  // namespace

BigInt count_cliques(const PatternSet& ps, int k) {
  CliqueSearch search(ps, k);
  std::uint64_t count = 0;
  search.run([&](const std::vector<Vertex>&) {
    ++count;
    return true;
  });
  return BigInt(count);
}

void for_each_clique(const PatternSet& ps, int k, const std::function<bool(const OrderedMatching&)>& visit) {
  CliqueSearch search(ps, k);
  const int r = ps.r();
  search.run([&](const std::vector<Vertex>& flat) { return visit(OrderedMatching::from_flat(r, flat)); });
}

bool has_clique(const PatternSet& ps, int k) {
  CliqueSearch search(ps, k);
  bool found = false;
  search.run([&](const std::vector<Vertex>&) {
    found = true;
    return false;
  });
  return found;
}

int max_clique_global(const PatternSet& ps, int cap_rk) {
  for (const Pattern& p : ps.members())
    if (is_collectable(p)) fail(ErrorKind::unbounded_family, p.word() + " is collectable, so cliques are unbounded");
  const int r = ps.r();
  for (int k = 3;; ++k) {
    if (r * k > std::min(cap_rk, max_rk)) fail(ErrorKind::cap_exceeded, "search reached r*k = " + std::to_string(r * k));
    if (!has_clique(ps, k)) return k - 1;
  }
}

}  // namespace omatch
