#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>

#include "omatch/clique.hpp"
#include "omatch/error.hpp"

namespace omatch {

using Clock = std::chrono::steady_clock;

namespace {
double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}
}  // namespace

SolverKind parse_solver(std::string_view name) {
  if (name == "auto") return SolverKind::automatic;
  if (name == "bb") return SolverKind::bb;
  if (name == "chain") return SolverKind::chain;
  if (name == "partition") return SolverKind::partition;
  fail(ErrorKind::invalid_config, "unknown solver '" + std::string(name) + "'");
}

const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::automatic: return "auto";
    case SolverKind::bb: return "bb";
    case SolverKind::chain: return "chain";
    case SolverKind::partition: return "partition";
  }
  return "?";
}

const char* to_string(SolveStatus s) { return s == SolveStatus::exact ? "Exact" : "LowerBound"; }

bool verify_clique(const OrderedMatching& m, const PatternSet& ps, std::span<const std::size_t> subset) {
  if (m.r() != ps.r()) return false;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    if (subset[a] >= m.size()) return false;
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      if (subset[b] >= m.size() || subset[a] == subset[b]) return false;
      auto e = m.edge(subset[a]);
      auto f = m.edge(subset[b]);
      const bool ef = e[0] < f[0];
      const std::uint64_t bits = ef ? pair_bits(e.data(), f.data(), m.r()) : pair_bits(f.data(), e.data(), m.r());
      if (!ps.contains_bits(bits)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Branch and bound with greedy colouring bounds over bitsets.

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const PatternGraph& g, double budget) : g_(g), budget_(budget) {}

  SolveResult run() {
    const auto start = Clock::now();
    deadline_ = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget_));
    SolveResult res;
    res.solver = "bb";
    const std::size_t n = g_.size();
    if (n > 0) {
      prepare();
      // Neither the degeneracy order nor the left-to-right order wins on
      // every pattern family, so alternate between them with growing node
      // limits, carrying the incumbent across restarts.
      bool done = false;
      for (std::uint64_t limit = 1 << 14; !done && !aborted_; limit *= 4) {
        for (bool left_to_right : {false, true}) {
          build_order(left_to_right);
          if (order_.empty()) {
            done = true;
            break;
          }
          levels_.clear();
          level(0).P.assign(words_, 0);
          for (std::size_t v = 0; v < order_.size(); ++v) level(0).P[v >> 6] |= 1ULL << (v & 63);
          node_limit_ = nodes_ + limit;
          halted_ = false;
          expand(0);
          if (!halted_ || aborted_) {
            done = true;
            break;
          }
        }
      }
      for (std::size_t v : best_) res.witness.push_back(v);
      std::sort(res.witness.begin(), res.witness.end());
    }
    res.size = res.witness.size();
    res.status = aborted_ ? SolveStatus::lower_bound : SolveStatus::exact;
    res.elapsed = seconds_since(start);
    return res;
  }

 private:
  struct Level {
    std::vector<std::uint64_t> P, U, Q;
    std::vector<std::uint32_t> verts;
    std::vector<std::uint32_t> colors;
    std::vector<std::uint64_t> classes;  // bitsets of colour classes below kmin
  };

  Level& level(std::size_t d) {
    while (levels_.size() <= d) {
      auto l = std::make_unique<Level>();
      l->P.assign(words_, 0);
      l->U.assign(words_, 0);
      l->Q.assign(words_, 0);
      l->verts.resize(order_.size());
      l->colors.resize(order_.size());
      levels_.push_back(std::move(l));
    }
    return *levels_[d];
  }

  // Degeneracy peeling, initial lower bounds, core pruning and relabelling.
  void prepare() {
    const std::size_t n = g_.size();
    std::vector<std::size_t> deg(n);
    std::size_t maxdeg = 0;
    for (std::size_t v = 0; v < n; ++v) maxdeg = std::max(maxdeg, deg[v] = g_.degree(v));
    std::vector<std::vector<std::size_t>> bucket(maxdeg + 1);
    for (std::size_t v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
    std::vector<char> gone(n, 0);
    std::vector<std::size_t> removal, core(n, 0);
    removal.reserve(n);
    std::size_t cur = 0, k = 0, remaining = n;
    std::size_t peel_clique_at = n;  // removal index where the rest formed a clique
    while (remaining > 0) {
      cur = std::min(cur, maxdeg);
      while (true) {
        auto& b = bucket[cur];
        while (!b.empty() && (gone[b.back()] || deg[b.back()] != cur)) b.pop_back();
        if (!b.empty()) break;
        ++cur;
      }
      if (peel_clique_at == n && cur + 1 == remaining) peel_clique_at = removal.size();
      const std::size_t v = bucket[cur].back();
      bucket[cur].pop_back();
      k = std::max(k, cur);
      core[v] = k;
      gone[v] = 1;
      removal.push_back(v);
      --remaining;
      const std::uint64_t* row = g_.row(v);
      for (std::size_t w = 0; w < g_.words(); ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
          const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          if (!gone[u]) {
            --deg[u];
            bucket[deg[u]].push_back(u);
            if (deg[u] < cur) cur = deg[u];
          }
        }
      }
    }
    if (peel_clique_at < n) best_.assign(removal.begin() + static_cast<std::ptrdiff_t>(peel_clique_at), removal.end());

    // Greedy cliques seeded at the most central vertices.
    const std::size_t seeds = std::min<std::size_t>(n, 64);
    for (std::size_t s = 0; s < seeds; ++s) {
      std::vector<std::size_t> clique{removal[n - 1 - s]};
      for (std::size_t i = n; i-- > 0;) {
        const std::size_t u = removal[i];
        if (u == clique[0]) continue;
        bool ok = true;
        for (std::size_t c : clique)
          if (!g_.adjacent(u, c)) {
            ok = false;
            break;
          }
        if (ok) clique.push_back(u);
      }
      if (clique.size() > best_.size()) best_ = clique;
    }

    removal_ = std::move(removal);
    core_ = std::move(core);
  }

  // A vertex of core number c lies in no clique larger than c + 1.
  void build_order(bool left_to_right) {
    order_.clear();
    for (std::size_t i = removal_.size(); i-- > 0;)
      if (core_[removal_[i]] + 1 > best_.size()) order_.push_back(removal_[i]);
    if (left_to_right) std::sort(order_.begin(), order_.end());
    relabel();
  }

  void relabel() {
    words_ = (order_.size() + 63) / 64;
    adj_.assign(order_.size() * words_, 0);
    for (std::size_t a = 0; a < order_.size(); ++a)
      for (std::size_t b = a + 1; b < order_.size(); ++b)
        if (g_.adjacent(order_[a], order_[b])) {
          adj_[a * words_ + (b >> 6)] |= 1ULL << (b & 63);
          adj_[b * words_ + (a >> 6)] |= 1ULL << (a & 63);
        }
  }

  bool out_of_time() {
    if ((++nodes_ & 1023) == 0 && Clock::now() > deadline_) aborted_ = halted_ = true;
    if (nodes_ > node_limit_) halted_ = true;
    return halted_;
  }

  void expand(std::size_t depth) {
    if (out_of_time()) return;
    Level& L = level(depth);
    const std::size_t W = words_;
    std::uint64_t* P = L.P.data();
    std::uint64_t* U = L.U.data();
    std::uint64_t* Q = L.Q.data();
    std::copy(P, P + W, U);
    const long kmin = static_cast<long>(best_.size()) - static_cast<long>(clique_.size()) + 1;
    std::size_t cnt = 0;
    std::uint32_t color = 0;
    std::size_t first = 0;
    if (kmin > 1) {
      const auto need = static_cast<std::size_t>(kmin) * W;
      if (L.classes.size() < need) L.classes.resize(need);
      std::fill(L.classes.begin(), L.classes.begin() + static_cast<std::ptrdiff_t>(need), 0);
    }
    while (true) {
      while (first < W && U[first] == 0) ++first;
      if (first == W) break;
      ++color;
      std::copy(U + first, U + W, Q + first);
      for (std::size_t w = first; w < W; ++w) {
        while (Q[w]) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(Q[w]));
          const std::uint64_t* row = adj_.data() + v * W;
          Q[w] &= Q[w] - 1;
          U[w] &= ~(1ULL << (v & 63));
          for (std::size_t x = w; x < W; ++x) Q[x] &= ~row[x];
          if (static_cast<long>(color) < kmin) {
            klass(L, color)[v >> 6] |= 1ULL << (v & 63);
          } else if (!(kmin > 2 && renumber(L, v, static_cast<std::uint32_t>(kmin)))) {
            L.verts[cnt] = static_cast<std::uint32_t>(v);
            L.colors[cnt] = color;
            ++cnt;
          }
        }
      }
    }
    for (std::size_t i = cnt; i-- > 0;) {
      if (clique_.size() + L.colors[i] <= best_.size()) return;
      const std::size_t v = L.verts[i];
      clique_.push_back(v);
      Level& child = level(depth + 1);
      Level& self = *levels_[depth];
      const std::uint64_t* row = adj_.data() + v * W;
      bool any = false;
      for (std::size_t x = 0; x < W; ++x) any |= (child.P[x] = self.P[x] & row[x]) != 0;
      if (!any) {
        if (clique_.size() > best_.size()) {
          best_.clear();
          for (std::size_t u : clique_) best_.push_back(order_[u]);
        }
      } else {
        expand(depth + 1);
      }
      clique_.pop_back();
      self.P[v >> 6] &= ~(1ULL << (v & 63));
      if (halted_) return;
    }
  }

  std::uint64_t* klass(Level& L, std::uint32_t c) { return L.classes.data() + c * words_; }

  // Try to fit v into a class below kmin, moving one conflicting vertex
  // elsewhere if needed.
  bool renumber(Level& L, std::size_t v, std::uint32_t kmin) {
    const std::size_t W = words_;
    const std::uint64_t* nv = adj_.data() + v * W;
    for (std::uint32_t c1 = 1; c1 < kmin; ++c1) {
      std::uint64_t* C1 = klass(L, c1);
      std::size_t hits = 0, w_at = 0;
      for (std::size_t x = 0; x < W && hits < 2; ++x) {
        const std::uint64_t b = C1[x] & nv[x];
        if (b) {
          hits += static_cast<std::size_t>(std::popcount(b));
          w_at = x * 64 + static_cast<std::size_t>(std::countr_zero(b));
        }
      }
      if (hits == 0) {
        C1[v >> 6] |= 1ULL << (v & 63);
        return true;
      }
      if (hits != 1) continue;
      const std::uint64_t* nw = adj_.data() + w_at * W;
      for (std::uint32_t c2 = c1 + 1; c2 < kmin; ++c2) {
        std::uint64_t* C2 = klass(L, c2);
        bool free = true;
        for (std::size_t x = 0; x < W && free; ++x) free = (C2[x] & nw[x]) == 0;
        if (!free) continue;
        C1[w_at >> 6] &= ~(1ULL << (w_at & 63));
        C2[w_at >> 6] |= 1ULL << (w_at & 63);
        C1[v >> 6] |= 1ULL << (v & 63);
        return true;
      }
    }
    return false;
  }

  const PatternGraph& g_;
  double budget_;
  Clock::time_point deadline_;
  std::vector<std::size_t> order_;  // local index -> graph vertex
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<std::unique_ptr<Level>> levels_;
  std::vector<std::size_t> clique_;  // local indices
  std::vector<std::size_t> best_;    // graph vertices
  std::uint64_t nodes_ = 0;
  std::uint64_t node_limit_ = 0;
  bool aborted_ = false;  // out of time
  bool halted_ = false;   // out of time or over the node limit
  std::vector<std::size_t> removal_, core_;
};

// ---------------------------------------------------------------------------
// Partition sweep for the partite family.

// Range add / global max with leftmost argmax over positions 0..size-1.
class MaxTree {
 public:
  explicit MaxTree(std::size_t size) : size_(size) {
    std::size_t cap = 1;
    while (cap < size) cap <<= 1;
    mx_.assign(2 * cap, 0);
    tag_.assign(2 * cap, 0);
    cap_ = cap;
  }
  void add(std::size_t lo, std::size_t hi, int v) { add(1, 0, cap_, lo, hi, v); }  // [lo, hi)
  int max() const { return mx_[1]; }
  std::size_t argmax() const {
    std::size_t node = 1;
    int need = mx_[1];
    while (node < cap_) {
      need -= tag_[node];
      node = (mx_[2 * node] == need) ? 2 * node : 2 * node + 1;
    }
    return node - cap_;
  }

 private:
  void add(std::size_t node, std::size_t l, std::size_t r, std::size_t lo, std::size_t hi, int v) {
    if (hi <= l || r <= lo) return;
    if (lo <= l && r <= hi) {
      mx_[node] += v;
      tag_[node] += v;
      return;
    }
    const std::size_t mid = (l + r) / 2;
    add(2 * node, l, mid, lo, hi, v);
    add(2 * node + 1, mid, r, lo, hi, v);
    mx_[node] = tag_[node] + std::max(mx_[2 * node], mx_[2 * node + 1]);
  }
  std::size_t size_, cap_;
  std::vector<int> mx_, tag_;
};

struct Sweep {
  int count = 0;
  int a = 0, b = 0;
};

// Best cuts a < b maximizing #{i : x < a <= y < b <= z} over triples (x, y, z).
Sweep sweep3(const std::vector<std::array<int, 3>>& pts, int positions) {
  Sweep best;
  if (pts.empty()) return best;
  std::vector<std::size_t> by_x(pts.size()), by_y(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) by_x[i] = by_y[i] = i;
  std::sort(by_x.begin(), by_x.end(), [&](auto p, auto q) { return pts[p][0] < pts[q][0]; });
  std::sort(by_y.begin(), by_y.end(), [&](auto p, auto q) { return pts[p][1] < pts[q][1]; });
  MaxTree tree(static_cast<std::size_t>(positions) + 1);
  std::size_t ix = 0, iy = 0;
  while (ix < by_x.size()) {
    const int a = pts[by_x[ix]][0] + 1;  // next cut where an edge becomes active
    while (iy < by_y.size() && pts[by_y[iy]][1] < a) {
      const auto& p = pts[by_y[iy++]];
      tree.add(static_cast<std::size_t>(p[1]) + 1, static_cast<std::size_t>(p[2]) + 1, -1);
    }
    while (ix < by_x.size() && pts[by_x[ix]][0] + 1 == a) {
      const auto& p = pts[by_x[ix++]];
      if (p[1] >= a) tree.add(static_cast<std::size_t>(p[1]) + 1, static_cast<std::size_t>(p[2]) + 1, +1);
    }
    if (tree.max() > best.count) {
      best.count = tree.max();
      best.a = a;
      best.b = static_cast<int>(tree.argmax());
    }
  }
  return best;
}

SolveResult solve_partition(const OrderedMatching& m) {
  const auto start = Clock::now();
  const int r = m.r();
  const OrderedMatching c = m.canonicalized();
  const std::size_t n = c.size();
  const int N = static_cast<int>(c.flat().size());
  std::vector<int> cuts;  // r-1 cut positions
  if (n == 0) {
    // nothing to do
  } else if (r == 1) {
    // every 1-edge is spanning
  } else if (r == 2) {
    std::vector<int> diff(static_cast<std::size_t>(N) + 2, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto e = c.edge(i);
      ++diff[static_cast<std::size_t>(e[0]) + 1];
      --diff[static_cast<std::size_t>(e[1]) + 1];
    }
    int run = 0, best = -1, at = 1;
    for (int cut = 1; cut < N; ++cut) {
      run += diff[static_cast<std::size_t>(cut)];
      if (run > best) {
        best = run;
        at = cut;
      }
    }
    cuts = {at};
  } else if (r == 3) {
    std::vector<std::array<int, 3>> pts;
    for (std::size_t i = 0; i < n; ++i) {
      auto e = c.edge(i);
      pts.push_back({e[0], e[1], e[2]});
    }
    const Sweep s = sweep3(pts, N);
    cuts = {s.a, s.b};
  } else {  // r == 4
    std::vector<int> candidates;
    for (std::size_t i = 0; i < n; ++i) candidates.push_back(c.edge(i)[1]);
    std::sort(candidates.begin(), candidates.end());
    Sweep best;
    int best_c1 = 0;
    std::vector<std::array<int, 3>> pts;
    for (int c1 : candidates) {
      pts.clear();
      for (std::size_t i = 0; i < n; ++i) {
        auto e = c.edge(i);
        if (e[0] < c1 && c1 <= e[1]) pts.push_back({e[1], e[2], e[3]});
      }
      if (static_cast<int>(pts.size()) <= best.count) continue;
      const Sweep s = sweep3(pts, N);
      if (s.count > best.count) {
        best = s;
        best_c1 = c1;
      }
    }
    cuts = {best_c1, best.a, best.b};
  }
  SolveResult res;
  res.solver = "partition";
  for (std::size_t i = 0; i < n; ++i) {
    auto e = c.edge(i);
    bool spans = true;
    for (std::size_t a = 0; a + 1 < static_cast<std::size_t>(r) && spans; ++a)
      spans = e[a] < cuts[a] && cuts[a] <= e[a + 1];
    if (spans) res.witness.push_back(i);
  }
  res.size = res.witness.size();
  res.elapsed = seconds_since(start);
  return res;
}

// ---------------------------------------------------------------------------
// Longest chain when the min-ordered relation is transitive.

template <class Related>
SolveResult longest_chain(std::size_t n, Related related, const char* name) {
  const auto start = Clock::now();
  std::vector<std::uint32_t> best(n, 1);
  std::vector<std::int64_t> pred(n, -1);
  std::size_t top = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::uint32_t bj = 1;
    for (std::size_t i = 0; i < j; ++i) {
      if (best[i] + 1 > bj && related(i, j)) {
        bj = best[i] + 1;
        pred[j] = static_cast<std::int64_t>(i);
      }
    }
    best[j] = bj;
    if (bj > best[top]) top = j;
  }
  SolveResult res;
  res.solver = name;
  if (n > 0)
    for (std::int64_t v = static_cast<std::int64_t>(top); v >= 0; v = pred[static_cast<std::size_t>(v)]) res.witness.push_back(static_cast<std::size_t>(v));
  std::reverse(res.witness.begin(), res.witness.end());
  res.size = res.witness.size();
  res.elapsed = seconds_since(start);
  return res;
}

SolveResult chain_on_matching(const OrderedMatching& m, const PatternSet& ps) {
  const int r = m.r();
  const Vertex* base = m.flat().data();
  const auto ur = static_cast<std::size_t>(r);
  if (r == 2) {
    return longest_chain(
        m.size(),
        [&](std::size_t i, std::size_t j) {
          const Vertex* e = base + 2 * i;
          const Vertex* f = base + 2 * j;
          return ps.contains_bits(pair_bits(e, f, 2));
        },
        "chain");
  }
  return longest_chain(
      m.size(), [&](std::size_t i, std::size_t j) { return ps.contains_bits(pair_bits(base + i * ur, base + j * ur, r)); },
      "chain");
}

constexpr std::size_t instance_check_limit = 20000;

}  // namespace

SolveResult max_clique_bb(const PatternGraph& g, double budget_seconds) {
  if (!(budget_seconds > 0)) fail(ErrorKind::range, "budget must be positive");
  return BranchAndBound(g, budget_seconds).run();
}

std::optional<bool> is_transitive_family(const PatternSet& ps) {
  const int r = ps.r();
  if (r > 5) return std::nullopt;
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<std::uint64_t>>, bool> cache;
  std::vector<std::uint64_t> key;
  for (const Pattern& p : ps.members()) key.push_back(p.bits());
  {
    std::lock_guard lock(mu);
    auto it = cache.find({r, key});
    if (it != cache.end()) return it->second;
  }
  // Any three edges of any matching are order-isomorphic to one of these.
  bool transitive = true;
  for_each_matching(r, 3, [&](const OrderedMatching& t) {
    const Vertex* e = t.edge(0).data();
    const Vertex* f = t.edge(1).data();
    const Vertex* g = t.edge(2).data();
    if (ps.contains_bits(pair_bits(e, f, r)) && ps.contains_bits(pair_bits(f, g, r)) && !ps.contains_bits(pair_bits(e, g, r)))
      transitive = false;
    return transitive;
  });
  std::lock_guard lock(mu);
  cache[{r, key}] = transitive;
  return transitive;
}

bool is_transitive_instance(const PatternGraph& g) {
  const std::size_t n = g.size(), W = g.words();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t* ri = g.row(i);
    for (std::size_t w = (i + 1) >> 6; w < W; ++w) {
      std::uint64_t bits = ri[w];
      if (w == ((i + 1) >> 6)) bits &= ~0ULL << ((i + 1) & 63);
      while (bits) {
        const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* rj = g.row(j);
        for (std::size_t x = (j + 1) >> 6; x < W; ++x) {
          std::uint64_t succ = rj[x];
          if (x == ((j + 1) >> 6)) succ &= ~0ULL << ((j + 1) & 63);
          if (succ & ~ri[x]) return false;
        }
      }
    }
  }
  return true;
}

SolveResult max_clique(const OrderedMatching& m, const PatternSet& ps, SolverKind solver, double budget_seconds) {
  if (m.r() != ps.r()) fail(ErrorKind::size_mismatch, "matching and pattern set differ in r");
  if (!(budget_seconds > 0)) fail(ErrorKind::range, "budget must be positive");
  const auto start = Clock::now();
  const int r = m.r();
  const bool partite_family = ps.same_members(partite_set(r));
  SolveResult res;

  auto graph_route = [&](bool chain_only) {
    if (m.size() > instance_check_limit && chain_only)
      fail(ErrorKind::solver_mismatch, "instance too large for the per-instance transitivity check");
    const PatternGraph g(m, ps);
    if (is_transitive_instance(g))
      return longest_chain(g.size(), [&](std::size_t i, std::size_t j) { return g.adjacent(i, j); }, "chain");
    if (chain_only) fail(ErrorKind::solver_mismatch, "pattern relation is not transitive on this instance");
    return max_clique_bb(g, budget_seconds);
  };

  switch (solver) {
    case SolverKind::partition:
      if (!partite_family) fail(ErrorKind::solver_mismatch, "partition solver needs the full partite family");
      res = r <= 4 ? solve_partition(m) : max_clique_bb(PatternGraph(m, ps), budget_seconds);
      break;
    case SolverKind::chain: {
      const auto fam = is_transitive_family(ps);
      res = (fam && *fam) ? chain_on_matching(m, ps) : graph_route(true);
      break;
    }
    case SolverKind::bb:
      res = max_clique_bb(PatternGraph(m, ps), budget_seconds);
      break;
    case SolverKind::automatic: {
      if (partite_family && r <= 4) {
        res = solve_partition(m);
        break;
      }
      const auto fam = is_transitive_family(ps);
      if (fam && *fam) {
        res = chain_on_matching(m, ps);
      } else if (!fam && m.size() <= instance_check_limit) {
        res = graph_route(false);
      } else {
        res = max_clique_bb(PatternGraph(m, ps), budget_seconds);
      }
      break;
    }
  }
  if (!verify_clique(m, ps, res.witness)) fail(ErrorKind::internal, std::string("solver ") + res.solver + " returned an invalid clique");
  res.size = res.witness.size();
  res.elapsed = seconds_since(start);
  return res;
}

}  // namespace omatch
