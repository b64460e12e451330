#include <algorithm>
#include <limits>
#include <queue>

#include "omatch/clique.hpp"
#include "omatch/error.hpp"

namespace omatch {

namespace {

// Hopcroft-Karp on a bipartite graph with both sides indexed 0..n-1.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(const std::vector<std::vector<int>>& adj)
      : adj_(adj), n_(static_cast<int>(adj.size())), match_l_(adj.size(), -1), match_r_(adj.size(), -1), dist_(adj.size()) {}

  int solve() {
    int size = 0;
    while (bfs())
      for (int u = 0; u < n_; ++u)
        if (match_l_[u] == -1 && dfs(u)) ++size;
    return size;
  }

  // Left vertices reachable from free left vertices by alternating paths,
  // and the right vertices reached on the way.
  void konig(std::vector<char>& left_z, std::vector<char>& right_z) const {
    left_z.assign(static_cast<std::size_t>(n_), 0);
    right_z.assign(static_cast<std::size_t>(n_), 0);
    std::queue<int> q;
    for (int u = 0; u < n_; ++u)
      if (match_l_[u] == -1) {
        left_z[u] = 1;
        q.push(u);
      }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        if (right_z[v] || match_l_[u] == v) continue;
        right_z[v] = 1;
        const int w = match_r_[v];
        if (w != -1 && !left_z[w]) {
          left_z[w] = 1;
          q.push(w);
        }
      }
    }
  }

 private:
  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < n_; ++u) {
      if (match_l_[u] == -1) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = inf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        const int w = match_r_[v];
        if (w == -1) {
          found = true;
        } else if (dist_[w] == inf) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj_[u]) {
      const int w = match_r_[v];
      if (w == -1 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = inf;
    return false;
  }

  static constexpr int inf = std::numeric_limits<int>::max();
  const std::vector<std::vector<int>>& adj_;
  int n_;
  std::vector<int> match_l_, match_r_, dist_;
};

}  // namespace

ChainAntichain chain_antichain(const OrderedMatching& m, const Cube& c) {
  const int r = m.r();
  if (c.r() != r) fail(ErrorKind::size_mismatch, "cube and matching differ in r");
  if (!is_partite(c.base())) fail(ErrorKind::not_partite, "cube base " + c.base().word() + " is not partite");
  for (int j = 1; j <= c.t(); ++j)
    if (c.parts()[static_cast<std::size_t>(j)].size() != 1) fail(ErrorKind::invalid_partition, "parts after the first must be singletons");
  if (!m.empty() && !is_r_partite(m)) fail(ErrorKind::not_partite, "matching is not r-partite");

  // Coordinates constrained by T0 and whether they must increase.
  std::vector<std::pair<int, bool>> constraints;
  for (int i : c.parts()[0]) constraints.emplace_back(i - 1, c.blocks()[static_cast<std::size_t>(i - 1)].leads_with_a);
  const std::size_t n = m.size();
  auto precedes = [&](std::size_t a, std::size_t b) {
    auto e = m.edge(a);
    auto f = m.edge(b);
    for (auto [i, up] : constraints)
      if ((e[static_cast<std::size_t>(i)] < f[static_cast<std::size_t>(i)]) != up) return false;
    return true;
  };

  std::vector<std::vector<int>> succ(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (precedes(a, b)) succ[a].push_back(static_cast<int>(b));

  ChainAntichain out;
  // Longest chain; the order is transitive so a DP over min order suffices.
  std::vector<int> len(n, 1), pred(n, -1);
  std::size_t top = 0;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < b; ++a)
      if (len[a] + 1 > len[b] && precedes(a, b)) {
        len[b] = len[a] + 1;
        pred[b] = static_cast<int>(a);
      }
    if (len[b] > len[top]) top = b;
  }
  if (n > 0)
    for (int v = static_cast<int>(top); v != -1; v = pred[static_cast<std::size_t>(v)]) out.chain.push_back(static_cast<std::size_t>(v));
  std::reverse(out.chain.begin(), out.chain.end());

  // Largest antichain = n - maximum matching in the comparability split graph.
  BipartiteMatcher matcher(succ);
  matcher.solve();
  std::vector<char> left_z, right_z;
  matcher.konig(left_z, right_z);
  for (std::size_t x = 0; x < n; ++x)
    if (left_z[x] && !right_z[x]) out.antichain.push_back(x);
  return out;
}

}  // namespace omatch
