#pragma once

// Brute-force reference implementations used to check the library. They
// work on plain words and vertex lists and share no code with src/.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Edges = std::vector<std::vector<int>>;  // sorted vertex lists, 0-based

// Letters of a word (uppercase only, everything else skipped), each letter
// becoming an edge; edges come out ordered by first vertex.
inline Edges edges_of(const std::string& word) {
  std::map<char, std::vector<int>> at;
  int pos = 0;
  for (char c : word) {
    if (c < 'A' || c > 'Z') continue;
    at[c].push_back(pos++);
  }
  Edges e;
  for (auto& [c, v] : at) e.push_back(v);
  std::sort(e.begin(), e.end());
  return e;
}

inline int vertex_count(const Edges& e) {
  int n = 0;
  for (const auto& x : e) n += static_cast<int>(x.size());
  return n;
}

// Word with letters assigned by first occurrence.
inline std::string word_of(const Edges& e) {
  std::map<int, int> owner;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int v : e[i]) owner[v] = static_cast<int>(i);
  std::map<int, char> letter;
  std::string w;
  for (auto& [v, i] : owner) {
    if (!letter.count(i)) letter[i] = static_cast<char>('A' + letter.size());
    w += letter[i];
  }
  return w;
}

// A for the edge whose minimum comes first.
inline std::string pair_word(std::vector<int> a, std::vector<int> b) {
  if (b.front() < a.front()) std::swap(a, b);
  std::vector<std::pair<int, char>> all;
  for (int v : a) all.emplace_back(v, 'A');
  for (int v : b) all.emplace_back(v, 'B');
  std::sort(all.begin(), all.end());
  std::string w;
  for (auto& [v, c] : all) w += c;
  return w;
}

inline bool is_clique(const Edges& e, const std::vector<int>& idx, const std::set<std::string>& ps) {
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (!ps.count(pair_word(e[static_cast<std::size_t>(idx[i])], e[static_cast<std::size_t>(idx[j])]))) return false;
  return true;
}

inline bool is_clique(const Edges& e, const std::set<std::string>& ps) {
  std::vector<int> all(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) all[i] = static_cast<int>(i);
  return is_clique(e, all, ps);
}

// Largest clique by trying every subset (|e| <= 20).
inline int max_clique(const Edges& e, const std::set<std::string>& ps) {
  const std::size_t n = e.size();
  std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ok[i][j] = ok[j][i] = ps.count(pair_word(e[i], e[j])) > 0;
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool good = true;
    for (std::size_t i = 0; i < n && good; ++i)
      if (mask >> i & 1)
        for (std::size_t j = i + 1; j < n && good; ++j)
          if (mask >> j & 1) good = ok[i][j];
    if (good) best = size;
  }
  return best;
}

// Every word on n letters with r copies each and first occurrences in
// alphabetical order, sorted.
inline std::vector<std::string> all_matchings(int r, int n) {
  std::vector<std::string> out;
  std::string w;
  std::vector<int> used(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int opened) {
    if (static_cast<int>(w.size()) == r * n) {
      out.push_back(w);
      return;
    }
    for (int l = 0; l < opened; ++l)
      if (used[static_cast<std::size_t>(l)] < r) {
        ++used[static_cast<std::size_t>(l)];
        w += static_cast<char>('A' + l);
        rec(opened);
        w.pop_back();
        --used[static_cast<std::size_t>(l)];
      }
    if (opened < n) {
      ++used[static_cast<std::size_t>(opened)];
      w += static_cast<char>('A' + opened);
      rec(opened + 1);
      w.pop_back();
      --used[static_cast<std::size_t>(opened)];
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// All balanced A/B words of length 2r starting with A, sorted.
inline std::vector<std::string> all_patterns(int r) {
  std::vector<std::string> out;
  for (std::uint32_t m = 0; m < (1u << (2 * r)); ++m) {
    if (__builtin_popcount(m) != r || (m & 1)) continue;
    std::string w;
    for (int i = 0; i < 2 * r; ++i) w += (m >> i & 1) ? 'B' : 'A';
    out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Fewest intervals of consecutive vertices with no edge meeting one twice,
// by trying every set of cut points.
inline int chi_interval(const Edges& e) {
  const int n = vertex_count(e);
  std::vector<int> owner(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int v : e[i]) owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
  int best = n;
  for (std::uint32_t cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
    const int parts = __builtin_popcount(cuts) + 1;
    if (parts >= best) continue;
    bool ok = true;
    std::set<int> seen;
    for (int v = 0; v < n && ok; ++v) {
      if (v > 0 && (cuts >> (v - 1) & 1)) seen.clear();
      ok = seen.insert(owner[static_cast<std::size_t>(v)]).second;
    }
    if (ok) best = parts;
  }
  return best;
}

inline std::string trace(const std::string& word) {
  std::map<char, int> seen;
  std::string t;
  for (char c : word) t += static_cast<char>('0' + ++seen[c]);
  return t;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

inline std::uint64_t catalan(int n) { return binom(2 * n, n) / static_cast<std::uint64_t>(n + 1); }

// Sequences over 1..r with k copies each whose every prefix has
// count(i) >= count(i+1), counted by memoised recursion on the count vector.
inline std::uint64_t dyck_sequences(int r, int k) {
  std::map<std::vector<int>, std::uint64_t> memo;
  std::function<std::uint64_t(std::vector<int>&)> go = [&](std::vector<int>& c) -> std::uint64_t {
    if (c.back() == k) return 1;
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (int i = 0; i < r; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      if (c[ii] < k && (i == 0 || c[ii - 1] > c[ii])) {
        ++c[ii];
        total += go(c);
        --c[ii];
      }
    }
    memo[c] = total;
    return total;
  };
  std::vector<int> c(static_cast<std::size_t>(r), 0);
  return go(c);
}

// Number of words of a pattern family forming a clique of size k, over all
// matchings of size k (direct enumeration).
inline std::uint64_t count_cliques(int r, int k, const std::set<std::string>& ps) {
  std::uint64_t c = 0;
  for (const std::string& w : all_matchings(r, k))
    if (is_clique(edges_of(w), ps)) ++c;
  return c;
}

}  // namespace oracle
