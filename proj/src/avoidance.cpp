#include <algorithm>
#include <numeric>

#include "omatch/clique.hpp"
#include "omatch/error.hpp"

namespace omatch {

namespace {

constexpr std::uint64_t tuple_cap = 10'000'000;

std::vector<std::vector<int>> subsets_of_size(int k, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(m));
  std::iota(s.begin(), s.end(), 0);
  if (m > k) return out;
  while (true) {
    out.push_back(s);
    int i = m - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == k - m + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

BigInt count_avoiding_tuples(const std::vector<Permutation>& taus, int k) {
  if (taus.empty()) fail(ErrorKind::size_mismatch, "need at least one pattern permutation");
  const std::size_t m = taus[0].size();
  for (const Permutation& tau : taus) {
    if (tau.size() != m || m == 0) fail(ErrorKind::size_mismatch, "pattern permutations must share a positive length");
    std::vector<int> sorted = tau;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < m; ++i)
      if (sorted[i] != static_cast<int>(i)) fail(ErrorKind::range, "pattern is not a permutation");
  }
  if (k < 0) fail(ErrorKind::range, "k must be nonnegative");
  const std::size_t d = taus.size();
  std::uint64_t fact = 1;
  for (int i = 2; i <= k; ++i) fact *= static_cast<std::uint64_t>(i);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > tuple_cap / fact) fail(ErrorKind::cap_exceeded, "(k!)^d exceeds 10^7");
    total *= fact;
  }

  const auto subsets = subsets_of_size(k, static_cast<int>(m));
  if (subsets.empty()) return BigInt(total);  // m > k: nothing to contain
  const std::size_t words = (subsets.size() + 63) / 64;

  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  // occ[i][s]: bitmask of index subsets on which perms[s] looks like taus[i].
  std::vector<std::vector<std::uint64_t>> occ(d, std::vector<std::uint64_t>(perms.size() * words, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t s = 0; s < perms.size(); ++s)
      for (std::size_t q = 0; q < subsets.size(); ++q) {
        bool same = true;
        const auto& idx = subsets[q];
        for (std::size_t a = 0; a < m && same; ++a)
          for (std::size_t b = a + 1; b < m && same; ++b)
            same = (perms[s][static_cast<std::size_t>(idx[a])] < perms[s][static_cast<std::size_t>(idx[b])]) == (taus[i][a] < taus[i][b]);
        if (same) occ[i][s * words + q / 64] |= 1ULL << (q % 64);
      }

  // Walk coordinates keeping the subsets still matched in every coordinate;
  // once none remain, every completion avoids.
  std::vector<std::uint64_t> tail(d + 1, 1);
  for (std::size_t i = d; i-- > 0;) tail[i] = tail[i + 1] * fact;
  std::vector<std::vector<std::uint64_t>> live(d + 1, std::vector<std::uint64_t>(words, ~0ULL));
  std::uint64_t avoiding = 0;
  auto walk = [&](auto&& self, std::size_t i) -> void {
    if (i == d) return;  // all coordinates chosen and some subset still matches
    for (std::size_t s = 0; s < perms.size(); ++s) {
      bool any = false;
      for (std::size_t w = 0; w < words; ++w) any |= (live[i + 1][w] = live[i][w] & occ[i][s * words + w]) != 0;
      if (!any) {
        avoiding += tail[i + 1];
      } else {
        self(self, i + 1);
      }
    }
  };
  walk(walk, 0);
  return BigInt(avoiding);
}

}  // namespace omatch
