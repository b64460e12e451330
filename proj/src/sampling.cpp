#include "omatch/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "omatch/error.hpp"

namespace omatch {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ n) ^ trial);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) fail(ErrorKind::range, "empty range");
  // Reject the low 2^64 mod bound values so the remainder is exact.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void check_rn(int r, int n) {
  if (r < 1 || n < 0) fail(ErrorKind::range, "need r >= 1 and n >= 0");
  if (static_cast<long long>(r) * n > 100'000'000) fail(ErrorKind::range, "r*n too large");
}

}  // namespace

BigInt count_matchings(int r, int n) {
  check_rn(r, n);
  BigInt denom = factorial(n);
  const BigInt rf = factorial(r);
  for (int i = 0; i < n; ++i) denom *= rf;
  return factorial(r * n) / denom;
}

Rational edge_probability(int r, int n) {
  if (r < 1 || n < 1) fail(ErrorKind::range, "need r >= 1 and n >= 1");
  return Rational(BigInt(1), binomial(r * n - 1, r - 1));
}

OrderedMatching sample_uniform(int r, int n, Rng& rng) {
  check_rn(r, n);
  const std::size_t total = static_cast<std::size_t>(r) * static_cast<std::size_t>(n);
  std::vector<Vertex> perm(total);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = total; i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(perm[i - 1], perm[j]);
  }
  return OrderedMatching::from_flat(r, std::move(perm));
}

OrderedMatching sample_uniform(int r, int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_uniform(r, n, rng);
}

OrderedMatching sample_online(int r, int n, Rng& rng, int steps) {
  check_rn(r, n);
  if (steps < 1 || steps > n) fail(ErrorKind::range, "steps must lie in 1..n");
  const std::size_t total = static_cast<std::size_t>(r) * static_cast<std::size_t>(n);
  std::vector<Vertex> avail(total);
  std::vector<std::size_t> where(total);
  std::iota(avail.begin(), avail.end(), 0);
  std::iota(where.begin(), where.end(), std::size_t{0});
  std::vector<char> taken(total, 0);
  auto take = [&](std::size_t idx) {
    const Vertex v = avail[idx];
    const Vertex last = avail.back();
    avail[idx] = last;
    where[static_cast<std::size_t>(last)] = idx;
    avail.pop_back();
    taken[static_cast<std::size_t>(v)] = 1;
    return v;
  };
  std::vector<Vertex> flat;
  flat.reserve(static_cast<std::size_t>(steps) * static_cast<std::size_t>(r));
  std::size_t smallest = 0;
  for (int s = 0; s < steps; ++s) {
    while (taken[smallest]) ++smallest;
    flat.push_back(take(where[smallest]));
    for (int a = 1; a < r; ++a) flat.push_back(take(rng.below(avail.size())));
  }
  return OrderedMatching::from_flat(r, std::move(flat));
}

OrderedMatching sample_online(int r, int n, std::uint64_t seed, int steps) {
  Rng rng(seed);
  return sample_online(r, n, rng, steps);
}

void for_each_matching(int r, int n, const std::function<bool(const OrderedMatching&)>& visit) {
  check_rn(r, n);
  if (n == 0) return;
  if (count_matchings(r, n) > enumeration_cap)
    fail(ErrorKind::cap_exceeded, "more than 10^7 matchings for r=" + std::to_string(r) + ", n=" + std::to_string(n));
  const std::size_t total = static_cast<std::size_t>(r) * static_cast<std::size_t>(n);
  std::vector<int> letter(total, 0);
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  int opened = 0;
  bool stop = false;
  std::vector<Vertex> flat(total);
  std::vector<int> fill(static_cast<std::size_t>(n), 0);

  auto emit = [&]() {
    std::fill(fill.begin(), fill.end(), 0);
    for (std::size_t p = 0; p < total; ++p) {
      const auto l = static_cast<std::size_t>(letter[p]);
      flat[l * static_cast<std::size_t>(r) + static_cast<std::size_t>(fill[l]++)] = static_cast<Vertex>(p);
    }
    return visit(OrderedMatching::from_flat(r, flat));
  };

  // Position-by-position so that words come out in lexicographic order.
  auto recurse = [&](auto&& self, std::size_t p) -> void {
    if (stop) return;
    if (p == total) {
      if (!emit()) stop = true;
      return;
    }
    for (int l = 0; l < opened && !stop; ++l) {
      if (count[static_cast<std::size_t>(l)] == r) continue;
      ++count[static_cast<std::size_t>(l)];
      letter[p] = l;
      self(self, p + 1);
      --count[static_cast<std::size_t>(l)];
    }
    if (opened < n && !stop) {
      const int l = opened++;
      count[static_cast<std::size_t>(l)] = 1;
      letter[p] = l;
      self(self, p + 1);
      count[static_cast<std::size_t>(l)] = 0;
      --opened;
    }
  };
  recurse(recurse, 0);
}

std::vector<OrderedMatching> enumerate_matchings(int r, int n) {
  std::vector<OrderedMatching> out;
  for_each_matching(r, n, [&](const OrderedMatching& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace omatch
