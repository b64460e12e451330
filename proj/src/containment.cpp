#include "omatch/clique.hpp"
#include "omatch/error.hpp"

namespace omatch {

std::optional<std::vector<std::size_t>> contains_copy(const OrderedMatching& m, const OrderedMatching& h) {
  if (m.r() != h.r()) fail(ErrorKind::size_mismatch, "matchings differ in r");
  const std::size_t n = m.size(), q = h.size();
  if (q > n) return std::nullopt;
  if (q == 0) return std::vector<std::size_t>{};
  const int r = m.r();

  // Pairwise patterns determine the relative order of all vertices, so
  // matching them pairwise is the same as an order isomorphism.
  std::vector<std::uint64_t> want(q * q, 0);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = a + 1; b < q; ++b) want[a * q + b] = pair_bits(h.edge(a).data(), h.edge(b).data(), r);

  std::vector<std::size_t> pick(q);
  auto search = [&](auto&& self, std::size_t a, std::size_t from) -> bool {
    if (a == q) return true;
    for (std::size_t i = from; i + (q - a) <= n; ++i) {
      bool ok = true;
      for (std::size_t b = 0; b < a && ok; ++b) ok = pair_bits(m.edge(pick[b]).data(), m.edge(i).data(), r) == want[b * q + a];
      if (!ok) continue;
      pick[a] = i;
      if (self(self, a + 1, i + 1)) return true;
    }
    return false;
  };
  if (search(search, 0, 0)) return pick;
  return std::nullopt;
}

}  // namespace omatch
