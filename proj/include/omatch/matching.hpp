#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omatch/pattern.hpp"

namespace omatch {

using Vertex = int;
using Edge = std::vector<Vertex>;

// n pairwise-disjoint sorted r-sets over integer vertex ids, ordered by
// minimum vertex. Ids are 0-based internally; text formats are 1-based.
class OrderedMatching {
 public:
  OrderedMatching() = default;
  OrderedMatching(int r, const std::vector<Edge>& edges);
  // Flat row-major storage of n edges; each row is sorted on entry.
  static OrderedMatching from_flat(int r, std::vector<Vertex> flat);

  int r() const noexcept { return r_; }
  std::size_t size() const noexcept { return r_ ? flat_.size() / static_cast<std::size_t>(r_) : 0; }
  bool empty() const noexcept { return flat_.empty(); }
  std::span<const Vertex> edge(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(r_), static_cast<std::size_t>(r_)};
  }
  Vertex first(std::size_t i) const { return flat_[i * static_cast<std::size_t>(r_)]; }
  const std::vector<Vertex>& flat() const noexcept { return flat_; }
  std::vector<Edge> edges() const;

  // True iff the vertex set is exactly {0, ..., rn-1}.
  bool is_canonical() const;
  std::vector<Vertex> vertices() const;
  // Order-preserving compression of the vertex set onto {0, ..., rn-1}.
  OrderedMatching canonicalized() const;
  // Edges at the given indices, original ids kept.
  OrderedMatching sub_matching(std::span<const std::size_t> indices) const;
  // Adds a constant to every vertex id.
  OrderedMatching shifted(Vertex offset) const;

  bool operator==(const OrderedMatching&) const = default;

 private:
  void finish();
  int r_ = 1;
  std::vector<Vertex> flat_;
};

// Letters (spaces and '|' ignored) or 1-based edge tokens "1 1 2 ...".
OrderedMatching from_word(std::string_view text);
// Letters A-Z when n <= 26, otherwise space-separated 1-based edge indices.
std::string to_word(const OrderedMatching& m);

// Matching file: header "r n", then one word line or n lines of 1-based ids.
OrderedMatching read_matching(std::istream& in);
void write_matching(std::ostream& out, const OrderedMatching& m, bool as_word = true);
std::string matching_to_json(const OrderedMatching& m);

struct Trace {
  int r = 1;
  std::vector<std::uint8_t> symbols;  // values 1..r

  static Trace parse(std::string_view digits);
  std::string str() const;
  bool operator==(const Trace&) const = default;
};

Trace trace_of(const OrderedMatching& m);
bool is_valid_trace(const Trace& t);

// Edges given in any order; the one with the smaller minimum is A.
Pattern pattern_of_pair(std::span<const Vertex> e, std::span<const Vertex> f);

// Unchecked hot-path variant: both sorted, disjoint, e[0] < f[0].
inline std::uint64_t pair_bits(const Vertex* e, const Vertex* f, int r) noexcept {
  std::uint64_t bits = 0;
  int i = 0, j = 0, pos = 0;
  while (i < r && j < r) {
    if (e[i] < f[j]) {
      ++i;
    } else {
      bits |= 1ULL << pos;
      ++j;
    }
    ++pos;
  }
  for (; j < r; ++j, ++pos) bits |= 1ULL << pos;
  return bits;
}

int chi_interval(const OrderedMatching& m);
bool is_r_partite(const OrderedMatching& m);

// Removes the j-th vertex (1-based) from every edge and recanonicalizes.
OrderedMatching remove_letter_matching(const OrderedMatching& m, int j);

}  // namespace omatch
