#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omatch/matching.hpp"
#include "omatch/pattern.hpp"

namespace omatch {

class PatternSet {
 public:
  PatternSet(int r, std::vector<Pattern> members, std::string provenance = "list");

  int r() const noexcept { return r_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Pattern>& members() const noexcept { return members_; }
  const std::string& provenance() const noexcept { return provenance_; }

  bool contains(const Pattern& p) const noexcept { return p.r() == r_ && contains_bits(p.bits()); }
  // Canonical bit form (bit 0 clear), as produced by pair_bits.
  bool contains_bits(std::uint64_t bits) const noexcept;
  bool is_subset_of(const PatternSet& other) const;
  bool same_members(const PatternSet& other) const { return r_ == other.r_ && members_ == other.members_; }

 private:
  int r_;
  std::vector<Pattern> members_;  // sorted, distinct
  std::vector<std::uint64_t> sorted_bits_;
  std::vector<std::uint8_t> table_;  // dense membership indexed by bits >> 1
  std::string provenance_;
};

// all | collectable | partite | dyck | noncollectable | harmonic:W |
// cube:W:PART | cube-complement:W:PART | list:W1,W2,...
// `r` is required for the class names and checked against words otherwise
// (pass 0 to infer it from the words).
PatternSet parse_pattern_set(std::string_view spec, int r = 0);
PatternSet partite_set(int r);
PatternSet cube_set(const Cube& c);
// The partite patterns outside the cube (base must be partite).
PatternSet cube_complement_set(const Cube& c);

// Vertex per edge of M; i ~ j iff the pair's pattern is in the set.
class PatternGraph {
 public:
  PatternGraph(const OrderedMatching& m, const PatternSet& ps);
  // Induced on a subset of vertices (kept in the given order).
  PatternGraph(const PatternGraph& g, std::span<const std::size_t> keep);
  // Any symmetric relation on {0, ..., n-1}.
  static PatternGraph from_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& adjacent);

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }
  const std::uint64_t* row(std::size_t i) const noexcept { return adj_.data() + i * words_; }
  bool adjacent(std::size_t i, std::size_t j) const noexcept { return (row(i)[j >> 6] >> (j & 63)) & 1U; }
  std::size_t degree(std::size_t i) const noexcept;
  std::size_t edge_count() const noexcept;

 private:
  PatternGraph() = default;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adj_;
};

}  // namespace omatch
