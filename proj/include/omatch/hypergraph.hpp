#pragma once

#include <span>
#include <string>
#include <vector>

#include "omatch/matching.hpp"
#include "omatch/pattern.hpp"

namespace omatch {

// r-uniform hypergraph on vertices {0, ..., vertex_count-1} with sorted,
// pairwise distinct edges. `classes` is empty or maps each vertex to the
// original vertex it was blown up from.
class OrderedHypergraph {
 public:
  OrderedHypergraph() = default;
  OrderedHypergraph(int r, int vertex_count, std::vector<Vertex> flat_edges, std::vector<int> classes = {});

  int r() const noexcept { return r_; }
  int vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return flat_.size() / static_cast<std::size_t>(r_); }
  std::span<const Vertex> edge(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(r_), static_cast<std::size_t>(r_)};
  }
  const std::vector<int>& classes() const noexcept { return classes_; }
  bool contains_edge(std::span<const Vertex> e) const;

  std::string to_json() const;

 private:
  int r_ = 1;
  int vertex_count_ = 0;
  std::vector<Vertex> flat_;  // lexicographically sorted rows
  std::vector<int> classes_;
};

using Permutation = std::vector<int>;  // 0-based images

// "231" or "2,3,1" (1-based) into a 0-based permutation.
Permutation parse_permutation(std::string_view text);

// Copies of canonical matchings laid out one after another.
std::vector<OrderedMatching> place_consecutively(std::span<const OrderedMatching> ms);

// Edge j joins edge j of the first matching with edge sigma_i(j) of matching i+1.
OrderedMatching concatenate(std::span<const OrderedMatching> ms, std::span<const Permutation> sigmas);
// All unions of one edge from every factor.
OrderedHypergraph product(std::span<const OrderedMatching> ms);

// Which mega-block clique K_j and which of its k edges (label h) a vertex of H_k lies in.
struct HkVertex {
  int part = 0;
  int label = 0;
};

struct HkLayout {
  OrderedHypergraph graph;
  std::vector<HkVertex> vertices;
};

HkLayout build_hk_layout(const Cube& c, int k);
OrderedHypergraph build_hk(const Cube& c, int k);

// Vertex u becomes {u*ell, ..., u*ell + ell - 1}; classes() records u.
OrderedHypergraph blow_up(const OrderedHypergraph& h, int ell);
bool is_scattered(const OrderedMatching& m, std::span<const int> classes);

}  // namespace omatch
