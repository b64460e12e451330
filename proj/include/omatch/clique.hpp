#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omatch/hypergraph.hpp"
#include "omatch/matching.hpp"
#include "omatch/pattern_set.hpp"
#include "omatch/sampling.hpp"

namespace omatch {

enum class SolverKind { automatic, bb, chain, partition };
enum class SolveStatus { exact, lower_bound };

SolverKind parse_solver(std::string_view name);
const char* to_string(SolverKind s);
const char* to_string(SolveStatus s);

struct SolveResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  // edge indices of M, ascending
  SolveStatus status = SolveStatus::exact;
  std::string solver;
  double elapsed = 0.0;  // seconds
};

// Largest PS-clique of M. Budget applies to branch and bound only.
SolveResult max_clique(const OrderedMatching& m, const PatternSet& ps, SolverKind solver = SolverKind::automatic,
                       double budget_seconds = 60.0);
bool verify_clique(const OrderedMatching& m, const PatternSet& ps, std::span<const std::size_t> subset);

// Branch and bound directly on a graph (indices are graph vertices).
SolveResult max_clique_bb(const PatternGraph& g, double budget_seconds);

// Whether "e before f by minimum and pattern(e, f) in PS" is transitive on
// every matching. Decided exhaustively over all 3-edge matchings for r <= 5;
// nullopt when r is too large to decide that way.
std::optional<bool> is_transitive_family(const PatternSet& ps);
// Same question for one instance (bitset triple check).
bool is_transitive_instance(const PatternGraph& g);

// PS-cliques of size k on {0, ..., rk-1}; r*k <= 24.
BigInt count_cliques(const PatternSet& ps, int k);
// Visits every clique once (edges chosen by smallest uncovered vertex);
// return false to stop.
void for_each_clique(const PatternSet& ps, int k, const std::function<bool(const OrderedMatching&)>& visit);
bool has_clique(const PatternSet& ps, int k);
// Largest k with a PS-clique of size k; all members must be non-collectable.
int max_clique_global(const PatternSet& ps, int cap_rk = 24);

struct ChainAntichain {
  std::vector<std::size_t> chain;
  std::vector<std::size_t> antichain;
};

// Order e < f of the cube (base partite, non-T0 parts singletons) on an
// r-partite matching: longest chain and largest antichain.
ChainAntichain chain_antichain(const OrderedMatching& m, const Cube& c);

// Edge indices of an order-isomorphic copy of h inside m, if any.
std::optional<std::vector<std::size_t>> contains_copy(const OrderedMatching& m, const OrderedMatching& h);

struct GoodEdgeCensus {
  std::size_t good = 0;            // Y
  std::size_t nonseparated = 0;    // Z
  std::size_t deletion_bound = 0;  // max(greedy, Y - Z)
  std::size_t scattered = 0;       // best verified scattered set found
  bool exact = false;              // scattered is the true maximum (t = 1)
  std::vector<std::size_t> good_edges;
  std::vector<std::size_t> witness;  // edge indices of RM
};

GoodEdgeCensus good_edge_census(const OrderedMatching& rm, const OrderedHypergraph& blown, const Cube& c, int k, int ell);

// d-tuples of permutations of [k] avoiding the tuple taus of permutations of
// [m] (0-based images): no a_1 < ... < a_m order-isomorphic in every coordinate.
BigInt count_avoiding_tuples(const std::vector<Permutation>& taus, int k);

}  // namespace omatch
