#include <algorithm>
#include <map>

#include "omatch/clique.hpp"
#include "omatch/error.hpp"

namespace omatch {

namespace {

// Maximum matching between first and second type coordinates (t = 1).
std::vector<std::size_t> best_pairing(const std::vector<std::vector<int>>& types, const std::vector<std::size_t>& good, int k) {
  // representative good edge for each (h0, h1)
  std::map<std::pair<int, int>, std::size_t> rep;
  for (std::size_t g = 0; g < good.size(); ++g) rep.emplace(std::make_pair(types[g][0], types[g][1]), g);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
  for (const auto& [key, g] : rep) adj[static_cast<std::size_t>(key.first)].push_back(key.second);
  std::vector<int> match_r(static_cast<std::size_t>(k), -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, int u) -> bool {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      if (match_r[static_cast<std::size_t>(v)] == -1 || self(self, match_r[static_cast<std::size_t>(v)])) {
        match_r[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < k; ++u) {
    seen.assign(static_cast<std::size_t>(k), 0);
    augment(augment, u);
  }
  std::vector<std::size_t> chosen;
  for (int v = 0; v < k; ++v)
    if (match_r[static_cast<std::size_t>(v)] != -1) chosen.push_back(good[rep.at({match_r[static_cast<std::size_t>(v)], v})]);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

GoodEdgeCensus good_edge_census(const OrderedMatching& rm, const OrderedHypergraph& blown, const Cube& c, int k, int ell) {
  const int r = c.r();
  if (rm.r() != r || blown.r() != r) fail(ErrorKind::size_mismatch, "census inputs differ in r");
  if (k < 1 || ell < 1) fail(ErrorKind::range, "k and ell must be positive");
  const HkLayout layout = build_hk_layout(c, k);
  const int planted = r * k * ell;
  if (blown.vertex_count() != planted || blown.classes().size() != static_cast<std::size_t>(planted))
    fail(ErrorKind::geometry_mismatch, "blown hypergraph is not an ell-blow-up of H_k with classes");
  if (!rm.is_canonical() || static_cast<std::size_t>(planted) > rm.flat().size())
    fail(ErrorKind::geometry_mismatch, "blow-up must be planted on a prefix of the matching's vertex set");
  for (int cls : blown.classes())
    if (cls < 0 || cls >= r * k) fail(ErrorKind::geometry_mismatch, "class id outside H_k");

  const int t = c.t();
  GoodEdgeCensus out;
  std::vector<std::vector<int>> types;
  std::vector<Vertex> tuple(static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < rm.size(); ++i) {
    auto e = rm.edge(i);
    if (e.back() >= planted) continue;
    for (int a = 0; a < r; ++a) tuple[static_cast<std::size_t>(a)] = blown.classes()[static_cast<std::size_t>(e[static_cast<std::size_t>(a)])];
    std::sort(tuple.begin(), tuple.end());
    if (std::adjacent_find(tuple.begin(), tuple.end()) != tuple.end()) continue;
    if (!layout.graph.contains_edge(tuple)) continue;
    std::vector<int> omega(static_cast<std::size_t>(t + 1), 0);
    for (Vertex u : tuple) {
      const HkVertex& hv = layout.vertices[static_cast<std::size_t>(u)];
      omega[static_cast<std::size_t>(hv.part)] = hv.label;
    }
    out.good_edges.push_back(i);
    types.push_back(std::move(omega));
  }
  const std::size_t y = out.good_edges.size();
  out.good = y;

  auto separated = [&](std::size_t a, std::size_t b) {
    for (int j = 0; j <= t; ++j)
      if (types[a][static_cast<std::size_t>(j)] == types[b][static_cast<std::size_t>(j)]) return false;
    return true;
  };
  for (std::size_t a = 0; a < y; ++a)
    for (std::size_t b = a + 1; b < y; ++b)
      if (!separated(a, b)) ++out.nonseparated;

  std::vector<std::size_t> greedy;
  for (std::size_t a = 0; a < y; ++a) {
    bool ok = true;
    for (std::size_t b : greedy) ok = ok && separated(a, b);
    if (ok) greedy.push_back(a);
  }
  const std::size_t deletion = y > out.nonseparated ? y - out.nonseparated : 0;
  out.deletion_bound = std::max(greedy.size(), deletion);

  if (t == 1) {
    out.witness = best_pairing(types, out.good_edges, k);
    out.exact = true;
  } else {
    // Largest pairwise separated set is a clique of the separation graph.
    const PatternGraph g = PatternGraph::from_relation(y, separated);
    const SolveResult best = max_clique_bb(g, 10.0);
    for (std::size_t a : best.witness) out.witness.push_back(out.good_edges[a]);
    out.exact = best.status == SolveStatus::exact;
    if (out.witness.size() < greedy.size()) {
      out.witness.clear();
      for (std::size_t a : greedy) out.witness.push_back(out.good_edges[a]);
    }
  }
  out.scattered = out.witness.size();
  if (!is_scattered(rm.sub_matching(out.witness), blown.classes()) || !verify_clique(rm, cube_set(c), out.witness))
    fail(ErrorKind::internal, "census produced a set that is not a scattered cube clique");
  return out;
}

}  // namespace omatch
