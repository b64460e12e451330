#include "omatch/hypergraph.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <numeric>

#include "omatch/error.hpp"

namespace omatch {

namespace {
constexpr std::size_t max_hyperedges = 50'000'000;

bool row_less(const Vertex* a, const Vertex* b, int r) {
  return std::lexicographical_compare(a, a + r, b, b + r);
}
}  // namespace

OrderedHypergraph::OrderedHypergraph(int r, int vertex_count, std::vector<Vertex> flat_edges, std::vector<int> classes)
    : r_(r), vertex_count_(vertex_count), classes_(std::move(classes)) {
  if (r < 1) fail(ErrorKind::range, "uniformity must be positive");
  if (vertex_count < 0) fail(ErrorKind::range, "negative vertex count");
  if (flat_edges.size() % static_cast<std::size_t>(r) != 0) fail(ErrorKind::size_mismatch, "edge storage not a multiple of r");
  if (!classes_.empty() && classes_.size() != static_cast<std::size_t>(vertex_count))
    fail(ErrorKind::size_mismatch, "class labeling must cover every vertex");
  const std::size_t m = flat_edges.size() / static_cast<std::size_t>(r);
  const auto ur = static_cast<std::size_t>(r);
  for (std::size_t i = 0; i < m; ++i) {
    auto first = flat_edges.begin() + static_cast<std::ptrdiff_t>(i * ur);
    std::sort(first, first + r);
    if (*first < 0 || *(first + r - 1) >= vertex_count) fail(ErrorKind::range, "edge vertex outside the vertex range");
    if (std::adjacent_find(first, first + r) != first + r) fail(ErrorKind::overlap, "repeated vertex inside an edge");
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return row_less(&flat_edges[a * ur], &flat_edges[b * ur], r); });
  flat_.reserve(flat_edges.size());
  for (std::size_t k = 0; k < m; ++k) {
    const Vertex* row = &flat_edges[order[k] * ur];
    if (k > 0 && std::equal(row, row + r, &flat_edges[order[k - 1] * ur])) fail(ErrorKind::overlap, "duplicate edge");
    flat_.insert(flat_.end(), row, row + r);
  }
}

bool OrderedHypergraph::contains_edge(std::span<const Vertex> e) const {
  if (e.size() != static_cast<std::size_t>(r_)) return false;
  std::size_t lo = 0, hi = edge_count();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto row = edge(mid);
    if (row_less(row.data(), e.data(), r_)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < edge_count() && std::equal(e.begin(), e.end(), edge(lo).begin());
}

std::string OrderedHypergraph::to_json() const {
  nlohmann::json j;
  j["r"] = r_;
  j["vertices"] = vertex_count_;
  auto edges = nlohmann::json::array();
  for (std::size_t i = 0; i < edge_count(); ++i) {
    auto e = nlohmann::json::array();
    for (Vertex v : edge(i)) e.push_back(v + 1);
    edges.push_back(e);
  }
  j["edges"] = edges;
  auto cls = nlohmann::json::array();
  for (int c : classes_) cls.push_back(c + 1);
  j["classes"] = cls;
  return j.dump();
}

Permutation parse_permutation(std::string_view text) {
  Permutation p;
  const bool separated = text.find(',') != std::string_view::npos || text.find(' ') != std::string_view::npos;
  if (separated) {
    int value = 0;
    bool have = false;
    for (char c : text) {
      if (c >= '0' && c <= '9') {
        value = value * 10 + (c - '0');
        have = true;
      } else if (c == ',' || c == ' ') {
        if (have) p.push_back(value - 1);
        value = 0;
        have = false;
      } else {
        fail(ErrorKind::invalid_word, "bad permutation '" + std::string(text) + "'");
      }
    }
    if (have) p.push_back(value - 1);
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') fail(ErrorKind::invalid_word, "bad permutation '" + std::string(text) + "'");
      p.push_back(c - '1');
    }
  }
  std::vector<int> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)]++)
      fail(ErrorKind::invalid_word, "'" + std::string(text) + "' is not a permutation");
  }
  return p;
}

std::vector<OrderedMatching> place_consecutively(std::span<const OrderedMatching> ms) {
  std::vector<OrderedMatching> out;
  Vertex offset = 0;
  for (const OrderedMatching& m : ms) {
    const OrderedMatching c = m.canonicalized();
    out.push_back(c.shifted(offset));
    offset += static_cast<Vertex>(c.flat().size());
  }
  return out;
}

namespace {

void check_factors(std::span<const OrderedMatching> ms) {
  if (ms.empty()) fail(ErrorKind::size_mismatch, "no matchings given");
  const std::size_t k = ms[0].size();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i].size() != k) fail(ErrorKind::size_mismatch, "all matchings must have the same size");
    if (i + 1 < ms.size() && !ms[i].empty() && !ms[i + 1].empty()) {
      const auto a = ms[i].vertices();
      const auto b = ms[i + 1].vertices();
      if (a.back() >= b.front()) fail(ErrorKind::order_violation, "matching " + std::to_string(i + 2) + " does not follow matching " + std::to_string(i + 1));
    }
  }
}

int uniformity_sum(std::span<const OrderedMatching> ms) {
  int r = 0;
  for (const auto& m : ms) r += m.r();
  return r;
}

}  // namespace

OrderedMatching concatenate(std::span<const OrderedMatching> ms, std::span<const Permutation> sigmas) {
  check_factors(ms);
  if (sigmas.size() + 1 != ms.size()) fail(ErrorKind::size_mismatch, "need one permutation per junction");
  const std::size_t k = ms[0].size();
  for (const Permutation& s : sigmas) {
    if (s.size() != k) fail(ErrorKind::size_mismatch, "permutation length differs from matching size");
    std::vector<int> seen(k, 0);
    for (int v : s)
      if (v < 0 || static_cast<std::size_t>(v) >= k || seen[static_cast<std::size_t>(v)]++) fail(ErrorKind::range, "not a permutation");
  }
  const int r = uniformity_sum(ms);
  std::vector<Vertex> flat;
  flat.reserve(k * static_cast<std::size_t>(r));
  for (std::size_t j = 0; j < k; ++j) {
    auto e = ms[0].edge(j);
    flat.insert(flat.end(), e.begin(), e.end());
    for (std::size_t i = 1; i < ms.size(); ++i) {
      auto f = ms[i].edge(static_cast<std::size_t>(sigmas[i - 1][j]));
      flat.insert(flat.end(), f.begin(), f.end());
    }
  }
  return OrderedMatching::from_flat(r, std::move(flat));
}

OrderedHypergraph product(std::span<const OrderedMatching> ms) {
  check_factors(ms);
  const std::size_t k = ms[0].size();
  const int r = uniformity_sum(ms);
  std::size_t count = 1;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (k != 0 && count > max_hyperedges / k) fail(ErrorKind::cap_exceeded, "product too large");
    count *= k;
  }
  Vertex top = -1;
  for (const auto& m : ms)
    if (!m.empty()) top = std::max(top, m.vertices().back());
  std::vector<Vertex> flat;
  if (k > 0) {
    flat.reserve(count * static_cast<std::size_t>(r));
    std::vector<std::size_t> pick(ms.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < ms.size(); ++i) {
        auto e = ms[i].edge(pick[i]);
        flat.insert(flat.end(), e.begin(), e.end());
      }
      std::size_t pos = ms.size();
      while (pos > 0 && ++pick[pos - 1] == k) pick[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return OrderedHypergraph(r, top + 1, std::move(flat));
}

HkLayout build_hk_layout(const Cube& c, int k) {
  if (k < 1) fail(ErrorKind::range, "k must be positive");
  const auto& blocks = c.blocks();
  const int s = static_cast<int>(blocks.size());
  const int t = c.t();
  // V_i starts at k * (sum of earlier half-lengths).
  std::vector<int> start(static_cast<std::size_t>(s), 0);
  for (int i = 1; i < s; ++i) start[i] = start[i - 1] + k * blocks[i - 1].half;
  const int vertex_count = k * c.r();

  HkLayout layout;
  layout.vertices.assign(static_cast<std::size_t>(vertex_count), HkVertex{});
  // cliques[j][a]: vertices of the a-th edge of K_j.
  std::vector<std::vector<std::vector<Vertex>>> cliques(static_cast<std::size_t>(t + 1),
                                                        std::vector<std::vector<Vertex>>(static_cast<std::size_t>(k)));
  for (int j = 0; j <= t; ++j) {
    const auto& part = c.parts()[static_cast<std::size_t>(j)];
    const bool lead = blocks[static_cast<std::size_t>(part.front() - 1)].leads_with_a;
    for (int a = 0; a < k; ++a) {
      auto& edge = cliques[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
      for (int i : part) {
        const Block& b = blocks[static_cast<std::size_t>(i - 1)];
        const int run = (b.leads_with_a == lead) ? a : k - 1 - a;
        for (int x = 0; x < b.half; ++x) {
          const Vertex v = start[static_cast<std::size_t>(i - 1)] + run * b.half + x;
          edge.push_back(v);
          layout.vertices[static_cast<std::size_t>(v)] = HkVertex{j, a};
        }
      }
    }
  }
  std::size_t count = 1;
  for (int j = 0; j <= t; ++j) {
    if (count > max_hyperedges / static_cast<std::size_t>(k)) fail(ErrorKind::cap_exceeded, "H_k too large");
    count *= static_cast<std::size_t>(k);
  }
  std::vector<Vertex> flat;
  flat.reserve(count * static_cast<std::size_t>(c.r()));
  std::vector<int> pick(static_cast<std::size_t>(t + 1), 0);
  while (true) {
    for (int j = 0; j <= t; ++j) {
      const auto& e = cliques[static_cast<std::size_t>(j)][static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])];
      flat.insert(flat.end(), e.begin(), e.end());
    }
    int pos = t + 1;
    while (pos > 0 && ++pick[static_cast<std::size_t>(pos - 1)] == k) pick[static_cast<std::size_t>(--pos)] = 0;
    if (pos == 0) break;
  }
  layout.graph = OrderedHypergraph(c.r(), vertex_count, std::move(flat));
  return layout;
}

OrderedHypergraph build_hk(const Cube& c, int k) { return build_hk_layout(c, k).graph; }

OrderedHypergraph blow_up(const OrderedHypergraph& h, int ell) {
  if (ell < 1) fail(ErrorKind::range, "blow-up factor must be positive");
  const int r = h.r();
  std::size_t per_edge = 1;
  for (int i = 0; i < r; ++i) {
    if (per_edge > max_hyperedges / static_cast<std::size_t>(ell)) fail(ErrorKind::cap_exceeded, "blow-up too large");
    per_edge *= static_cast<std::size_t>(ell);
  }
  if (h.edge_count() > 0 && per_edge > max_hyperedges / h.edge_count()) fail(ErrorKind::cap_exceeded, "blow-up too large");
  std::vector<Vertex> flat;
  flat.reserve(h.edge_count() * per_edge * static_cast<std::size_t>(r));
  std::vector<int> offset(static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    std::fill(offset.begin(), offset.end(), 0);
    while (true) {
      for (int a = 0; a < r; ++a) flat.push_back(e[static_cast<std::size_t>(a)] * ell + offset[static_cast<std::size_t>(a)]);
      int pos = r;
      while (pos > 0 && ++offset[static_cast<std::size_t>(pos - 1)] == ell) offset[static_cast<std::size_t>(--pos)] = 0;
      if (pos == 0) break;
    }
  }
  std::vector<int> classes(static_cast<std::size_t>(h.vertex_count()) * static_cast<std::size_t>(ell));
  for (std::size_t v = 0; v < classes.size(); ++v) classes[v] = static_cast<int>(v / static_cast<std::size_t>(ell));
  return OrderedHypergraph(r, h.vertex_count() * ell, std::move(flat), std::move(classes));
}

bool is_scattered(const OrderedMatching& m, std::span<const int> classes) {
  std::vector<int> used;
  used.reserve(m.flat().size());
  for (Vertex v : m.flat()) {
    if (v < 0 || static_cast<std::size_t>(v) >= classes.size()) fail(ErrorKind::range, "vertex without a class");
    used.push_back(classes[static_cast<std::size_t>(v)]);
  }
  std::sort(used.begin(), used.end());
  return std::adjacent_find(used.begin(), used.end()) == used.end();
}

}  // namespace omatch
