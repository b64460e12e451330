#include "omatch/pattern_set.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "omatch/error.hpp"

namespace omatch {

namespace {
constexpr int dense_table_max_r = 10;
}

PatternSet::PatternSet(int r, std::vector<Pattern> members, std::string provenance)
    : r_(r), members_(std::move(members)), provenance_(std::move(provenance)) {
  if (r < 1 || r > Pattern::max_r) fail(ErrorKind::range, "pattern set uniformity out of range");
  if (members_.empty()) fail(ErrorKind::invalid_config, "pattern set is empty");
  for (const Pattern& p : members_)
    if (p.r() != r) fail(ErrorKind::size_mismatch, "pattern " + p.word() + " has r=" + std::to_string(p.r()) + ", expected " + std::to_string(r));
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (const Pattern& p : members_) sorted_bits_.push_back(p.bits());
  std::sort(sorted_bits_.begin(), sorted_bits_.end());
  if (r <= dense_table_max_r) {
    table_.assign(std::size_t{1} << (2 * r - 1), 0);
    for (std::uint64_t b : sorted_bits_) table_[b >> 1] = 1;
  }
}

bool PatternSet::contains_bits(std::uint64_t bits) const noexcept {
  if (!table_.empty()) {
    const std::uint64_t idx = bits >> 1;
    return idx < table_.size() && table_[idx];
  }
  return std::binary_search(sorted_bits_.begin(), sorted_bits_.end(), bits);
}

bool PatternSet::is_subset_of(const PatternSet& other) const {
  if (r_ != other.r_) return false;
  return std::all_of(members_.begin(), members_.end(), [&](const Pattern& p) { return other.contains(p); });
}

PatternSet partite_set(int r) { return PatternSet(r, enumerate_patterns(r, PatternClass::partite), "partite"); }

PatternSet cube_set(const Cube& c) {
  return PatternSet(c.r(), cube_expand(c), "cube:" + c.base().word() + ":" + to_string(c.parts()));
}

PatternSet cube_complement_set(const Cube& c) {
  if (!is_partite(c.base())) fail(ErrorKind::not_partite, "cube-complement needs a partite base, got " + c.base().word());
  const PatternSet cube = cube_set(c);
  std::vector<Pattern> rest;
  for (const Pattern& p : enumerate_patterns(c.r(), PatternClass::partite))
    if (!cube.contains(p)) rest.push_back(p);
  if (rest.empty()) fail(ErrorKind::invalid_config, "cube covers every partite pattern; complement is empty");
  return PatternSet(c.r(), std::move(rest), "cube-complement:" + c.base().word() + ":" + to_string(c.parts()));
}

namespace {

int check_r(int declared, int actual) {
  if (declared != 0 && declared != actual)
    fail(ErrorKind::size_mismatch, "pattern set has r=" + std::to_string(actual) + " but r=" + std::to_string(declared) + " was requested");
  return actual;
}

}  // namespace

PatternSet parse_pattern_set(std::string_view spec, int r) {
  const std::string s(spec);
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);

  if (colon == std::string::npos) {
    const PatternClass cls = parse_pattern_class(head);
    if (r == 0) fail(ErrorKind::invalid_config, "pattern class '" + head + "' needs an explicit r");
    return PatternSet(r, enumerate_patterns(r, cls), head);
  }
  if (head == "list") {
    std::vector<Pattern> ps;
    std::stringstream in(rest);
    std::string w;
    while (std::getline(in, w, ',')) {
      if (w.empty()) continue;
      ps.push_back(Pattern::parse(w));
    }
    if (ps.empty()) fail(ErrorKind::invalid_config, "empty pattern list");
    const int actual = check_r(r, ps.front().r());
    return PatternSet(actual, std::move(ps), s);
  }
  if (head == "harmonic") {
    const Pattern p = Pattern::parse(rest);
    check_r(r, p.r());
    return PatternSet(p.r(), harmonic_family(p), s);
  }
  if (head == "cube" || head == "cube-complement") {
    const auto colon2 = rest.find(':');
    if (colon2 == std::string::npos) fail(ErrorKind::invalid_config, "expected " + head + ":WORD:PARTITION");
    const Pattern p = Pattern::parse(rest.substr(0, colon2));
    check_r(r, p.r());
    const Cube c(p, parse_partition(rest.substr(colon2 + 1)));
    return head == "cube" ? cube_set(c) : cube_complement_set(c);
  }
  fail(ErrorKind::invalid_config, "unknown pattern set '" + s + "'");
}

PatternGraph::PatternGraph(const OrderedMatching& m, const PatternSet& ps) {
  if (m.r() != ps.r()) fail(ErrorKind::size_mismatch, "matching and pattern set differ in r");
  n_ = m.size();
  words_ = (n_ + 63) / 64;
  adj_.assign(n_ * words_, 0);
  const int r = m.r();
  const Vertex* base = m.flat().data();
  for (std::size_t i = 0; i < n_; ++i) {
    const Vertex* e = base + i * static_cast<std::size_t>(r);
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Vertex* f = base + j * static_cast<std::size_t>(r);
      if (ps.contains_bits(pair_bits(e, f, r))) {
        adj_[i * words_ + (j >> 6)] |= 1ULL << (j & 63);
        adj_[j * words_ + (i >> 6)] |= 1ULL << (i & 63);
      }
    }
  }
}

PatternGraph::PatternGraph(const PatternGraph& g, std::span<const std::size_t> keep) {
  n_ = keep.size();
  words_ = (n_ + 63) / 64;
  adj_.assign(n_ * words_, 0);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (g.adjacent(keep[a], keep[b])) {
        adj_[a * words_ + (b >> 6)] |= 1ULL << (b & 63);
        adj_[b * words_ + (a >> 6)] |= 1ULL << (a & 63);
      }
}

PatternGraph PatternGraph::from_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& adjacent) {
  PatternGraph g;
  g.n_ = n;
  g.words_ = (n + 63) / 64;
  g.adj_.assign(n * g.words_, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (adjacent(a, b)) {
        g.adj_[a * g.words_ + (b >> 6)] |= 1ULL << (b & 63);
        g.adj_[b * g.words_ + (a >> 6)] |= 1ULL << (a & 63);
      }
  return g;
}

std::size_t PatternGraph::degree(std::size_t i) const noexcept {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(row(i)[w]));
  return d;
}

std::size_t PatternGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n_; ++i) total += degree(i);
  return total / 2;
}

}  // namespace omatch
