#include "omatch/matching.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "omatch/error.hpp"

namespace omatch {

OrderedMatching::OrderedMatching(int r, const std::vector<Edge>& edges) : r_(r) {
  if (r < 1) fail(ErrorKind::range, "uniformity must be positive");
  flat_.reserve(edges.size() * static_cast<std::size_t>(r));
  for (const Edge& e : edges) {
    if (static_cast<int>(e.size()) != r)
      fail(ErrorKind::size_mismatch, "edge of size " + std::to_string(e.size()) + " in an r=" + std::to_string(r) + " matching");
    flat_.insert(flat_.end(), e.begin(), e.end());
  }
  finish();
}

OrderedMatching OrderedMatching::from_flat(int r, std::vector<Vertex> flat) {
  if (r < 1) fail(ErrorKind::range, "uniformity must be positive");
  if (flat.size() % static_cast<std::size_t>(r) != 0) fail(ErrorKind::size_mismatch, "flat storage not a multiple of r");
  OrderedMatching m;
  m.r_ = r;
  m.flat_ = std::move(flat);
  m.finish();
  return m;
}

void OrderedMatching::finish() {
  const std::size_t n = size();
  const auto r = static_cast<std::size_t>(r_);
  for (std::size_t i = 0; i < n; ++i) std::sort(flat_.begin() + static_cast<std::ptrdiff_t>(i * r), flat_.begin() + static_cast<std::ptrdiff_t>((i + 1) * r));
  std::vector<Vertex> all = flat_;
  std::sort(all.begin(), all.end());
  if (!all.empty() && all.front() < 0) fail(ErrorKind::range, "negative vertex id");
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) fail(ErrorKind::overlap, "edges are not pairwise disjoint");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return flat_[a * r] < flat_[b * r]; });
  std::vector<Vertex> sorted;
  sorted.reserve(flat_.size());
  for (std::size_t i : order) sorted.insert(sorted.end(), flat_.begin() + static_cast<std::ptrdiff_t>(i * r), flat_.begin() + static_cast<std::ptrdiff_t>((i + 1) * r));
  flat_ = std::move(sorted);
}

std::vector<Edge> OrderedMatching::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back(edge(i).begin(), edge(i).end());
  return out;
}

bool OrderedMatching::is_canonical() const {
  std::vector<Vertex> all = vertices();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] != static_cast<Vertex>(i)) return false;
  return true;
}

std::vector<Vertex> OrderedMatching::vertices() const {
  std::vector<Vertex> all = flat_;
  std::sort(all.begin(), all.end());
  return all;
}

OrderedMatching OrderedMatching::canonicalized() const {
  const std::vector<Vertex> all = vertices();
  std::vector<Vertex> flat(flat_.size());
  for (std::size_t i = 0; i < flat_.size(); ++i)
    flat[i] = static_cast<Vertex>(std::lower_bound(all.begin(), all.end(), flat_[i]) - all.begin());
  OrderedMatching m;
  m.r_ = r_;
  m.flat_ = std::move(flat);
  return m;
}

OrderedMatching OrderedMatching::sub_matching(std::span<const std::size_t> indices) const {
  std::vector<Vertex> flat;
  flat.reserve(indices.size() * static_cast<std::size_t>(r_));
  for (std::size_t i : indices) {
    if (i >= size()) fail(ErrorKind::range, "edge index out of range");
    auto e = edge(i);
    flat.insert(flat.end(), e.begin(), e.end());
  }
  return from_flat(r_, std::move(flat));
}

OrderedMatching OrderedMatching::shifted(Vertex offset) const {
  OrderedMatching m = *this;
  for (Vertex& v : m.flat_) v += offset;
  if (!m.flat_.empty() && *std::min_element(m.flat_.begin(), m.flat_.end()) < 0) fail(ErrorKind::range, "negative vertex id");
  return m;
}

namespace {

// Groups positions by label in first-occurrence order.
OrderedMatching from_labels(const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> index;
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < labels.size(); ++p) {
    auto [it, fresh] = index.emplace(labels[p], edges.size());
    if (fresh) edges.emplace_back();
    edges[it->second].push_back(static_cast<Vertex>(p));
  }
  if (edges.empty()) fail(ErrorKind::invalid_word, "empty word");
  const std::size_t r = edges.front().size();
  for (const Edge& e : edges)
    if (e.size() != r) fail(ErrorKind::invalid_word, "letters occur with unequal multiplicities");
  return OrderedMatching(static_cast<int>(r), edges);
}

}  // namespace

OrderedMatching from_word(std::string_view text) {
  const bool numeric = std::any_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  std::vector<std::string> labels;
  if (numeric) {
    std::string s(text);
    for (char& c : s)
      if (c == '|' || c == ',') c = ' ';
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
      if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail(ErrorKind::invalid_word, "bad token '" + tok + "'");
      labels.push_back(tok);
    }
  } else {
    for (char c : text) {
      if (c == ' ' || c == '|' || c == '\t' || c == '\n' || c == '\r') continue;
      if (!std::isupper(static_cast<unsigned char>(c))) fail(ErrorKind::invalid_word, std::string("bad letter '") + c + "'");
      labels.emplace_back(1, c);
    }
  }
  return from_labels(labels);
}

std::string to_word(const OrderedMatching& m) {
  const OrderedMatching c = m.canonicalized();
  const std::size_t n = c.size();
  std::vector<std::size_t> owner(c.flat().size());
  for (std::size_t i = 0; i < n; ++i)
    for (Vertex v : c.edge(i)) owner[static_cast<std::size_t>(v)] = i;
  std::string out;
  for (std::size_t p = 0; p < owner.size(); ++p) {
    if (n <= 26) {
      out += static_cast<char>('A' + owner[p]);
    } else {
      if (p) out += ' ';
      out += std::to_string(owner[p] + 1);
    }
  }
  return out;
}

OrderedMatching read_matching(std::istream& in) {
  int r = 0;
  long long n = -1;
  if (!(in >> r >> n) || r < 1 || n < 0) fail(ErrorKind::invalid_word, "matching header must be 'r n'");
  std::string line;
  std::getline(in, line);
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  OrderedMatching m;
  const bool letters = !lines.empty() && std::any_of(lines[0].begin(), lines[0].end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)); });
  if (letters || (lines.size() == 1 && n != 1)) {
    m = from_word(lines.at(0));
  } else {
    std::vector<Vertex> flat;
    for (const std::string& l : lines) {
      std::istringstream ls(l);
      long long v = 0;
      int count = 0;
      while (ls >> v) {
        if (v < 1) fail(ErrorKind::range, "vertex ids are 1-based");
        flat.push_back(static_cast<Vertex>(v - 1));
        ++count;
      }
      if (!ls.eof()) fail(ErrorKind::invalid_word, "bad edge line '" + l + "'");
      if (count != r) fail(ErrorKind::size_mismatch, "edge line with " + std::to_string(count) + " ids, expected " + std::to_string(r));
    }
    m = OrderedMatching::from_flat(r, std::move(flat));
  }
  if (m.r() != r || static_cast<long long>(m.size()) != n)
    fail(ErrorKind::size_mismatch, "matching body does not match header " + std::to_string(r) + " " + std::to_string(n));
  return m;
}

void write_matching(std::ostream& out, const OrderedMatching& m, bool as_word) {
  out << m.r() << ' ' << m.size() << '\n';
  if (as_word && m.is_canonical()) {
    out << to_word(m) << '\n';
    return;
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto e = m.edge(i);
    for (std::size_t a = 0; a < e.size(); ++a) out << (a ? " " : "") << e[a] + 1;
    out << '\n';
  }
}

std::string matching_to_json(const OrderedMatching& m) {
  nlohmann::json j;
  j["r"] = m.r();
  j["n"] = m.size();
  auto edges = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto e = nlohmann::json::array();
    for (Vertex v : m.edge(i)) e.push_back(v + 1);
    edges.push_back(e);
  }
  j["edges"] = edges;
  if (m.is_canonical()) j["word"] = to_word(m);
  return j.dump();
}

Trace Trace::parse(std::string_view digits) {
  Trace t;
  t.r = 0;
  if (digits.find(',') != std::string_view::npos) {
    // comma-separated symbols, needed once r exceeds 9
    std::string text(digits);
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      const auto b = tok.find_first_not_of(' '), e = tok.find_last_not_of(' ');
      tok = b == std::string::npos ? "" : tok.substr(b, e - b + 1);
      if (tok.empty() || tok.size() > 2 || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail(ErrorKind::invalid_trace, "bad trace symbol '" + tok + "'");
      const int v = std::stoi(tok);
      if (v < 1) fail(ErrorKind::invalid_trace, "trace symbols start at 1");
      t.symbols.push_back(static_cast<std::uint8_t>(v));
      t.r = std::max(t.r, v);
    }
    if (t.symbols.empty()) fail(ErrorKind::invalid_trace, "empty trace");
    return t;
  }
  for (char c : digits) {
    if (c == ' ' || c == '|') continue;
    if (c < '1' || c > '9') fail(ErrorKind::invalid_trace, std::string("bad trace symbol '") + c + "'");
    t.symbols.push_back(static_cast<std::uint8_t>(c - '0'));
    t.r = std::max(t.r, c - '0');
  }
  if (t.symbols.empty()) fail(ErrorKind::invalid_trace, "empty trace");
  return t;
}

std::string Trace::str() const {
  std::string out;
  for (auto s : symbols) {
    if (r <= 9) {
      out += static_cast<char>('0' + s);
    } else {
      if (!out.empty()) out += ',';
      out += std::to_string(s);
    }
  }
  return out;
}

Trace trace_of(const OrderedMatching& m) {
  const OrderedMatching c = m.canonicalized();
  Trace t;
  t.r = c.r();
  t.symbols.assign(c.flat().size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto e = c.edge(i);
    for (std::size_t a = 0; a < e.size(); ++a) t.symbols[static_cast<std::size_t>(e[a])] = static_cast<std::uint8_t>(a + 1);
  }
  return t;
}

bool is_valid_trace(const Trace& t) {
  if (t.r < 1 || t.symbols.empty() || t.symbols.size() % static_cast<std::size_t>(t.r) != 0) return false;
  std::vector<std::size_t> count(static_cast<std::size_t>(t.r) + 1, 0);
  for (auto s : t.symbols) {
    if (s < 1 || s > t.r) return false;
    ++count[s];
    if (s > 1 && count[s] > count[s - 1]) return false;
  }
  const std::size_t n = t.symbols.size() / static_cast<std::size_t>(t.r);
  for (int i = 1; i <= t.r; ++i)
    if (count[static_cast<std::size_t>(i)] != n) return false;
  return true;
}

Pattern pattern_of_pair(std::span<const Vertex> e, std::span<const Vertex> f) {
  if (e.size() != f.size() || e.empty()) fail(ErrorKind::size_mismatch, "edges of different sizes");
  if (e.size() > static_cast<std::size_t>(Pattern::max_r)) fail(ErrorKind::range, "edge too large for a pattern");
  if (!std::is_sorted(e.begin(), e.end()) || !std::is_sorted(f.begin(), f.end()))
    fail(ErrorKind::order_violation, "edges must be sorted");
  std::vector<Vertex> merged(e.begin(), e.end());
  merged.insert(merged.end(), f.begin(), f.end());
  std::sort(merged.begin(), merged.end());
  if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) fail(ErrorKind::overlap, "edges intersect");
  const int r = static_cast<int>(e.size());
  if (f[0] < e[0]) std::swap(e, f);
  return Pattern::from_bits(r, pair_bits(e.data(), f.data(), r));
}

int chi_interval(const OrderedMatching& m) {
  const OrderedMatching c = m.canonicalized();
  const std::size_t total = c.flat().size();
  if (total == 0) return 0;
  std::vector<std::size_t> owner(total);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (Vertex v : c.edge(i)) owner[static_cast<std::size_t>(v)] = i;
  std::vector<int> stamp(c.size(), 0);
  int intervals = 1;
  for (std::size_t p = 0; p < total; ++p) {
    if (stamp[owner[p]] == intervals) ++intervals;
    stamp[owner[p]] = intervals;
  }
  return intervals;
}

bool is_r_partite(const OrderedMatching& m) { return chi_interval(m) == m.r(); }

OrderedMatching remove_letter_matching(const OrderedMatching& m, int j) {
  const int r = m.r();
  if (r < 2) fail(ErrorKind::range, "letter removal needs r >= 2");
  if (j < 1 || j > r) fail(ErrorKind::range, "letter index " + std::to_string(j) + " outside 1.." + std::to_string(r));
  std::vector<Vertex> flat;
  flat.reserve(m.size() * static_cast<std::size_t>(r - 1));
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto e = m.edge(i);
    for (int a = 0; a < r; ++a)
      if (a != j - 1) flat.push_back(e[static_cast<std::size_t>(a)]);
  }
  return OrderedMatching::from_flat(r - 1, std::move(flat)).canonicalized();
}

}  // namespace omatch
