#include "omatch/pattern.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "omatch/error.hpp"

namespace omatch {

namespace {

std::uint64_t low_mask(int len) { return len >= 64 ? ~0ULL : ((1ULL << len) - 1); }

std::uint64_t canonical_bits(int r, std::uint64_t bits) {
  return (bits & 1U) ? (~bits & low_mask(2 * r)) : bits;
}

}  // namespace

Pattern Pattern::parse(std::string_view word) {
  if (word.empty() || word.size() % 2 != 0 || word.size() > 2 * max_r)
    fail(ErrorKind::invalid_word, "pattern word must have even length 2..64: '" + std::string(word) + "'");
  std::uint64_t bits = 0;
  int bs = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == 'B') {
      bits |= 1ULL << i;
      ++bs;
    } else if (word[i] != 'A') {
      fail(ErrorKind::invalid_word, "pattern letters must be A or B: '" + std::string(word) + "'");
    }
  }
  const int r = static_cast<int>(word.size() / 2);
  if (bs != r) fail(ErrorKind::invalid_word, "unbalanced pattern word '" + std::string(word) + "'");
  return Pattern(r, canonical_bits(r, bits));
}

Pattern Pattern::from_bits(int r, std::uint64_t bits) {
  if (r < 1 || r > max_r) fail(ErrorKind::range, "pattern uniformity out of range");
  if ((bits & ~low_mask(2 * r)) != 0 || std::popcount(bits) != r)
    fail(ErrorKind::invalid_word, "bit mask is not a balanced pattern");
  return Pattern(r, canonical_bits(r, bits));
}

std::string Pattern::word() const {
  std::string w(static_cast<std::size_t>(length()), 'A');
  for (int i = 0; i < length(); ++i)
    if (is_b(i)) w[i] = 'B';
  return w;
}

std::strong_ordering Pattern::operator<=>(const Pattern& other) const noexcept {
  if (r_ != other.r_) return r_ <=> other.r_;
  const std::uint64_t diff = bits_ ^ other.bits_;
  if (diff == 0) return std::strong_ordering::equal;
  const int i = std::countr_zero(diff);
  return is_b(i) ? std::strong_ordering::greater : std::strong_ordering::less;
}

PatternClass parse_pattern_class(std::string_view name) {
  if (name == "all") return PatternClass::all;
  if (name == "collectable") return PatternClass::collectable;
  if (name == "partite") return PatternClass::partite;
  if (name == "dyck") return PatternClass::dyck;
  if (name == "noncollectable") return PatternClass::noncollectable;
  fail(ErrorKind::invalid_config, "unknown pattern class '" + std::string(name) + "'");
}

const char* to_string(PatternClass cls) {
  switch (cls) {
    case PatternClass::all: return "all";
    case PatternClass::collectable: return "collectable";
    case PatternClass::partite: return "partite";
    case PatternClass::dyck: return "dyck";
    case PatternClass::noncollectable: return "noncollectable";
  }
  return "?";
}

int Composition::r() const {
  int sum = 0;
  for (int p : parts) sum += p;
  return sum;
}

std::string to_string(const Composition& c) {
  std::string out;
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.parts[i]);
  }
  return out;
}

bool in_class(const Pattern& p, PatternClass cls) {
  switch (cls) {
    case PatternClass::all: return true;
    case PatternClass::collectable: return is_collectable(p);
    case PatternClass::partite: return is_partite(p);
    case PatternClass::dyck: return is_dyck(p);
    case PatternClass::noncollectable: return !is_collectable(p);
  }
  return false;
}

std::vector<Pattern> enumerate_patterns(int r, PatternClass cls) {
  if (r < 1 || r > 8) fail(ErrorKind::range, "pattern enumeration supports 1 <= r <= 8");
  std::vector<Pattern> out;
  const std::uint64_t limit = 1ULL << (2 * r);
  // Canonical words have bit 0 clear; stepping by 2 skips the rest.
  for (std::uint64_t bits = 0; bits < limit; bits += 2) {
    if (std::popcount(bits) != r) continue;
    Pattern p = Pattern::from_bits(r, bits);
    if (in_class(p, cls)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<Block>> split_blocks(const Pattern& p) {
  std::vector<Block> blocks;
  const int len = p.length();
  int pos = 0;
  while (pos < len) {
    const bool lead = p.is_b(pos);
    int run = 0;
    while (pos + run < len && p.is_b(pos + run) == lead) ++run;
    if (pos + 2 * run > len) return std::nullopt;
    for (int i = pos + run; i < pos + 2 * run; ++i)
      if (p.is_b(i) == lead) return std::nullopt;
    blocks.push_back(Block{pos, run, !lead});
    pos += 2 * run;
  }
  return blocks;
}

bool is_collectable(const Pattern& p) { return split_blocks(p).has_value(); }

bool is_partite(const Pattern& p) {
  for (int i = 0; i < p.length(); i += 2)
    if (p.is_b(i) == p.is_b(i + 1)) return false;
  return true;
}

bool is_dyck(const Pattern& p) {
  int depth = 0;
  for (int i = 0; i < p.length(); ++i) {
    depth += p.is_b(i) ? -1 : 1;
    if (depth < 0) return false;
  }
  return true;
}

Composition composition(const Pattern& p) {
  auto blocks = split_blocks(p);
  if (!blocks) fail(ErrorKind::not_collectable, p.word() + " is not collectable");
  Composition c;
  for (const Block& b : *blocks) c.parts.push_back(b.half);
  return c;
}

namespace {
void require_same_r(const Pattern& p, const Pattern& q) {
  if (p.r() != q.r()) fail(ErrorKind::size_mismatch, "patterns " + p.word() + " and " + q.word() + " differ in r");
}
}  // namespace

bool is_harmonious(const Pattern& p, const Pattern& q) {
  require_same_r(p, q);
  if (!is_collectable(p) || !is_collectable(q)) return false;
  return composition(p) == composition(q);
}

bool is_mismatch(const Pattern& p, const Pattern& q) {
  require_same_r(p, q);
  const bool cp = is_collectable(p), cq = is_collectable(q);
  if (cp != cq) return true;
  if (!cp) return false;
  return composition(p) != composition(q);
}

Partition parse_partition(std::string_view text) {
  Partition pi;
  std::string s(text);
  std::stringstream groups(s);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<int> part;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) {
      const auto first = item.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      const auto last = item.find_last_not_of(" \t");
      const std::string token = item.substr(first, last - first + 1);
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) fail(ErrorKind::invalid_partition, "bad block index '" + token + "'");
      part.push_back(v);
    }
    if (part.empty()) fail(ErrorKind::invalid_partition, "empty part in '" + s + "'");
    pi.push_back(std::move(part));
  }
  if (pi.empty()) fail(ErrorKind::invalid_partition, "empty partition");
  return pi;
}

std::string to_string(const Partition& pi) {
  std::string out;
  for (std::size_t j = 0; j < pi.size(); ++j) {
    if (j) out += ';';
    for (std::size_t i = 0; i < pi[j].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(pi[j][i]);
    }
  }
  return out;
}

Cube::Cube(Pattern base, Partition parts) : base_(base), parts_(std::move(parts)) {
  auto blocks = split_blocks(base_);
  if (!blocks) fail(ErrorKind::not_collectable, "cube base " + base_.word() + " is not collectable");
  blocks_ = std::move(*blocks);
  for (const Block& b : blocks_) comp_.parts.push_back(b.half);
  const int s = comp_.s();
  if (parts_.empty()) fail(ErrorKind::invalid_partition, "partition has no parts");
  if (parts_.size() > 64) fail(ErrorKind::invalid_partition, "too many parts");
  part_of_.assign(static_cast<std::size_t>(s), -1);
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    if (parts_[j].empty()) fail(ErrorKind::invalid_partition, "empty part");
    std::sort(parts_[j].begin(), parts_[j].end());
    for (int i : parts_[j]) {
      if (i < 1 || i > s)
        fail(ErrorKind::invalid_partition, "block index " + std::to_string(i) + " outside 1.." + std::to_string(s));
      if (part_of_[i - 1] != -1) fail(ErrorKind::invalid_partition, "block index " + std::to_string(i) + " repeated");
      part_of_[i - 1] = static_cast<int>(j);
    }
  }
  for (int i = 0; i < s; ++i)
    if (part_of_[i] == -1) fail(ErrorKind::invalid_partition, "block " + std::to_string(i + 1) + " not covered");
  if (part_of_[0] != 0) fail(ErrorKind::invalid_partition, "block 1 must belong to the first part");
}

int Cube::weight(int j) const {
  int w = 0;
  for (int i : parts_.at(static_cast<std::size_t>(j))) w += comp_.parts[i - 1];
  return w;
}

Pattern Cube::flipped(std::uint64_t mask) const {
  std::uint64_t bits = base_.bits();
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const int j = part_of_[i];
    if (j == 0 || !((mask >> (j - 1)) & 1U)) continue;
    const Block& b = blocks_[i];
    bits ^= low_mask(2 * b.half) << b.offset;
  }
  return Pattern::from_bits(base_.r(), bits);
}

std::vector<Pattern> cube_expand(const Cube& c) {
  if (c.t() > 20) fail(ErrorKind::cap_exceeded, "cube dimension too large to expand");
  std::vector<Pattern> out;
  const std::uint64_t count = 1ULL << c.t();
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) out.push_back(c.flipped(mask));
  return out;
}

Cube harmonic_cube(const Pattern& p) {
  const Composition comp = composition(p);
  Partition pi;
  for (int i = 1; i <= comp.s(); ++i) pi.push_back({i});
  return Cube(p, std::move(pi));
}

std::vector<Pattern> harmonic_family(const Pattern& p) {
  auto family = cube_expand(harmonic_cube(p));
  std::sort(family.begin(), family.end());
  return family;
}

Pattern remove_letter(const Pattern& p, int j) {
  if (p.r() < 2) fail(ErrorKind::range, "letter removal needs r >= 2");
  if (j < 1 || j > p.r()) fail(ErrorKind::range, "letter index " + std::to_string(j) + " outside 1.." + std::to_string(p.r()));
  std::uint64_t bits = 0;
  int seen_a = 0, seen_b = 0, out = 0;
  for (int i = 0; i < p.length(); ++i) {
    if (p.is_b(i)) {
      if (++seen_b == j) continue;
      bits |= 1ULL << out;
    } else if (++seen_a == j) {
      continue;
    }
    ++out;
  }
  return Pattern::from_bits(p.r() - 1, bits);
}

int find_inheritance_index(const Pattern& p, const Pattern& q) {
  if (!is_mismatch(p, q)) fail(ErrorKind::not_mismatch, p.word() + " and " + q.word() + " are not a mismatch");
  if (p.r() < 3) fail(ErrorKind::range, "mismatch inheritance needs r >= 3");
  for (int j = 1; j <= p.r(); ++j)
    if (is_mismatch(remove_letter(p, j), remove_letter(q, j))) return j;
  fail(ErrorKind::internal, "no inheriting index for " + p.word() + ", " + q.word());
}

}  // namespace omatch
