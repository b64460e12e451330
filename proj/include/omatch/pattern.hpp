#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omatch {

// Interleaving of two disjoint r-edges written as a word over {A, B}.
// Bit i of bits() is set iff letter i is 'B'. Always stored canonically
// (first letter A), so a whole-word flip maps to the same value.
class Pattern {
 public:
  static constexpr int max_r = 32;

  Pattern() = default;

  // Accepts any balanced A/B word; a word starting with B is flipped.
  static Pattern parse(std::string_view word);
  static Pattern from_bits(int r, std::uint64_t bits);

  int r() const noexcept { return r_; }
  int length() const noexcept { return 2 * r_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool is_b(int i) const noexcept { return (bits_ >> i) & 1U; }
  char at(int i) const noexcept { return is_b(i) ? 'B' : 'A'; }
  std::string word() const;

  bool operator==(const Pattern&) const = default;
  // Orders by r, then lexicographically by word (A < B).
  std::strong_ordering operator<=>(const Pattern& other) const noexcept;

 private:
  Pattern(int r, std::uint64_t bits) : r_(r), bits_(bits) {}
  int r_ = 1;
  std::uint64_t bits_ = 0b10;  // "AB"
};

enum class PatternClass { all, collectable, partite, dyck, noncollectable };

PatternClass parse_pattern_class(std::string_view name);
const char* to_string(PatternClass cls);

// One block A^tB^t or B^tA^t of a collectable pattern.
struct Block {
  int offset = 0;  // position of the first letter
  int half = 0;    // t
  bool leads_with_a = true;

  bool operator==(const Block&) const = default;
};

struct Composition {
  std::vector<int> parts;

  int r() const;
  int s() const { return static_cast<int>(parts.size()); }
  bool operator==(const Composition&) const = default;
};

std::string to_string(const Composition& c);

// Balanced-count patterns of length 2r in lexicographic order, 1 <= r <= 8.
std::vector<Pattern> enumerate_patterns(int r, PatternClass cls = PatternClass::all);
bool in_class(const Pattern& p, PatternClass cls);

// Unique splitting into blocks, or nullopt if p is not collectable.
std::optional<std::vector<Block>> split_blocks(const Pattern& p);
bool is_collectable(const Pattern& p);
bool is_partite(const Pattern& p);
bool is_dyck(const Pattern& p);
Composition composition(const Pattern& p);

bool is_harmonious(const Pattern& p, const Pattern& q);
bool is_mismatch(const Pattern& p, const Pattern& q);

using Partition = std::vector<std::vector<int>>;  // 1-based block indices, T0 first

// "1,3,5;2,8;4,6,7"
Partition parse_partition(std::string_view text);
std::string to_string(const Partition& pi);

class Cube {
 public:
  Cube(Pattern base, Partition parts);

  const Pattern& base() const noexcept { return base_; }
  const Partition& parts() const noexcept { return parts_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Composition& composition() const noexcept { return comp_; }
  int t() const noexcept { return static_cast<int>(parts_.size()) - 1; }
  int r() const noexcept { return base_.r(); }
  // r_j: summed half-lengths of the blocks in T_j.
  int weight(int j) const;
  // Index j of the part containing block i (1-based block index).
  int part_of(int block) const { return part_of_[block - 1]; }

  // Base with every mega-block j in mask (bit j-1 for T_j, j >= 1) flipped.
  Pattern flipped(std::uint64_t mask) const;

 private:
  Pattern base_;
  Partition parts_;
  std::vector<Block> blocks_;
  Composition comp_;
  std::vector<int> part_of_;
};

// All 2^t members, indexed by flip mask in ascending order.
std::vector<Pattern> cube_expand(const Cube& c);
// Every pattern sharing the composition of p (singleton partition cube).
std::vector<Pattern> harmonic_family(const Pattern& p);
Cube harmonic_cube(const Pattern& p);

// Deletes the j-th A and the j-th B (1-based j), then recanonicalizes.
Pattern remove_letter(const Pattern& p, int j);
// First j in 1..r keeping {p^-j, q^-j} a mismatch.
int find_inheritance_index(const Pattern& p, const Pattern& q);

}  // namespace omatch
