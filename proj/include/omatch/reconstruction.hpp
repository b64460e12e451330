#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "omatch/matching.hpp"
#include "omatch/pattern_set.hpp"

namespace omatch {

enum class Side { left, right };

// Decoding policy per digit: digit 1 always opens the next letter; digit
// i >= 2 extends the leftmost or rightmost letter seen exactly i-1 times.
class Rule {
 public:
  Rule(std::vector<Side> per_digit, Side fallback) : per_digit_(std::move(per_digit)), fallback_(fallback) {}

  // left | right | lr | rl | a string of L/R for digits 2, 3, ...
  static Rule parse(std::string_view name);
  static Rule left() { return Rule({}, Side::left); }
  static Rule right() { return Rule({}, Side::right); }

  Side side(int digit) const {
    const auto i = static_cast<std::size_t>(digit - 2);
    return i < per_digit_.size() ? per_digit_[i] : fallback_;
  }
  std::string name() const;

 private:
  std::vector<Side> per_digit_;  // digits 2, 3, ...
  Side fallback_;
};

OrderedMatching reconstruct(const Trace& t, const Rule& rule);

// Valid traces with k copies of each of 1..r, in lexicographic order.
void for_each_trace(int r, int k, const std::function<bool(const Trace&)>& visit);

struct Verdict {
  bool reconstructible = true;
  std::size_t cliques = 0;
  // Lexicographically first colliding pair of words, if any.
  std::optional<std::pair<std::string, std::string>> counterexample;
  std::string shared_trace;
  // Every trace shared by two or more cliques, with their words (sorted).
  std::vector<std::pair<std::string, std::vector<std::string>>> collisions;
};

Verdict check_reconstructible(const PatternSet& ps, int k);
bool rule_fixpoint_check(const PatternSet& ps, const Rule& rule, int k);

}  // namespace omatch
