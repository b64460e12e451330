#include "omatch/reconstruction.hpp"

#include <algorithm>
#include <map>

#include "omatch/clique.hpp"
#include "omatch/error.hpp"

namespace omatch {

Rule Rule::parse(std::string_view name) {
  if (name == "left") return left();
  if (name == "right") return right();
  if (name == "lr") return Rule({Side::left}, Side::right);
  if (name == "rl") return Rule({Side::right}, Side::left);
  std::vector<Side> sides;
  for (char c : name) {
    if (c == 'L' || c == 'l') {
      sides.push_back(Side::left);
    } else if (c == 'R' || c == 'r') {
      sides.push_back(Side::right);
    } else {
      fail(ErrorKind::invalid_config, "unknown rule '" + std::string(name) + "'");
    }
  }
  if (sides.empty()) fail(ErrorKind::invalid_config, "empty rule");
  const Side last = sides.back();
  return Rule(std::move(sides), last);
}

std::string Rule::name() const {
  if (per_digit_.empty()) return fallback_ == Side::left ? "left" : "right";
  if (per_digit_.size() == 1 && per_digit_[0] != fallback_) return per_digit_[0] == Side::left ? "lr" : "rl";
  std::string out;
  for (Side s : per_digit_) out += s == Side::left ? 'L' : 'R';
  return out;
}

OrderedMatching reconstruct(const Trace& t, const Rule& rule) {
  if (!is_valid_trace(t)) fail(ErrorKind::invalid_trace, "'" + t.str() + "' is not a valid trace");
  std::vector<std::vector<Vertex>> letters;
  for (std::size_t p = 0; p < t.symbols.size(); ++p) {
    const int digit = t.symbols[p];
    if (digit == 1) {
      letters.push_back({static_cast<Vertex>(p)});
      continue;
    }
    const auto want = static_cast<std::size_t>(digit - 1);
    std::vector<Vertex>* pick = nullptr;
    if (rule.side(digit) == Side::left) {
      for (auto& l : letters)
        if (l.size() == want) {
          pick = &l;
          break;
        }
    } else {
      for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        if (it->size() == want) {
          pick = &*it;
          break;
        }
    }
    if (!pick) fail(ErrorKind::invalid_trace, "no letter available at position " + std::to_string(p + 1));
    pick->push_back(static_cast<Vertex>(p));
  }
  return OrderedMatching(t.r, letters);
}

void for_each_trace(int r, int k, const std::function<bool(const Trace&)>& visit) {
  if (r < 1 || k < 0) fail(ErrorKind::range, "need r >= 1 and k >= 0");
  if (r * k > 24) fail(ErrorKind::cap_exceeded, "r*k exceeds 24");
  Trace t;
  t.r = r;
  t.symbols.assign(static_cast<std::size_t>(r * k), 0);
  std::vector<int> count(static_cast<std::size_t>(r) + 1, 0);
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (stop) return;
    if (p == t.symbols.size()) {
      if (!visit(t)) stop = true;
      return;
    }
    for (int s = 1; s <= r && !stop; ++s) {
      auto& c = count[static_cast<std::size_t>(s)];
      if (c == k || (s > 1 && count[static_cast<std::size_t>(s - 1)] <= c)) continue;
      ++c;
      t.symbols[p] = static_cast<std::uint8_t>(s);
      self(self, p + 1);
      --c;
    }
  };
  rec(rec, 0);
}

Verdict check_reconstructible(const PatternSet& ps, int k) {
  std::map<std::string, std::vector<std::string>> by_trace;
  Verdict v;
  for_each_clique(ps, k, [&](const OrderedMatching& m) {
    by_trace[trace_of(m).str()].push_back(to_word(m));
    ++v.cliques;
    return true;
  });
  for (auto& [trace, words] : by_trace) {
    if (words.size() < 2) continue;
    std::sort(words.begin(), words.end());
    v.reconstructible = false;
    v.collisions.emplace_back(trace, words);
    std::pair<std::string, std::string> pair{words[0], words[1]};
    if (!v.counterexample || pair < *v.counterexample) {
      v.counterexample = pair;
      v.shared_trace = trace;
    }
  }
  return v;
}

bool rule_fixpoint_check(const PatternSet& ps, const Rule& rule, int k) {
  const int r = ps.r();
  bool ok = true;
  for_each_clique(ps, k, [&](const OrderedMatching& m) {
    ok = reconstruct(trace_of(m), rule) == m;
    return ok;
  });
  if (!ok) return false;
  std::vector<std::size_t> all(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  for_each_trace(r, k, [&](const Trace& t) {
    ok = verify_clique(reconstruct(t, rule), ps, all);
    return ok;
  });
  return ok;
}

}  // namespace omatch
