#include <doctest.h>

#include <sstream>

#include "omatch/clique.hpp"
#include "omatch/error.hpp"
#include "omatch/hypergraph.hpp"
#include "omatch/matching.hpp"
#include "omatch/sampling.hpp"
#include "oracles.hpp"

using namespace omatch;

namespace {

std::vector<std::vector<int>> one_based(const OrderedMatching& m) {
  std::vector<std::vector<int>> out;
  for (const Edge& e : m.edges()) {
    std::vector<int> v;
    for (Vertex x : e) v.push_back(x + 1);
    out.push_back(v);
  }
  return out;
}

// Sorted multiset of pairwise intersection sizes; an isomorphism invariant.
std::vector<int> intersection_profile(const OrderedHypergraph& h) {
  std::vector<int> prof;
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    for (std::size_t j = i + 1; j < h.edge_count(); ++j) {
      int common = 0;
      for (Vertex a : h.edge(i))
        for (Vertex b : h.edge(j)) common += a == b;
      prof.push_back(common);
    }
  std::sort(prof.begin(), prof.end());
  return prof;
}

// Patterns formed by disjoint edge pairs of h, checked against the cube.
bool disjoint_pairs_in_cube(const OrderedHypergraph& h, const Cube& c) {
  const PatternSet cube = cube_set(c);
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    for (std::size_t j = i + 1; j < h.edge_count(); ++j) {
      std::vector<int> a(h.edge(i).begin(), h.edge(i).end()), b(h.edge(j).begin(), h.edge(j).end());
      std::vector<int> both;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
      if (!both.empty()) continue;
      if (!cube.contains(Pattern::parse(oracle::pair_word(a, b)))) return false;
    }
  return true;
}

}  // namespace

TEST_SUITE("matching") {
  TEST_CASE("running example word") {
    const OrderedMatching m = from_word("AABCBDBDACCD");
    CHECK(m.r() == 3);
    CHECK(one_based(m) == std::vector<std::vector<int>>{{1, 2, 9}, {3, 5, 7}, {4, 10, 11}, {6, 8, 12}});
    CHECK(to_word(m) == "AABCBDBDACCD");
    CHECK(m.is_canonical());
  }

  TEST_CASE("two words for the same matching") {
    const OrderedMatching a = from_word("AABACDCDDBCB"), b = from_word("CCECDFDFFEDE");
    CHECK(a == b);
    CHECK(one_based(a) == std::vector<std::vector<int>>{{1, 2, 4}, {3, 10, 12}, {5, 7, 11}, {6, 8, 9}});
  }

  TEST_CASE("word edge cases") {
    const OrderedMatching m = from_word("AB");
    CHECK(m.r() == 1);
    CHECK(m.size() == 2);
    CHECK_THROWS_AS(from_word("AAB"), Error);
    CHECK(from_word("ABCDEFG ACGEFBD GFEDCBA").size() == 7);
    CHECK(from_word("AB|AB") == from_word("ABAB"));
  }

  TEST_CASE("digit tokens for more than 26 edges") {
    const OrderedMatching m = sample_uniform(2, 30, 5);
    const std::string w = to_word(m);
    CHECK(w.find(' ') != std::string::npos);
    CHECK(from_word(w) == m);
  }

  TEST_CASE("word round trip over all small matchings") {
    for (const std::string& w : oracle::all_matchings(3, 3)) CHECK(to_word(from_word(w)) == w);
  }

  TEST_CASE("pattern of pair") {
    CHECK(pattern_of_pair(std::vector<Vertex>{0, 1, 8}, std::vector<Vertex>{2, 4, 6}).word() == "AABBBA");
    CHECK(pattern_of_pair(std::vector<Vertex>{0, 1}, std::vector<Vertex>{2, 3}).word() == "AABB");
    CHECK(pattern_of_pair(std::vector<Vertex>{0, 2, 4}, std::vector<Vertex>{1, 3, 5}).word() == "ABABAB");
    CHECK(pattern_of_pair(std::vector<Vertex>{2, 4, 6}, std::vector<Vertex>{0, 1, 8}).word() == "AABBBA");
    CHECK_THROWS_AS(pattern_of_pair(std::vector<Vertex>{0, 1}, std::vector<Vertex>{1, 2}), Error);
    CHECK_THROWS_AS(pattern_of_pair(std::vector<Vertex>{0, 1}, std::vector<Vertex>{2, 3, 4}), Error);
  }

  TEST_CASE("pattern of pair agrees with the merge oracle") {
    for (const std::string& w : oracle::all_matchings(3, 3)) {
      const OrderedMatching m = from_word(w);
      const auto e = oracle::edges_of(w);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (i != j) CHECK(pattern_of_pair(m.edge(i), m.edge(j)).word() == oracle::pair_word(e[i], e[j]));
    }
  }

  TEST_CASE("trace examples") {
    CHECK(trace_of(from_word("AABCBDBDACCD")).str() == "121121323233");
    CHECK(trace_of(from_word("AABCCDADDBBC")).str() == "121121323233");
    CHECK(trace_of(from_word("AABB")).str() == "1212");
    CHECK(is_valid_trace(Trace::parse("121121323233")));
    CHECK_FALSE(is_valid_trace(Trace::parse("2112")));
    CHECK_FALSE(is_valid_trace(Trace::parse("1121")));
    CHECK_THROWS_AS(Trace::parse("12a"), Error);
  }

  TEST_CASE("traces beyond nine symbols use commas") {
    const OrderedMatching m = sample_uniform(11, 3, 8);
    const Trace t = trace_of(m);
    CHECK(t.str().find(',') != std::string::npos);
    CHECK(Trace::parse(t.str()) == t);
    CHECK(is_valid_trace(t));
    CHECK(Trace::parse("1,2,1,2") == Trace::parse("1212"));
    CHECK_THROWS_AS(Trace::parse("1,,2"), Error);
  }

  TEST_CASE("traces are valid and match the oracle") {
    for (const std::string& w : oracle::all_matchings(3, 3)) {
      const Trace t = trace_of(from_word(w));
      CHECK(t.str() == oracle::trace(w));
      CHECK(is_valid_trace(t));
    }
  }

  TEST_CASE("interval chromatic number") {
    CHECK(chi_interval(from_word("ABABBA")) == 3);
    CHECK(is_r_partite(from_word("ABABBA")));
    CHECK(chi_interval(from_word("AABB")) == 3);
    CHECK(chi_interval(from_word("ABCDEFG ACGEFBD GFEDCBA")) == 3);
    for (int r = 1; r <= 3; ++r)
      for (int n = 1; r * n <= 12 && n <= 4; ++n)
        for (const std::string& w : oracle::all_matchings(r, n)) CHECK(chi_interval(from_word(w)) == oracle::chi_interval(oracle::edges_of(w)));
  }

  TEST_CASE("matching file format") {
    const OrderedMatching m = from_word("AABCBDBDACCD");
    std::stringstream word_form;
    write_matching(word_form, m, true);
    CHECK(word_form.str() == "3 4\nAABCBDBDACCD\n");
    CHECK(read_matching(word_form) == m);
    std::stringstream edge_form;
    write_matching(edge_form, m, false);
    CHECK(edge_form.str() == "3 4\n1 2 9\n3 5 7\n4 10 11\n6 8 12\n");
    CHECK(read_matching(edge_form) == m);
    std::stringstream bad("3 4\nAABB\n");
    CHECK_THROWS_AS(read_matching(bad), Error);
  }

  TEST_CASE("matching JSON") {
    CHECK(matching_to_json(from_word("AABB")) == R"({"edges":[[1,2],[3,4]],"n":2,"r":2,"word":"AABB"})");
  }

  TEST_CASE("remove letter from a matching") {
    const OrderedMatching running = from_word("AABCBDBDACCD");
    CHECK(to_word(remove_letter_matching(running, 1)) == "ABBCADDC");
    CHECK(to_word(remove_letter_matching(running, 2)) == "ABCDBACD");
    CHECK(to_word(remove_letter_matching(running, 3)) == "AABCBDDC");
    // a second matching with known deletions
    const OrderedMatching other = from_word("AABCBDBCCDDA");
    CHECK(to_word(remove_letter_matching(other, 1)) == "ABBCCDDA");
    CHECK(to_word(remove_letter_matching(other, 2)) == "ABCDBCDA");
    CHECK(to_word(remove_letter_matching(other, 3)) == "AABCBDCD");
    CHECK(to_word(remove_letter_matching(from_word("AABB"), 1)) == "AB");
    CHECK(to_word(remove_letter_matching(from_word("ABAB"), 2)) == "AB");
    CHECK_THROWS_AS(remove_letter_matching(running, 4), Error);
    CHECK_THROWS_AS(remove_letter_matching(from_word("AB"), 1), Error);
  }

  TEST_CASE("remove letter agrees with string deletion") {
    for (const std::string& w : oracle::all_matchings(3, 3))
      for (int j = 1; j <= 3; ++j) {
        std::map<char, int> seen;
        std::string cut;
        for (char c : w)
          if (++seen[c] != j) cut += c;
        CHECK(to_word(remove_letter_matching(from_word(w), j)) == oracle::word_of(oracle::edges_of(cut)));
      }
  }
}

TEST_SUITE("hypergraph") {
  TEST_CASE("concatenation examples") {
    const std::vector<OrderedMatching> k{from_word("ABC"), from_word("AABBCC"), from_word("ABCCBA")};
    const auto placed = place_consecutively(k);
    const std::vector<Permutation> s1{parse_permutation("231"), parse_permutation("132")};
    CHECK(concatenate(placed, s1) == from_word("DEF FFDDEE DFEEFD"));
    const std::vector<OrderedMatching> k2{from_word("ABC"), from_word("AABBCC"), from_word("ABCCBA")};
    const std::vector<Permutation> s2{parse_permutation("312"), parse_permutation("321")};
    CHECK(concatenate(place_consecutively(k2), s2) == from_word("ABC BBCCAA CBAABC"));
  }

  TEST_CASE("concatenation of 1-matchings") {
    const std::vector<OrderedMatching> ab{from_word("AB"), from_word("AB")};
    const std::vector<Permutation> id{parse_permutation("12")};
    CHECK(to_word(concatenate(place_consecutively(ab), id)) == "ABAB");
  }

  TEST_CASE("concatenation errors") {
    const std::vector<OrderedMatching> uneven{from_word("AB"), from_word("ABC")};
    const std::vector<Permutation> id{parse_permutation("12")};
    CHECK_THROWS_AS(concatenate(place_consecutively(uneven), id), Error);
    const std::vector<OrderedMatching> overlapping{from_word("AB"), from_word("AB")};
    CHECK_THROWS_AS(concatenate(overlapping, id), Error);
    CHECK_THROWS_AS(parse_permutation("112"), Error);
  }

  TEST_CASE("fullfull clique verifies against its cube") {
    const OrderedMatching m = from_word("DEF FFDDEE DFEEFD");
    const Cube c(Pattern::parse("ABAABBABBA"), parse_partition("1;2;3,4"));
    const std::vector<std::size_t> all{0, 1, 2};
    CHECK(verify_clique(m, cube_set(c), all));
  }

  TEST_CASE("product") {
    const std::vector<OrderedMatching> ab{from_word("AB"), from_word("AB")};
    const OrderedHypergraph h = product(place_consecutively(ab));
    CHECK(h.edge_count() == 4);
    CHECK(h.to_json() == R"({"classes":[],"edges":[[1,3],[1,4],[2,3],[2,4]],"r":2,"vertices":4})");
    const std::vector<OrderedMatching> one{from_word("A"), from_word("A")};
    CHECK(product(place_consecutively(one)).edge_count() == 1);
  }

  TEST_CASE("product is the union of all concatenations") {
    const std::vector<OrderedMatching> k{from_word("ABC"), from_word("AABBCC"), from_word("ABCCBA")};
    const auto placed = place_consecutively(k);
    const OrderedHypergraph h = product(placed);
    CHECK(h.edge_count() == 27);
    std::set<std::vector<Vertex>> seen;
    Permutation a{0, 1, 2}, b{0, 1, 2};
    do {
      do {
        const std::vector<Permutation> s{a, b};
        for (const Edge& e : concatenate(placed, s).edges()) {
          CHECK(h.contains_edge(e));
          seen.insert(e);
        }
      } while (std::next_permutation(b.begin(), b.end()));
    } while (std::next_permutation(a.begin(), a.end()));
    CHECK(seen.size() == 27);
  }

  TEST_CASE("H_3 of ABBAABAB with {1,2};{3,4}") {
    const Cube c(Pattern::parse("ABBAABAB"), parse_partition("1,2;3,4"));
    const OrderedHypergraph h = build_hk(c, 3);
    CHECK(h.edge_count() == 9);
    CHECK(h.r() == 4);
    CHECK(h.vertex_count() == 12);
    CHECK(disjoint_pairs_in_cube(h, c));
    // isomorphic to H_3(AABBBAAB, {1};{2,3})
    const OrderedHypergraph h2 = build_hk(Cube(Pattern::parse("AABBBAAB"), parse_partition("1;2,3")), 3);
    CHECK(intersection_profile(h) == intersection_profile(h2));
  }

  TEST_CASE("H_k for t = 0 is the unique clique") {
    const Cube c(Pattern::parse("AABBAB"), parse_partition("1,2"));
    const OrderedHypergraph h = build_hk(c, 3);
    CHECK(h.edge_count() == 3);
    std::vector<Vertex> flat;
    for (std::size_t i = 0; i < 3; ++i) flat.insert(flat.end(), h.edge(i).begin(), h.edge(i).end());
    const OrderedMatching m = OrderedMatching::from_flat(3, flat);
    const std::vector<std::size_t> all{0, 1, 2};
    CHECK(verify_clique(m, PatternSet(3, {Pattern::parse("AABBAB")}), all));
  }

  TEST_CASE("H_3 of the 12-pattern matches the wave seed with parts 4,3,5") {
    const Cube c(Pattern::parse("ABBBAABAAAABBBBBAABAABAB"), parse_partition("1,3,5;2,8;4,6,7"));
    const OrderedHypergraph h = build_hk(c, 3);
    CHECK(h.edge_count() == 27);
    CHECK(disjoint_pairs_in_cube(h, c));
    std::string wave;
    for (int i = 0; i < 12; ++i) wave += "AB";
    const OrderedHypergraph h2 = build_hk(Cube(Pattern::parse(wave), parse_partition("1,2,3,4;5,6,7;8,9,10,11,12")), 3);
    CHECK(h2.edge_count() == 27);
    CHECK(intersection_profile(h) == intersection_profile(h2));
  }

  TEST_CASE("disjoint pairs of H_k lie in the cube (small cubes)") {
    const std::vector<std::pair<const char*, const char*>> cubes{
        {"ABBAABAB", "1,2;3,4"}, {"ABABAB", "1;2;3"}, {"AABBAB", "1;2"}, {"ABAABBABBA", "1;2;3,4"}, {"AAABBBABBA", "1;2,3"}, {"ABBAAB", "1,3;2"}};
    for (const auto& [w, part] : cubes) {
      const Cube c(Pattern::parse(w), parse_partition(part));
      for (int k = 1; k <= 4; ++k) {
        CAPTURE(w);
        CAPTURE(k);
        const OrderedHypergraph h = build_hk(c, k);
        std::size_t expect = 1;
        for (int j = 0; j <= c.t(); ++j) expect *= static_cast<std::size_t>(k);
        CHECK(h.edge_count() == expect);
        CHECK(disjoint_pairs_in_cube(h, c));
      }
    }
  }

  TEST_CASE("blow-up") {
    const OrderedHypergraph single(2, 2, {0, 1});
    const OrderedHypergraph b = blow_up(single, 2);
    CHECK(b.edge_count() == 4);
    CHECK(b.classes() == std::vector<int>{0, 0, 1, 1});
    CHECK_THROWS_AS(blow_up(single, 0), Error);
    const std::vector<int> cls{0, 0, 1, 1};
    CHECK_FALSE(is_scattered(from_word("AABB"), cls));
    CHECK(is_scattered(from_word("ABAB"), std::vector<int>{0, 1, 2, 3}));
  }

  TEST_CASE("a scattered pair of the blown-up H_3 forms ABBABABA") {
    const Cube c(Pattern::parse("ABBAABAB"), parse_partition("1,2;3,4"));
    const OrderedHypergraph b = blow_up(build_hk(c, 3), 2);
    bool found = false;
    for (std::size_t i = 0; i < b.edge_count() && !found; ++i)
      for (std::size_t j = i + 1; j < b.edge_count() && !found; ++j) {
        std::vector<int> a(b.edge(i).begin(), b.edge(i).end()), e(b.edge(j).begin(), b.edge(j).end());
        std::set<int> classes;
        for (int v : a) classes.insert(b.classes()[static_cast<std::size_t>(v)]);
        for (int v : e) classes.insert(b.classes()[static_cast<std::size_t>(v)]);
        if (classes.size() == 8 && oracle::pair_word(a, e) == "ABBABABA") found = true;
      }
    CHECK(found);
  }
}
