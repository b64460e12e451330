#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <random>

#include "omatch/matching.hpp"

namespace omatch {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x) noexcept;
// Per-task seed: splitmix64 chained over master, n and trial.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t trial) noexcept;

// mt19937_64 with a portable unbiased bounded draw (the standard
// distributions are implementation-defined, this is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform on {0, ..., bound-1}; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

BigInt count_matchings(int r, int n);
Rational edge_probability(int r, int n);

OrderedMatching sample_uniform(int r, int n, std::uint64_t seed);
OrderedMatching sample_uniform(int r, int n, Rng& rng);
// First `steps` edges of the online process; ids live in {0, ..., rn-1}.
OrderedMatching sample_online(int r, int n, std::uint64_t seed, int steps);
OrderedMatching sample_online(int r, int n, Rng& rng, int steps);

inline constexpr std::uint64_t enumeration_cap = 10'000'000;

// Visits every canonical matching once, in lexicographic order of words.
// Return false from the visitor to stop early.
void for_each_matching(int r, int n, const std::function<bool(const OrderedMatching&)>& visit);
std::vector<OrderedMatching> enumerate_matchings(int r, int n);

}  // namespace omatch
