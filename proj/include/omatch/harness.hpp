#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omatch/clique.hpp"
#include "omatch/matching.hpp"

namespace omatch {

enum class ExperimentKind { zvalue, spanning, goodedge, containment, onlinecheck };

ExperimentKind parse_experiment_kind(std::string_view name);
const char* to_string(ExperimentKind k);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::zvalue;
  int r = 2;
  std::string patterns;  // pattern-set spec, zvalue only
  std::vector<int> n_grid;
  int trials = 1;
  std::uint64_t seed = 1;
  SolverKind solver = SolverKind::automatic;
  double budget_s = 60.0;
  int threads = 0;              // 0: one per hardware thread
  std::vector<int> blocks;      // spanning: sizes summing to r*n; empty means n each
  std::string cube_word;        // goodedge
  std::string cube_partition;   // goodedge
  int k = 1;                    // goodedge
  int ell = 1;                  // goodedge
  std::string h_word;           // containment
  int steps = 2;                // onlinecheck
  bool timing = false;          // write elapsed_s (makes output nondeterministic)

  // Throws InvalidConfig on a violated invariant.
  void validate() const;
};

ExperimentSpec parse_experiment_spec(const std::string& json_text);

// Geometric grid n_min, n_min*ratio, ... up to n_max (rounded, deduplicated).
std::vector<int> geometric_grid(int n_min, int n_max, double ratio);

enum class RowStatus { exact, lower_bound, failed };
const char* to_string(RowStatus s);
RowStatus parse_row_status(std::string_view s);

struct ResultRecord {
  int n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double value = 0;
  RowStatus status = RowStatus::exact;
  std::optional<double> elapsed;
  std::vector<std::pair<std::string, std::string>> extra;  // kind-specific columns
  std::string error;                                       // failed rows only
};

// Rows come back sorted by (n, trial) whatever the thread count.
std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec);

void write_csv(std::ostream& out, const std::vector<ResultRecord>& rows);
std::vector<ResultRecord> read_csv(std::istream& in);

struct FitReport {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
  int n_min = 0;
  int n_max = 0;
  std::size_t points = 0;    // distinct n used
  std::size_t excluded = 0;  // rows dropped for not being Exact
};

// OLS of log(median value) on log n over Exact rows; needs three distinct n.
FitReport fit_exponent(const std::vector<ResultRecord>& rows);
std::string fit_to_json(const FitReport& f);

struct Spread {
  int n = 0;
  double median = 0;
  double iqr = 0;
  double relative = 0;  // iqr / median, 0 when the median is 0
};

struct ConcentrationReport {
  std::vector<Spread> per_n;
  bool shrinking = true;  // relative spread non-increasing in n
};

// Needs at least five Exact trials for every n present.
ConcentrationReport concentration_stats(const std::vector<ResultRecord>& rows);

double median(std::vector<double> v);
// Linear-interpolation quantile of a non-empty sample.
double quantile(std::vector<double> v, double q);

// Number of edges of m with exactly one vertex in each consecutive block.
std::size_t spanning_count(const OrderedMatching& m, const std::vector<int>& blocks);

struct SpanningStats {
  double mean = 0;
  double variance = 0;
  double expected = 0;  // prod(b_i) / C(rn-1, r-1)
  int trials = 0;
};

SpanningStats spanning_census(int r, int n, const std::vector<int>& blocks, int trials, std::uint64_t seed);

double containment_frequency(const OrderedMatching& h, int r, int n, int trials, std::uint64_t seed);

}  // namespace omatch
