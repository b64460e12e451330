#include <doctest.h>

#include <cmath>
#include <sstream>

#include "omatch/error.hpp"
#include "omatch/harness.hpp"
#include "omatch/sampling.hpp"

using namespace omatch;

namespace {

std::vector<ResultRecord> synthetic(const std::vector<int>& ns, const std::function<double(int)>& f, int trials = 1) {
  std::vector<ResultRecord> rows;
  for (int n : ns)
    for (int t = 0; t < trials; ++t) {
      ResultRecord r;
      r.n = n;
      r.trial = t;
      r.value = f(n);
      rows.push_back(r);
    }
  return rows;
}

std::string csv_of(const std::vector<ResultRecord>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("exponent fits on exact power laws") {
    const std::vector<int> ns{100, 200, 400, 800, 1600};
    const FitReport half = fit_exponent(synthetic(ns, [](int n) { return 4 * std::sqrt(n); }));
    CHECK(std::abs(half.slope - 0.5) < 1e-9);
    CHECK(std::abs(half.intercept - std::log(4.0)) < 1e-9);
    CHECK(half.stderr_slope < 1e-9);
    CHECK(half.n_min == 100);
    CHECK(half.n_max == 1600);
    CHECK(half.points == 5);
    CHECK(std::abs(fit_exponent(synthetic(ns, [](int n) { return 7.0 * n; })).slope - 1.0) < 1e-9);
  }

  TEST_CASE("fits use exact medians only") {
    auto rows = synthetic({10, 20, 40, 80}, [](int n) { return static_cast<double>(n); }, 3);
    rows[0].value = 1e9;  // one outlier per n does not move the median
    rows[3].value = 1e9;
    ResultRecord lb;
    lb.n = 160;
    lb.value = 1;
    lb.status = RowStatus::lower_bound;
    rows.push_back(lb);
    const FitReport f = fit_exponent(rows);
    CHECK(std::abs(f.slope - 1.0) < 1e-9);
    CHECK(f.excluded == 1);
    CHECK(f.n_max == 80);
  }

  TEST_CASE("fits need three points") {
    CHECK(kind_of([] { fit_exponent(synthetic({10, 20}, [](int n) { return n; })); }) == ErrorKind::insufficient_data);
    CHECK(kind_of([] { fit_exponent({}); }) == ErrorKind::insufficient_data);
    CHECK(kind_of([] { fit_exponent(synthetic({10, 20, 40}, [](int) { return 0.0; })); }) == ErrorKind::insufficient_data);
  }

  TEST_CASE("fit sidecar") {
    const FitReport f = fit_exponent(synthetic({10, 100, 1000}, [](int n) { return static_cast<double>(n); }));
    const std::string j = fit_to_json(f);
    for (const char* key : {"\"slope\"", "\"intercept\"", "\"stderr\"", "\"n_min\"", "\"n_max\"", "\"points\"", "\"excluded\""})
      CHECK(j.find(key) != std::string::npos);
  }

  TEST_CASE("median and quantile") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK(quantile({1, 2, 3, 4, 5}, 0.25) == 2);
    CHECK(quantile({1, 2}, 0.5) == 1.5);
    CHECK_THROWS_AS(median({}), Error);
  }

  TEST_CASE("concentration") {
    const ConcentrationReport flat = concentration_stats(synthetic({10, 20}, [](int) { return 5.0; }, 5));
    REQUIRE(flat.per_n.size() == 2);
    for (const Spread& s : flat.per_n) CHECK(s.relative == 0);
    CHECK(flat.shrinking);
    CHECK(kind_of([] { concentration_stats(synthetic({10, 20}, [](int) { return 1.0; }, 1)); }) == ErrorKind::insufficient_data);
    auto rows = synthetic({10, 20}, [](int) { return 10.0; }, 5);
    for (std::size_t i = 5; i < 10; ++i) rows[i].value = static_cast<double>(i);
    CHECK_FALSE(concentration_stats(rows).shrinking);
  }

  TEST_CASE("experiment config parsing and validation") {
    const ExperimentSpec s = parse_experiment_spec(R"({"kind":"zvalue","r":2,"patterns":"partite","n_grid":{"min":100,"max":800,"ratio":2},"trials":3,"seed":9})");
    CHECK(s.n_grid == std::vector<int>{100, 200, 400, 800});
    CHECK(s.trials == 3);
    CHECK(geometric_grid(1000, 32000, 2) == std::vector<int>{1000, 2000, 4000, 8000, 16000, 32000});
    CHECK(geometric_grid(10, 20, 1.2) == std::vector<int>{10, 12, 14, 17});
    CHECK(kind_of([] { parse_experiment_spec(R"({"kind":"zvalue","n_grid":[3],"bogus":1})"); }) == ErrorKind::invalid_config);
    CHECK(kind_of([] { parse_experiment_spec(R"({"kind":"zvalue","patterns":"partite","n_grid":[5,3]})"); }) == ErrorKind::invalid_config);
    CHECK(kind_of([] { parse_experiment_spec(R"({"kind":"zvalue","patterns":"partite","n_grid":[5],"trials":0})"); }) == ErrorKind::invalid_config);
    CHECK(kind_of([] { parse_experiment_spec(R"({"kind":"zvalue","patterns":"partite","n_grid":[5],"budget_s":0})"); }) == ErrorKind::invalid_config);
    CHECK(kind_of([] { parse_experiment_spec("{not json"); }) == ErrorKind::invalid_config);
  }

  TEST_CASE("runs are deterministic across thread counts") {
    ExperimentSpec s = parse_experiment_spec(R"({"kind":"zvalue","r":3,"patterns":"list:ABABAB,ABABBA","n_grid":[40,80],"trials":4,"seed":11})");
    s.threads = 1;
    const std::string one = csv_of(run_experiment(s));
    s.threads = 3;
    const std::string three = csv_of(run_experiment(s));
    CHECK(one == three);
    CHECK(one.rfind("n,trial,seed,value,status,elapsed_s\n", 0) == 0);
    const auto rows = run_experiment(s);
    REQUIRE(rows.size() == 8);
    CHECK(rows[5].n == 80);
    CHECK(rows[5].trial == 1);
    CHECK(rows[5].seed == derive_seed(11, 80, 1));
    CHECK(rows[5].value == max_clique(sample_uniform(3, 80, rows[5].seed), parse_pattern_set("list:ABABAB,ABABBA")).size);
  }

  TEST_CASE("failed rows do not stop a run") {
    ExperimentSpec s = parse_experiment_spec(R"({"kind":"zvalue","r":2,"patterns":"list:AABB","solver":"partition","n_grid":[5],"trials":2})");
    const auto rows = run_experiment(s);
    REQUIRE(rows.size() == 2);
    for (const ResultRecord& r : rows) {
      CHECK(r.status == RowStatus::failed);
      CHECK_FALSE(r.error.empty());
    }
  }

  TEST_CASE("csv round trip") {
    ExperimentSpec s = parse_experiment_spec(
        R"({"kind":"goodedge","r":4,"cube":{"word":"ABBAABAB","partition":"1,2;3,4"},"k":2,"ell":2,"n_grid":[30,40],"trials":2,"seed":3})");
    const auto rows = run_experiment(s);
    const std::string text = csv_of(rows);
    CHECK(text.rfind("n,trial,seed,value,status,elapsed_s,good,nonseparated,deletion_bound\n", 0) == 0);
    std::istringstream in(text);
    CHECK(csv_of(read_csv(in)) == text);
    std::istringstream bad("n,trial\n1,2\n");
    CHECK_THROWS_AS(read_csv(bad), Error);
  }

  TEST_CASE("spanning counts and census") {
    CHECK(spanning_count(from_word("ABCABC"), {3, 3}) == 3);
    CHECK(spanning_count(from_word("AABBCC"), {3, 3}) == 1);
    CHECK(spanning_count(from_word("AABBCC"), {6, 0}) == 0);
    CHECK_THROWS_AS(spanning_census(2, 4, {3, 3}, 10, 1), Error);
    const SpanningStats zero = spanning_census(3, 10, {0, 15, 15}, 50, 1);
    CHECK(zero.mean == 0);
    CHECK(zero.expected == 0);
    const int n = 30;
    const SpanningStats eq = spanning_census(3, n, {n, n, n}, 4000, 5);
    CHECK(eq.expected == doctest::Approx(static_cast<double>(n) * n * n / (89.0 * 88 / 2)));
    CHECK(std::abs(eq.mean - eq.expected) <= 4 * std::sqrt(eq.variance / eq.trials));
    const SpanningStats skew = spanning_census(3, n, {10, 30, 50}, 4000, 6);
    CHECK(std::abs(skew.mean - skew.expected) <= 4 * std::sqrt(skew.variance / skew.trials));
  }

  TEST_CASE("containment frequency") {
    CHECK(containment_frequency(from_word("AA"), 2, 20, 50, 1) == 1.0);
    CHECK(containment_frequency(from_word("ABAB"), 2, 50, 200, 2) >= 0.99);
    // H of full size: only the matching itself contains it
    const double f = containment_frequency(from_word("ABAB"), 2, 2, 30000, 3);
    CHECK(std::abs(f - 1.0 / 3) <= 4 * std::sqrt(2.0 / 9 / 30000));
  }

  TEST_CASE("online check rows") {
    const auto rows = run_experiment(parse_experiment_spec(R"({"kind":"onlinecheck","r":2,"n_grid":[10],"trials":30,"seed":4})"));
    REQUIRE(rows.size() == 30);
    for (const ResultRecord& r : rows) {
      REQUIRE(r.extra.size() == 1);
      CHECK(r.extra[0].first == "pattern");
      CHECK((r.extra[0].second == "AABB" || r.extra[0].second == "ABAB" || r.extra[0].second == "ABBA"));
    }
  }
}
