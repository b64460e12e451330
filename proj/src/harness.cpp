#include "omatch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "omatch/error.hpp"
#include "omatch/hypergraph.hpp"
#include "omatch/pattern_set.hpp"
#include "omatch/sampling.hpp"

namespace omatch {

using nlohmann::json;

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "zvalue") return ExperimentKind::zvalue;
  if (name == "spanning") return ExperimentKind::spanning;
  if (name == "goodedge") return ExperimentKind::goodedge;
  if (name == "containment") return ExperimentKind::containment;
  if (name == "onlinecheck") return ExperimentKind::onlinecheck;
  fail(ErrorKind::invalid_config, "unknown experiment kind '" + std::string(name) + "'");
}

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::zvalue: return "zvalue";
    case ExperimentKind::spanning: return "spanning";
    case ExperimentKind::goodedge: return "goodedge";
    case ExperimentKind::containment: return "containment";
    case ExperimentKind::onlinecheck: return "onlinecheck";
  }
  return "?";
}

const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::exact: return "Exact";
    case RowStatus::lower_bound: return "LowerBound";
    case RowStatus::failed: return "Failed";
  }
  return "?";
}

RowStatus parse_row_status(std::string_view s) {
  if (s == "Exact") return RowStatus::exact;
  if (s == "LowerBound") return RowStatus::lower_bound;
  if (s == "Failed") return RowStatus::failed;
  fail(ErrorKind::invalid_config, "unknown row status '" + std::string(s) + "'");
}

std::vector<int> geometric_grid(int n_min, int n_max, double ratio) {
  if (n_min < 1 || n_max < n_min) fail(ErrorKind::invalid_config, "geometric grid needs 1 <= min <= max");
  if (!(ratio > 1.0)) fail(ErrorKind::invalid_config, "geometric grid ratio must exceed 1");
  std::vector<int> out;
  for (double x = n_min; x <= n_max * (1 + 1e-12); x *= ratio) {
    const int v = static_cast<int>(std::llround(x));
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

void ExperimentSpec::validate() const {
  auto bad = [](const std::string& msg) { fail(ErrorKind::invalid_config, msg); };
  if (r < 1 || r > Pattern::max_r) bad("r out of range");
  if (n_grid.empty()) bad("n_grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) bad("n_grid entries must be positive");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) bad("n_grid must be strictly increasing");
  }
  if (trials < 1) bad("trials must be at least 1");
  if (!(budget_s > 0)) bad("budget_s must be positive");
  if (threads < 0) bad("threads must be nonnegative");
  switch (kind) {
    case ExperimentKind::zvalue:
      if (patterns.empty()) bad("zvalue experiments need 'patterns'");
      break;
    case ExperimentKind::spanning:
      for (int b : blocks)
        if (b < 0) bad("block sizes must be nonnegative");
      if (!blocks.empty() && blocks.size() != static_cast<std::size_t>(r)) bad("need exactly r block sizes");
      break;
    case ExperimentKind::goodedge:
      if (cube_word.empty() || cube_partition.empty()) bad("goodedge experiments need 'cube'");
      if (k < 1 || ell < 1) bad("k and ell must be positive");
      break;
    case ExperimentKind::containment:
      if (h_word.empty()) bad("containment experiments need 'H'");
      break;
    case ExperimentKind::onlinecheck:
      if (steps < 2) bad("onlinecheck needs steps >= 2");
      break;
  }
}

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::invalid_config, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::invalid_config, "experiment config must be a JSON object");
  static const std::set<std::string> known{"kind",   "r",    "patterns", "n_grid", "trials", "seed", "solver", "budget_s", "threads",
                                           "blocks", "cube", "k",        "ell",    "H",      "steps", "timing"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) fail(ErrorKind::invalid_config, "unknown config key '" + key + "'");

  ExperimentSpec s;
  try {
    if (!j.contains("kind")) fail(ErrorKind::invalid_config, "config needs 'kind'");
    s.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    s.r = j.value("r", s.r);
    s.patterns = j.value("patterns", std::string{});
    if (!j.contains("n_grid")) fail(ErrorKind::invalid_config, "config needs 'n_grid'");
    const json& grid = j.at("n_grid");
    if (grid.is_array()) {
      s.n_grid = grid.get<std::vector<int>>();
    } else if (grid.is_object()) {
      s.n_grid = geometric_grid(grid.at("min").get<int>(), grid.at("max").get<int>(), grid.value("ratio", 2.0));
    } else {
      fail(ErrorKind::invalid_config, "n_grid must be a list or {min, max, ratio}");
    }
    s.trials = j.value("trials", s.trials);
    s.seed = j.value("seed", s.seed);
    if (j.contains("solver")) s.solver = parse_solver(j.at("solver").get<std::string>());
    s.budget_s = j.value("budget_s", s.budget_s);
    s.threads = j.value("threads", s.threads);
    s.blocks = j.value("blocks", std::vector<int>{});
    if (j.contains("cube")) {
      s.cube_word = j.at("cube").at("word").get<std::string>();
      s.cube_partition = j.at("cube").at("partition").get<std::string>();
    }
    s.k = j.value("k", s.k);
    s.ell = j.value("ell", s.ell);
    s.h_word = j.value("H", std::string{});
    s.steps = j.value("steps", s.steps);
    s.timing = j.value("timing", s.timing);
  } catch (const json::exception& e) {
    fail(ErrorKind::invalid_config, std::string("bad config value: ") + e.what());
  }
  s.validate();
  return s;
}

std::size_t spanning_count(const OrderedMatching& m, const std::vector<int>& blocks) {
  const int r = m.r();
  if (blocks.size() != static_cast<std::size_t>(r)) fail(ErrorKind::size_mismatch, "need exactly r block sizes");
  std::vector<long long> ends(blocks.size());
  long long total = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] < 0) fail(ErrorKind::range, "block sizes must be nonnegative");
    ends[i] = total += blocks[i];
  }
  if (total != static_cast<long long>(m.flat().size())) fail(ErrorKind::size_mismatch, "block sizes must sum to rn");
  std::size_t count = 0;
  for (std::size_t e = 0; e < m.size(); ++e) {
    auto edge = m.edge(e);
    bool ok = true;
    for (std::size_t i = 0; i < edge.size() && ok; ++i) ok = edge[i] < ends[i] && (i == 0 || edge[i] >= ends[i - 1]);
    if (ok) ++count;
  }
  return count;
}

namespace {

// Immutable per-experiment context shared by the worker threads.
struct Context {
  const ExperimentSpec& spec;
  std::optional<PatternSet> ps;
  std::optional<Cube> cube;
  std::optional<OrderedHypergraph> blown;
  std::optional<OrderedMatching> h;
  std::vector<Pattern> all_patterns;
};

void run_row(const Context& ctx, ResultRecord& row) {
  const ExperimentSpec& s = ctx.spec;
  switch (s.kind) {
    case ExperimentKind::zvalue: {
      const OrderedMatching m = sample_uniform(s.r, row.n, row.seed);
      const SolveResult res = max_clique(m, *ctx.ps, s.solver, s.budget_s);
      row.value = static_cast<double>(res.size);
      row.status = res.status == SolveStatus::exact ? RowStatus::exact : RowStatus::lower_bound;
      break;
    }
    case ExperimentKind::spanning: {
      const std::vector<int> b = s.blocks.empty() ? std::vector<int>(static_cast<std::size_t>(s.r), row.n) : s.blocks;
      row.value = static_cast<double>(spanning_count(sample_uniform(s.r, row.n, row.seed), b));
      break;
    }
    case ExperimentKind::goodedge: {
      const OrderedMatching m = sample_uniform(s.r, row.n, row.seed);
      const GoodEdgeCensus g = good_edge_census(m, *ctx.blown, *ctx.cube, s.k, s.ell);
      row.value = static_cast<double>(g.scattered);
      row.status = g.exact ? RowStatus::exact : RowStatus::lower_bound;
      row.extra = {{"good", std::to_string(g.good)},
                   {"nonseparated", std::to_string(g.nonseparated)},
                   {"deletion_bound", std::to_string(g.deletion_bound)}};
      break;
    }
    case ExperimentKind::containment: {
      const OrderedMatching m = sample_uniform(s.r, row.n, row.seed);
      row.value = contains_copy(m, *ctx.h) ? 1.0 : 0.0;
      break;
    }
    case ExperimentKind::onlinecheck: {
      if (s.steps > row.n) fail(ErrorKind::range, "steps exceeds n");
      const OrderedMatching m = sample_online(s.r, row.n, row.seed, s.steps);
      const Pattern p = pattern_of_pair(m.edge(0), m.edge(1));
      const auto it = std::lower_bound(ctx.all_patterns.begin(), ctx.all_patterns.end(), p);
      row.value = static_cast<double>(it - ctx.all_patterns.begin());
      row.extra = {{"pattern", p.word()}};
      break;
    }
  }
}

}  // namespace

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  Context ctx{spec, {}, {}, {}, {}, {}};
  switch (spec.kind) {
    case ExperimentKind::zvalue: ctx.ps = parse_pattern_set(spec.patterns, spec.r); break;
    case ExperimentKind::goodedge:
      ctx.cube = Cube(Pattern::parse(spec.cube_word), parse_partition(spec.cube_partition));
      if (ctx.cube->r() != spec.r) fail(ErrorKind::size_mismatch, "cube word does not match r");
      ctx.blown = blow_up(build_hk(*ctx.cube, spec.k), spec.ell);
      break;
    case ExperimentKind::containment:
      ctx.h = from_word(spec.h_word);
      if (ctx.h->r() != spec.r) fail(ErrorKind::size_mismatch, "H does not match r");
      break;
    case ExperimentKind::onlinecheck:
      if (spec.r > 8) fail(ErrorKind::range, "onlinecheck supports r <= 8");
      ctx.all_patterns = enumerate_patterns(spec.r);
      break;
    case ExperimentKind::spanning: break;
  }

  std::vector<ResultRecord> rows;
  for (int n : spec.n_grid)
    for (int t = 0; t < spec.trials; ++t) {
      ResultRecord row;
      row.n = n;
      row.trial = t;
      row.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t));
      rows.push_back(std::move(row));
    }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      ResultRecord& row = rows[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        run_row(ctx, row);
      } catch (const std::exception& e) {
        row.status = RowStatus::failed;
        row.value = 0;
        row.extra.clear();
        row.error = e.what();
      }
      if (spec.timing) row.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  std::size_t threads = spec.threads > 0 ? static_cast<std::size_t>(spec.threads) : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, rows.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return rows;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class T>
T parse_field(const std::string& text, const char* what, std::size_t line) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    fail(ErrorKind::invalid_config, "line " + std::to_string(line) + ": bad " + what + " '" + text + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRecord>& rows) {
  std::vector<std::string> extras;
  for (const ResultRecord& r : rows)
    if (!r.extra.empty()) {
      for (const auto& [name, value] : r.extra) extras.push_back(name);
      break;
    }
  out << "n,trial,seed,value,status,elapsed_s";
  for (const std::string& e : extras) out << ',' << e;
  out << '\n';
  for (const ResultRecord& r : rows) {
    out << r.n << ',' << r.trial << ',' << r.seed << ',';
    if (r.status != RowStatus::failed) out << format_number(r.value);
    out << ',' << to_string(r.status) << ',';
    if (r.elapsed) out << format_number(*r.elapsed);
    for (const std::string& name : extras) {
      out << ',';
      for (const auto& [key, value] : r.extra)
        if (key == name) out << value;
    }
    out << '\n';
  }
}

std::vector<ResultRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::invalid_config, "empty results file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* need : {"n", "trial", "seed", "value", "status"})
    if (!col.count(need)) fail(ErrorKind::invalid_config, std::string("results file lacks column '") + need + "'");
  std::vector<ResultRecord> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) fail(ErrorKind::invalid_config, "line " + std::to_string(lineno) + ": wrong number of fields");
    ResultRecord r;
    r.n = parse_field<int>(cells[col["n"]], "n", lineno);
    r.trial = parse_field<int>(cells[col["trial"]], "trial", lineno);
    r.seed = parse_field<std::uint64_t>(cells[col["seed"]], "seed", lineno);
    r.status = parse_row_status(cells[col["status"]]);
    if (r.status != RowStatus::failed) r.value = parse_field<double>(cells[col["value"]], "value", lineno);
    if (col.count("elapsed_s") && !cells[col["elapsed_s"]].empty())
      r.elapsed = parse_field<double>(cells[col["elapsed_s"]], "elapsed_s", lineno);
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string& h = header[i];
      if (h != "n" && h != "trial" && h != "seed" && h != "value" && h != "status" && h != "elapsed_s") r.extra.emplace_back(h, cells[i]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) fail(ErrorKind::insufficient_data, "quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

namespace {

std::map<int, std::vector<double>> exact_by_n(const std::vector<ResultRecord>& rows, std::size_t* excluded) {
  std::map<int, std::vector<double>> by_n;
  for (const ResultRecord& r : rows) {
    if (r.status == RowStatus::exact) {
      by_n[r.n].push_back(r.value);
    } else if (excluded) {
      ++*excluded;
    }
  }
  return by_n;
}

}  // namespace

FitReport fit_exponent(const std::vector<ResultRecord>& rows) {
  FitReport f;
  const auto by_n = exact_by_n(rows, &f.excluded);
  std::vector<double> xs, ys;
  for (const auto& [n, values] : by_n) {
    const double med = median(values);
    if (med <= 0) continue;  // log undefined
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(med));
    if (f.n_min == 0) f.n_min = n;
    f.n_max = n;
  }
  if (xs.size() < 3) fail(ErrorKind::insufficient_data, "exponent fit needs Exact medians at three or more distinct n");
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double res = ys[i] - (f.intercept + f.slope * xs[i]);
    ssr += res * res;
  }
  f.stderr_slope = std::sqrt(ssr / (m - 2) / sxx);
  f.points = xs.size();
  return f;
}

std::string fit_to_json(const FitReport& f) {
  json j{{"slope", f.slope},   {"intercept", f.intercept}, {"stderr", f.stderr_slope},
         {"n_min", f.n_min},   {"n_max", f.n_max},         {"points", f.points},
         {"excluded", f.excluded}};
  return j.dump(2);
}

ConcentrationReport concentration_stats(const std::vector<ResultRecord>& rows) {
  const auto by_n = exact_by_n(rows, nullptr);
  if (by_n.empty()) fail(ErrorKind::insufficient_data, "no Exact rows");
  ConcentrationReport rep;
  for (const auto& [n, values] : by_n) {
    if (values.size() < 5) fail(ErrorKind::insufficient_data, "n=" + std::to_string(n) + " has fewer than 5 Exact trials");
    Spread s;
    s.n = n;
    s.median = median(values);
    s.iqr = quantile(values, 0.75) - quantile(values, 0.25);
    s.relative = s.median != 0 ? s.iqr / s.median : 0;
    if (!rep.per_n.empty() && s.relative > rep.per_n.back().relative + 1e-12) rep.shrinking = false;
    rep.per_n.push_back(s);
  }
  return rep;
}

SpanningStats spanning_census(int r, int n, const std::vector<int>& blocks, int trials, std::uint64_t seed) {
  if (r < 1 || n < 1 || trials < 1) fail(ErrorKind::range, "need r, n, trials >= 1");
  if (blocks.size() != static_cast<std::size_t>(r)) fail(ErrorKind::size_mismatch, "need exactly r block sizes");
  long long total = 0;
  BigInt prod = 1;
  for (int b : blocks) {
    if (b < 0) fail(ErrorKind::range, "block sizes must be nonnegative");
    total += b;
    prod *= b;
  }
  if (total != static_cast<long long>(r) * n) fail(ErrorKind::size_mismatch, "block sizes must sum to rn");
  SpanningStats s;
  s.trials = trials;
  s.expected = static_cast<double>(Rational(prod) * edge_probability(r, n));
  double sum = 0, sumsq = 0;
  for (int t = 0; t < trials; ++t) {
    const double x = static_cast<double>(
        spanning_count(sample_uniform(r, n, derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t))), blocks));
    sum += x;
    sumsq += x * x;
  }
  s.mean = sum / trials;
  s.variance = trials > 1 ? (sumsq - sum * s.mean) / (trials - 1) : 0;
  return s;
}

double containment_frequency(const OrderedMatching& h, int r, int n, int trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorKind::range, "trials must be at least 1");
  if (h.r() != r) fail(ErrorKind::size_mismatch, "H does not match r");
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    const OrderedMatching m = sample_uniform(r, n, derive_seed(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)));
    if (contains_copy(m, h)) ++hits;
  }
  return static_cast<double>(hits) / trials;
}

}  // namespace omatch
