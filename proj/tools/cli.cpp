#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "omatch/clique.hpp"
#include "omatch/error.hpp"
#include "omatch/harness.hpp"
#include "omatch/reconstruction.hpp"

namespace omatch {

namespace {

using nlohmann::json;

enum class Format { text, json, csv };

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::invalid_config, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_words(std::ostream& out, Format f, const std::vector<Pattern>& ps) {
  if (f == Format::json) {
    json j = json::array();
    for (const Pattern& p : ps) j.push_back(p.word());
    out << j.dump() << '\n';
    return;
  }
  if (f == Format::csv) out << "word\n";
  for (const Pattern& p : ps) out << p.word() << '\n';
}

std::string join_one_based(const std::vector<std::size_t>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i] + 1);
  }
  return s;
}

// Shared options for commands that take a matching: a word, a file, or a
// sample drawn from a seed.
struct MatchingSource {
  std::string word, in;
  int r = 0, n = 0;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--word", word, "matching as a word");
    cmd->add_option("--in", in, "matching file ('-' for stdin)");
    cmd->add_option("--r", r, "uniformity");
    cmd->add_option("--n", n, "number of edges for a sampled matching");
    cmd->add_option("--seed", seed, "seed for a sampled matching");
  }

  OrderedMatching get() const {
    const int given = !word.empty() + !in.empty() + (n > 0);
    if (given != 1) throw CLI::ValidationError("give exactly one of --word, --in, or --n with --seed");
    if (!word.empty()) return from_word(word);
    if (!in.empty()) {
      std::istringstream s(read_file(in));
      return read_matching(s);
    }
    if (!seed) throw CLI::ValidationError("--seed is required to sample a matching");
    if (r < 1) throw CLI::ValidationError("--r is required to sample a matching");
    return sample_uniform(r, n, *seed);
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern cliques in random ordered matchings"};
  app.name("omatch");
  app.require_subcommand(1);
  app.fallthrough();
  Format format = Format::text;
  const std::map<std::string, Format> formats{{"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};
  app.add_option("--format", format, "output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  std::function<void()> action;

  // patterns -----------------------------------------------------------
  auto* patterns = app.add_subcommand("patterns", "enumerate and inspect patterns");
  patterns->require_subcommand(1);
  int p_r = 0;
  std::string p_class = "all", p_word, p_partition;
  auto* p_list = patterns->add_subcommand("list", "list r-patterns of a class");
  p_list->add_option("--r", p_r, "uniformity")->required();
  p_list->add_option("--class", p_class, "all|collectable|partite|dyck|noncollectable");
  p_list->callback([&] { action = [&] { print_words(out, format, enumerate_patterns(p_r, parse_pattern_class(p_class))); }; });

  auto* p_classify = patterns->add_subcommand("classify", "report structural facts about a pattern");
  p_classify->add_option("--word", p_word, "pattern word")->required();
  p_classify->callback([&] {
    action = [&] {
      const Pattern p = Pattern::parse(p_word);
      const bool coll = is_collectable(p);
      const std::string comp = coll ? to_string(composition(p)) : "";
      if (format == Format::json) {
        json j{{"word", p.word()}, {"collectable", coll}, {"partite", is_partite(p)}, {"dyck", is_dyck(p)}};
        j["composition"] = coll ? json(comp) : json(nullptr);
        out << j.dump() << '\n';
      } else if (format == Format::csv) {
        out << "word,collectable,composition,partite,dyck\n"
            << p.word() << ',' << coll << ",\"" << comp << "\"," << is_partite(p) << ',' << is_dyck(p) << '\n';
      } else {
        out << "word: " << p.word() << '\n'
            << "collectable: " << (coll ? "yes" : "no") << '\n'
            << "composition: " << (coll ? comp : "-") << '\n'
            << "partite: " << (is_partite(p) ? "yes" : "no") << '\n'
            << "dyck: " << (is_dyck(p) ? "yes" : "no") << '\n';
      }
    };
  });

  auto* p_cube = patterns->add_subcommand("cube", "members of a pattern cube");
  p_cube->add_option("--word", p_word, "collectable base pattern")->required();
  p_cube->add_option("--partition", p_partition, "block partition, T0 first, e.g. \"1,2;3,4\"")->required();
  p_cube->callback([&] { action = [&] { print_words(out, format, cube_expand(Cube(Pattern::parse(p_word), parse_partition(p_partition)))); }; });

  auto* p_harm = patterns->add_subcommand("harmonic", "patterns with the same composition");
  p_harm->add_option("--word", p_word, "collectable pattern")->required();
  p_harm->callback([&] { action = [&] { print_words(out, format, harmonic_family(Pattern::parse(p_word))); }; });

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "sample a random ordered matching");
  int g_r = 0, g_n = 0, g_steps = 0;
  std::uint64_t g_seed = 0;
  std::string g_model = "uniform";
  gen->add_option("--r", g_r, "uniformity")->required();
  gen->add_option("--n", g_n, "number of edges")->required();
  gen->add_option("--seed", g_seed, "seed")->required();
  gen->add_option("--model", g_model, "uniform|online")->check(CLI::IsMember({"uniform", "online"}));
  gen->add_option("--steps", g_steps, "edges to generate (online model; default n)");
  gen->callback([&] {
    action = [&] {
      const bool online = g_model == "online";
      if (!online && g_steps) fail(ErrorKind::invalid_config, "--steps applies to the online model only");
      const OrderedMatching m = online ? sample_online(g_r, g_n, g_seed, g_steps ? g_steps : g_n) : sample_uniform(g_r, g_n, g_seed);
      if (format == Format::json) {
        out << matching_to_json(m) << '\n';
      } else {
        // A partial online matching keeps its global vertex ids.
        write_matching(out, m, m.is_canonical());
      }
    };
  });

  // trace / reconstruct ------------------------------------------------
  auto* trace = app.add_subcommand("trace", "trace of a matching");
  MatchingSource t_src;
  trace->add_option("--word", t_src.word, "matching as a word");
  trace->add_option("--in", t_src.in, "matching file ('-' for stdin)");
  trace->callback([&] {
    action = [&] {
      const std::string t = trace_of(t_src.get()).str();
      if (format == Format::json) {
        out << json{{"trace", t}}.dump() << '\n';
      } else {
        if (format == Format::csv) out << "trace\n";
        out << t << '\n';
      }
    };
  });

  auto* recon = app.add_subcommand("reconstruct", "decode a trace with a hand rule");
  std::string rc_trace, rc_rule = "left";
  recon->add_option("--trace", rc_trace, "trace digits")->required();
  recon->add_option("--rule", rc_rule, "left|right|lr|rl|L/R string");
  recon->callback([&] {
    action = [&] {
      const std::string w = to_word(reconstruct(Trace::parse(rc_trace), Rule::parse(rc_rule)));
      if (format == Format::json) {
        out << json{{"word", w}, {"rule", rc_rule}}.dump() << '\n';
      } else {
        if (format == Format::csv) out << "word\n";
        out << w << '\n';
      }
    };
  });

  // clique -------------------------------------------------------------
  auto* clique = app.add_subcommand("clique", "pattern cliques");
  clique->require_subcommand(1);
  std::string c_patterns, c_solver = "auto";
  int c_k = 0, c_r = 0, c_cap = 24;
  double c_budget = 60;
  MatchingSource c_src;
  auto* c_solve = clique->add_subcommand("solve", "largest clique in a matching");
  c_src.attach(c_solve);
  c_solve->add_option("--patterns", c_patterns, "pattern-set spec")->required();
  c_solve->add_option("--solver", c_solver, "auto|bb|chain|partition");
  c_solve->add_option("--budget", c_budget, "seconds for branch and bound")->check(CLI::PositiveNumber);
  c_solve->callback([&] {
    action = [&] {
      const OrderedMatching m = c_src.get();
      const PatternSet ps = parse_pattern_set(c_patterns, m.r());
      const SolveResult res = max_clique(m, ps, parse_solver(c_solver), c_budget);
      if (format == Format::json) {
        json w = json::array();
        for (std::size_t i : res.witness) w.push_back(i + 1);
        out << json{{"size", res.size}, {"status", to_string(res.status)}, {"solver", res.solver}, {"witness", w}}.dump() << '\n';
      } else {
        if (format == Format::csv) out << "size,status,witness\n";
        out << res.size << ',' << to_string(res.status) << ',' << join_one_based(res.witness, ' ') << '\n';
      }
    };
  });

  auto* c_count = clique->add_subcommand("count", "number of cliques of size k on rk vertices");
  c_count->add_option("--r", c_r, "uniformity");
  c_count->add_option("--patterns", c_patterns, "pattern-set spec")->required();
  c_count->add_option("--k", c_k, "clique size")->required();
  c_count->callback([&] {
    action = [&] {
      const std::string v = count_cliques(parse_pattern_set(c_patterns, c_r), c_k).str();
      if (format == Format::json) {
        out << json{{"k", c_k}, {"count", v}}.dump() << '\n';
      } else {
        if (format == Format::csv) out << "k,count\n" << c_k << ',';
        out << v << '\n';
      }
    };
  });

  auto* c_global = clique->add_subcommand("global", "largest clique size over all matchings (non-collectable families)");
  c_global->add_option("--r", c_r, "uniformity");
  c_global->add_option("--patterns", c_patterns, "pattern-set spec")->required();
  c_global->add_option("--cap", c_cap, "largest r*k to search");
  c_global->callback([&] {
    action = [&] {
      const int v = max_clique_global(parse_pattern_set(c_patterns, c_r), c_cap);
      if (format == Format::json) {
        out << json{{"max", v}}.dump() << '\n';
      } else {
        if (format == Format::csv) out << "max\n";
        out << v << '\n';
      }
    };
  });

  // recon-check --------------------------------------------------------
  auto* rcheck = app.add_subcommand("recon-check", "are cliques of size k determined by their traces?");
  int rk_r = 0, rk_k = 0;
  std::string rk_patterns, rk_rule;
  rcheck->add_option("--r", rk_r, "uniformity");
  rcheck->add_option("--patterns", rk_patterns, "pattern-set spec")->required();
  rcheck->add_option("--k", rk_k, "clique size")->required();
  rcheck->add_option("--rule", rk_rule, "also check that this hand rule inverts the trace map");
  rcheck->callback([&] {
    action = [&] {
      const PatternSet ps = parse_pattern_set(rk_patterns, rk_r);
      const Verdict v = check_reconstructible(ps, rk_k);
      std::optional<bool> rule_ok;
      if (!rk_rule.empty()) rule_ok = rule_fixpoint_check(ps, Rule::parse(rk_rule), rk_k);
      if (format == Format::json) {
        json j{{"reconstructible", v.reconstructible}, {"cliques", v.cliques}};
        if (v.counterexample) {
          j["counterexample"] = {v.counterexample->first, v.counterexample->second};
          j["trace"] = v.shared_trace;
        }
        if (rule_ok) j["rule_inverts"] = *rule_ok;
        out << j.dump() << '\n';
      } else if (format == Format::csv) {
        out << "reconstructible,cliques,first,second,trace\n" << v.reconstructible << ',' << v.cliques << ',';
        if (v.counterexample) out << v.counterexample->first << ',' << v.counterexample->second << ',' << v.shared_trace;
        else out << ",,";
        out << '\n';
      } else {
        out << (v.reconstructible ? "reconstructible" : "not reconstructible") << '\n' << "cliques: " << v.cliques << '\n';
        if (v.counterexample)
          out << "counterexample: " << v.counterexample->first << ' ' << v.counterexample->second << '\n'
              << "trace: " << v.shared_trace << '\n';
        if (rule_ok) out << "rule " << rk_rule << ": " << (*rule_ok ? "inverts" : "fails") << '\n';
      }
    };
  });

  // experiment ---------------------------------------------------------
  auto* exp = app.add_subcommand("experiment", "Monte Carlo experiments");
  exp->require_subcommand(1);
  std::string e_config, e_out, e_in, e_sidecar;
  auto* e_run = exp->add_subcommand("run", "run an experiment config");
  e_run->add_option("--config", e_config, "JSON config")->required();
  e_run->add_option("--out", e_out, "CSV results (default stdout)");
  e_run->callback([&] {
    action = [&] {
      const ExperimentSpec spec = parse_experiment_spec(read_file(e_config));
      const auto rows = run_experiment(spec);
      for (const ResultRecord& r : rows)
        if (r.status == RowStatus::failed) err << "warning: n=" << r.n << " trial=" << r.trial << " failed: " << r.error << '\n';
      if (e_out.empty()) {
        write_csv(out, rows);
      } else {
        std::ofstream f(e_out, std::ios::binary);
        if (!f) fail(ErrorKind::invalid_config, "cannot write '" + e_out + "'");
        write_csv(f, rows);
      }
    };
  });

  auto* e_fit = exp->add_subcommand("fit", "log-log exponent fit over Exact medians");
  e_fit->add_option("--in", e_in, "CSV results")->required();
  e_fit->add_option("--out", e_sidecar, "write the fit as JSON here too");
  e_fit->callback([&] {
    action = [&] {
      std::istringstream s(read_file(e_in));
      const FitReport f = fit_exponent(read_csv(s));
      const std::string j = fit_to_json(f);
      if (!e_sidecar.empty()) {
        std::ofstream o(e_sidecar, std::ios::binary);
        if (!o) fail(ErrorKind::invalid_config, "cannot write '" + e_sidecar + "'");
        o << j << '\n';
      }
      if (format == Format::json) {
        out << j << '\n';
      } else if (format == Format::csv) {
        out << "slope,intercept,stderr,n_min,n_max,points,excluded\n"
            << f.slope << ',' << f.intercept << ',' << f.stderr_slope << ',' << f.n_min << ',' << f.n_max << ',' << f.points << ','
            << f.excluded << '\n';
      } else {
        out << "slope: " << f.slope << " +- " << f.stderr_slope << '\n'
            << "intercept: " << f.intercept << '\n'
            << "n range: " << f.n_min << ".." << f.n_max << " (" << f.points << " points, " << f.excluded << " rows excluded)\n";
      }
    };
  });

  auto* e_spread = exp->add_subcommand("spread", "relative spread (IQR/median) per n");
  e_spread->add_option("--in", e_in, "CSV results")->required();
  e_spread->callback([&] {
    action = [&] {
      std::istringstream s(read_file(e_in));
      const ConcentrationReport rep = concentration_stats(read_csv(s));
      if (format == Format::json) {
        json rows = json::array();
        for (const Spread& sp : rep.per_n) rows.push_back({{"n", sp.n}, {"median", sp.median}, {"iqr", sp.iqr}, {"relative", sp.relative}});
        out << json{{"per_n", rows}, {"shrinking", rep.shrinking}}.dump() << '\n';
      } else {
        out << "n,median,iqr,relative\n";
        for (const Spread& sp : rep.per_n) out << sp.n << ',' << sp.median << ',' << sp.iqr << ',' << sp.relative << '\n';
        if (format == Format::text) out << (rep.shrinking ? "spread shrinking\n" : "spread NOT shrinking\n");
      }
    };
  });

  std::vector<std::string> argv_store{"omatch"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    action();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace omatch
