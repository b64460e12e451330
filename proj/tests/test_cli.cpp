#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "omatch/matching.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = omatch::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "omatch_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("patterns subcommands") {
    CHECK(run({"patterns", "list", "--r", "3", "--class", "noncollectable"}).out == "AABABB\n");
    CHECK(run({"patterns", "list", "--r", "2"}).out == "AABB\nABAB\nABBA\n");
    const Run c = run({"patterns", "classify", "--word", "AABBBA"});
    CHECK(c.code == 0);
    CHECK(c.out.find("composition: 2,1\n") != std::string::npos);
    CHECK(c.out.find("collectable: yes\n") != std::string::npos);
    CHECK(run({"patterns", "cube", "--word", "ABBAABAB", "--partition", "1,2;3,4"}).out == "ABBAABAB\nABBABABA\n");
    CHECK(run({"--format", "json", "patterns", "cube", "--word", "ABBAABAB", "--partition", "1,2;3,4"}).out ==
          "[\"ABBAABAB\",\"ABBABABA\"]\n");
    CHECK(run({"patterns", "harmonic", "--word", "AABBAB"}).out == "AABBAB\nAABBBA\n");
  }

  TEST_CASE("trace and reconstruct") {
    CHECK(run({"trace", "--word", "AABCBDBDACCD"}).out == "121121323233\n");
    CHECK(run({"reconstruct", "--trace", "121121323233", "--rule", "right"}).out == "AABCCDCDDBBA\n");
    CHECK(run({"reconstruct", "--trace", "121121323233", "--rule", "left"}).out == "AABCBDACBDCD\n");
    CHECK(run({"reconstruct", "--trace", "121121323233", "--rule", "lr"}).out == "AABCBDBCCDDA\n");
    CHECK(run({"reconstruct", "--trace", "121121323233", "--rule", "rl"}).out == "AABCCDADCBBD\n");
  }

  TEST_CASE("gen, trace and reconstruct round trip") {
    for (const char* seed : {"1", "2", "3"}) {
      const Run g = run({"gen", "--r", "3", "--n", "12", "--seed", seed});
      REQUIRE(g.code == 0);
      CHECK(g.out == run({"gen", "--r", "3", "--n", "12", "--seed", seed}).out);
      const auto path = scratch(std::string("gen") + seed + ".txt");
      std::ofstream(path) << g.out;
      const std::string t = first_line(run({"trace", "--in", path.string()}).out);
      for (const char* rule : {"left", "right", "lr", "rl"}) {
        const std::string w = first_line(run({"reconstruct", "--trace", t, "--rule", rule}).out);
        CHECK(first_line(run({"trace", "--word", w}).out) == t);
      }
    }
  }

  TEST_CASE("clique subcommands") {
    CHECK(run({"clique", "count", "--r", "2", "--patterns", "list:AABB,ABAB", "--k", "3"}).out == "5\n");
    CHECK(run({"clique", "solve", "--word", "ABCABC", "--patterns", "list:ABAB"}).out == "3,Exact,1 2 3\n");
    CHECK(run({"clique", "solve", "--word", "AABBCC", "--patterns", "list:ABAB"}).out.rfind("1,Exact,", 0) == 0);
    CHECK(run({"clique", "global", "--r", "3", "--patterns", "list:AABABB"}).out == "2\n");
    const Run s = run({"clique", "solve", "--n", "50", "--r", "2", "--seed", "4", "--patterns", "partite"});
    CHECK(s.code == 0);
    CHECK(s.out.find(",Exact,") != std::string::npos);
  }

  TEST_CASE("recon-check") {
    const Run v = run({"recon-check", "--r", "3", "--patterns", "list:AABBAB,ABAABB,ABBAAB", "--k", "3"});
    CHECK(v.out.find("not reconstructible\n") == 0);
    CHECK(v.out.find("counterexample: ABACCABBC ABBCAACBC\n") != std::string::npos);
    CHECK(v.out.find("trace: 112123233\n") != std::string::npos);
    const Run q = run({"recon-check", "--r", "3", "--patterns", "list:AABABB,AAABBB,AABBAB,ABAABB,ABABAB", "--k", "3", "--rule", "left"});
    CHECK(q.out.find("reconstructible\n") == 0);
    CHECK(q.out.find("rule left: inverts\n") != std::string::npos);
  }

  TEST_CASE("experiment run and fit") {
    const auto cfg = scratch("exp.json"), csv = scratch("exp.csv"), fit = scratch("exp.fit.json");
    std::ofstream(cfg) << R"({"kind":"zvalue","r":2,"patterns":"list:AABB","n_grid":[50,100,200],"trials":5,"seed":5})";
    REQUIRE(run({"experiment", "run", "--config", cfg.string(), "--out", csv.string()}).code == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,trial,seed,value,status,elapsed_s");
    const Run f = run({"experiment", "fit", "--in", csv.string(), "--out", fit.string()});
    CHECK(f.code == 0);
    CHECK(std::filesystem::exists(fit));
    CHECK(run({"experiment", "spread", "--in", csv.string()}).code == 0);
  }

  TEST_CASE("exit codes") {
    const Run bad_word = run({"patterns", "classify", "--word", "AAB"});
    CHECK(bad_word.code == 1);
    CHECK(bad_word.out.empty());
    CHECK(bad_word.err.find("InvalidWord") != std::string::npos);
    CHECK(run({"patterns", "list", "--r"}).code == 2);
    CHECK(run({"gen", "--r", "2", "--n", "3"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"reconstruct", "--trace", "2112", "--rule", "left"}).code == 1);
    CHECK(run({"--help"}).code == 0);
  }
}
