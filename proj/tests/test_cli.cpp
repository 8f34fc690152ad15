#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {
  struct Result {
    int               status = 0;
    std::vector<json> records;
    std::string       out;
    std::string       err;
  };

  Result run(std::vector<std::string> args, std::string const& input = "") {
    args.insert(args.begin(), "conecalc");
    std::vector<char const*> argv;
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    std::istringstream in(input);
    std::ostringstream out, err;
    Result             r;
    r.status = conecalc::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    r.out    = out.str();
    r.err    = err.str();
    std::istringstream lines(r.out);
    std::string        line;
    while (std::getline(lines, line)) {
      if (!line.empty() && line.front() == '{') {
        r.records.push_back(json::parse(line));
      }
    }
    return r;
  }

  std::string without_timing(std::vector<json> records) {
    std::string s;
    for (auto& r : records) {
      r.erase("seconds");
      s += r.dump() + "\n";
    }
    return s;
  }

  // Points CONECALC_CACHE at a fresh directory for the scope.
  struct ScopedCache {
    fs::path    dir;
    std::string saved;
    bool        had = false;
    ScopedCache() {
      static int n = 0;
      dir = fs::temp_directory_path()
            / ("conecalc-cli-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
      fs::remove_all(dir);
      if (char const* v = std::getenv("CONECALC_CACHE")) {
        had   = true;
        saved = v;
      }
      ::setenv("CONECALC_CACHE", dir.c_str(), 1);
    }
    ~ScopedCache() {
      if (had) {
        ::setenv("CONECALC_CACHE", saved.c_str(), 1);
      } else {
        ::unsetenv("CONECALC_CACHE");
      }
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  };
}  // namespace

TEST_CASE("norm records") {
  ScopedCache cache;
  auto r = run({"norm", "--alphabet", "a=1,b=1", "a b a' b'"});
  CHECK(r.status == 0);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0]["value"] == "2/1");
  CHECK(r.records[0]["value_decimal"] == "2");
  CHECK(r.records[0]["input"] == "a b a' b'");
  CHECK(r.records[0]["command"] == "norm");
  CHECK(r.records[0].contains("seconds"));

  r = run({"norm", "--alphabet", "a=1", "a^5"});
  CHECK(r.status == 0);
  CHECK(r.records[0]["value"] == "5/1");

  r = run({"rnorm", "--alphabet", "a=1,b=1", "a(1/2) b(1/2)"});
  CHECK(r.status == 0);
  CHECK(r.records[0]["value"] == "1/1");
  CHECK(r.records[0]["scale"] == "2");

  r = run({"--alphabet", "a=1,b=3/2", "norm", "b^2", "a b"});
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0]["value"] == "3/1");
  CHECK(r.records[1]["value"] == "5/2");
  CHECK(r.records[1]["value_decimal"] == "2.5");
}

TEST_CASE("witnesses and factorizations") {
  auto r = run({"norm", "--no-cache", "--witness", "--factor", "a b a' b'"});
  CHECK(r.status == 0);
  auto const& rec = r.records.at(0);
  CHECK(rec["witness"]["removed"] == json::array({1, 3}));
  CHECK(rec["witness"]["cancelled"] == json::array({json::array({0, 2})}));
  CHECK(rec["factors"].size() == 2);

  r = run({"rnorm", "--no-cache", "--witness", "a(1/2) b(-1/3)"});
  CHECK(r.records.at(0)["witness"] == json::array({"1/2", "-1/3"}));
  CHECK(r.records.at(0)["value"] == "5/6");
}

TEST_CASE("other subcommands") {
  auto r = run({"--no-cache", "root", "b a b a b'"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["theta"] == "a^2 b");
  CHECK(r.records.at(0)["k"] == 1);
  CHECK(r.records.at(0)["conjugator"] == "b a b");
  r = run({"--no-cache", "root", "b' a' b' a'"});
  CHECK(r.records.at(0)["theta"] == "a b");
  CHECK(r.records.at(0)["k"] == -2);

  r = run({"--no-cache", "stable", "a", "--schedule", "1,2,4"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["upper"] == "1/1");
  CHECK(r.records.at(0)["lower"] == "1/1");
  CHECK(r.records.at(0)["sequence"].size() == 3);

  r = run({"--no-cache", "cone-curve", "base=zn rank=2; word= (1,0)(3/2) (0,1)(-2)", "--grid",
           "2,4,8"});
  CHECK(r.status == 0);
  for (auto const& s : r.records.at(0)["samples"]) {
    CHECK(s["value"] == "7/2");
  }

  r = run({"--no-cache", "cone-bracket", "base=free alphabet=a,b; word= [a](2)"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["lower"] == "2/1");
  CHECK(r.records.at(0)["upper"] == "2/1");

  r = run({"--no-cache", "cone-bracket", "base=heis; word= (1,0,5)(3/2) (0,1,0)(-2)"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["lower"] == "7/2");

  // The default grid is trimmed to the length cap; an explicit one is not.
  r = run({"--no-cache", "--max-len", "20", "cone-curve", "base=free alphabet=a,b; word= [ab](1)"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["samples"].size() == 4);
  CHECK(run({"--no-cache", "--max-len", "20", "cone-curve", "base=free alphabet=a,b; word= [ab](1)",
             "--grid", "64"})
            .status == 2);

  r = run({"--no-cache", "geodesic", "a(1) b(1)", "--at", "0,1/2,1"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["value"] == "2/1");
  CHECK(r.records.at(0)["points"].size() == 3);
  CHECK(r.records.at(0)["points"][1]["distance"] == "1/1");
  CHECK(r.records.at(0)["points"][2]["point"] == "1");

  r = run({"collide", "--p1", "4,4", "--p2", "2,6", "--ell", "2"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["common"] == json::array({1, 2}));

  r = run({"check-lemmas", "--suite", "reduce-laws", "--suite", "equal-packets",
           "--trials-scale", "0.1"});
  CHECK(r.status == 0);
  CHECK(r.records.size() == 2);
  CHECK(r.records[0]["passed"] == true);

  r = run({"--jobs", "2", "bench", "--len", "80"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["agree"] == true);
  CHECK(r.records.at(0)["length"] == 80);
}

TEST_CASE("inputs from standard input") {
  auto r = run({"--no-cache", "norm"}, "a b\n\n# comment\na a'\n");
  CHECK(r.status == 0);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[1]["value"] == "0/1");

  r = run({"--no-cache", "norm"}, "a b\n a^x\n");
  CHECK(r.status == 2);
  CHECK(r.err.find("line 2, column 4") != std::string::npos);
}

TEST_CASE("exit statuses") {
  CHECK(run({"norm", "--no-cache", "a^"}).status == 2);
  CHECK(run({"norm", "--no-cache", "a c"}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"--alphabet", "a=-1", "norm", "a"}).status == 2);
  CHECK(run({"--no-cache", "root", "a a'"}).status == 2);
  CHECK(run({"--no-cache", "--max-len", "3", "norm", "a b a b"}).status == 2);
  CHECK(run({"collide", "--p1", "4", "--p2", "3"}).status == 2);
  CHECK(run({"check-lemmas", "--suite", "no-such-suite"}).status == 2);
  CHECK(run({"--help"}).status == 0);

  auto r = run({"norm", "--no-cache", "a ^2"});
  CHECK(r.status == 2);
  CHECK(r.err.find("column") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("alphabet files") {
  fs::path file = fs::temp_directory_path() / ("conecalc-alpha-" + std::to_string(::getpid()));
  std::ofstream(file) << "x 2\ny 1/2\n";
  auto r = run({"--no-cache", "--alphabet-file", file.string(), "norm", "x y x' y'"});
  CHECK(r.status == 0);
  CHECK(r.records.at(0)["value"] == "1/1");
  fs::remove(file);
  CHECK(run({"--alphabet-file", "/nonexistent/alphabet", "norm", "a"}).status == 2);
}

TEST_CASE("determinism and cache transparency") {
  ScopedCache cache;
  std::vector<std::string> args = {"stable", "a b a' b'", "a a b", "--schedule", "1,2,4"};
  auto first = run(args);
  CHECK(first.status == 0);
  CHECK(first.err.find("misses=6") != std::string::npos);
  auto second = run(args);
  CHECK(second.err.find("hits=6 misses=0") != std::string::npos);
  auto plain = args;
  plain.insert(plain.begin(), "--no-cache");
  auto uncached = run(plain);
  CHECK(uncached.err.find("hits") == std::string::npos);
  CHECK(without_timing(first.records) == without_timing(second.records));
  CHECK(without_timing(first.records) == without_timing(uncached.records));

  std::vector<std::string> bracket = {"cone-bracket",
                                      "base=free alphabet=a,b; word= [ab](1) [b](-1/2)"};
  auto b1 = run(bracket);
  auto b2 = run(bracket);
  bracket.insert(bracket.begin(), "--no-cache");
  auto b3 = run(bracket);
  CHECK(b1.status == 0);
  CHECK(without_timing(b1.records) == without_timing(b2.records));
  CHECK(without_timing(b1.records) == without_timing(b3.records));
}
