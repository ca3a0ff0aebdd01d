#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dodgson/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dodgson::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DODGSON_TEST_DATA) + "/" + name; }

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "dodgson-cli-tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("score") {
  auto r = run({"score", data("t5.dodg"), "-c", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "score: 5\n");
  r = run({"score", data("cycle.dodg"), "-c", "c", "--at-most", "0"});
  CHECK(r.code == 1);
  CHECK(r.out == "false\n");
  r = run({"score", data("cycle.dodg"), "-c", "c", "--at-most", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  r = run({"score", data("cycle.dodg"), "-c", "z"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown candidate") != std::string::npos);
}

TEST_CASE("score witness") {
  auto r = run({"score", data("t5.dodg"), "-c", "1", "--witness"});
  CHECK(r.code == 0);
  CHECK(r.out.find("voter 1: raise 1 by 5") != std::string::npos);
}

TEST_CASE("bad input exits 2") {
  auto r = run({"score", data("bad.dodg"), "-c", "a"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run({"score", data("missing.dodg"), "-c", "a"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "5"}).code == 2);
}

TEST_CASE("winner") {
  auto r = run({"winner", data("cycle.dodg")});
  CHECK(r.code == 0);
  CHECK(r.out == "a: 1\nb: 1\nc: 1\nwinners: a b c\n");
  r = run({"winner", data("unanimous.dodg"), "-c", "c"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  r = run({"winner", data("unanimous.dodg"), "-c", "a"});
  CHECK(r.code == 1);
  CHECK(r.out == "false\n");
}

TEST_CASE("ranking and 2er") {
  CHECK(run({"ranking", data("unanimous.dodg"), "-c", "c", "-d", "a"}).code == 0);
  CHECK(run({"ranking", data("unanimous.dodg"), "-c", "a", "-d", "c"}).code == 1);
  CHECK(run({"2er", data("cycle.dodg") + ":c", data("t1.dodg") + ":1"}).code == 0);
  CHECK(run({"2er", data("t5.dodg") + ":1", data("chain2.dodg") + ":x"}).code == 1);
  const auto r = run({"2er", data("t1.dodg") + ":1", data("t5.dodg") + ":1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("designated candidates equal") != std::string::npos);
}

TEST_CASE("oracle") {
  auto r = run({"oracle", data("cycle.dodg"), "-c", "a"});
  CHECK(r.code == 0);
  CHECK(r.out == "score: 1\n");
  r = run({"--oracle-cap", "3", "oracle", data("t5.dodg"), "-c", "1"});
  CHECK(r.code == 1);
}

TEST_CASE("reduce 3dm") {
  const auto out = scratch() / "yes";
  auto r = run({"reduce", "3dm", data("yes2.3dm"), "-o", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("9 candidates, 3 voters, threshold 6\n", 0) == 0);
  CHECK(fs::exists(scratch() / "yes.dodg"));
  const auto sidecar = slurp(scratch() / "yes.json");
  CHECK(sidecar.find("\"construction\": \"3dm\"") != std::string::npos);
  CHECK(sidecar.find("\"threshold\": 6") != std::string::npos);
  auto s = run({"score", (scratch() / "yes.dodg").string(), "-c", "c"});
  CHECK(s.out == "score: 6\n");
  s = run({"reduce", "3dm", data("no2.3dm"), "-o", (scratch() / "no").string()});
  CHECK(run({"score", (scratch() / "no.dodg").string(), "-c", "c"}).out == "score: 7\n");
}

TEST_CASE("reduce sum and merges") {
  auto r = run({"reduce", "sum", data("t1.dodg") + ":1", data("t1.dodg") + ":1", "-o", (scratch() / "sum").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find(", 3 voters") != std::string::npos);
  CHECK(run({"score", (scratch() / "sum.dodg").string(), "-c", "1"}).out == "score: 2\n");

  r = run({"reduce", "merge", data("even.dodg") + ":u", data("t1.dodg") + ":1", "-o", (scratch() / "m").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("even voter count") != std::string::npos);

  r = run({"reduce", "merge", data("t1.dodg") + ":1", data("chain2.dodg") + ":x", "-o", (scratch() / "m").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("c: 1, d: x") != std::string::npos);
  CHECK(run({"ranking", (scratch() / "m.dodg").string(), "-c", "1", "-d", "x"}).code == 0);

  r = run({"reduce", "merge-prime", data("t1.dodg") + ":1", data("chain2.dodg") + ":x", "-o",
           (scratch() / "mp").string()});
  CHECK(r.code == 0);
  CHECK(run({"winner", (scratch() / "mp.dodg").string(), "-c", "1"}).code == 0);
}

TEST_CASE("2er reductions are total") {
  auto r = run({"reduce", "2er-to-ranking", data("bad.dodg") + ":a", data("t1.dodg") + ":1", "-o",
                (scratch() / "s").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("sentinel") != std::string::npos);
  CHECK(slurp(scratch() / "s.json").find("\"sentinel\": true") != std::string::npos);
  r = run({"reduce", "2er-to-winner", data("t1.dodg") + ":1", data("chain2.dodg") + ":x", "-o",
           (scratch() / "w").string()});
  CHECK(r.code == 0);
  CHECK(run({"winner", (scratch() / "w.dodg").string(), "-c", "1"}).code == 0);
}

TEST_CASE("reduce wagner-g") {
  const auto stem = (scratch() / "g").string();
  auto r = run({"reduce", "wagner-g", data("yes2.3dm"), data("no2.3dm"), "-o", stem});
  CHECK(r.code == 0);
  CHECK(run({"2er", stem + "-left.dodg:c", stem + "-right.dodg:d"}).code == 0);
  r = run({"reduce", "wagner-g", data("yes2.3dm"), "-o", stem});
  CHECK(r.code == 2);
}

TEST_CASE("verify") {
  auto r = run({"verify", "4", "--trials", "10", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  r = run({"--trials", "0", "verify", "4"});
  CHECK(r.code == 2);
}

TEST_CASE("json output is byte-stable") {
  const std::vector<std::string> args{"--json", "verify", "3", "--trials", "5", "--seed", "9"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"passed\": true") != std::string::npos);
  const auto w1 = run({"--json", "winner", data("cycle.dodg")});
  CHECK(w1.out == run({"--json", "winner", data("cycle.dodg")}).out);
  CHECK(w1.out.find("\"winners\"") != std::string::npos);
}

TEST_CASE("help") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("reduce") != std::string::npos);
}

}  // TEST_SUITE
