#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "tagnet/cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tagnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tagnet::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("tagnet_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

Json summary_in(const fs::path& dir) { return Json::parse(slurp(dir / "summary.json")); }

}  // namespace

TEST_CASE("build merges records sharing a URL") {
  TempDir t;
  spit(t.path / "in.jsonl",
       "{\"url\":\"u1\",\"tags\":[\"a\",\"b\"]}\n{\"url\":\"u1\",\"tags\":[\"c\"]}\n");
  const auto r = run({"build", (t.path / "in.jsonl").string(), "-o", t.path.string()});
  REQUIRE(r.code == 0);
  const auto snap = slurp(t.path / "graph.tgr");
  CHECK(snap.rfind("tagnet-graph v1 3 3", 0) == 0);
  CHECK(fs::exists(t.path / "graph.log"));
}

TEST_CASE("empty input yields an empty graph with a warning") {
  TempDir t;
  spit(t.path / "empty.jsonl", "");
  const auto b = run({"build", (t.path / "empty.jsonl").string(), "-o", t.path.string()});
  CHECK(b.code == 0);
  CHECK(slurp(t.path / "graph.tgr").rfind("tagnet-graph v1 0 0", 0) == 0);
  const auto a = run({"analyze", (t.path / "empty.jsonl").string(), "-o", t.path.string()});
  CHECK(a.code == 0);
  CHECK(a.err.find("warning") != std::string::npos);
  const auto j = summary_in(t.path);
  CHECK(j["n"] == 0);
  CHECK(j["clustering"].is_null());
}

TEST_CASE("malformed input names the line") {
  TempDir t;
  spit(t.path / "bad.jsonl",
       "{\"url\":\"a\",\"tags\":[\"x\"]}\n{\"url\":\"b\",\"tags\":[]}\n{\"url\":\n");
  const auto r = run({"build", (t.path / "bad.jsonl").string(), "-o", t.path.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(r.err.find("bad.jsonl") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"analyze"}).code == 1);
  CHECK(run({"synth", "er", "10"}).code == 1);
  CHECK(run({"synth", "er", "10", "2.0", "-o", "/dev/null"}).code == 1);
  CHECK(run({"analyze", "x.jsonl", "--clustering-low-degree", "sometimes"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"analyze", "/nonexistent/in.jsonl"}).code == 2);
}

TEST_CASE("analyze K4 and synth round trip") {
  TempDir t;
  const auto k4 = t.path / "k4.tgr";
  REQUIRE(run({"synth", "er", "4", "1.0", "-o", k4.string()}).code == 0);
  CHECK(slurp(k4).rfind("tagnet-graph v1 4 6", 0) == 0);
  const auto r = run({"analyze", k4.string(), "-o", t.path.string()});
  REQUIRE(r.code == 0);
  const auto j = summary_in(t.path);
  CHECK(j["n"] == 4);
  CHECK(j["clustering"] == 1.0);
  CHECK(j["path_length"]["value"] == 1.0);
  for (const char* f : {"degree.tsv", "ccdf.tsv", "plot.gp"}) CHECK(fs::exists(t.path / f));

  const auto report = run({"report", (t.path / "summary.json").string()});
  CHECK(report.code == 0);
  CHECK(report.out.find("Small world:") != std::string::npos);
}

TEST_CASE("synth is seeded and reproducible") {
  TempDir t;
  const auto a = t.path / "a.tgr", b = t.path / "b.tgr", c = t.path / "c.tgr";
  REQUIRE(run({"synth", "ba", "100", "1", "--seed", "5", "-o", a.string()}).code == 0);
  REQUIRE(run({"synth", "ba", "100", "1", "--seed", "5", "-o", b.string()}).code == 0);
  REQUIRE(run({"synth", "ba", "100", "1", "--seed", "6", "-o", c.string()}).code == 0);
  CHECK(slurp(a).rfind("tagnet-graph v1 100 99", 0) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("snapshot and raw-record analysis agree") {
  TempDir t;
  const auto items = t.path / "items.jsonl";
  REQUIRE(run({"synth", "ws", "300", "6", "0.2", "--seed", "3", "--items", "-o", items.string()}).code == 0);
  const auto raw_dir = t.path / "raw", snap_dir = t.path / "snap";
  REQUIRE(run({"analyze", items.string(), "-o", raw_dir.string()}).code == 0);
  REQUIRE(run({"build", items.string(), "-o", t.path.string()}).code == 0);
  REQUIRE(run({"analyze", (t.path / "graph.tgr").string(), "-o", snap_dir.string()}).code == 0);
  CHECK(slurp(raw_dir / "summary.json") == slurp(snap_dir / "summary.json"));
  CHECK(slurp(raw_dir / "degree.tsv") == slurp(snap_dir / "degree.tsv"));
}

TEST_CASE("single-threaded output equals parallel output") {
  TempDir t;
  const auto g = t.path / "g.tgr";
  REQUIRE(run({"synth", "er", "500", "0.02", "-o", g.string()}).code == 0);
  REQUIRE(run({"analyze", g.string(), "--threads", "1", "-o", (t.path / "one").string()}).code == 0);
  REQUIRE(run({"analyze", g.string(), "--threads", "4", "-o", (t.path / "four").string()}).code == 0);
  REQUIRE(run({"analyze", g.string(), "--apl", "sampled", "--sources", "50", "--threads", "1", "-o",
               (t.path / "s1").string()}).code == 0);
  REQUIRE(run({"analyze", g.string(), "--apl", "sampled", "--sources", "50", "--threads", "3", "-o",
               (t.path / "s3").string()}).code == 0);
  CHECK(slurp(t.path / "one" / "summary.json") == slurp(t.path / "four" / "summary.json"));
  CHECK(slurp(t.path / "s1" / "summary.json") == slurp(t.path / "s3" / "summary.json"));
  CHECK(summary_in(t.path / "s1")["path_length"]["mode"] == "sampled");
}

TEST_CASE("output directory from the environment, overridden by the flag") {
  TempDir t;
  const auto g = t.path / "g.tgr";
  REQUIRE(run({"synth", "er", "20", "0.3", "-o", g.string()}).code == 0);
  const auto env_dir = t.path / "env", flag_dir = t.path / "flag";
  ::setenv("TAGNET_OUTPUT_DIR", env_dir.string().c_str(), 1);
  CHECK(run({"analyze", g.string()}).code == 0);
  CHECK(run({"analyze", g.string(), "-o", flag_dir.string()}).code == 0);
  ::unsetenv("TAGNET_OUTPUT_DIR");
  CHECK(fs::exists(env_dir / "summary.json"));
  CHECK(fs::exists(flag_dir / "summary.json"));
}

TEST_CASE("the installed binary runs") {
  TempDir t;
  const auto out = t.path / "k.tgr";
  const std::string cmd = std::string("\"") + TAGNET_CLI_PATH + "\" synth er 5 1.0 -o \"" + out.string() +
                          "\" > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out).rfind("tagnet-graph v1 5 10", 0) == 0);
  const std::string bad = std::string("\"") + TAGNET_CLI_PATH + "\" nonsense > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
