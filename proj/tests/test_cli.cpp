#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coopkit/graphco.hpp"
#include "coopkit/json_io.hpp"
#include "seq_fixtures.hpp"

using namespace coopkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI through the shell, capturing stdout; stderr is discarded.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " COOPKIT_BIN " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(COOPKIT_EXAMPLES) + "/" + name; }

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "coopkit_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("trees enum lists the trees in canonical order") {
  Run r = run("trees enum --n 4");
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::vector<std::string> got;
  for (std::string l; std::getline(lines, l);) got.push_back(l);
  REQUIRE(got.size() == 17);
  CHECK(got.back() == "16 trees");
  const auto trees = enumerate_trees(FinSet::standard(4));
  for (std::size_t i = 0; i < trees.size(); ++i) CHECK(got[i] == encode_graph(trees[i], false));

  Run j = run("trees enum --n 5 --format json");
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["count"] == 125);
}

TEST_CASE("verification exit codes") {
  CHECK(run("verify graph --max-set 3").code == 0);
  CHECK(run("verify cdc --max-set 3").code == 0);
  CHECK(run("coalgebra verify --max-set 2 --max-n 3").code == 0);
  CHECK(run("cosimplicial graph --max-n 2 --max-set 2").code == 0);
  CHECK(run("verify custom " + data("graph3.json") + " --max-set 3").code == 0);

  Run bad = run("verify custom " + data("bad_cooperad.json") + " --max-set 3");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL coassociativity [") != std::string::npos);

  for (const char* c : {"sign", "zero-case", "counit"}) {
    CAPTURE(c);
    CHECK(run(std::string("verify graph --max-set 4 --max-arity 4 --corrupt ") + c).code == 1);
  }
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("verify torus").code == 2);
  CHECK(run("verify graph --max-set x").code == 2);
  CHECK(run("verify graph --corrupt bogus").code == 2);
  CHECK(run("verify custom").code == 2);
  CHECK(run("verify custom /nonexistent.json").code == 2);
  const fs::path broken = scratch() / "broken.json";
  std::ofstream(broken) << "{\"symseq\": {\"max_arity\": 1, \"arity\": {}}, \"cocomp\": [";
  CHECK(run("verify custom " + broken.string()).code == 2);
  const fs::path shape = scratch() / "shape.json";
  std::ofstream(shape) << R"({"symseq": {"max_arity": 1, "arity": {"1": {"basis": ["u"], "generators": []}}},
    "cocomp": {"[1 | 1>1]": {"rows": 2, "cols": 1, "entries": []}}, "counit": {"rows": 1, "cols": 1, "entries": [[0, 0, 1]]}})";
  CHECK(run("verify custom " + shape.string()).code == 2);
}

TEST_CASE("reports are deterministic") {
  const fs::path a = scratch() / "a.json", b = scratch() / "b.json";
  CHECK(run("verify dirgraph --max-set 3 --format json --out " + a.string(), "COOPKIT_THREADS=1").code == 0);
  CHECK(run("verify dirgraph --max-set 3 --format json --out " + b.string(), "COOPKIT_THREADS=4").code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("compose eval agrees with the closed form") {
  std::mt19937 rng(11);
  const fs::path a = scratch() / "seq_a.json", b = scratch() / "seq_b.json";
  std::ofstream(a) << symseq_to_json(fixture::random_seq(rng, 4, 3, "a")).dump();
  std::ofstream(b) << symseq_to_json(fixture::random_seq(rng, 4, 3, "b")).dump();
  Run r = run("compose eval " + a.string() + " " + b.string() + " --max-set 3 --format json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["arities"].size() == 4);
  for (const auto& row : j["arities"]) CHECK(row["rank"] == row["closed_form_rank"]);
  CHECK(run("compose eval " + a.string()).code == 2);
}

TEST_CASE("chains fiber") {
  Run r = run("chains fiber --set a,b --max-n 1 --max-set 2 --format json");
  CHECK(r.code == 0);
  // a 1-chain over S is S itself
  CHECK(nlohmann::json::parse(r.out)["count"] == 1);
  CHECK(run("chains fiber --set a,a").code == 2);
}
