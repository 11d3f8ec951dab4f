#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MWEC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path workdir() {
  fs::path d = fs::path(MWEC_TEST_TMP) / "cli";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = workdir() / name;
  std::ofstream(p) << text;
  return p.string();
}

struct Files {
  std::string g = write("g.txt", "n 3\n0 1 0.5\n1 2 0.5\n");
  std::string e = write("e.txt", "parties 2 2\nscoring borda\n2 0 1 3\n0 1 2 3\n3 2 1 0\n");
  std::string io() const { return "--graph " + g + " --election " + e; }
};

}  // namespace

TEST_CASE("evaluate prints an exact JSON report") {
  Files f;
  Run r = run("evaluate " + f.io() + " --seeds 0 --objective spv-dov-c --exact");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["kind"] == "spv-dov-c");
  CHECK(j["exact"]["value"] == "5/2");
  CHECK(j["estimator"] == "exact");

  Run stem = run("evaluate " + f.io() + " --seeds 0 --objective spv-dov --direction destructive --exact");
  REQUIRE(stem.code == 0);
  CHECK(json::parse(stem.out)["kind"] == "spv-dov-d");

  Run text = run("evaluate " + f.io() + " --seeds 0 --objective spv-dov-c --exact --output text");
  REQUIRE(text.code == 0);
  CHECK(text.out.find("value: ") != std::string::npos);
}

TEST_CASE("greedy is reproducible across reruns and thread counts") {
  Files f;
  const std::string args =
      "greedy " + f.io() + " --budget 2 --objective spv-dov-c --samples 10000 --rng-seed 7";
  Run a = run(args);
  Run b = run(args);
  Run c = run(args + " --threads 4");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  json j = json::parse(a.out);
  CHECK(j["selection"]["seeds"].size() == 2);
  CHECK(j["selection"]["seeds"][0] == 0);
}

TEST_CASE("exit codes") {
  Files f;
  CHECK(run("oracle " + f.io() + " --budget 5 --objective spv-dov-c").code == 2);
  CHECK(run("evaluate " + f.io() + " --seeds 9 --objective spv-dov-c").code == 1);
  std::string bad = write("bad.txt", "n 2\n0 1 1.5\n");
  CHECK(run("evaluate --graph " + bad + " --election " + f.e + " --seeds 0 --objective dow-c")
            .code == 1);
  CHECK(run("evaluate " + f.io() + " --seeds 0 --objective spv-dov-c --direction destructive")
            .code == 1);
  CHECK(run("evaluate " + f.io() + " --seeds 0 --objective spv-dov-c --exact --max-enum-edges 1")
            .code == 2);
  Run o = run("oracle " + f.io() + " --budget 1 --objective spv-dov-c");
  REQUIRE(o.code == 0);
  CHECK(json::parse(o.out)["exact"]["best_value"] == "5/2");
}

TEST_CASE("gen-reduction writes files with the stated baseline") {
  std::string base = write("base.txt", "n 4\n0 1 1\n1 2 1\n2 3 1\n");
  fs::path g = workdir() / "red_g.txt";
  fs::path e = workdir() / "red_e.txt";
  Run r = run("gen-reduction --kind spv-c2 --scoring veto --t 2 --k 2 --base " + base +
              " --out-graph " + g.string() + " --out-election " + e.string());
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["construction"] == "spv-c2");
  Run ev = run("evaluate --graph " + g.string() + " --election " + e.string() +
               " --seeds 0 --objective spv-dov-c --exact");
  REQUIRE(ev.code == 0);
  json j = json::parse(ev.out);
  CHECK(j["exact"]["before"][0] == "4");  // (a(k-1) + b)|V|
  CHECK(j["exact"]["value"] == "4");      // (a - b)|V|

  CHECK(run("gen-reduction --kind spv-c1 --scoring veto --t 2 --k 2 --base " + base +
            " --out-graph " + g.string() + " --out-election " + e.string())
            .code == 1);
}

TEST_CASE("gen-random and simulate are deterministic") {
  fs::path g = workdir() / "rand_g.txt";
  fs::path e = workdir() / "rand_e.txt";
  const std::string args = "gen-random --n 8 --t 2 --k 2 --edge-prob 0.3 --activation-prob 0.5 "
                           "--rng-seed 5 --out-graph " + g.string() +
                           " --out-election " + e.string();
  REQUIRE(run(args).code == 0);
  std::ifstream gi(g), ei(e);
  std::string g1((std::istreambuf_iterator<char>(gi)), {});
  std::string e1((std::istreambuf_iterator<char>(ei)), {});
  REQUIRE(run(args).code == 0);
  std::ifstream gi2(g), ei2(e);
  CHECK(std::string((std::istreambuf_iterator<char>(gi2)), {}) == g1);
  CHECK(std::string((std::istreambuf_iterator<char>(ei2)), {}) == e1);

  Run s1 = run("simulate --graph " + g.string() + " --seeds 0,1 --rng-seed 3 --sample-index 2");
  Run s2 = run("simulate --graph " + g.string() + " --seeds 0,1 --rng-seed 3 --sample-index 2");
  REQUIRE(s1.code == 0);
  CHECK(s1.out == s2.out);
  json j = json::parse(s1.out);
  CHECK(j["active"].size() >= 2);
}
