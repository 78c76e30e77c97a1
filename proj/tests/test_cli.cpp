#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(FSOS_CLI) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fsos_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("--no-such-flag").code, 1);
  EXPECT_EQ(run("bound").code, 1);
  EXPECT_EQ(run("bound " + path("missing.json")).code, 2);
  write("bad.cnf", "p cnf 2 1\n1 5 0\n");
  EXPECT_EQ(run("maxsat " + path("bad.cnf")).code, 2);
}

TEST_F(Cli, MaxsatUnsatisfiablePair) {
  write("pair.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  const Outcome r = run("maxsat " + path("pair.cnf") + " --preset max2sat --round moment");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("integer_bound"), 1.0);
  EXPECT_EQ(j.at("verified"), true);
  EXPECT_EQ(j.at("maxsat").at("total_weight"), 2);
}

TEST_F(Cli, SmallWcnfMatchesOracle) {
  write("w.wcnf",
        "p wcnf 6 8\n3 1 2 0\n2 -1 3 0\n4 -2 -3 0\n1 4 5 0\n5 -4 6 0\n2 -5 -6 0\n3 1 -6 0\n1 -1 -2 0\n");
  const Outcome r = run("maxsat " + path("w.wcnf") + " --preset max2sat");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  // every assignment falsifies at least the weight found by enumeration below
  long long best = 1LL << 40;
  const int w[8] = {3, 2, 4, 1, 5, 2, 3, 1};
  for (int b = 0; b < 64; ++b) {
    auto x = [&](int v) { return ((b >> (v - 1)) & 1) != 0; };
    const bool sat[8] = {x(1) || x(2), !x(1) || x(3), !x(2) || !x(3), x(4) || x(5),
                         !x(4) || x(6), !x(5) || !x(6), x(1) || !x(6), !x(1) || !x(2)};
    long long f = 0;
    for (int i = 0; i < 8; ++i) f += sat[i] ? 0 : w[i];
    best = std::min(best, f);
  }
  const double ib = j.at("integer_bound").get<double>();
  EXPECT_EQ(ib, static_cast<double>(best));
  EXPECT_LE(j.at("maxsat").at("max_satisfiable_at_most").get<double>(), 21.0);
}

TEST_F(Cli, GenerateBoundVerifyRound) {
  ASSERT_EQ(run("gen-c2 --n 6 --degree 3 --sparsity 10 --seed 4 -o " + path("f.json")).code, 0);
  const Outcome b = run("bound " + path("f.json") + " --preset random --cert " + path("c.json"));
  ASSERT_EQ(b.code, 0);
  const Outcome again = run("bound " + path("f.json") + " --preset random");
  auto strip = [](nlohmann::json j) {
    j.erase("times");
    return j.dump();
  };
  EXPECT_EQ(strip(nlohmann::json::parse(b.out)), strip(nlohmann::json::parse(again.out)));

  EXPECT_EQ(run("verify " + path("c.json")).code, 0);
  EXPECT_EQ(run("verify " + path("c.json") + " --function " + path("f.json")).code, 0);
  EXPECT_EQ(run("round " + path("c.json") + " --method all").code, 0);

  nlohmann::json cert;
  std::ifstream(path("c.json")) >> cert;
  cert["bound"] = cert["bound"].get<double>() + 0.5;
  std::ofstream(path("t.json")) << cert.dump();
  const Outcome bad = run("verify " + path("t.json"));
  EXPECT_EQ(bad.code, 3);
  EXPECT_EQ(nlohmann::json::parse(bad.out).at("accepted"), false);

  write("broken.json", "{\"version\": 1}");
  EXPECT_EQ(run("verify " + path("broken.json")).code, 2);
}

TEST_F(Cli, OutputFormatsAndBench) {
  ASSERT_EQ(run("gen-2sat --n 6 --clauses 12 --seed 2 -o " + path("a.cnf")).code, 0);
  const Outcome md = run("maxsat " + path("a.cnf") + " --preset max2sat --out md");
  ASSERT_EQ(md.code, 0);
  EXPECT_NE(md.out.find("| id"), std::string::npos);
  const Outcome csv = run("maxsat " + path("a.cnf") + " --preset max2sat --out csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("\"id\"", 0), 0U);
  EXPECT_EQ(run("maxsat " + path("a.cnf") + " --out xml").code, 1);

  write("suite.json", R"({"name": "t", "groups": [
      {"name": "c2", "generator": "c2", "n": 6, "degree": 3, "sparsity": 8, "count": 2, "oracle": true},
      {"name": "sat", "generator": "2sat", "n": 6, "clauses": 10, "seeds": [3], "round": "moment",
       "support": "clauses", "oracle": true}]})");
  const Outcome bench = run("bench " + path("suite.json") + " --out json --no-times");
  ASSERT_EQ(bench.code, 0);
  const auto j = nlohmann::json::parse(bench.out);
  EXPECT_EQ(j.at("rows").size(), 3U);
  EXPECT_EQ(j.at("groups").at(0).at("instances"), 2);
  EXPECT_FALSE(j.at("rows").at(0).contains("times"));
  EXPECT_EQ(run("bench " + path("suite.json") + " --out json --no-times").out, bench.out);

  write("empty.json", R"({"name": "e", "groups": []})");
  const Outcome empty = run("bench " + path("empty.json") + " --out json");
  ASSERT_EQ(empty.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(empty.out).at("rows").empty());
  write("bad_suite.json", R"({"groups": [{"generator": "nope"}]})");
  EXPECT_EQ(run("bench " + path("bad_suite.json")).code, 2);
}
