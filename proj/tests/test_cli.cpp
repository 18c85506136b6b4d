#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct ToolRun {
  int status = -1;
  std::string out;
};

ToolRun cobar_kit(const std::string& args) {
  const std::string cmd = std::string(COBAR_KIT_PATH) + " " + args + " 2>/dev/null";
  ToolRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

nlohmann::json parse(const ToolRun& r) { return nlohmann::json::parse(r.out); }

std::vector<std::size_t> ranks(const nlohmann::json& result) {
  std::vector<std::size_t> out;
  for (const auto& d : result["degrees"]) out.push_back(d["free_rank"].get<std::size_t>());
  return out;
}

}  // namespace

TEST(Cli, CheckPasses) {
  const ToolRun r = cobar_kit("check builtin:torus --max-degree 4 --max-length 6");
  ASSERT_EQ(r.status, 0);
  const auto j = parse(r);
  EXPECT_EQ(j["tool"], "cobar-kit");
  for (const auto& res : j["results"]) EXPECT_TRUE(res["passed"].get<bool>()) << res["check"];
  EXPECT_EQ(cobar_kit("check builtin:sphere:3 --max-degree 8").status, 0);
}

TEST(Cli, InputErrors) {
  const std::string bad = testing::TempDir() + "malformed.json";
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(cobar_kit("check " + bad).status, 2);
  EXPECT_EQ(cobar_kit("check /nonexistent/space.json").status, 2);
  EXPECT_EQ(cobar_kit("check builtin:nothing").status, 2);
  EXPECT_EQ(cobar_kit("homology builtin:torus --max-degree 2").status, 2);
  EXPECT_EQ(cobar_kit("homology builtin:torus --model bogus").status, 2);
}

TEST(Cli, CheckFailsOnBrokenSpace) {
  const std::string path = testing::TempDir() + "broken.json";
  std::ofstream(path) << R"({"name":"broken","simplices":{
    "1":[{"id":"a","faces":[{"degeneracies":[],"base":"*"},{"degeneracies":[],"base":"*"}]},
         {"id":"b","faces":[{"degeneracies":[],"base":"*"},{"degeneracies":[],"base":"*"}]}],
    "2":[{"id":"t","faces":[{"degeneracies":[],"base":"a"},{"degeneracies":[],"base":"a"},{"degeneracies":[],"base":"b"}]},
         {"id":"u","faces":[{"degeneracies":[],"base":"b"},{"degeneracies":[],"base":"a"},{"degeneracies":[],"base":"a"}]}],
    "3":[{"id":"w","faces":[{"degeneracies":[],"base":"t"},{"degeneracies":[],"base":"u"},{"degeneracies":[],"base":"t"},{"degeneracies":[],"base":"t"}]}]}})";
  EXPECT_EQ(cobar_kit("check " + path + " --max-length 2").status, 1);
  EXPECT_EQ(cobar_kit("homology " + path + " --max-length 2").status, 2);
}

TEST(Cli, Homology) {
  auto j = parse(cobar_kit("homology builtin:sphere:2 --model cobar --max-degree 6"));
  EXPECT_EQ(ranks(j["results"][0]), std::vector<std::size_t>(7, 1));
  j = parse(cobar_kit("homology builtin:sphere:3 --model fsq --max-degree 6"));
  EXPECT_EQ(ranks(j["results"][0]), (std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1}));
  j = parse(cobar_kit("homology builtin:wedge-circles:2 --model cobar --max-degree 2 --max-length 4"));
  EXPECT_EQ(ranks(j["results"][0]), (std::vector<std::size_t>{31, 0, 0}));
  EXPECT_EQ(j["results"][0]["truncated_at_length"], 4);
  j = parse(cobar_kit("homology builtin:sphere:2 --model rigid --max-degree 3"));
  EXPECT_EQ(ranks(j["results"][0]), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(Cli, StrictPromotesFrontierWarnings) {
  EXPECT_EQ(cobar_kit("homology builtin:rp2 --model rigid --max-degree 1 --max-length 2").status, 0);
  EXPECT_EQ(cobar_kit("homology builtin:rp2 --model rigid --max-degree 1 --max-length 2 --strict").status, 1);
}

TEST(Cli, Compare) {
  for (const char* args : {"compare builtin:sphere:2 --max-degree 4", "compare builtin:rp2 --max-degree 3 --max-length 6",
                           "compare builtin:wedge-circles:1 --max-degree 1 --max-length 3"}) {
    const ToolRun r = cobar_kit(args);
    ASSERT_EQ(r.status, 0) << args;
    for (const auto& res : parse(r)["results"]) EXPECT_TRUE(res["passed"].get<bool>()) << args << " " << res["check"];
  }
  const auto j = parse(cobar_kit("compare builtin:wedge-circles:1 --max-degree 1 --max-length 3"));
  EXPECT_EQ(j["results"][1]["rigid_homology"], "4 0");
  EXPECT_EQ(j["results"][1]["fsq_homology"], "4 0");
}

TEST(Cli, Pi0Ring) {
  auto j = parse(cobar_kit("pi0-ring builtin:rp2"));
  EXPECT_EQ(j["results"][0]["monoid_relations"], nlohmann::json::array({"Â_a^2 = 1"}));
  j = parse(cobar_kit("pi0-ring builtin:torus"));
  EXPECT_EQ(j["results"][0]["monoid_relations"], nlohmann::json::array({"Â_c = Â_a Â_b", "Â_c = Â_b Â_a"}));
  j = parse(cobar_kit("pi0-ring builtin:wedge-circles:2"));
  EXPECT_TRUE(j["results"][0]["free"].get<bool>());
  EXPECT_EQ(j["results"][0]["generators"].size(), 2u);
}

TEST(Cli, TableFormat) {
  const ToolRun r = cobar_kit("pi0-ring builtin:rp2 --format table");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("Â_a^2 = 1"), std::string::npos);
}

TEST(Cli, DeterministicJson) {
  const std::string args = "compare builtin:rp2 --max-degree 2 --max-length 4 --seed 3";
  EXPECT_EQ(cobar_kit(args).out, cobar_kit(args).out);
  EXPECT_NE(cobar_kit(args).out, "");
}
