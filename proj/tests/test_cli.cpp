#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

using nlohmann::json;

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation run(const std::string& args) {
  std::string cmd = std::string(ARTIN_CLI_PATH) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(ARTIN_DATA_DIR) + "/" + name; }

TEST(Cli, ValidateGoodGraph) {
  Invocation r = run("validate " + data("gamma1.graph"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid even FC\n");
}

TEST(Cli, ValidateRejectsTriangleCriterionFailure) {
  Invocation r = run("validate " + data("not_fc.graph"));
  EXPECT_EQ(r.code, 1);
  Invocation j = run("--json validate " + data("not_fc.graph"));
  EXPECT_EQ(j.code, 1);
  EXPECT_EQ(json::parse(j.out)["error"]["kind"], "FcViolation");
}

TEST(Cli, MissingFileIsADomainError) { EXPECT_EQ(run("validate /nonexistent.graph").code, 1); }

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("eq " + data("gamma1.graph") + " a").code, 2);
  EXPECT_EQ(run("validate " + data("gamma1.graph") + " --no-such-flag").code, 2);
}

TEST(Cli, EqualityOnACommutingEdge) {
  Invocation r = run("eq " + data("raag.graph") + " \"a b\" \"b a\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "equal\n");
  EXPECT_EQ(run("eq " + data("raag.graph") + " \"a c\" \"c a\"").out, "not equal\n");
}

TEST(Cli, Triviality) {
  EXPECT_EQ(run("triv " + data("path.graph") + " \"b x b^-1 x^-1\"").out, "trivial\n");
  EXPECT_EQ(run("triv " + data("path.graph") + " \"a x a^-1 x^-1\"").out, "nontrivial\n");
  EXPECT_EQ(run("triv " + data("path.graph") + " \"a q\"").code, 1);
}

TEST(Cli, Membership) {
  EXPECT_EQ(run("member " + data("gamma1.graph") + " \"x a x^-1\" --support a --conj x").out, "member\n");
  EXPECT_EQ(run("member " + data("gamma1.graph") + " a --support a --conj x").out, "not member\n");
}

TEST(Cli, IntersectOnTheTriangle) {
  Invocation r = run("--json intersect " + data("gamma1.graph") + " --p-support a --q-conj x --q-support a");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["result"], "parabolic");
  EXPECT_TRUE(j["support"].empty());
  EXPECT_EQ(j["conjugator"], "1");
  ASSERT_TRUE(j["trace"].is_array());
  EXPECT_EQ(j["trace"][0]["rule"], "common-support");

  Invocation text = run("--trace intersect " + data("gamma1.graph") + " --p-support a --q-conj x --q-support a");
  EXPECT_NE(text.out.find("support: {}"), std::string::npos);
  EXPECT_NE(text.out.find("common-support"), std::string::npos);
}

TEST(Cli, IntersectIsDeterministic) {
  std::string args = "--json intersect " + data("gamma1.graph") +
                     " --p-conj \"x a\" --p-support a,b --q-conj \"a x a x\" --q-support a";
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, IntersectResultReparses) {
  Invocation r = run("--json intersect " + data("raag.graph") + " --p-support a,b --q-conj c --q-support a,b,d");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  std::string support;
  for (const auto& v : j["support"]) support += (support.empty() ? "" : ",") + v.get<std::string>();
  EXPECT_EQ(support, "b");
  // Feed the result back in: intersecting it with P gives it again.
  Invocation again = run("--json intersect " + data("raag.graph") + " --p-support a,b --q-conj \"" +
                  j["conjugator"].get<std::string>() + "\" --q-support " + support);
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(json::parse(again.out)["support"], j["support"]);
}

TEST(Cli, IntersectMany) {
  Invocation r = run("--json intersect-many " + data("raag.graph") + " --parabolic \"a,b,c|1\" --parabolic \"a,b|c\"" +
              " --parabolic \"a,d|1\"");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_TRUE(j["support"].empty());
  EXPECT_EQ(j["conjugator"], "c");
  EXPECT_EQ(j["chain"].size(), 3u);
  EXPECT_LE(j["distinct"].get<int>(), 5);
}

TEST(Cli, Kernel) {
  Invocation r = run("--json kernel " + data("gamma1.graph") + " --vertex x --rewrite \"x a x^-1\"");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["vertices"], json::array({"a_0", "a_1", "b_0"}));
  EXPECT_EQ(j["edges"].size(), 2u);
  EXPECT_EQ(j["sigma"]["a"], "a_0 a_1");
  EXPECT_EQ(j["rewrite"], "a_1");
  EXPECT_EQ(run("kernel " + data("gamma1.graph") + " --vertex x --rewrite x").code, 1);
  EXPECT_NE(run("kernel " + data("gamma1.graph") + " --vertex x --rewrite a").out.find("rewrite: a_0"), std::string::npos);
  EXPECT_EQ(run("kernel " + data("path.graph") + " --vertex a").code, 1);
}

TEST(Cli, Selftest) {
  Invocation r = run("--json selftest --seed 7 --vertices 3 --len 5 --cases 30");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["result"], "pass");
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["word_problem"]["disagree"], 0);
  EXPECT_EQ(run("--json selftest --seed 7 --vertices 3 --len 5 --cases 30").out, r.out);
}

TEST(Cli, LengthCap) {
  EXPECT_EQ(run("--max-len 3 triv " + data("path.graph") + " \"a x a x\"").code, 1);
}

}  // namespace
