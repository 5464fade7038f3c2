#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "symsft");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = symsft::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string model_path(const char* name) { return std::string(SYMSFT_MODELS_DIR) + "/" + name; }

}  // namespace

TEST(Cli, CountHardSquare) {
    const Result r = run_cli({"--builtin", "hard-square", "--dim", "2", "count", "--n-max", "4"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "C_1 = 2\nC_2 = 7\nC_3 = 63\nC_4 = 1234\n");
}

TEST(Cli, CountBackendsAgree) {
    const Result dfs = run_cli({"--builtin", "coloring:3", "--backend", "dfs", "count", "--n", "3"});
    const Result tm = run_cli({"--builtin", "coloring:3", "--backend", "transfer", "count", "--n", "3"});
    EXPECT_EQ(dfs.out, "C_3 = 246\n");
    EXPECT_EQ(dfs.out, tm.out);
}

TEST(Cli, CountFormats) {
    const Result csv = run_cli({"--builtin", "hard-square", "--format", "csv", "count", "--n-max", "2"});
    EXPECT_EQ(csv.out, "n,C_n\n1,2\n2,7\n");
    const Result js = run_cli({"--model", model_path("hard-square-2d.json"), "--format", "json", "count", "--n", "3"});
    const auto doc = nlohmann::json::parse(js.out);
    EXPECT_EQ(doc["counts"][0]["C_n"], "63");
}

TEST(Cli, BoundsJsonSchema) {
    const Result r = run_cli({"--builtin", "hard-square", "--format", "json", "bounds", "--n-max", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["d"], 2);
    EXPECT_EQ(doc["rows"].size(), 3U);
    EXPECT_EQ(doc["rows"][2]["C_n"], "63");
    EXPECT_TRUE(doc["rows"][0]["checks"].contains("doubling"));
}

TEST(Cli, BoundsEmptyModelPrintsMinusInf) {
    const Result js = run_cli({"--model", model_path("empty.json"), "--format", "json", "bounds", "--n-max", "2"});
    ASSERT_EQ(js.code, 0) << js.err;
    const auto doc = nlohmann::json::parse(js.out);
    EXPECT_EQ(doc["rows"][1]["upper"], "-inf");
    EXPECT_EQ(doc["rows"][1]["lower"], "-inf");
    const Result table = run_cli({"--model", model_path("empty.json"), "bounds", "--n-max", "2"});
    EXPECT_NE(table.out.find("-inf"), std::string::npos);
}

TEST(Cli, BoundsTableAndLogBase) {
    const Result r = run_cli({"--builtin", "hard-square", "bounds", "--n-max", "2"});
    EXPECT_NE(r.out.find("0.486478"), std::string::npos) << r.out;
    const Result two = run_cli({"--builtin", "hard-square", "--log-base", "2", "bounds", "--n-max", "1"});
    EXPECT_NE(two.out.find("1.000000"), std::string::npos) << two.out;
}

TEST(Cli, VerifyPasses) {
    const Result r = run_cli({"--builtin", "hard-square", "verify", "--n", "2", "--samples", "50"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("(63 >= 35) PASS"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("all checks PASS"), std::string::npos);
}

TEST(Cli, SameSeedSameOutput) {
    const std::vector<std::string> args{"--builtin", "hard-square", "--seed", "7", "glue-demo", "--n", "3"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("admissible: yes, wrap: yes, tiling: yes"), std::string::npos) << a.out;
    const Result v1 = run_cli({"--builtin", "coloring:3", "--seed", "3", "verify", "--n", "2", "--samples", "30"});
    const Result v2 = run_cli({"--builtin", "coloring:3", "--seed", "3", "verify", "--n", "2", "--samples", "30"});
    EXPECT_EQ(v1.out, v2.out);
}

TEST(Cli, GlueDemoThreeDimensions) {
    const Result r = run_cli({"--builtin", "coloring:3", "--dim", "3", "glue-demo", "--n", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("# glued (side 3)"), std::string::npos);
    EXPECT_NE(r.out.find("# P_7"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({"--builtin", "triangle", "count", "--n", "2"}).code, 1);
    EXPECT_EQ(run_cli({"--model", "/nonexistent.json", "count", "--n", "2"}).code, 1);
    EXPECT_EQ(run_cli({"count", "--n", "2"}).code, 1);
    EXPECT_EQ(run_cli({"--builtin", "hard-square", "bounds"}).code, 1);
    EXPECT_EQ(run_cli({"--builtin", "hard-square", "--format", "xml", "count", "--n", "2"}).code, 1);
    EXPECT_EQ(run_cli({"--builtin", "hard-square", "--backend", "dfs", "--node-budget", "10", "count", "--n", "6"}).code,
              2);
    // No same-state tuple exists when nothing of side 2 is admissible.
    EXPECT_EQ(run_cli({"--model", model_path("empty.json"), "glue-demo", "--n", "2"}).code, 2);
    const Result bad = run_cli({"--builtin", "coloring:x", "count", "--n", "1"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_FALSE(bad.err.empty());
}
