#include <cstdio>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, bool with_stderr = false) {
    std::string cmd = std::string(HSMULT_CLI) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) { return std::string(HSMULT_FIXTURES) + "/" + name; }

} // namespace

TEST(Cli, MultReportsFive) {
    auto r = run("mult " + fixture("example1.json") + " --json --no-timing");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], "hsmult-report/1");
    EXPECT_EQ(j["result"]["e"], 5);
    EXPECT_EQ(j["result"]["polylist"][0], "t_1_3");
    EXPECT_FALSE(j.contains("timing_ms"));
}

TEST(Cli, HumanReadableOutput) {
    auto r = run("mult " + fixture("example1.txt"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("e = 5 (4 + 1)", 0), 0u) << r.out;
}

TEST(Cli, MemberXz) {
    auto r = run("member " + fixture("example3_j1.json") + " x*z --json");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["result"]["member"], true);
    EXPECT_EQ(j["result"]["split_ideal"], nlohmann::json::array({8, 2}));
    EXPECT_EQ(j["result"]["split_extended"], nlohmann::json::array({7, 3}));
}

TEST(Cli, ReduceOverPrimeField) {
    auto r = run("reduce " + fixture("example1_f32003.json") + " --json --no-timing");
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["result"]["e"], 5);
    EXPECT_EQ(j["result"]["reduction"]["a"], nlohmann::json::parse(R"([["1"],["1"]])"));
    EXPECT_EQ(j["result"]["reduction"]["length_verified"], true);
}

TEST(Cli, DualAndLength) {
    auto d = run("dual " + fixture("example1.json") + " --json");
    ASSERT_EQ(d.code, 0);
    EXPECT_EQ(nlohmann::json::parse(d.out)["result"]["length"], 4);
    auto l = run("length " + fixture("series.txt") + " --order grevlex");
    ASSERT_EQ(l.code, 0);
    EXPECT_EQ(l.out.rfind("length ", 0), 0u);
}

TEST(Cli, ReportsAreDeterministic) {
    std::string args = "reduce " + fixture("example2.json") + " --json --no-timing";
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("mult /nonexistent/file.json").code, 2);
    EXPECT_EQ(run("bogus " + fixture("example1.json")).code, 2);
    EXPECT_EQ(run("member " + fixture("example1.json") + " 'x +'").code, 2);
    auto cap = run("mult " + fixture("example2.json") + " --max-degree 2", true);
    EXPECT_EQ(cap.code, 3);
    auto j = nlohmann::json::parse(cap.out);
    EXPECT_EQ(j["error"]["kind"], "CapExceeded");
    EXPECT_EQ(run("reduce " + fixture("example1.json") + " --search-bound 0").code, 4);
}

TEST(Cli, ParseErrorPosition) {
    auto r = run("member " + fixture("example1.json") + " 'x + w'", true);
    EXPECT_EQ(r.code, 2);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["error"]["kind"], "ParseError");
    EXPECT_EQ(j["error"]["column"], 5);
}

TEST(Cli, Selftest) {
    auto r = run("selftest " + fixture("example1.json"));
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
