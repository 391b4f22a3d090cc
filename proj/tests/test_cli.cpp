#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seclab/cli.hpp"

using namespace seclab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("seclab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, TraceJsonDoubleDouble) {
    const auto r = run({"trace", "--problem", "quadratic_sqrt2", "--backend", "dd", "--x0", "1", "--x1", "2",
                        "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["backend"], "dd");
    EXPECT_EQ(j["method"], "secant");
    ASSERT_TRUE(j["report"]["p_hat"].is_number());
    EXPECT_GT(j["report"]["p_hat"].get<double>(), 1.5);
    EXPECT_LT(j["report"]["p_hat"].get<double>(), 1.7);
}

TEST(Cli, TraceFromRatioAndNewton) {
    auto r = run({"trace", "--problem", "pure_power_2", "--k0", "0.5", "--e0", "1e-3", "--output", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("n,x,fx,e,E,k\n", 0), 0u);
    EXPECT_NE(r.out.find("\n1,5.0000000000000001e-04,"), std::string::npos);

    r = run({"trace", "--problem", "quadratic_sqrt2", "--method", "newton", "--x0", "1.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("method=newton"), std::string::npos);
}

TEST(Cli, BreakdownTraceExitsTwo) {
    const auto r = run({"trace", "--problem", "pure_power_2", "--k0", "-1", "--e0", "1e-3"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("termination=SecantBreakdown"), std::string::npos);
}

TEST(Cli, BreakdownTraceStillWritesItsArtifact) {
    TempDir dir;
    const auto path = dir.file("t.csv");
    const auto r = run({"trace", "--problem", "pure_power_2", "--k0", "-1", "--e0", "1e-3", "--output", "csv",
                        "--out", path});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(slurp(path).rfind("n,x,fx,e,E,k\n", 0), 0u);
    EXPECT_NE(r.out.find("termination=SecantBreakdown"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run({"trace", "--problem", "quartic", "--x0", "1", "--x1", "2"}).code, 1);
    EXPECT_EQ(run({"trace", "--problem", "quadratic_sqrt2", "--x0", "1"}).code, 1);
    EXPECT_EQ(run({"trace", "--problem", "quadratic_sqrt2", "--x0", "abc", "--x1", "2"}).code, 1);
    EXPECT_EQ(run({"trace", "--problem", "quadratic_sqrt2", "--x0", "1", "--x1", "2", "--max-iter", "0"}).code, 1);
    EXPECT_EQ(run({"trace", "--problem", "quadratic_sqrt2", "--backend", "quad", "--x0", "1", "--x1", "2"}).code, 1);
    EXPECT_EQ(run({"constants", "--m", "1"}).code, 1);
    EXPECT_EQ(run({"basin", "--m", "2", "--n", "0"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    const auto r = run({"trace", "--problem", "quartic", "--x0", "1", "--x1", "2"});
    EXPECT_EQ(r.err.rfind("error: UnknownProblem", 0), 0u) << r.err;
}

TEST(Cli, NothingWrittenOnError) {
    TempDir dir;
    const auto path = dir.file("never.csv");
    const auto r = run({"trace", "--problem", "quartic", "--x0", "1", "--x1", "2", "--out", path});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(fs::exists(path));
}

TEST(Cli, ConstantsTable) {
    const auto r = run({"constants", "--m", "2,3,4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0.6180339887"), std::string::npos);
    EXPECT_NE(r.out.find("-1.3802775691"), std::string::npos);

    const auto j = nlohmann::json::parse(run({"constants", "--m", "3", "--output", "json"}).out);
    EXPECT_TRUE(j[0]["c_2m1"].is_null());
    EXPECT_NEAR(j[0]["c_m0"].get<double>(), 0.7548776662466927, 1e-15);
}

TEST(Cli, Classify) {
    auto r = run({"classify", "--m", "2", "--k0", "-1.8", "--e0", "1e-4", "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["classification"]["verdict"], "ConvergesLinearly");
    EXPECT_EQ(j["classification"]["exit_index"], 2);

    // A predicted breakdown is a result, not a failure of the command.
    r = run({"classify", "--problem", "pure_power_2", "--k0", "-2", "--e0", "1e-3", "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["classification"]["verdict"], "Breakdown");
    EXPECT_EQ(j["classification"]["breakdown_step"], 3);

    EXPECT_EQ(run({"classify", "--problem", "quadratic_sqrt2", "--k0", "0.5", "--e0", "1e-3"}).code, 1);
    EXPECT_EQ(run({"classify", "--problem", "pure_power_2", "--m", "4", "--k0", "0.5", "--e0", "1e-3"}).code, 1);
}

TEST(Cli, BasinOutputIsIndependentOfThreadCount) {
    const std::vector<std::string> args{"basin", "--m", "4", "--lo", "-3", "--hi", "3", "--n", "601", "--e0", "1e-4"};
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    const auto one = run(args);
    ASSERT_EQ(one.code, 0) << one.err;
    for (int threads : {2, 3, 8}) {
#ifdef _OPENMP
        omp_set_num_threads(threads);
#endif
        EXPECT_EQ(run(args).out, one.out) << threads;
    }
    // 2 header lines + 601 rows
    EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 603);
}

TEST(Cli, BasinJson) {
    const auto r = run({"basin", "--m", "3", "--lo", "-1", "--hi", "1", "--n", "3", "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["points"].size(), 3u);
    EXPECT_EQ(j["points"][0]["verdict"], "Breakdown");
    EXPECT_EQ(j["points"][1]["verdict"], "ExcludedByHypothesis");
    EXPECT_EQ(j["points"][2]["breakdown_step"], 1);
}

TEST(Cli, Efficiency) {
    auto r = run({"efficiency", "--m-cost", "1", "--s", "0.2", "--m-alpha", "0.3536", "--e0", "0.1", "--eps",
                  "1e-12", "--output", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["T_N"].get<double>(), 4.8, 1e-12);
    EXPECT_EQ(j["T_S"].get<double>(), 5.0);

    r = run({"efficiency", "--m-cost", "1", "--s", "1", "--m-alpha", "0.3536", "--e0", "0.1", "--eps", "1e-12"});
    EXPECT_NE(r.out.find("faster=secant"), std::string::npos);

    EXPECT_EQ(run({"efficiency", "--m-alpha", "20", "--e0", "0.1", "--eps", "1e-12"}).code, 1);
}

TEST(Cli, ConfigFileFlagsWin) {
    TempDir dir;
    const auto cfg = dir.file("c.json");
    std::ofstream(cfg) << R"({"subcommand": "classify", "m": 2, "k0": 0.5, "e0": 1e-4, "output": "json"})";

    auto r = run({"--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["classification"]["verdict"], "ConvergesLinearly");

    r = run({"classify", "--k0", "-2", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["classification"]["verdict"], "Breakdown");

    EXPECT_EQ(run({"--config", dir.file("missing.json")}).code, 1);
}

TEST(Cli, VerifySuites) {
    const auto r = run({"verify", "fast"});
    EXPECT_EQ(r.code, 0) << r.out;
    std::istringstream lines(r.out);
    int criteria = 0;
    for (std::string line; std::getline(lines, line);) {
        if (line.rfind("all criteria", 0) == 0) continue;
        EXPECT_EQ(line.rfind("PASS", 0), 0u) << line;
        ++criteria;
    }
    EXPECT_EQ(criteria, 9);  // the double-double criteria only run in the full suite
    EXPECT_EQ(run({"verify", "everything"}).code, 1);
}

TEST(Cli, Help) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("basin"), std::string::npos);
}
