#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "seclab/io.hpp"

using namespace seclab;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST(TraceCsv, HeaderRowsAndEmptyCells) {
    const auto t = run_secant(find_problem<double>("quadratic_sqrt2"), 1.0, 2.0);
    std::ostringstream os;
    write_trace_csv(os, t);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), t.steps.size() + 1);
    EXPECT_EQ(lines[0], "n,x,fx,e,E,k");
    EXPECT_EQ(lines[1].substr(0, 2), "0,");
    // k_n needs x_{n+1}, so only the last row leaves it empty.
    EXPECT_NE(lines[1].back(), ',');
    EXPECT_EQ(lines.back().back(), ',');
    EXPECT_NE(lines[1].find("1.0000000000000000e+00"), std::string::npos);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), ','), 5) << lines[i];
    }
}

TEST(TraceCsv, UnknownRootLeavesErrorColumnsEmpty) {
    auto p = find_problem<double>("quadratic_sqrt2");
    p.root.reset();
    StoppingCriteria<double> s;
    s.max_iter = 2;
    const auto t = run_secant(p, 1.0, 2.0, s);
    std::ostringstream os;
    write_trace_csv(os, t);
    const auto lines = lines_of(os.str());
    for (std::size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(lines[i].substr(lines[i].size() - 3), ",,,");
}

TEST(TraceJson, Fields) {
    const auto t = run_secant(find_problem<DoubleDouble>("quadratic_sqrt2"), DoubleDouble(1.0), DoubleDouble(2.0));
    const auto j = trace_to_json(t);
    EXPECT_EQ(j["problem"], "quadratic_sqrt2");
    EXPECT_EQ(j["method"], "secant");
    EXPECT_EQ(j["backend"], "dd");
    EXPECT_EQ(j["termination"], "PrecisionFloor");
    EXPECT_TRUE(j["precision_floor"].is_string());
    EXPECT_TRUE(j["breakdown_index"].is_null());
    ASSERT_EQ(j["steps"].size(), t.steps.size());
    EXPECT_EQ(j["steps"][0]["x"], "1.0000000000000000000000000000000e+00");
    EXPECT_TRUE(j["steps"][0]["k"].is_string());
    EXPECT_TRUE(j["steps"].back()["k"].is_null());
    // Keys keep their insertion order.
    EXPECT_EQ(j.begin().key(), "problem");
}

TEST(TraceJson, BreakdownIndex) {
    const auto t = run_secant(find_problem<double>("pure_power_2"), 1e-3, -1e-3);
    const auto j = trace_to_json(t);
    // f(x1) == f(x0) for an even power at x1 = -x0.
    EXPECT_EQ(j["termination"], "SecantBreakdown");
    EXPECT_FALSE(j["breakdown_index"].is_null());
}

TEST(OrderReportJson, NullsForMissingValues) {
    OrderReport r;
    r.verdict = "refused: ExactRootTrace";
    r.theoretical_p = 2.0;
    const auto j = order_report_to_json(r);
    EXPECT_TRUE(j["p_hat"].is_null());
    EXPECT_EQ(j["theoretical_p"], 2.0);
    EXPECT_EQ(j["verdict"], "refused: ExactRootTrace");
}

TEST(BasinCsv, HeaderAndVerdictCells) {
    const std::vector<double> grid{-2.0, -1.8, 0.0, 0.5};
    const auto pts = basin_sweep(2, grid, 1e-4);
    std::ostringstream os;
    write_basin_csv(os, 2, pts);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 6u);
    EXPECT_EQ(lines[0].rfind("# m=2 c_m0=6.18033988749894", 0), 0u);
    EXPECT_NE(lines[0].find("c_2m2=-2.0000000000000000e+00"), std::string::npos);
    EXPECT_EQ(lines[1], "k0,verdict,exit_index,exit_value,predicted_aec");
    EXPECT_EQ(lines[2].rfind("-2.0000000000000000e+00,Breakdown(3),", 0), 0u);
    EXPECT_NE(lines[3].find(",ConvergesLinearly,2,"), std::string::npos);
    EXPECT_EQ(lines[4].rfind("0.0000000000000000e+00,ExcludedByHypothesis,", 0), 0u);
    EXPECT_EQ(lines[4].back(), ',');  // no predicted AEC
    EXPECT_NE(lines[5].find(",ConvergesLinearly,0,5.0000000000000000e-01,6.18"), std::string::npos);
}

TEST(BasinCsv, OddMultiplicityHeaderHasNoBandConstants) {
    std::ostringstream os;
    write_basin_csv(os, 3, std::span<const BasinPoint>{});
    const auto lines = lines_of(os.str());
    EXPECT_EQ(lines[0].find("c_2m1"), std::string::npos);
}

TEST(ConstantsTable, Text) {
    const std::vector<int> ms{2, 3, 4};
    std::ostringstream os;
    write_constants_table(os, ms, TableFormat::Text);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_NE(lines[1].find("0.6180339887"), std::string::npos);
    EXPECT_NE(lines[1].find("-1.6180339887"), std::string::npos);
    EXPECT_NE(lines[1].find("-2.0000000000"), std::string::npos);
    EXPECT_NE(lines[2].find("0.7548776662"), std::string::npos);
    EXPECT_NE(lines[3].find("-1.5436890127"), std::string::npos);
}

TEST(ConstantsTable, CsvHasEmptyCellsForOddM) {
    const std::vector<int> ms{3};
    std::ostringstream os;
    write_constants_table(os, ms, TableFormat::Csv);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "m,c_m0,c_2m1,c_2m2,res_c_m0,res_c_2m1,res_c_2m2");
    EXPECT_EQ(lines[1].rfind("3,7.54877666246692", 0), 0u);
    EXPECT_EQ(lines[1].substr(lines[1].size() - 2), ",,");
}

TEST(ConstantsTable, RejectsBadM) {
    const std::vector<int> ms{2, 1};
    std::ostringstream os;
    EXPECT_THROW(write_constants_table(os, ms, TableFormat::Text), Error);
    EXPECT_TRUE(os.str().empty());
}
