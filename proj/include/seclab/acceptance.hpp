#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace seclab {

enum class Suite { Fast, Full };

Suite parse_suite(std::string_view name);  // "fast" | "full"; throws BadFlags

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

/// Fast runs the binary64 criteria; Full adds the double-double order and
/// AEC checks. A criterion fails if its check fails or it exceeds its time limit.
std::vector<CriterionResult> run_acceptance(Suite suite);

std::string format_result_line(const CriterionResult& r);

}  // namespace seclab
