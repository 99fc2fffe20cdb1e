#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ultratree/tolerance.hpp"

namespace ultratree::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst observed deviation
    double threshold = 0.0;  // bound it is held to
    std::size_t cases = 0;
    double seconds = 0.0;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    Tolerance tol{};
};

inline constexpr int kCriterionCount = 10;

/// Runs one criterion (1..10). Throws std::out_of_range for other ids.
CriterionResult run_criterion(int id, const SuiteOptions& opts);
std::vector<CriterionResult> run_suite(const SuiteOptions& opts);

/// "PASS  3  name: measured <= threshold (cases, seconds) detail"
std::string format_line(const CriterionResult& r);
nlohmann::json to_json(const std::vector<CriterionResult>& results, const SuiteOptions& opts);

}  // namespace ultratree::acceptance
