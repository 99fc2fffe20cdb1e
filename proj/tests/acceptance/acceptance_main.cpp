// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on failure.
//   acceptance_tests [--seed N] [--only K]
#include <cstdlib>
#include <iostream>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
    using namespace ultratree::acceptance;
    SuiteOptions opts;
    int only = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--seed") opts.seed = std::stoull(argv[i + 1]);
        else if (flag == "--only") only = std::stoi(argv[i + 1]);
        else {
            std::cerr << "unknown flag " << flag << "\n";
            return 2;
        }
    }
    bool ok = true;
    auto report = [&](const CriterionResult& r) {
        std::cout << format_line(r) << std::endl;
        ok = ok && r.passed;
    };
    if (only > 0) {
        report(run_criterion(only, opts));
    } else {
        for (const auto& r : run_suite(opts)) report(r);
    }
    std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
