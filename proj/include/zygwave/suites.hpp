#pragma once

// The experiment suites behind the CLI: each run_suite call executes one
// named experiment, writes CSV artifacts plus a deterministic report.txt
// into the configured output directory, and returns the gated checks.
//
// Outputs depend only on (config, seed): no timestamps, no machine state,
// no thread-count sensitivity.

#include <string>
#include <vector>

#include "zygwave/config.hpp"

namespace zyg {

struct CheckRow {
    std::string name;
    bool gated = true;  // false: informational only, never fails the suite
    bool pass = true;
    double value = 0.0;
    std::string note;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckRow> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (c.gated && !c.pass) return false;
        return true;
    }
};

// Dispatch on cfg.experiment (one of suite_names()). Creates the output
// directory. Throws config_error for configurations a suite cannot honor.
SuiteResult run_suite(const ExperimentConfig& cfg);

}  // namespace zyg
