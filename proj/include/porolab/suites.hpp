#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace porolab {

struct SuiteResult {
    std::string name;
    std::size_t passed = 0, failed = 0, skipped = 0;
    std::vector<std::string> lines;  // one per property/set, deterministic order

    bool ok() const { return failed == 0; }
};

std::vector<std::string> suite_names();

/// Runs a named invariant suite over the bundled corpus. Throws AnalysisError
/// for an unknown suite name (the message lists the known ones).
SuiteResult run_suite(const std::string& name, std::size_t depth);

}  // namespace porolab
