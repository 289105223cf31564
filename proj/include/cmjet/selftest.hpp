#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmjet {

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures;

    bool ok() const { return failed == 0; }
};

SuiteResult selftest_appendix(uint64_t seed);
SuiteResult selftest_normalform(uint64_t seed);
SuiteResult selftest_jets(uint64_t seed);

std::vector<SuiteResult> run_selftests(const std::string& suite, uint64_t seed);

}  // namespace cmjet
