#pragma once

#include <cantor/json_io.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cantor::cli {

struct SuiteConfig {
    std::size_t depth = 4;
    std::size_t lookahead = 8;
    std::size_t budget = 64;
    std::uint64_t seed = 1;
    std::size_t samples = 200;
    std::size_t resolution = 10;
};

struct SuiteResult {
    Json report;
    bool ok = true;
};

const std::vector<std::string>& suite_names();

/// Runs one property suite; the report lists pass/fail counts per property.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config);

}  // namespace cantor::cli
