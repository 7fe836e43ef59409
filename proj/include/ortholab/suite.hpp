#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ortholab/io.hpp"

namespace ortholab {

inline const std::vector<std::string> kSuiteModules{"lattice", "typedecomp", "matalg", "cellfun", "cli"};

struct SuiteConfig {
    std::uint64_t seed = 1;
    int count = 100;                   // random instances per property
    int depth = kDefaultDepth;         // family size for type ideal and type relation checks
    double tol = kIdentityTol;         // tolerance for numeric identities
    std::vector<std::string> modules;  // empty means all
    std::vector<std::pair<std::string, Json>> lattices;  // extra lattice files, validated and checked
};

// Reads {seed, count, depth, tol, modules}; throws IoError("config-parse-error").
SuiteConfig parse_suite_config(const Json& j);

struct PropertyResult {
    std::string module, name;
    int instances = 0, failed = 0;
    std::vector<Json> counterexamples;  // first few failures
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<PropertyResult> properties;
    bool ok() const;
};

SuiteReport run_suite(const SuiteConfig& config);
Json suite_report_json(const SuiteReport& r);

// Property names per module, in run order.
std::vector<std::pair<std::string, std::string>> suite_properties();

}  // namespace ortholab
