#pragma once

#include "hyperlat/lattice.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hyperlat {

struct CheckResult {
    std::string name;
    std::string subject; // "{p,q}" or "grid"
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::vector<LatticeParams> grid;
    int threads = 1;
    std::uint64_t seed = 0;
};

// Headless property battery over the grid: recursion/graph agreement,
// boundary identity, spectral and Cheeger identities, growth series, Euler
// characteristic, closed-form vs graph perimeters, classifier behaviour,
// small brute-force oracles, and embedding checks.
std::vector<CheckResult> verify_all(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

nlohmann::ordered_json verify_report(const std::vector<CheckResult>& results);

// "p1,q1;p2,q2;..." -> validated params list.
std::vector<LatticeParams> parse_grid(const std::string& spec);

} // namespace hyperlat
