#pragma once

// Randomised and exhaustive invariant suites run by `grassproj verify`.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace grassproj {

struct SuiteConfig {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    int exhaustive_cube = 3;  ///< side-2 cube dimension for the exhaustive parts (2..4)
    unsigned threads = 0;
};

struct SuiteResult {
    std::string name;
    std::size_t checked = 0;     ///< individual inequalities / identities evaluated
    std::size_t violations = 0;
    std::string reproducer;      ///< first violating instance (lowest trial index), else empty
};

/// uct, energy-proj, trichotomy, geometry, ruzsa, pluennecke,
/// additive-energy, trim, bigcap, smallcap, sums.
const std::vector<std::string_view>& suite_names();

/// Throws InvalidArgument for an unknown suite or a cube dimension outside
/// 2..4. Results do not depend on the thread count.
SuiteResult run_suite(std::string_view name, const SuiteConfig& config);

}  // namespace grassproj
