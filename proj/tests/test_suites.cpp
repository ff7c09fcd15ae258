#include "doctest.h"

#include "grassproj/error.hpp"
#include "grassproj/suites.hpp"
#include "test_support.hpp"

using namespace grassproj;
using grassproj::testing::throws_code;

TEST_CASE("every suite passes at small sizes") {
    SuiteConfig cfg;
    cfg.trials = 200;
    cfg.seed = 3;
    for (auto name : suite_names()) {
        CAPTURE(name);
        const auto r = run_suite(name, cfg);
        CHECK(r.name == name);
        CHECK(r.violations == 0);
        CHECK(r.reproducer.empty());
        CHECK(r.checked > 0);
    }
}

TEST_CASE("exhaustive parts enumerate the whole cube") {
    SuiteConfig cfg;
    cfg.trials = 0;
    cfg.exhaustive_cube = 3;
    CHECK(run_suite("uct", cfg).checked == 256);
    CHECK(run_suite("energy-proj", cfg).checked == 255);
    cfg.exhaustive_cube = 2;
    CHECK(run_suite("uct", cfg).checked == 16);
    cfg.exhaustive_cube = 4;
    // Pair covers of {1,2,3,4}: three 4-cycles and three doubled matchings.
    const auto r = run_suite("uct", cfg);
    CHECK(r.violations == 0);
    CHECK(r.checked == 6 * 65536);
}

TEST_CASE("suite results do not depend on the thread count") {
    for (auto name : {"geometry", "trichotomy", "bigcap"}) {
        SuiteConfig one{150, 9, 3, 1};
        SuiteConfig many{150, 9, 3, 4};
        const auto a = run_suite(name, one);
        const auto b = run_suite(name, many);
        CHECK(a.checked == b.checked);
        CHECK(a.violations == b.violations);
    }
}

TEST_CASE("bad suite configuration") {
    CHECK(throws_code([] { (void)run_suite("nope", SuiteConfig{}); }, ErrorCode::InvalidArgument));
    CHECK(throws_code([] { (void)run_suite("uct", SuiteConfig{10, 0, 5, 1}); }, ErrorCode::InvalidArgument));
}
