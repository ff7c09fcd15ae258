#include "doctest.h"

#include "grassproj/dset.hpp"
#include "grassproj/error.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

using namespace grassproj;
using grassproj::testing::random_subspace;
using grassproj::testing::throws_code;
using grassproj::testing::uniform_int;
using grassproj::testing::vec;

namespace {

DiscretizedSet make_set(int n, int k, std::vector<Point> cells) {
    return DiscretizedSet(k, LatticeSet(n, std::move(cells)));
}

DiscretizedSet grid(int n, int k, std::int64_t side) {
    std::vector<Point> cells;
    Point z(static_cast<std::size_t>(n), 0);
    while (true) {
        cells.push_back(z);
        int i = 0;
        while (i < n && z[static_cast<std::size_t>(i)] == side - 1) z[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
        ++z[static_cast<std::size_t>(i)];
    }
    return make_set(n, k, cells);
}

DiscretizedSet segment(std::int64_t len) {
    std::vector<Point> cells;
    for (std::int64_t i = 0; i < len; ++i) cells.push_back({i, 0});
    return make_set(2, 3, cells);
}

// Planar cells (half-open) meeting the closed disc of radius r (in cell
// units) about the origin, found by the nearest point of each cell.
DiscretizedSet disc_oracle(std::int64_t r, int k) {
    std::vector<Point> cells;
    for (std::int64_t x = -r - 1; x <= r; ++x) {
        for (std::int64_t y = -r - 1; y <= r; ++y) {
            bool open_side = false;
            std::int64_t d2 = 0;
            for (auto c : {x, y}) {
                if (c >= 0) {
                    d2 += c * c;
                } else if (c <= -1) {
                    d2 += (c + 1) * (c + 1);
                    if (c + 1 != 0) open_side = true;
                }
            }
            if (d2 < r * r || (d2 == r * r && !open_side)) cells.push_back({x, y});
        }
    }
    return make_set(2, k, cells);
}

DiscretizedSet random_set(int n, int k, std::int64_t box, std::size_t count, std::mt19937_64& gen) {
    std::vector<Point> cells;
    for (std::size_t i = 0; i < count; ++i) {
        Point z(static_cast<std::size_t>(n));
        for (auto& c : z) c = uniform_int(0, static_cast<int>(box) - 1, gen);
        cells.push_back(z);
    }
    return make_set(n, k, cells);
}

// Largest subset of cell centres with pairwise distance > sep (cell units),
// by exhaustive search.
std::size_t max_separated_bruteforce(const DiscretizedSet& a, double sep) {
    const auto n = a.size();
    REQUIRE(n <= 20);
    std::vector<std::uint32_t> conflict(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double d2 = 0;
            for (int t = 0; t < a.dim(); ++t) {
                const double d = static_cast<double>(a.cells()[i][t] - a.cells()[j][t]);
                d2 += d * d;
            }
            if (std::sqrt(d2) <= sep) conflict[i] |= 1u << j;
        }
    }
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if ((mask >> i & 1u) && (conflict[i] & mask)) ok = false;
        }
        if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
    }
    return best;
}

// Frostman statistic straight from the definition via restrict_ball.
double frostman_reference(const DiscretizedSet& a, double kappa) {
    double best = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int j = 0; j <= a.k(); ++j) {
            const double rho = a.delta() * std::ldexp(1.0, j);
            const auto count = restrict_ball(a, a.center(i), rho).size();
            best = std::max(best, static_cast<double>(count) / (std::pow(rho, kappa) * static_cast<double>(a.size())));
        }
    }
    return best;
}

DiscretizedSet cantor_base4(int digits) {
    std::vector<Point> cells;
    for (int mask = 0; mask < (1 << digits); ++mask) {
        std::int64_t z = 0;
        for (int d = 0; d < digits; ++d) z = 4 * z + ((mask >> (digits - 1 - d) & 1) ? 3 : 0);
        cells.push_back({z});
    }
    return make_set(1, 2 * digits, cells);
}

}  // namespace

TEST_CASE("from_points discretises by flooring") {
    std::vector<Vec> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(vec({i / 8.0}));
    CHECK(from_points(1, 3, pts).size() == 8);
    CHECK(from_points(1, 3, {}).empty());
    const std::vector<Vec> close = {vec({0.0}), vec({0.01})};
    const auto one = from_points(1, 3, close);
    REQUIRE(one.size() == 1);
    CHECK(one.cells()[0] == Point{0});
    const std::vector<Vec> neg = {vec({-0.01, 0.26})};
    CHECK(from_points(2, 3, neg).cells()[0] == Point{-1, 2});
    CHECK(throws_code([&] { (void)from_points(1, 0, close); }, ErrorCode::InvalidArgument));
    CHECK(throws_code([&] { (void)from_points(2, 3, close); }, ErrorCode::DimMismatch));
}

TEST_CASE("cell counts") {
    CHECK(cell_count(grid(2, 3, 8)) == 64);
    CHECK(cell_count(DiscretizedSet(2, 3)) == 0);

    const auto disc = disc_oracle(32, 10);
    CHECK(disc.size() >= 3000);
    CHECK(disc.size() <= 3500);
    // Every point sample of the disc lands in an oracle cell.
    std::vector<Vec> samples;
    const double r = std::ldexp(1.0, -5);
    for (int i = 0; i < 400; ++i) {
        const double t = 2 * std::numbers::pi * i / 400.0;
        for (double s : {0.0, 0.3, 0.77, 1.0}) samples.push_back(vec({s * r * std::cos(t), s * r * std::sin(t)}));
    }
    CHECK(is_subset(from_points(2, 10, samples), disc));
}

TEST_CASE("greedy separated sets") {
    const auto single = make_set(2, 5, {{3, 4}});
    CHECK(covering_number_balls(single, 1.0 / 32) == 1);
    CHECK(covering_number_balls(single, 1.0) == 1);

    const auto seg = segment(8);
    const auto g = covering_number_balls(seg, 1.0 / 8);
    CHECK(g >= 2);
    CHECK(g <= 8);
    CHECK(g == 3);  // 0, 3, 6 under the lexicographic scan
    CHECK(g == max_separated_bruteforce(seg, 2.0));

    const auto full = grid(2, 4, 16);
    const auto cover = covering_number_balls(full, 0.25);
    const double ratio = static_cast<double>(full.size()) / static_cast<double>(cover);
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 64.0);

    CHECK(throws_code([&] { (void)covering_number_balls(seg, 1.0 / 16); }, ErrorCode::ScaleTooFine));
}

TEST_CASE("greedy count is sandwiched by the exhaustive maximum") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = uniform_int(1, 2, gen);
        const auto a = random_set(n, 4, 8, static_cast<std::size_t>(uniform_int(1, 18, gen)), gen);
        for (double dp : {1.0 / 16, 1.0 / 8, 1.5 / 16}) {
            const double sep = 2.0 * dp * 16.0;
            const auto greedy = covering_number_balls(a, dp);
            const auto best = max_separated_bruteforce(a, sep);
            CHECK(greedy <= best);
            // A maximal separated set is within a packing factor of the maximum.
            CHECK(best <= greedy * static_cast<std::size_t>(std::pow(3, n)));
        }
    }
}

TEST_CASE("ball cover constant") {
    CHECK(ball_cover_constant(1) == 4);
    const auto c2 = ball_cover_constant(2);
    // At least the area ratio of B(0,2) to a cube of side sqrt(2).
    CHECK(static_cast<double>(c2) >= 4 * std::numbers::pi / 2);
    CHECK(ball_cover_constant(3) >= c2);
    CHECK(throws_code([] { (void)ball_cover_constant(0); }, ErrorCode::InvalidArgument));
}

TEST_CASE("neighbourhoods") {
    const auto seg = segment(8);
    CHECK(neighborhood(seg, 0.0) == seg);
    const auto origin = make_set(2, 3, {{0, 0}});
    CHECK(neighborhood(origin, 1.0 / 8).size() == 9);

    std::vector<Point> line;
    for (std::int64_t i = 0; i < 8; ++i) line.push_back({i});
    const auto seg1 = make_set(1, 3, line);
    // Enumeration: cells -2..9.
    std::set<std::int64_t> expect;
    for (std::int64_t i = 0; i < 8; ++i)
        for (std::int64_t d = -2; d <= 2; ++d) expect.insert(i + d);
    CHECK(neighborhood(seg1, 2.0 / 8).size() == expect.size());
    CHECK(expect.size() == 12);
    // Non-multiples of delta round up.
    CHECK(neighborhood(origin, 0.01).size() == 9);
    CHECK(throws_code([&] { (void)neighborhood(seg, -1.0); }, ErrorCode::InvalidArgument));
}

TEST_CASE("neighbourhood growth and monotonicity") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = uniform_int(1, 3, gen);
        const auto a = random_set(n, 5, 10, static_cast<std::size_t>(uniform_int(1, 25, gen)), gen);
        DiscretizedSet prev = a;
        for (int r = 1; r <= 3; ++r) {
            const double rho = r / 32.0;
            const auto nb = neighborhood(a, rho);
            CHECK(is_subset(prev, nb));
            CHECK(static_cast<double>(nb.size()) <=
                  std::pow(4.0, n) * std::pow(1.0 + r, n) * static_cast<double>(a.size()));
            prev = nb;
        }
    }
}

TEST_CASE("restrict_ball") {
    const auto g = grid(2, 3, 8);
    CHECK(restrict_ball(g, vec({10.0, 10.0}), 0.5).empty());
    CHECK(restrict_ball(g, vec({0.5, 0.5}), 2.0) == g);

    const auto hit = restrict_ball(g, vec({0.25, 0.25}), 0.25);
    std::size_t expect = 0;
    const double radius = 0.25 + std::sqrt(2.0) / 16;
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y)
            if (std::hypot((x + 0.5) / 8 - 0.25, (y + 0.5) / 8 - 0.25) <= radius) ++expect;
    CHECK(hit.size() == expect);
    CHECK(hit.size() >= 4);
    CHECK(hit.size() <= 36);
    CHECK(throws_code([&] { (void)restrict_ball(g, vec({0.0, 0.0}), 0.01); }, ErrorCode::InvalidArgument));
    CHECK(throws_code([&] { (void)restrict_ball(g, vec({0.0}), 1.0); }, ErrorCode::DimMismatch));
}

TEST_CASE("projections") {
    const int e1[] = {0};
    const auto g = grid(2, 3, 8);
    CHECK(project_set(g, Subspace::coordinate(2, e1)).size() == 8);
    CHECK(project_set(make_set(2, 3, {{5, -2}}), Subspace::coordinate(2, e1)).size() == 1);

    const auto disc = disc_oracle(32, 10);
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto v = random_subspace(2, 1, gen);
        const auto p = project_set(disc, v);
        CHECK(p.dim() == 1);
        CHECK(p.size() >= 55);
        CHECK(p.size() <= 80);
    }
    CHECK(throws_code([&] { (void)project_set(g, Subspace::whole(3)); }, ErrorCode::AmbientMismatch));
}

TEST_CASE("projected cells follow the centres") {
    const int e2[] = {1};
    const auto a = make_set(2, 3, {{1, 2}, {4, -3}});
    const auto cells = projected_cells(a, Subspace::coordinate(2, e2));
    CHECK(cells == std::vector<Point>{{2}, {-3}});
}

TEST_CASE("slices") {
    const int e1[] = {0};
    const auto g = grid(2, 3, 8);
    const auto v = Subspace::coordinate(2, e1);
    CHECK(slice(g, v, vec({3.5 / 8})).size() == 8);
    CHECK(slice(g, v, vec({2.0})).empty());

    // Plane {0..3}^2 x {0} plus a vertical stalk at the origin.
    std::vector<Point> cells;
    for (std::int64_t x = 0; x < 4; ++x)
        for (std::int64_t y = 0; y < 4; ++y) cells.push_back({x, y, 0});
    for (std::int64_t z = 1; z <= 4; ++z) cells.push_back({0, 0, z});
    const auto su = make_set(3, 3, cells);
    const int e3[] = {2};
    CHECK(slice(su, Subspace::coordinate(3, e3), vec({0.0})).size() == 16);
    CHECK(throws_code([&] { (void)slice(g, v, vec({0.0, 0.0})); }, ErrorCode::DimMismatch));
}

TEST_CASE("linear images") {
    const auto seg = segment(8);
    CHECK(linear_image(seg, LinearMap::identity(2)) == seg);

    Mat two = 2.0 * Mat::Identity(2, 2);
    const auto img = linear_image(make_set(2, 3, {{1, 1}}), LinearMap(two));
    CHECK(img.size() >= 1);
    CHECK(img.size() <= 4);

    const double c = std::cos(std::numbers::pi / 4);
    Mat rot(2, 2);
    rot << c, -c, c, c;
    const auto rotated = linear_image(seg, LinearMap(rot));
    std::set<Point> expect;
    for (int i = 0; i < 8; ++i) {
        const double x = i + 0.5;
        const double y = 0.5;
        expect.insert({static_cast<std::int64_t>(std::floor(c * x - c * y)),
                       static_cast<std::int64_t>(std::floor(c * x + c * y))});
    }
    CHECK(rotated.size() == expect.size());
    CHECK(rotated.size() >= 8);
    CHECK(rotated.size() <= 16);
}

TEST_CASE("Lipschitz image bound") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = uniform_int(1, 3, gen);
        const auto a = random_set(n, 5, 12, static_cast<std::size_t>(uniform_int(1, 40, gen)), gen);
        Mat m = grassproj::testing::gaussian_matrix(n, n, gen);
        LinearMap f(m);
        if (f.norm() < 1.0) f = LinearMap(Mat(m / f.norm()));
        const auto img = linear_image(a, f);
        CHECK(static_cast<double>(img.size()) <=
              std::pow(4.0, n) * std::pow(f.norm(), n) * static_cast<double>(a.size()));
    }
}

TEST_CASE("coarsening and set algebra") {
    const auto a = make_set(1, 3, {{-1}, {0}, {1}, {5}});
    const auto c = coarsen(a, 1);
    CHECK(c.k() == 1);
    CHECK(c.cells() == LatticeSet(1, {{-1}, {0}, {1}}));
    CHECK(coarsen(a, 3) == a);
    CHECK(throws_code([&] { (void)coarsen(a, 4); }, ErrorCode::InvalidArgument));

    const auto b = make_set(1, 3, {{0}, {7}});
    CHECK(set_union(a, b).size() == 5);
    CHECK(set_intersection(a, b).size() == 1);
    CHECK(is_subset(set_intersection(a, b), a));
    CHECK_FALSE(is_subset(b, a));
    CHECK(throws_code([&] { (void)set_union(a, coarsen(b, 2)); }, ErrorCode::InvalidArgument));
}

TEST_CASE("frostman statistic") {
    for (int n = 1; n <= 2; ++n) {
        const int k = 5;
        const auto g = grid(n, k, 32);
        CHECK(frostman_stat(g, n) <= std::pow(4.0, n));
    }
    const auto single = make_set(2, 6, {{1, 1}});
    CHECK(frostman_stat(single, 0.7) == doctest::Approx(std::pow(2.0, 6 * 0.7)).epsilon(1e-12));

    const auto cantor = cantor_base4(10);
    REQUIRE(cantor.size() == 1024);
    REQUIRE(cantor.k() == 20);
    CHECK(frostman_stat(cantor, 0.5) <= 8.0);

    CHECK(throws_code([] { (void)frostman_stat(DiscretizedSet(2, 3), 1.0); }, ErrorCode::EmptySet));
    CHECK(throws_code([&] { (void)frostman_stat(single, 0.0); }, ErrorCode::InvalidArgument));
}

TEST_CASE("frostman statistic agrees with the direct definition") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = uniform_int(1, 3, gen);
        const auto a = random_set(n, 4, 16, static_cast<std::size_t>(uniform_int(1, 30, gen)), gen);
        const double kappa = 0.25 + 0.25 * uniform_int(0, 8, gen);
        const double fast = frostman_stat(a, kappa, 2);
        CHECK(fast == doctest::Approx(frostman_reference(a, kappa)).epsilon(1e-12));
        CHECK(frostman_stat(a, kappa, 1) == fast);
    }
}

TEST_CASE("weighted sets") {
    const auto a = make_set(1, 3, {{0}, {1}});
    CHECK_NOTHROW(WeightedCellSet(a, {0.25, 0.75}));
    CHECK(throws_code([&] { WeightedCellSet(a, {0.5}); }, ErrorCode::WeightsInvalid));
    CHECK(throws_code([&] { WeightedCellSet(a, {1.5, -0.5}); }, ErrorCode::WeightsInvalid));
    CHECK(throws_code([&] { WeightedCellSet(a, {0.5, 0.6}); }, ErrorCode::WeightsInvalid));
    CHECK(WeightedCellSet::uniform(a).weights() == std::vector<double>{0.5, 0.5});
}

TEST_CASE("mass levels") {
    const int k = 4;
    const double eps = 0.25;
    const auto delta = std::ldexp(1.0, -k);
    const auto inside = [&](double w, int l) {
        return std::pow(delta, (l + 1) * eps) < w && w <= std::pow(delta, l * eps);
    };

    const auto g = grid(2, k, 4);  // 16 cells, weight 1/16 = delta^1 -> level 3
    const auto uni = mass_levels(WeightedCellSet::uniform(g), eps);
    REQUIRE(uni.levels.size() == static_cast<std::size_t>(std::ceil(2 / eps)) + 2);
    int nonempty = 0;
    for (std::size_t l = 0; l < uni.levels.size(); ++l) {
        if (uni.levels[l].empty()) continue;
        ++nonempty;
        CHECK(uni.levels[l].size() == 16);
        CHECK(inside(1.0 / 16, static_cast<int>(l)));
    }
    CHECK(nonempty == 1);
    CHECK(uni.dropped_weight == 0.0);

    const auto one = mass_levels(WeightedCellSet(make_set(2, k, {{0, 0}}), {1.0}), eps);
    CHECK(one.levels[0].size() == 1);

    // Half the cells heavy, half light.
    std::vector<double> w(16);
    const double p = 0.9 / 8;
    const double q = 0.1 / 8;
    for (std::size_t i = 0; i < 16; ++i) w[i] = i % 2 ? q : p;
    const auto two = mass_levels(WeightedCellSet(g, w), eps);
    std::vector<std::size_t> filled;
    for (std::size_t l = 0; l < two.levels.size(); ++l) {
        if (two.levels[l].empty()) continue;
        filled.push_back(l);
        for (const auto& z : two.levels[l].cells()) {
            CHECK(inside(w[g.cells().index_of(z)], static_cast<int>(l)));
        }
    }
    CHECK(filled.size() == 2);

    // Tiny weights fall below the last level and are reported as dropped.
    std::vector<double> tail(16, 0.0);
    tail[0] = 1.0 - 1e-12;
    tail[1] = 1e-12;
    const auto dropped = mass_levels(WeightedCellSet(g, tail), eps);
    CHECK(dropped.dropped_weight == doctest::Approx(1e-12));
    CHECK(dropped.dropped_weight <= std::pow(delta, eps));

    CHECK(throws_code([&] { (void)mass_levels(WeightedCellSet::uniform(g), 1.0); }, ErrorCode::InvalidArgument));
}

TEST_CASE("mass levels are disjoint and cover the heavy cells") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_set(2, 6, 20, 60, gen);
        std::vector<double> w(a.size());
        double total = 0;
        for (auto& x : w) total += (x = std::pow(unit(gen), 6));
        for (auto& x : w) x /= total;
        const double eps = 0.1 + 0.8 * unit(gen);
        const auto ml = mass_levels(WeightedCellSet(a, w), eps);
        std::size_t covered = 0;
        for (const auto& lvl : ml.levels) covered += lvl.size();
        DiscretizedSet all(2, 6);
        for (const auto& lvl : ml.levels) {
            CHECK(set_intersection(all, lvl).empty());
            all = set_union(all, lvl);
        }
        CHECK(all.size() == covered);
        CHECK(ml.dropped_weight <= std::pow(a.delta(), eps));
    }
}

TEST_CASE("covering, scale and projection inequalities") {
    std::mt19937_64 gen(101);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = uniform_int(1, 3, gen);
        const int k = 5;
        const auto a = random_set(n, k, 24, static_cast<std::size_t>(uniform_int(1, 80, gen)), gen);
        const auto c = static_cast<double>(ball_cover_constant(n));

        for (double dp : {a.delta(), 2 * a.delta(), 4 * a.delta()}) {
            const auto fine = static_cast<double>(covering_number_balls(a, dp));
            const auto coarse = static_cast<double>(covering_number_balls(a, 2 * dp));
            CHECK(coarse <= fine);
            CHECK(fine <= c * c * coarse);
        }

        for (int kc = 0; kc <= k; ++kc) {
            const auto coarse = static_cast<double>(coarsen(a, kc).size());
            CHECK(static_cast<double>(a.size()) <= std::pow(4.0, n) * std::exp2((k - kc) * n) * coarse);
        }

        for (int m = 1; m <= n; ++m) {
            const auto v = random_subspace(n, m, gen);
            CHECK(static_cast<double>(project_set(a, v).size()) <= std::pow(2.0, n) * static_cast<double>(a.size()));
        }

        const auto b = random_set(n, k, 24, static_cast<std::size_t>(uniform_int(1, 80, gen)), gen);
        const auto lhs = set_intersection(neighborhood(a, 2 * a.delta()), b).size();
        const auto rhs = set_intersection(neighborhood(a, a.delta()), neighborhood(b, a.delta())).size();
        CHECK(static_cast<double>(lhs) <= std::pow(8.0, n) * static_cast<double>(rhs));
    }
}

TEST_CASE("product bound over direct sums") {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = uniform_int(2, 3, gen);
        const auto a = random_set(n, 5, 20, static_cast<std::size_t>(uniform_int(1, 120, gen)), gen);
        std::vector<Subspace> parts;
        int used = 0;
        while (used < n) {
            const int m = uniform_int(1, n - used, gen);
            parts.push_back(random_subspace(n, m, gen));
            used += m;
        }
        const double angle = dang(parts);
        if (angle < 1e-3) continue;
        double product = 1;
        for (const auto& v : parts) product *= static_cast<double>(project_set(a, v).size());
        CHECK(static_cast<double>(a.size()) <= std::pow(8.0, n) * std::pow(angle, -n) * product);
    }
}

TEST_CASE("set file round trip") {
    std::mt19937_64 gen(9);
    const auto a = random_set(3, 7, 100, 50, gen);
    std::stringstream ss;
    write_discretized_set(ss, a);
    CHECK(read_discretized_set(ss) == a);

    std::stringstream dup("2 3\n1 1\n1 1\n");
    CHECK(throws_code([&] { (void)read_discretized_set(dup); }, ErrorCode::Format));
    std::stringstream bad("2 3\n1 x\n");
    CHECK(throws_code([&] { (void)read_discretized_set(bad); }, ErrorCode::Format));
    std::stringstream short_row("2 3\n1\n");
    CHECK(throws_code([&] { (void)read_discretized_set(short_row); }, ErrorCode::Format));
    std::stringstream header("2\n");
    CHECK(throws_code([&] { (void)read_discretized_set(header); }, ErrorCode::Format));
}

TEST_CASE("box dimension proxy") {
    CHECK(box_dimension_proxy(grid(2, 3, 8)) == doctest::Approx(2.0));
    CHECK(box_dimension_proxy(cantor_base4(5)) == doctest::Approx(0.5));
}
