#include "doctest.h"

#include "grassproj/error.hpp"
#include "grassproj/randgrass.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

using namespace grassproj;
using grassproj::testing::throws_code;
using grassproj::testing::vec;

namespace {

Subspace line2(double theta) {
    Mat b(2, 1);
    b << std::cos(theta), std::sin(theta);
    return Subspace::from_orthonormal(b);
}

// Angle of a line in R^2, in [0, pi).
double line_angle(const Subspace& v) {
    double a = std::atan2(v.basis()(1, 0), v.basis()(0, 0));
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    return a;
}

double ks_uniform(std::vector<double> xs, double lo, double hi) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = (xs[i] - lo) / (hi - lo);
        d = std::max({d, (static_cast<double>(i) + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                                 static_cast<double>(j) / static_cast<double>(b.size())));
    }
    return d;
}

}  // namespace

TEST_CASE("generator determinism") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
    Rng c(43);
    CHECK(Rng(42)() != c());
    // derive depends only on the seed.
    Rng d(42);
    (void)d();
    CHECK(d.derive(5)() == Rng(42).derive(5)());
    CHECK(Rng(42).derive(5)() != Rng(42).derive(6)());
}

TEST_CASE("Haar samples") {
    Rng rng(42);
    const auto v = haar_sample(5, 3, rng);
    CHECK(v.dim() == 3);
    CHECK((v.basis().transpose() * v.basis() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);

    Rng again(42);
    const auto w = haar_sample(5, 3, again);
    CHECK(v.basis() == w.basis());

    CHECK(throws_code([&] { (void)haar_sample(3, 3, rng); }, ErrorCode::InvalidArgument));
    CHECK(throws_code([&] { (void)haar_sample(3, 0, rng); }, ErrorCode::InvalidArgument));
}

TEST_CASE("Haar lines in the plane have uniform angle") {
    Rng rng(7);
    std::vector<double> angles;
    for (int i = 0; i < 10000; ++i) angles.push_back(line_angle(haar_sample(2, 1, rng)));
    CHECK(ks_uniform(angles, 0.0, std::numbers::pi) < 0.02);
}

TEST_CASE("Haar measure is rotation invariant") {
    std::mt19937_64 gen(3);
    const int n = 4;
    const Mat g = Eigen::HouseholderQR<Mat>(grassproj::testing::gaussian_matrix(n, n, gen)).householderQ();
    const Subspace w0 = grassproj::testing::random_subspace(n, 2, gen);
    const Subspace gt_w0 = Subspace::from_orthonormal(Mat(g.transpose() * w0.basis()));
    Rng rng(11);
    std::vector<double> rotated;
    std::vector<double> moved;
    for (int i = 0; i < 10000; ++i) {
        const auto v = haar_sample(n, 2, rng);
        rotated.push_back(dang(Subspace::from_orthonormal(Mat(g * v.basis())), w0));
        moved.push_back(dang(v, gt_w0));
    }
    CHECK(ks_two_sample(rotated, moved) < 0.03);
    // The same statistic also matches a fresh, unrotated sample.
    Rng other(12);
    std::vector<double> plain;
    for (int i = 0; i < 10000; ++i) plain.push_back(dang(haar_sample(n, 2, other), w0));
    CHECK(ks_two_sample(rotated, plain) < 0.03);
}

TEST_CASE("Grassmann samples") {
    const auto l0 = line2(0.0);
    const auto l1 = line2(1.0);
    const GrassmannSample mu(2, 1, {l0, l1}, {3.0, 1.0});
    CHECK(mu.weight(0) == 0.75);
    CHECK(mu.weight(1) == 0.25);

    Rng rng(1);
    int first = 0;
    for (int i = 0; i < 4000; ++i) first += mu.draw(rng) == 0;
    CHECK(first / 4000.0 == doctest::Approx(0.75).epsilon(0.05));

    CHECK(throws_code([] { GrassmannSample(2, 1, std::vector<Subspace>{}); }, ErrorCode::EmptySupport));
    CHECK(throws_code([&] { GrassmannSample(2, 1, {l0}, {-1.0}); }, ErrorCode::WeightsInvalid));
    CHECK(throws_code([&] { GrassmannSample(2, 1, {l0}, {0.0}); }, ErrorCode::WeightsInvalid));
    CHECK(throws_code([&] { GrassmannSample(3, 1, {l0}); }, ErrorCode::DimMismatch));

    const auto h = GrassmannSample::haar(4, 2, 10, Rng(5));
    CHECK(h.size() == 10);
    CHECK(h.space(3).basis() == GrassmannSample::haar(4, 2, 10, Rng(5)).space(3).basis());
}

TEST_CASE("non-concentration statistic") {
    // A point mass is detected at the finest scale.
    const GrassmannSample point(3, 1, {Subspace::coordinate(3, std::vector<int>{0})});
    const int k = 6;
    CHECK(noncon_stat(point, 0.5, k, 0, Rng(1)) == doctest::Approx(std::exp2(0.5 * k)));
    CHECK(noncon_stat(point, 2.0, k, 4, Rng(1)) == doctest::Approx(std::exp2(2.0 * k)));
    // The atom probe meets the atom.
    const auto probes = noncon_probes(point, 3, Rng(1));
    REQUIRE(probes.size() == 4);
    CHECK(probes[0].dim() == 2);
    CHECK(dang(point.space(0), probes[0]) < 1e-12);
    for (const auto& p : probes) CHECK(p.dim() == 2);

    // Two orthogonal lines in the plane.
    const GrassmannSample cross(2, 1, {line2(0.0), line2(std::numbers::pi / 2)});
    CHECK(noncon_stat(cross, 1.0, 8, 0, Rng(2)) == doctest::Approx(0.5 * 256));

    CHECK(throws_code([&] { (void)noncon_stat(point, 0.0, k, 0, Rng(1)); }, ErrorCode::InvalidArgument));
}

TEST_CASE("non-concentration of Haar lines against the arc-length measure") {
    const auto mu = GrassmannSample::haar(2, 1, 256, Rng(42));
    const double stat = noncon_stat(mu, 0.5, 8, 16, Rng(43));
    CHECK(stat <= 8.0);
    CHECK(stat >= 1.0);  // rho = 1 always captures everything

    // For lines, dang(V, W) = |sin(angle)|, so the Haar mass of
    // {dang <= rho} is 2 asin(rho) / pi. The empirical masses stay within
    // a uniform (DKW) band of it.
    const double band = std::sqrt(std::log(2 / 1e-6) / (2 * 256.0)) * 2;
    for (double theta : {0.0, 0.4, 1.3, 2.9}) {
        const auto w = line2(theta);
        for (int j = 0; j <= 8; ++j) {
            const double rho = std::ldexp(1.0, -j);
            const double analytic = 2 * std::asin(rho) / std::numbers::pi;
            CHECK(std::abs(schubert_mass(mu, w, rho) - analytic) <= band);
        }
    }
}

TEST_CASE("random sums") {
    const auto r = random_sum_experiment(SubspaceSource::haar(4, 2), 2, 1000, Rng(10));
    CHECK(r.full_dim_fraction == 1.0);
    CHECK(r.min_dang > 1e-6);

    // An empirical measure repeats atoms, so some sums are degenerate.
    const auto haar = GrassmannSample::haar(4, 2, 20, Rng(9));
    const auto e = random_sum_experiment(haar, 2, 1000, Rng(10));
    CHECK(e.full_dim_fraction < 1.0);
    CHECK(e.full_dim_fraction > 0.85);

    const auto one = random_sum_experiment(haar, 1, 50, Rng(10));
    CHECK(one.full_dim_fraction == 1.0);
    CHECK(one.min_dang == doctest::Approx(1.0));

    const GrassmannSample point(4, 2, {haar.space(0)});
    const auto p = random_sum_experiment(point, 2, 20, Rng(3));
    CHECK(p.full_dim_fraction == 0.0);
    CHECK(p.min_dang < 1e-8);

    CHECK(throws_code([&] { (void)random_sum_experiment(haar, 3, 10, Rng(1)); }, ErrorCode::DimOverflow));

    // Schedule independence.
    const auto a = random_sum_experiment(haar, 2, 300, Rng(77), 1);
    const auto b = random_sum_experiment(haar, 2, 300, Rng(77), 3);
    CHECK(a.full_dim_fraction == b.full_dim_fraction);
    CHECK(a.min_dang == b.min_dang);
}

TEST_CASE("random intersections") {
    const auto haar = GrassmannSample::haar(3, 2, 100, Rng(4));
    const auto r = random_intersection_experiment(SubspaceSource::haar(3, 2), 2, 500, Rng(5));
    CHECK(r.expected_dim_fraction == 1.0);
    CHECK(r.min_dim == 1);
    CHECK(r.max_dim == 1);
    CHECK(r.duality_mismatches == 0);

    const auto one = random_intersection_experiment(haar, 1, 20, Rng(5));
    CHECK(one.min_dim == 2);
    CHECK(one.max_dim == 2);

    const GrassmannSample point(3, 2, {haar.space(0)});
    const auto p = random_intersection_experiment(point, 2, 20, Rng(5));
    CHECK(p.min_dim == 2);
    CHECK(p.expected_dim_fraction == 0.0);
    CHECK(p.duality_mismatches == 0);

    const auto r5 = random_intersection_experiment(SubspaceSource::haar(5, 4), 3, 200, Rng(7));
    CHECK(r5.expected_dim_fraction == 1.0);
    CHECK(r5.duality_mismatches == 0);

    CHECK(throws_code([&] { (void)random_intersection_experiment(haar, 4, 10, Rng(1)); }, ErrorCode::DimOverflow));
}

TEST_CASE("null-space intersection agrees with perp duality") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = grassproj::testing::uniform_int(2, 6, gen);
        const int q = grassproj::testing::uniform_int(1, 3, gen);
        std::vector<Subspace> spaces;
        const auto common = grassproj::testing::random_subspace(n, grassproj::testing::uniform_int(0, n - 1, gen), gen);
        for (int j = 0; j < q; ++j) {
            const int extra = grassproj::testing::uniform_int(0, n - common.dim(), gen);
            const auto e = grassproj::testing::random_subspace(n, extra, gen);
            spaces.push_back(sum(common, e));
        }
        CHECK(intersection_dim_nullspace(spaces) == intersect(spaces).dim());
        CHECK(intersection_dim_nullspace(spaces) >= common.dim());
    }
}

TEST_CASE("dang expansion bound") {
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = grassproj::testing::uniform_int(3, 7, gen);
        const int wdim = grassproj::testing::uniform_int(0, 2, gen);
        const auto w = grassproj::testing::random_subspace(n, wdim, gen);
        std::vector<Subspace> vs;
        int used = wdim;
        while (used < n) {
            const int m = grassproj::testing::uniform_int(1, std::min(2, n - used), gen);
            vs.push_back(grassproj::testing::random_subspace(n, m, gen));
            used += m;
            if (grassproj::testing::uniform_int(0, 2, gen) == 0) break;
        }
        double chain = 1.0;
        std::vector<Subspace> prefix = {w};
        for (const auto& v : vs) {
            chain *= dang(v, sum(prefix));
            prefix.push_back(v);
        }
        CHECK(dang(sum(vs), w) >= chain - 1e-9);
    }
}

TEST_CASE("sample file round trip") {
    Rng r1(1);
    Rng r2(2);
    const GrassmannSample mu(4, 2, {haar_sample(4, 2, r1), haar_sample(4, 2, r2)}, {0.3, 0.7});
    std::stringstream ss;
    write_grassmann_sample(ss, mu);
    const auto back = read_grassmann_sample(ss);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back.weight(i) == mu.weight(i));
        CHECK(back.space(i).basis() == mu.space(i).basis());
    }

    std::stringstream loose("2 1 1\n1\n0.6 0.8000001\n");
    const auto l = read_grassmann_sample(loose);
    CHECK(l.space(0).basis().norm() == doctest::Approx(1.0).epsilon(1e-14));

    for (const char* bad : {"", "2 1\n", "2 1 1\n1\n", "2 1 1\nx\n1 0\n", "2 1 1\n1\n1 0 0\n", "2 1 1\n1\n0 0\n",
                            "2 1 1\n1\n1 0\n5\n"}) {
        std::stringstream in(bad);
        CHECK(throws_code([&] { (void)read_grassmann_sample(in); }, ErrorCode::Format));
    }
}
