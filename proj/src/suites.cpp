#include "grassproj/suites.hpp"

#include "grassproj/additive.hpp"
#include "grassproj/error.hpp"
#include "grassproj/grassmann.hpp"
#include "grassproj/lab.hpp"
#include "grassproj/lattice_cover.hpp"
#include "grassproj/parallel.hpp"
#include "grassproj/randgrass.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace grassproj {

namespace {

struct TrialOutcome {
    std::size_t checked = 0;
    std::optional<std::string> failure;
};

using Trial = std::function<TrialOutcome(std::size_t, Rng&)>;

// Runs `count` trials, trial i with rng.derive(i), and keeps the failure of
// the lowest-indexed violating trial.
void run_trials(SuiteResult& out, std::size_t count, std::uint64_t seed, unsigned threads, const Trial& trial) {
    std::vector<TrialOutcome> slots(count);
    const Rng root(seed);
    parallel_for(count, threads, [&](std::size_t i) {
        Rng rng = root.derive(i);
        try {
            slots[i] = trial(i, rng);
        } catch (const std::logic_error& e) {
            slots[i].checked = 1;
            slots[i].failure = std::string("postcondition failure: ") + e.what();
        }
    });
    for (std::size_t i = 0; i < count; ++i) {
        out.checked += slots[i].checked;
        if (slots[i].failure) {
            if (out.violations == 0) out.reproducer = "trial " + std::to_string(i) + "\n" + *slots[i].failure;
            ++out.violations;
        }
    }
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

LatticeSet random_lattice(int n, int box, std::size_t count, Rng& rng) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < count; ++i) {
        Point p(static_cast<std::size_t>(n));
        for (auto& c : p) c = uniform(rng, 0, box);
        pts.push_back(p);
    }
    return LatticeSet(n, pts);
}

std::vector<Point> cube_points(int d) {
    std::vector<Point> pts;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Point p(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        pts.push_back(p);
    }
    return pts;
}

LatticeSet cube_subset(const std::vector<Point>& cube, std::uint32_t mask) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < cube.size(); ++i)
        if (mask >> i & 1U) pts.push_back(cube[i]);
    return LatticeSet(static_cast<int>(cube.front().size()), pts);
}

std::string show(const LatticeSet& z) {
    std::ostringstream out;
    write_lattice_set(out, z);
    return out.str();
}

std::string show(const std::vector<IndexSet>& members) {
    std::string s = "cover:";
    for (const auto& m : members) {
        s += " {";
        for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
        s += "}";
    }
    return s + "\n";
}

// Multisets of d pairs of {1..d} covering every index exactly twice.
std::vector<std::vector<IndexSet>> pair_covers(int d) {
    std::vector<IndexSet> pairs;
    for (int a = 1; a <= d; ++a)
        for (int b = a + 1; b <= d; ++b) pairs.push_back({a, b});
    std::vector<std::vector<IndexSet>> covers;
    std::vector<std::size_t> pick;
    std::vector<int> degree(static_cast<std::size_t>(d + 1), 0);
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == d) {
            if (std::all_of(degree.begin() + 1, degree.end(), [](int x) { return x == 2; })) {
                std::vector<IndexSet> members;
                for (auto p : pick) members.push_back(pairs[p]);
                covers.push_back(members);
            }
            return;
        }
        for (std::size_t p = from; p < pairs.size(); ++p) {
            if (degree[static_cast<std::size_t>(pairs[p][0])] == 2 || degree[static_cast<std::size_t>(pairs[p][1])] == 2)
                continue;
            pick.push_back(p);
            for (int i : pairs[p]) ++degree[static_cast<std::size_t>(i)];
            self(self, p);
            for (int i : pairs[p]) --degree[static_cast<std::size_t>(i)];
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return covers;
}

// k random set partitions of {1..n}, merged.
std::vector<IndexSet> random_cover(int n, int k, Rng& rng) {
    std::vector<IndexSet> members;
    for (int round = 0; round < k; ++round) {
        const int blocks = uniform(rng, 1, n);
        std::vector<IndexSet> parts(static_cast<std::size_t>(blocks));
        for (int i = 1; i <= n; ++i) parts[static_cast<std::size_t>(uniform(rng, 0, blocks - 1))].push_back(i);
        for (auto& p : parts)
            if (!p.empty()) members.push_back(p);
    }
    return members;
}

void suite_uct(SuiteResult& out, const SuiteConfig& cfg) {
    const int d = cfg.exhaustive_cube;
    const auto cube = cube_points(d);
    const auto covers = pair_covers(d);
    run_trials(out, std::size_t{1} << cube.size(), cfg.seed, cfg.threads, [&](std::size_t mask, Rng&) {
        TrialOutcome t;
        const auto z = cube_subset(cube, static_cast<std::uint32_t>(mask));
        for (const auto& members : covers) {
            ++t.checked;
            if (!uct_check(z, UniformCover::of_range(members, d)).holds() && !t.failure)
                t.failure = show(z) + show(members);
        }
        return t;
    });
    run_trials(out, cfg.trials, cfg.seed + 1, cfg.threads, [](std::size_t, Rng& rng) {
        TrialOutcome t{1, {}};
        const int n = uniform(rng, 2, 5);
        const auto z = random_lattice(n, uniform(rng, 1, 4), static_cast<std::size_t>(uniform(rng, 1, 40)), rng);
        const auto members = random_cover(n, uniform(rng, 1, 3), rng);
        if (!uct_check(z, UniformCover::of_range(members, n)).holds()) t.failure = show(z) + show(members);
        return t;
    });
}

void suite_energy_proj(SuiteResult& out, const SuiteConfig& cfg) {
    const int d = cfg.exhaustive_cube;
    const auto cube = cube_points(d);
    std::vector<IndexSet> singles;
    IndexSet ground;
    for (int i = 1; i < d; ++i) {
        singles.push_back({i});
        ground.push_back(i);
    }
    const UniformCover cover(singles, ground);
    run_trials(out, (std::size_t{1} << cube.size()) - 1, cfg.seed, cfg.threads, [&](std::size_t i, Rng&) {
        TrialOutcome t{1, {}};
        const auto z = cube_subset(cube, static_cast<std::uint32_t>(i + 1));
        if (!energy_proj_check(z, {d}, cover).holds()) t.failure = show(z) + "I0 = {" + std::to_string(d) + "}\n";
        return t;
    });
    const UniformCover triangle({{1, 2}, {2, 3}, {1, 3}}, {1, 2, 3});
    run_trials(out, cfg.trials, cfg.seed + 1, cfg.threads, [&](std::size_t, Rng& rng) {
        TrialOutcome t{1, {}};
        const auto z = random_lattice(4, uniform(rng, 1, 4), static_cast<std::size_t>(uniform(rng, 1, 30)), rng);
        if (!energy_proj_check(z, {4}, triangle).holds()) t.failure = show(z) + "I0 = {4}\n";
        return t;
    });
}

void suite_trichotomy(SuiteResult& out, const SuiteConfig& cfg) {
    struct Shape {
        int n, m, q, r;
    };
    static constexpr Shape kShapes[] = {{3, 2, 2, 1}, {5, 3, 2, 1}, {5, 4, 4, 1}, {4, 3, 3, 1}};
    run_trials(out, cfg.trials, cfg.seed, cfg.threads, [](std::size_t i, Rng& rng) {
        TrialOutcome t{1, {}};
        const auto& s = kShapes[i % 4];
        const auto z = random_lattice(s.n, uniform(rng, 1, 5), static_cast<std::size_t>(uniform(rng, 1, 60)), rng);
        const Rational k(uniform(rng, 4, 12), 4);
        const auto outcome = trichotomy(z, s.n, s.m, s.q, s.r, k);
        if (!verify_outcome(z, outcome)) {
            std::ostringstream msg;
            msg << "(n,m,q,r) = (" << s.n << "," << s.m << "," << s.q << "," << s.r << "), K = " << k << "\n"
                << show(z);
            t.failure = msg.str();
        }
        return t;
    });
    const auto su = slice_union_lattice(4);
    const auto outcome = trichotomy(su, 3, 2, 2, 1, Rational(1));
    const auto* big = std::get_if<BigProjection>(&outcome.witness);
    ++out.checked;
    if (!(big && big->j == 1 && big->size == 8 && verify_outcome(su, outcome))) {
        if (out.violations == 0) out.reproducer = "slice-union instance, side 4, K = 1\n" + show(su);
        ++out.violations;
    }
}

Subspace random_subspace(int n, int m, Rng& rng) {
    if (m == 0) return Subspace(n);
    Mat g(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
    return orthonormalize(g);
}

Subspace random_subspace_of(const Subspace& w, int m, Rng& rng) {
    if (m == 0) return Subspace(w.ambient_dim());
    Mat g(w.dim(), m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < w.dim(); ++i) g(i, j) = rng.normal();
    return orthonormalize(Mat(w.basis() * g));
}

Vec random_in(const Subspace& s, Rng& rng) {
    Vec c(s.dim());
    for (int i = 0; i < s.dim(); ++i) c(i) = rng.normal();
    return s.basis() * c;
}

void suite_geometry(SuiteResult& out, const SuiteConfig& cfg) {
    run_trials(out, cfg.trials, cfg.seed, cfg.threads, [](std::size_t, Rng& rng) {
        TrialOutcome t;
        auto expect = [&](bool ok, const char* what, int n) {
            ++t.checked;
            if (!ok && !t.failure) t.failure = std::string(what) + " failed at n = " + std::to_string(n) + "\n";
        };
        const int n = uniform(rng, 2, 6);

        // three-space identity
        {
            const int du = uniform(rng, 0, n);
            const int dv = uniform(rng, 0, n - du);
            const int dw = uniform(rng, 0, n - du - dv);
            const auto u = random_subspace(n, du, rng);
            const auto v = random_subspace(n, dv, rng);
            const auto w = random_subspace(n, dw, rng);
            expect(std::abs(dang(u, v, w) - dang(sum(u, v), w) * dang(u, v)) < 1e-9, "dang(U,V,W) factorisation", n);
        }
        // telescoping expansion and cylinder bound
        {
            const int q = uniform(rng, 2, 4);
            std::vector<Subspace> vs;
            int used = 0;
            for (int i = 0; i < q; ++i) {
                const int d = std::min(n, uniform(rng, 1, std::max(1, n - used)));
                vs.push_back(random_subspace(n, d, rng));
                used += d;
            }
            double product = 1.0;
            for (int j = 1; j < q; ++j)
                product *= dang(vs[static_cast<std::size_t>(j)], sum(std::span<const Subspace>(vs.data(), j)));
            expect(std::abs(dang(vs) - product) < 1e-9, "telescoping expansion", n);
            const Vec z = random_in(sum(vs), rng);
            double rhs = 0.0;
            for (const auto& s : vs) rhs += project(s, z).norm();
            expect(z.norm() * dang(vs) <= rhs + 1e-9, "cylinder bound", n);
        }
        // duality and the projection formula for complementary dimensions
        {
            const int m = uniform(rng, 1, n - 1);
            const auto v = random_subspace(n, m, rng);
            const auto w = random_subspace(n, n - m, rng);
            expect(std::abs(dang(v, w) - dang(perp(v), perp(w))) < 1e-10, "perp duality", n);
            expect(std::abs(dang_proj(v, w) - dang(v, w)) < 1e-10, "dang_proj agreement", n);
        }
        // projection through W: factorisation and sandwich
        {
            const auto w = random_subspace(n, uniform(rng, 1, n), rng);
            const auto u = random_subspace_of(w, uniform(rng, 0, w.dim()), rng);
            const auto v = random_subspace(n, uniform(rng, 1, w.dim()), rng);
            const auto wp = perp(w);
            const auto vprime = project_subspace(w, v);
            expect(std::abs(dang(v, sum(u, wp)) - dang(v, wp) * dang(vprime, u)) < 1e-9, "factorisation through W",
                   n);
            const Vec x = random_in(w, rng);
            const double pv = project(v, x).norm();
            const double pvp = project(vprime, x).norm();
            expect(dang(v, wp) * pvp <= pv + 1e-9 && pv <= pvp + 1e-9, "projection sandwich", n);
        }
        return t;
    });
}

void suite_ruzsa(SuiteResult& out, const SuiteConfig& cfg) {
    run_trials(out, cfg.trials, cfg.seed, cfg.threads, [](std::size_t, Rng& rng) {
        TrialOutcome t{1, {}};
        const int n = uniform(rng, 1, 3);
        const int box = uniform(rng, 2, 30);
        const auto count = [&] { return static_cast<std::size_t>(uniform(rng, 1, 15)); };
        const auto a = random_lattice(n, box, count(), rng);
        const auto b = random_lattice(n, box, count(), rng);
        const auto c = random_lattice(n, box, count(), rng);
        if (ruzsa_triangle_defect(a, b, c) > 1.0) t.failure = show(a) + show(b) + show(c);
        return t;
    });
}

void suite_pluennecke(SuiteResult& out, const SuiteConfig& cfg) {
    run_trials(out, cfg.trials, cfg.seed, cfg.threads, [](std::size_t, Rng& rng) {
        TrialOutcome t{1, {}};
        const int n = uniform(rng, 1, 2);
        const int box = uniform(rng, 2, 12);
        const auto a = random_lattice(n, box, static_cast<std::size_t>(uniform(rng, 1, 8)), rng);
        const auto b = random_lattice(n, box, static_cast<std::size_t>(uniform(rng, 1, 8)), rng);
        const int k = uniform(rng, 0, 2);
        const int l = uniform(rng, k == 0 ? 1 : 0, 2);
        const auto w = pluennecke_witness(a, b, k, l);
        if (w.ratio > 1.0 + 1e-12)
            t.failure = "k = " + std::to_string(k) + ", l = " + std::to_string(l) + "\n" + show(a) + show(b);
        return t;
    });
}

void suite_additive_energy(SuiteResult& out, const SuiteConfig& cfg) {
    run_trials(out, cfg.trials, cfg.seed, cfg.threads, [](std::size_t, Rng& rng) {
        TrialOutcome t{1, {}};
        const int n = uniform(rng, 1, 2);
        const auto a = random_lattice(n, 6, static_cast<std::size_t>(uniform(rng, 1, 10)), rng);
        const auto b = random_lattice(n, 6, static_cast<std::size_t>(uniform(rng, 1, 10)), rng);
        // Sum of squared representation counts r(s) = #{(x, y) : x + y = s}.
        std::map<Point, std::uint64_t> reps;
        for (const auto& x : a)
            for (const auto& y : b) {
                Point s(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
                ++reps[s];
            }
        std::uint64_t oracle = 0;
        for (const auto& [s, r] : reps) oracle += r * r;
        if (additive_energy(a, b) != oracle) t.failure = show(a) + show(b);
        return t;
    });
}

void suite_trim(SuiteResult& out, const SuiteConfig& cfg) {
    const auto first = FiberMap::coordinates({0});
    run_trials(out, cfg.trials, cfg.seed, cfg.threads, [&](std::size_t, Rng& rng) {
        TrialOutcome t;
        std::vector<Point> pts;
        const int fibers = uniform(rng, 1, 12);
        int largest = 0;
        double energy = 0.0;
        for (int f = 0; f < fibers; ++f) {
            const int s = uniform(rng, 1, 20);
            largest = std::max(largest, s);
            energy += static_cast<double>(s) * s;
            for (int j = 0; j < s; ++j) pts.push_back({f, j});
        }
        const LatticeSet a(2, pts);
        const double m = largest + 0.5 * uniform(rng, 0, 10);
        const double size = static_cast<double>(a.size());
        // Smallest K meeting En >= (M/K)|A|, then a random margin above it.
        const double k = std::max(1.0, m * size / energy) * (1.0 + 1e-12) + 3.0 * unit(rng);
        t.checked = 1;
        const auto kept = trim_small_fibers(a, first, m, k);
        const auto sizes = fiber_sizes(first, kept);
        bool ok = is_subset(kept, a) && static_cast<double>(kept.size()) >= size / (2 * k) &&
                  static_cast<double>(sizes.size()) <= 2 * k / m * size;
        for (const auto& [key, s] : sizes) ok = ok && static_cast<double>(s) >= m / (2 * k);
        if (!ok) t.failure = "M = " + format_real(m) + ", K = " + format_real(k) + "\n" + show(a);
        return t;
    });
}

void suite_bigcap(SuiteResult& out, const SuiteConfig& cfg) {
    run_trials(out, cfg.trials, cfg.seed, cfg.threads, [](std::size_t, Rng& rng) {
        TrialOutcome t{1, {}};
        std::vector<Point> gp;
        const int top = uniform(rng, 3, 20);
        for (int x = 0; x <= top; ++x) gp.push_back({x});
        const LatticeSet ground(1, gp);
        const auto thetas = static_cast<std::size_t>(uniform(rng, 1, 4));
        const int q = uniform(rng, 1, 3);
        const double k = 1.0 + 3.0 * unit(rng);
        std::vector<LatticeSet> family;
        std::vector<double> w;
        double total = 0.0;
        for (std::size_t i = 0; i < thetas; ++i) {
            std::vector<Point> pts;
            for (const auto& p : ground)
                if (unit(rng) < 0.7) pts.push_back(p);
            // Top up to the |A_theta| >= |A|/K precondition.
            for (const auto& p : ground)
                if (static_cast<double>(pts.size()) * k < static_cast<double>(ground.size()) &&
                    std::find(pts.begin(), pts.end(), p) == pts.end())
                    pts.push_back(p);
            family.emplace_back(1, pts);
            total += w.emplace_back(unit(rng) + 0.1);
        }
        for (double& x : w) x /= total;
        const auto r = check_intersection_lemma(FiniteProbSpace(w), ground, family, q, k, 0, 0);
        if (!(r.exhaustive && r.holds)) {
            std::string msg = "q = " + std::to_string(q) + ", K = " + format_real(k) + "\n" + show(ground);
            for (const auto& s : family) msg += show(s);
            t.failure = msg;
        }
        return t;
    });
}

void suite_smallcap(SuiteResult& out, const SuiteConfig& cfg) {
    run_trials(out, cfg.trials, cfg.seed, cfg.threads, [](std::size_t, Rng& rng) {
        TrialOutcome t{1, {}};
        const auto points = static_cast<std::size_t>(uniform(rng, 1, 30));
        std::vector<double> mu(points);
        double total = 0.0;
        for (auto& x : mu) total += (x = unit(rng) + 0.01);
        for (auto& x : mu) x /= total;
        const auto count = static_cast<std::size_t>(uniform(rng, 1, 8));
        std::vector<std::vector<std::size_t>> events(count);
        std::vector<double> weights(count);
        double wsum = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t x = 0; x < points; ++x)
                if (unit(rng) < 0.4) events[i].push_back(x);
            wsum += (weights[i] = unit(rng) + 0.01);
        }
        for (auto& w : weights) w /= wsum;
        const double a = 0.05 + 0.9 * unit(rng);
        const auto r = check_union_cap_lemma(FiniteProbSpace(mu), events, weights, a);
        if (!r.holds)
            t.failure = "a = " + format_real(a) + ", lhs = " + format_real(r.lhs) + ", rhs = " + format_real(r.rhs) + "\n";
        return t;
    });
}

void suite_sums(SuiteResult& out, const SuiteConfig& cfg) {
    const Rng rng(cfg.seed);
    const auto sums = random_sum_experiment(SubspaceSource::haar(4, 2), 2, cfg.trials, rng.derive(0), cfg.threads);
    const auto caps =
        random_intersection_experiment(SubspaceSource::haar(4, 2), 2, cfg.trials, rng.derive(1), cfg.threads);
    out.checked += 2 * cfg.trials;
    const auto lost = static_cast<std::size_t>(std::llround((1.0 - sums.full_dim_fraction) * cfg.trials));
    const auto low = static_cast<std::size_t>(std::llround((1.0 - caps.expected_dim_fraction) * cfg.trials));
    out.violations += lost + low + caps.duality_mismatches;
    if (out.violations > 0) {
        out.reproducer = "Gr(4,2), q = 2, seed " + std::to_string(cfg.seed) +
                         ": full_dim_fraction = " + format_real(sums.full_dim_fraction) +
                         ", expected_dim_fraction = " + format_real(caps.expected_dim_fraction) +
                         ", duality mismatches = " + std::to_string(caps.duality_mismatches) + "\n";
    }
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
    static const std::vector<std::string_view> names = {"uct",  "energy-proj", "trichotomy", "geometry",
                                                        "ruzsa", "pluennecke", "additive-energy", "trim",
                                                        "bigcap", "smallcap",  "sums"};
    return names;
}

SuiteResult run_suite(std::string_view name, const SuiteConfig& config) {
    if (config.exhaustive_cube < 2 || config.exhaustive_cube > 4)
        throw Error(ErrorCode::InvalidArgument, "exhaustive cube dimension must lie in 2..4");
    using Runner = void (*)(SuiteResult&, const SuiteConfig&);
    static const std::map<std::string_view, Runner> runners = {
        {"uct", suite_uct},
        {"energy-proj", suite_energy_proj},
        {"trichotomy", suite_trichotomy},
        {"geometry", suite_geometry},
        {"ruzsa", suite_ruzsa},
        {"pluennecke", suite_pluennecke},
        {"additive-energy", suite_additive_energy},
        {"trim", suite_trim},
        {"bigcap", suite_bigcap},
        {"smallcap", suite_smallcap},
        {"sums", suite_sums},
    };
    const auto it = runners.find(name);
    if (it == runners.end()) throw Error(ErrorCode::InvalidArgument, "unknown suite: " + std::string(name));
    SuiteResult result;
    result.name = std::string(name);
    it->second(result, config);
    return result;
}

}  // namespace grassproj
