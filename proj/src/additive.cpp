#include "grassproj/additive.hpp"

#include "grassproj/error.hpp"
#include "grassproj/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace grassproj {

namespace {

constexpr std::size_t kMaxPairCells = 100000;
constexpr double kExhaustiveLimit = 1e6;

void require_same_dim(const LatticeSet& a, const LatticeSet& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "sets of different dimension");
}

LatticeSet combine(const LatticeSet& a, const LatticeSet& b, int sign) {
    require_same_dim(a, b);
    std::vector<Point> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) {
            Point s(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + sign * y[i];
            out.push_back(std::move(s));
        }
    }
    return LatticeSet(a.dim(), std::move(out));
}

void check_probabilities(const std::vector<double>& w, const char* what) {
    double total = 0.0;
    for (double x : w) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::WeightsInvalid, std::string(what) + " must be nonnegative");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::WeightsInvalid, std::string(what) + " must sum to 1");
}

using Bits = std::vector<std::uint64_t>;

Bits indicator(const LatticeSet& ground, const LatticeSet& subset) {
    Bits bits((ground.size() + 63) / 64, 0);
    for (const auto& p : subset) {
        const auto i = ground.index_of(p);
        if (i == ground.size()) throw Error(ErrorCode::InvalidArgument, "family member is not contained in the ground set");
        bits[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return bits;
}

}  // namespace

FiberMap FiberMap::coordinates(std::vector<int> axes) {
    return FiberMap([axes = std::move(axes)](const Point& p) {
        Point out;
        out.reserve(axes.size());
        for (int i : axes) {
            if (i < 0 || static_cast<std::size_t>(i) >= p.size()) throw Error(ErrorCode::BadIndex, "coordinate out of range");
            out.push_back(p[static_cast<std::size_t>(i)]);
        }
        return out;
    });
}

FiberMap FiberMap::table(std::map<Point, Point> entries) {
    return FiberMap([entries = std::move(entries)](const Point& p) {
        const auto it = entries.find(p);
        if (it == entries.end()) throw Error(ErrorCode::InvalidArgument, "point outside the map's table");
        return it->second;
    });
}

FiniteProbSpace::FiniteProbSpace(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw Error(ErrorCode::WeightsInvalid, "empty probability space");
    check_probabilities(weights_, "probabilities");
}

FiniteProbSpace FiniteProbSpace::uniform(std::size_t size) {
    return FiniteProbSpace(std::vector<double>(size, size ? 1.0 / static_cast<double>(size) : 0.0));
}

LatticeSet sumset(const LatticeSet& a, const LatticeSet& b) { return combine(a, b, 1); }

LatticeSet difference(const LatticeSet& a, const LatticeSet& b) { return combine(a, b, -1); }

LatticeSet iterated_sumset(const LatticeSet& a, int k, int l) {
    if (k < 0 || l < 0 || k + l < 1) throw Error(ErrorCode::InvalidArgument, "need k, l >= 0 and k + l >= 1");
    LatticeSet acc(a.dim(), {Point(static_cast<std::size_t>(a.dim()), 0)});
    for (int i = 0; i < k; ++i) acc = sumset(acc, a);
    for (int i = 0; i < l; ++i) acc = difference(acc, a);
    return acc;
}

std::map<Point, std::size_t> fiber_sizes(const FiberMap& phi, const LatticeSet& a) {
    std::map<Point, std::size_t> sizes;
    for (const auto& p : a) ++sizes[phi(p)];
    return sizes;
}

std::uint64_t energy_discrete(const FiberMap& phi, const LatticeSet& a) {
    std::uint64_t total = 0;
    for (const auto& [key, size] : fiber_sizes(phi, a)) total += static_cast<std::uint64_t>(size) * size;
    return total;
}

std::uint64_t energy_delta(const MetricMap& phi, const DiscretizedSet& a, double delta, unsigned threads) {
    if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
    if (a.size() > kMaxPairCells) throw Error(ErrorCode::TooLarge, "pair scan limited to 1e5 cells");
    if (a.empty()) return 0;
    std::vector<Vec> image;
    image.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) image.push_back(phi(a.center(i)));
    const auto d = image.front().size();
    for (const auto& y : image) {
        if (y.size() != d) throw Error(ErrorCode::DimMismatch, "map output dimension varies");
    }

    // Buckets of side delta: pairs within delta lie in adjacent buckets.
    std::unordered_map<Point, std::vector<std::size_t>, PointHash> buckets;
    std::vector<Point> keys;
    keys.reserve(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        Point key(static_cast<std::size_t>(d));
        for (Eigen::Index t = 0; t < d; ++t) key[static_cast<std::size_t>(t)] = static_cast<std::int64_t>(std::floor(image[i](t) / delta));
        buckets[key].push_back(i);
        keys.push_back(std::move(key));
    }
    std::vector<Point> offsets;
    {
        Point off(static_cast<std::size_t>(d), -1);
        while (true) {
            offsets.push_back(off);
            std::size_t t = 0;
            while (t < off.size() && off[t] == 1) off[t++] = -1;
            if (t == off.size()) break;
            ++off[t];
        }
    }
    const double d2max = delta * delta;
    std::vector<std::uint64_t> counts(image.size(), 0);
    parallel_for(image.size(), threads, [&](std::size_t i) {
        std::uint64_t c = 0;
        Point nb(keys[i].size());
        for (const auto& off : offsets) {
            for (std::size_t t = 0; t < nb.size(); ++t) nb[t] = keys[i][t] + off[t];
            const auto it = buckets.find(nb);
            if (it == buckets.end()) continue;
            for (auto j : it->second) {
                if ((image[i] - image[j]).squaredNorm() <= d2max) ++c;
            }
        }
        counts[i] = c;
    });
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t additive_energy(const LatticeSet& a, const LatticeSet& b) {
    require_same_dim(a, b);
    std::unordered_map<Point, std::uint64_t, PointHash> reps;
    Point s(static_cast<std::size_t>(a.dim()));
    for (const auto& x : a) {
        for (const auto& y : b) {
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = x[i] + y[i];
            ++reps[s];
        }
    }
    std::uint64_t total = 0;
    for (const auto& [sum, r] : reps) total += r * r;
    return total;
}

LatticeSet trim_small_fibers(const LatticeSet& a, const FiberMap& phi, double m, double k) {
    if (!(k >= 1.0)) throw Error(ErrorCode::PreconditionViolated, "K >= 1 fails");
    if (!(m > 0.0)) throw Error(ErrorCode::PreconditionViolated, "M > 0 fails");
    const auto sizes = fiber_sizes(phi, a);
    std::uint64_t energy = 0;
    for (const auto& [key, size] : sizes) {
        if (static_cast<double>(size) > m) {
            throw Error(ErrorCode::PreconditionViolated, "fiber of size " + std::to_string(size) + " exceeds M");
        }
        energy += static_cast<std::uint64_t>(size) * size;
    }
    const double n = static_cast<double>(a.size());
    if (static_cast<double>(energy) * k < m * n) {
        throw Error(ErrorCode::PreconditionViolated,
                    "energy " + std::to_string(energy) + " is below (M/K)|A|");
    }

    const double threshold = m / (2.0 * k);
    std::vector<Point> kept;
    std::size_t fibers = 0;
    std::map<Point, bool> keep;
    for (const auto& [key, size] : sizes) {
        const bool big = static_cast<double>(size) >= threshold;
        keep.emplace(key, big);
        if (big) ++fibers;
    }
    for (const auto& p : a) {
        if (keep.at(phi(p))) kept.push_back(p);
    }
    LatticeSet out(a.dim(), std::move(kept));
    if (static_cast<double>(out.size()) * 2.0 * k < n) throw std::logic_error("trim_small_fibers: |A'| < |A|/(2K)");
    if (static_cast<double>(fibers) * m > 2.0 * k * n) throw std::logic_error("trim_small_fibers: |phi(A')| > (2K/M)|A|");
    return out;
}

double ruzsa_triangle_defect(const LatticeSet& a, const LatticeSet& b, const LatticeSet& c) {
    if (a.empty() || b.empty() || c.empty()) throw Error(ErrorCode::EmptyInput, "Ruzsa triangle needs nonempty sets");
    const auto ac = difference(a, c).size();
    const auto ab = difference(a, b).size();
    const auto bc = difference(b, c).size();
    return static_cast<double>(b.size()) * static_cast<double>(ac) / (static_cast<double>(ab) * static_cast<double>(bc));
}

PluenneckeWitness pluennecke_witness(const LatticeSet& a, const LatticeSet& b, int k, int l) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyInput, "Pluennecke witness needs nonempty sets");
    const double doubling = static_cast<double>(sumset(a, b).size()) / static_cast<double>(b.size());
    const auto size = iterated_sumset(a, k, l).size();
    const double ratio = static_cast<double>(size) / (std::pow(doubling, k + l) * static_cast<double>(b.size()));
    return {doubling, ratio, size};
}

IntersectionLemmaResult check_intersection_lemma(const FiniteProbSpace& space, const LatticeSet& ground,
                                                 const std::vector<LatticeSet>& family, int q, double k,
                                                 std::size_t trials, std::uint64_t seed) {
    if (family.size() != space.size()) throw Error(ErrorCode::InvalidArgument, "one subset per point of the space");
    if (q < 1) throw Error(ErrorCode::InvalidArgument, "q must be positive");
    if (!(k >= 1.0)) throw Error(ErrorCode::InvalidArgument, "K must be at least 1");
    if (ground.empty()) throw Error(ErrorCode::EmptyInput, "empty ground set");

    const double n = static_cast<double>(ground.size());
    std::string offending;
    std::vector<Bits> bits;
    bits.reserve(family.size());
    for (std::size_t t = 0; t < family.size(); ++t) {
        if (static_cast<double>(family[t].size()) * k < n) offending += (offending.empty() ? "" : ", ") + std::to_string(t);
        bits.push_back(indicator(ground, family[t]));
    }
    if (!offending.empty()) throw Error(ErrorCode::PreconditionViolated, "|A_theta| < |A|/K for theta in {" + offending + "}");

    const double kq = std::pow(k, q);
    const auto large = [&](const std::vector<std::size_t>& tuple) {
        Bits acc = bits[tuple[0]];
        for (std::size_t j = 1; j < tuple.size(); ++j)
            for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= bits[tuple[j]][w];
        std::size_t count = 0;
        for (auto word : acc) count += static_cast<std::size_t>(__builtin_popcountll(word));
        return static_cast<double>(count) * 2.0 * kq >= n;
    };

    IntersectionLemmaResult r{};
    r.bound = 1.0 / (2.0 * kq);
    const auto qs = static_cast<std::size_t>(q);
    if (std::pow(static_cast<double>(space.size()), q) <= kExhaustiveLimit) {
        r.exhaustive = true;
        std::vector<std::size_t> tuple(qs, 0);
        while (true) {
            if (large(tuple)) {
                double w = 1.0;
                for (auto t : tuple) w *= space.weight(t);
                r.mass += w;
            }
            std::size_t j = 0;
            while (j < qs && tuple[j] + 1 == space.size()) tuple[j++] = 0;
            if (j == qs) break;
            ++tuple[j];
        }
    } else {
        if (trials == 0) throw Error(ErrorCode::InvalidArgument, "Monte-Carlo needs trials > 0");
        std::mt19937_64 gen(seed);
        std::discrete_distribution<std::size_t> pick(space.weights().begin(), space.weights().end());
        std::size_t hits = 0;
        std::vector<std::size_t> tuple(qs);
        for (std::size_t s = 0; s < trials; ++s) {
            for (auto& t : tuple) t = pick(gen);
            if (large(tuple)) ++hits;
        }
        r.mass = static_cast<double>(hits) / static_cast<double>(trials);
        r.sigma = std::sqrt(r.mass * (1.0 - r.mass) / static_cast<double>(trials));
    }
    r.holds = r.mass >= r.bound - 3.0 * r.sigma - 1e-12;
    return r;
}

UnionCapResult check_union_cap_lemma(const FiniteProbSpace& space, const std::vector<std::vector<std::size_t>>& events,
                                     const std::vector<double>& weights, double a) {
    if (weights.size() != events.size()) throw Error(ErrorCode::WeightsInvalid, "one weight per event required");
    check_probabilities(weights, "event weights");
    if (!(a > 0.0)) throw Error(ErrorCode::WeightsInvalid, "threshold a must be positive");

    std::vector<double> accumulated(space.size(), 0.0);
    double max_event = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        std::vector<std::size_t> pts = events[i];
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        double mass = 0.0;
        for (auto x : pts) {
            if (x >= space.size()) throw Error(ErrorCode::BadIndex, "event refers to a point outside the space");
            accumulated[x] += weights[i];
            mass += space.weight(x);
        }
        max_event = std::max(max_event, mass);
    }
    UnionCapResult r{};
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (accumulated[x] >= a - 1e-12) r.lhs += space.weight(x);
    }
    r.rhs = max_event / a;
    r.holds = r.lhs <= r.rhs + 1e-12;
    return r;
}

}  // namespace grassproj
