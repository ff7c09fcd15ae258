#include "grassproj/lattice_cover.hpp"

#include "grassproj/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

namespace grassproj {

namespace {

using boost::multiprecision::pow;

BigInt big(std::size_t x) { return BigInt(x); }

BigInt big_pow(const BigInt& base, int e) { return pow(base, static_cast<unsigned>(e)); }

IndexSet range_set(int lo, int hi) {
    IndexSet s;
    for (int i = lo; i <= hi; ++i) s.push_back(i);
    return s;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_plus(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Projection that also accepts an empty index set (a single point).
std::size_t projection_size(const LatticeSet& z, const IndexSet& idx) {
    if (idx.empty()) return z.empty() ? 0 : 1;
    return project_coords(z, idx).size();
}

std::map<Point, std::size_t> fibers(const LatticeSet& z, const IndexSet& i0) {
    std::map<Point, std::size_t> out;
    for (const auto& p : z) {
        Point key;
        key.reserve(i0.size());
        for (int i : i0) key.push_back(p[static_cast<std::size_t>(i - 1)]);
        ++out[key];
    }
    return out;
}

// K = a/b with a >= b > 0. Each helper decides "x >= K^s * |Z|^(e/n)" style
// thresholds by raising both sides to the n-th power.

// |P| >= K |Z|^(m/n)  <=>  |P|^n b^n >= a^n |Z|^m
bool big_projection(std::size_t size, const TrichotomyParams& p, std::size_t z) {
    const auto& a = p.k.numerator();
    const auto& b = p.k.denominator();
    return big_pow(big(size), p.n) * big_pow(b, p.n) >= big_pow(a, p.n) * big_pow(big(z), p.m);
}

// |F| >= K |Z|^((n-r)/n)
bool heavy_fiber(std::size_t size, const TrichotomyParams& p, std::size_t z) {
    const auto& a = p.k.numerator();
    const auto& b = p.k.denominator();
    return big_pow(big(size), p.n) * big_pow(b, p.n) >= big_pow(a, p.n) * big_pow(big(z), p.n - p.r);
}

// |F| >= |Z|^((n-r)/n) / (2 K^q)  <=>  (2 a^q |F|)^n >= |Z|^(n-r) b^(qn)
bool kept_fiber(std::size_t size, const TrichotomyParams& p, std::size_t z) {
    const auto& a = p.k.numerator();
    const auto& b = p.k.denominator();
    return big_pow(2 * big_pow(a, p.q) * big(size), p.n) >= big_pow(big(z), p.n - p.r) * big_pow(b, p.q * p.n);
}

// |Z'| >= |Z| / (2 K^(q+1))  <=>  2 a^(q+1) |Z'| >= b^(q+1) |Z|
bool trimmed_large(std::size_t sub, const TrichotomyParams& p, std::size_t z) {
    const auto& a = p.k.numerator();
    const auto& b = p.k.denominator();
    return 2 * big_pow(a, p.q + 1) * big(sub) >= big_pow(b, p.q + 1) * big(z);
}

// |proj(Z')| <= 2 K^q |Z|^(r/n)  <=>  (|proj| b^q)^n <= (2 a^q)^n |Z|^r
bool trimmed_thin(std::size_t proj, const TrichotomyParams& p, std::size_t z) {
    const auto& a = p.k.numerator();
    const auto& b = p.k.denominator();
    return big_pow(big(proj) * big_pow(b, p.q), p.n) <= big_pow(2 * big_pow(a, p.q), p.n) * big_pow(big(z), p.r);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto fail = [&] { return Error(ErrorCode::InvalidArgument, "not a rational number: " + std::string(text)); };
    const auto digits_only = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!digits_only(num) || !digits_only(den)) throw fail();
        const BigInt d{std::string(den)};
        if (d == 0) throw fail();
        value = Rational(BigInt(std::string(num)), d);
    } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto whole = s.substr(0, dot);
        const auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !digits_only(whole)) || !digits_only(frac)) throw fail();
        const BigInt scale = pow(BigInt(10), static_cast<unsigned>(frac.size()));
        const BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
        value = Rational(w * scale + BigInt(std::string(frac)), scale);
    } else {
        if (!digits_only(s)) throw fail();
        value = Rational(BigInt(std::string(s)));
    }
    return negative ? -value : value;
}

LatticeSet project_coords(const LatticeSet& z, const IndexSet& idx) {
    if (idx.empty()) throw Error(ErrorCode::BadIndex, "empty index set");
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (idx[t] < 1 || idx[t] > z.dim()) throw Error(ErrorCode::BadIndex, "index " + std::to_string(idx[t]) + " out of range");
        if (t > 0 && idx[t] <= idx[t - 1]) throw Error(ErrorCode::BadIndex, "index set must be strictly increasing");
    }
    std::vector<Point> out;
    out.reserve(z.size());
    for (const auto& p : z) {
        Point q;
        q.reserve(idx.size());
        for (int i : idx) q.push_back(p[static_cast<std::size_t>(i - 1)]);
        out.push_back(std::move(q));
    }
    return LatticeSet(static_cast<int>(idx.size()), std::move(out));
}

IndexFamily index_family(int n, int m, int q, int r) {
    if (!(0 < m && m < n) || !(0 < r && r <= n - m) || q < 1 || n != q * (n - m) + r) {
        throw Error(ErrorCode::ArithmeticMismatch, "need n = q(n-m) + r with 0 < r <= n-m and 0 < m < n");
    }
    IndexFamily f;
    f.i0 = range_set(n - r + 1, n);
    const IndexSet all = range_set(1, n);
    for (int j = 1; j <= q; ++j) f.parts.push_back(set_minus(all, range_set((j - 1) * (n - m) + 1, j * (n - m))));

    std::vector<IndexSet> residual;
    for (const auto& part : f.parts) residual.push_back(set_minus(part, f.i0));
    const UniformCover check(residual, set_minus(all, f.i0));
    if (check.k() != q - 1) throw std::logic_error("index_family: residual parts are not a (q-1)-uniform cover");
    return f;
}

UniformCover::UniformCover(std::vector<IndexSet> members, IndexSet ground)
    : members_(std::move(members)), ground_(std::move(ground)) {
    std::sort(ground_.begin(), ground_.end());
    if (std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end()) {
        throw Error(ErrorCode::InvalidCover, "ground set has repeated indices");
    }
    std::map<int, int> hits;
    for (int g : ground_) hits[g] = 0;
    for (auto& member : members_) {
        std::sort(member.begin(), member.end());
        if (std::adjacent_find(member.begin(), member.end()) != member.end()) {
            throw Error(ErrorCode::InvalidCover, "member has repeated indices");
        }
        for (int i : member) {
            const auto it = hits.find(i);
            if (it == hits.end()) throw Error(ErrorCode::InvalidCover, "index " + std::to_string(i) + " outside the ground set");
            ++it->second;
        }
    }
    k_ = hits.empty() ? 0 : hits.begin()->second;
    for (const auto& [i, c] : hits) {
        if (c != k_) throw Error(ErrorCode::InvalidCover, "cover is not uniform at index " + std::to_string(i));
    }
}

UniformCover UniformCover::of_range(std::vector<IndexSet> members, int n) {
    return UniformCover(std::move(members), range_set(1, n));
}

BigComparison uct_check(const LatticeSet& z, const UniformCover& cover) {
    if (cover.ground() != range_set(1, z.dim())) throw Error(ErrorCode::InvalidCover, "cover must be over {1..n}");
    BigComparison c{big_pow(big(z.size()), cover.k()), 1};
    for (const auto& member : cover.members()) c.rhs *= big(projection_size(z, member));
    if (!c.holds()) throw std::logic_error("uct_check: uniform cover inequality violated");
    return c;
}

BigInt projection_energy(const LatticeSet& z, const IndexSet& i0) {
    if (i0.empty()) return big(z.size()) * big(z.size());
    (void)project_coords(z, i0);  // validates the indices
    BigInt total = 0;
    for (const auto& [key, size] : fibers(z, i0)) total += big(size) * big(size);
    return total;
}

BigComparison energy_proj_check(const LatticeSet& z, const IndexSet& i0, const UniformCover& cover) {
    IndexSet sorted_i0 = i0;
    std::sort(sorted_i0.begin(), sorted_i0.end());
    const IndexSet rest = set_minus(range_set(1, z.dim()), sorted_i0);
    if (cover.ground() != rest) throw Error(ErrorCode::InvalidCover, "cover must be over the complement of I0");
    const int q = static_cast<int>(cover.members().size());
    const int k = cover.k();
    if (k > q) throw Error(ErrorCode::InvalidCover, "need k <= number of members");
    BigComparison c{big_pow(big(z.size()), 2 * q - k), big_pow(projection_energy(z, sorted_i0), q - k)};
    for (const auto& member : cover.members()) c.rhs *= big(projection_size(z, set_plus(sorted_i0, member)));
    if (!c.holds()) throw std::logic_error("energy_proj_check: inequality violated");
    return c;
}

TrichotomyOutcome trichotomy(const LatticeSet& z, int n, int m, int q, int r, const Rational& k) {
    const auto family = index_family(n, m, q, r);
    if (z.dim() != n) throw Error(ErrorCode::DimMismatch, "set dimension differs from n");
    if (z.empty()) throw Error(ErrorCode::EmptyInput, "empty set");
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "K must be at least 1");

    TrichotomyOutcome out{{n, m, q, r, k}, BigProjection{0, 0}};
    const auto& p = out.params;
    bool found = false;
    for (int j = 1; j <= q && !found; ++j) {
        const auto size = project_coords(z, family.parts[static_cast<std::size_t>(j - 1)]).size();
        if (big_projection(size, p, z.size())) {
            out.witness = BigProjection{j, size};
            found = true;
        }
    }
    const auto fiber_sizes = fibers(z, family.i0);
    for (auto it = fiber_sizes.begin(); it != fiber_sizes.end() && !found; ++it) {
        if (heavy_fiber(it->second, p, z.size())) {
            out.witness = HeavyFiber{it->first, it->second};
            found = true;
        }
    }
    if (!found) {
        std::vector<Point> kept;
        std::size_t fibers_kept = 0;
        for (const auto& [y, size] : fiber_sizes) {
            if (kept_fiber(size, p, z.size())) ++fibers_kept;
        }
        for (const auto& pt : z) {
            Point key;
            for (int i : family.i0) key.push_back(pt[static_cast<std::size_t>(i - 1)]);
            if (kept_fiber(fiber_sizes.at(key), p, z.size())) kept.push_back(pt);
        }
        out.witness = TrimmedSubset{LatticeSet(n, std::move(kept)), fibers_kept};
    }
    if (!verify_outcome(z, out)) throw std::logic_error("trichotomy: witness failed verification");
    return out;
}

bool verify_outcome(const LatticeSet& z, const TrichotomyOutcome& outcome) {
    const auto& p = outcome.params;
    const auto family = index_family(p.n, p.m, p.q, p.r);
    if (z.dim() != p.n || z.empty()) return false;
    return std::visit(
        [&](const auto& w) -> bool {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, BigProjection>) {
                if (w.j < 1 || w.j > p.q) return false;
                const auto size = project_coords(z, family.parts[static_cast<std::size_t>(w.j - 1)]).size();
                return size == w.size && big_projection(size, p, z.size());
            } else if constexpr (std::is_same_v<W, HeavyFiber>) {
                const auto all = fibers(z, family.i0);
                const auto it = all.find(w.y);
                return it != all.end() && it->second == w.size && heavy_fiber(w.size, p, z.size());
            } else {
                if (!is_subset(w.subset, z)) return false;
                const auto proj = w.subset.empty() ? 0 : project_coords(w.subset, family.i0).size();
                return proj == w.projection_size && trimmed_large(w.subset.size(), p, z.size()) &&
                       trimmed_thin(proj, p, z.size());
            }
        },
        outcome.witness);
}

}  // namespace grassproj
