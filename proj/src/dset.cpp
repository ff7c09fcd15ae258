#include "grassproj/dset.hpp"

#include "grassproj/error.hpp"
#include "grassproj/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace grassproj {

namespace detail {
std::vector<Point> read_points(std::istream& in, int n);
}

namespace {

constexpr int kMaxScale = 50;

void check_scale(int k) {
    if (k < 0 || k > kMaxScale) throw Error(ErrorCode::InvalidArgument, "scale exponent out of range");
}

std::int64_t floor_to_int(double x) {
    if (!std::isfinite(x) || std::abs(x) > 9.0e15) throw Error(ErrorCode::InvalidArgument, "coordinate out of range");
    return static_cast<std::int64_t>(std::floor(x));
}

// Centre of cell z in cell units (z + 1/2).
Vec cell_center_units(const Point& z) {
    Vec c(static_cast<Eigen::Index>(z.size()));
    for (std::size_t i = 0; i < z.size(); ++i) c(static_cast<Eigen::Index>(i)) = static_cast<double>(z[i]) + 0.5;
    return c;
}

Point floor_point(const Vec& x) {
    Point p(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) p[static_cast<std::size_t>(i)] = floor_to_int(x(i));
    return p;
}

// Calls visit(offset) for every offset in [-r, r]^n.
template <typename Visit>
void for_each_offset(int n, std::int64_t r, Visit&& visit) {
    Point off(static_cast<std::size_t>(n), -r);
    if (n == 0) {
        visit(off);
        return;
    }
    while (true) {
        visit(off);
        int i = 0;
        while (i < n && off[static_cast<std::size_t>(i)] == r) {
            off[static_cast<std::size_t>(i)] = -r;
            ++i;
        }
        if (i == n) return;
        ++off[static_cast<std::size_t>(i)];
    }
}

std::int64_t squared_distance(const Point& a, const Point& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void require_same_grid(const DiscretizedSet& a, const DiscretizedSet& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::AmbientMismatch, "sets live in different dimensions");
    if (a.k() != b.k()) throw Error(ErrorCode::InvalidArgument, "sets live at different scales");
}

}  // namespace

DiscretizedSet::DiscretizedSet(int n, int k) : k_(k), cells_(n) { check_scale(k); }

DiscretizedSet::DiscretizedSet(int k, LatticeSet cells) : k_(k), cells_(std::move(cells)) { check_scale(k); }

double DiscretizedSet::delta() const noexcept { return std::ldexp(1.0, -k_); }

Vec DiscretizedSet::center(std::size_t i) const { return cell_center_units(cells_[i]) * delta(); }

WeightedCellSet::WeightedCellSet(DiscretizedSet set, std::vector<double> weights)
    : set_(std::move(set)), weights_(std::move(weights)) {
    if (weights_.size() != set_.size()) throw Error(ErrorCode::WeightsInvalid, "one weight per cell required");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::WeightsInvalid, "weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::WeightsInvalid, "weights must sum to 1");
}

WeightedCellSet WeightedCellSet::uniform(DiscretizedSet set) {
    if (set.empty()) throw Error(ErrorCode::EmptySet, "uniform weights on an empty set");
    const auto n = set.size();
    return WeightedCellSet(std::move(set), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscretizedSet from_points(int n, int k, std::span<const Vec> points) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "scale exponent must be at least 1");
    check_scale(k);
    std::vector<Point> cells;
    cells.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != n) throw Error(ErrorCode::DimMismatch, "point of the wrong dimension");
        Point z(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = floor_to_int(std::ldexp(p(i), k));
        cells.push_back(std::move(z));
    }
    return DiscretizedSet(k, LatticeSet(n, std::move(cells)));
}

std::size_t covering_number_balls(const DiscretizedSet& a, double delta_prime) {
    if (!(delta_prime >= a.delta())) throw Error(ErrorCode::ScaleTooFine, "delta' is finer than the set's scale");
    const double r = 2.0 * delta_prime / a.delta();  // separation in cell units
    const double r2 = r * r;
    const int n = a.dim();
    // Buckets of side r: points within distance r of each other sit in
    // neighbouring buckets.
    std::unordered_map<Point, std::vector<std::size_t>, PointHash> buckets;
    std::vector<std::size_t> chosen;
    const auto bucket_of = [&](const Point& z) {
        Point b(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            b[i] = static_cast<std::int64_t>(std::floor((static_cast<double>(z[i]) + 0.5) / r));
        }
        return b;
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point& z = a.cells()[i];
        const Point b = bucket_of(z);
        bool separated = true;
        Point nb(b.size());
        for_each_offset(n, 1, [&](const Point& off) {
            if (!separated) return;
            for (std::size_t d = 0; d < b.size(); ++d) nb[d] = b[d] + off[d];
            const auto it = buckets.find(nb);
            if (it == buckets.end()) return;
            for (auto j : it->second) {
                if (static_cast<double>(squared_distance(z, a.cells()[j])) <= r2) {
                    separated = false;
                    return;
                }
            }
        });
        if (separated) {
            chosen.push_back(i);
            buckets[b].push_back(i);
        }
    }
    return chosen.size();
}

DiscretizedSet neighborhood(const DiscretizedSet& a, double rho) {
    if (!(rho >= 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be nonnegative");
    const auto r = static_cast<std::int64_t>(std::ceil(rho / a.delta() - 1e-9));
    if (r <= 0) return a;
    const double block = std::pow(static_cast<double>(2 * r + 1), a.dim());
    if (block * static_cast<double>(a.size()) > 5e7) throw Error(ErrorCode::TooLarge, "neighbourhood too large");
    std::unordered_set<Point, PointHash> out;
    Point q;
    for (const auto& z : a.cells()) {
        for_each_offset(a.dim(), r, [&](const Point& off) {
            q = z;
            for (std::size_t i = 0; i < q.size(); ++i) q[i] += off[i];
            out.insert(q);
        });
    }
    return DiscretizedSet(a.k(), LatticeSet(a.dim(), std::vector<Point>(out.begin(), out.end())));
}

DiscretizedSet restrict_ball(const DiscretizedSet& a, const Vec& x, double rho) {
    if (x.size() != a.dim()) throw Error(ErrorCode::DimMismatch, "ball centre of the wrong dimension");
    if (!(rho >= a.delta())) throw Error(ErrorCode::InvalidArgument, "rho must be at least delta");
    const double radius = rho + a.delta() * std::sqrt(static_cast<double>(a.dim())) / 2.0;
    std::vector<Point> kept;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a.center(i) - x).norm() <= radius) kept.push_back(a.cells()[i]);
    }
    return DiscretizedSet(a.k(), LatticeSet(a.dim(), std::move(kept)));
}

std::vector<Point> projected_cells(const DiscretizedSet& a, const Subspace& v) {
    if (v.ambient_dim() != a.dim()) throw Error(ErrorCode::AmbientMismatch, "subspace and set dimensions differ");
    std::vector<Point> out;
    out.reserve(a.size());
    const Mat bt = v.basis().transpose();
    for (const auto& z : a.cells()) out.push_back(floor_point(bt * cell_center_units(z)));
    return out;
}

DiscretizedSet project_set(const DiscretizedSet& a, const Subspace& v) {
    return DiscretizedSet(a.k(), LatticeSet(v.dim(), projected_cells(a, v)));
}

DiscretizedSet slice(const DiscretizedSet& a, const Subspace& v, const Vec& y) {
    if (v.ambient_dim() != a.dim()) throw Error(ErrorCode::AmbientMismatch, "subspace and set dimensions differ");
    if (y.size() != v.dim()) throw Error(ErrorCode::DimMismatch, "slice point must have dim V coordinates");
    const Vec y_units = y / a.delta();
    const Mat bt = v.basis().transpose();
    std::vector<Point> kept;
    for (const auto& z : a.cells()) {
        const Vec c = bt * cell_center_units(z);
        if (v.dim() == 0 || (c - y_units).cwiseAbs().maxCoeff() < 1.0) kept.push_back(z);
    }
    return DiscretizedSet(a.k(), LatticeSet(a.dim(), std::move(kept)));
}

DiscretizedSet linear_image(const DiscretizedSet& a, const LinearMap& f) {
    if (f.dim() != a.dim()) throw Error(ErrorCode::AmbientMismatch, "map and set dimensions differ");
    std::vector<Point> out;
    out.reserve(a.size());
    for (const auto& z : a.cells()) out.push_back(floor_point(f.matrix() * cell_center_units(z)));
    return DiscretizedSet(a.k(), LatticeSet(a.dim(), std::move(out)));
}

DiscretizedSet coarsen(const DiscretizedSet& a, int k_coarse) {
    if (k_coarse < 0 || k_coarse > a.k()) throw Error(ErrorCode::InvalidArgument, "coarse scale must satisfy 0 <= k' <= k");
    const int shift = a.k() - k_coarse;
    std::vector<Point> out;
    out.reserve(a.size());
    for (auto z : a.cells()) {
        for (auto& c : z) c >>= shift;  // arithmetic shift = floor division by 2^shift
        out.push_back(std::move(z));
    }
    return DiscretizedSet(k_coarse, LatticeSet(a.dim(), std::move(out)));
}

DiscretizedSet set_union(const DiscretizedSet& a, const DiscretizedSet& b) {
    require_same_grid(a, b);
    return DiscretizedSet(a.k(), set_union(a.cells(), b.cells()));
}

DiscretizedSet set_intersection(const DiscretizedSet& a, const DiscretizedSet& b) {
    require_same_grid(a, b);
    return DiscretizedSet(a.k(), set_intersection(a.cells(), b.cells()));
}

bool is_subset(const DiscretizedSet& a, const DiscretizedSet& b) {
    return a.k() == b.k() && is_subset(a.cells(), b.cells());
}

double frostman_stat(const DiscretizedSet& a, double kappa, unsigned threads) {
    if (a.empty()) throw Error(ErrorCode::EmptySet, "frostman statistic of an empty set");
    if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
    const int k = a.k();
    const auto n_cells = a.size();
    // Ball radii in cell units: 2^j + sqrt(n)/2, compared on squared integer
    // distances between cell centres.
    std::vector<double> radius2(static_cast<std::size_t>(k) + 1);
    const double half_diag = std::sqrt(static_cast<double>(a.dim())) / 2.0;
    for (int j = 0; j <= k; ++j) {
        const double r = std::ldexp(1.0, j) + half_diag;
        radius2[static_cast<std::size_t>(j)] = r * r * (1.0 + 1e-12);
    }
    std::vector<double> per_center(n_cells, 0.0);
    parallel_for(n_cells, threads, [&](std::size_t i) {
        std::vector<std::size_t> hist(radius2.size() + 1, 0);
        const Point& x = a.cells()[i];
        for (const auto& z : a.cells()) {
            const auto d2 = static_cast<double>(squared_distance(x, z));
            const auto j = std::lower_bound(radius2.begin(), radius2.end(), d2) - radius2.begin();
            ++hist[static_cast<std::size_t>(j)];
        }
        double best = 0.0;
        std::size_t count = 0;
        for (int j = 0; j <= k; ++j) {
            count += hist[static_cast<std::size_t>(j)];
            const double rho_kappa = std::exp2(kappa * static_cast<double>(j - k));
            best = std::max(best, static_cast<double>(count) / (rho_kappa * static_cast<double>(n_cells)));
        }
        per_center[i] = best;
    });
    return *std::max_element(per_center.begin(), per_center.end());
}

MassLevels mass_levels(const WeightedCellSet& w, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, 1)");
    const auto& set = w.set();
    if (set.k() < 1) throw Error(ErrorCode::InvalidArgument, "mass levels need k >= 1");
    const int last = static_cast<int>(std::ceil(set.dim() / eps)) + 1;
    const double step = eps * set.k();  // delta^(l eps) = 2^(-l * step)
    const auto level_bound = [&](int l) { return std::exp2(-static_cast<double>(l) * step); };

    std::vector<std::vector<Point>> buckets(static_cast<std::size_t>(last) + 1);
    MassLevels out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double weight = w.weights()[i];
        if (weight <= 0.0) continue;
        int l = static_cast<int>(std::floor(-std::log2(weight) / step));
        l = std::max(l, 0);
        while (l > 0 && !(weight <= level_bound(l))) --l;
        while (!(level_bound(l + 1) < weight)) ++l;
        if (l > last) {
            out.dropped_weight += weight;
            continue;
        }
        buckets[static_cast<std::size_t>(l)].push_back(set.cells()[i]);
    }
    for (auto& b : buckets) out.levels.emplace_back(set.k(), LatticeSet(set.dim(), std::move(b)));
    return out;
}

std::size_t ball_cover_constant(int n) {
    if (n < 1 || n > 8) throw Error(ErrorCode::InvalidArgument, "ball_cover_constant supports 1 <= n <= 8");
    // Cubes of side 2/sqrt(n) have diameter 2, so each lies in the unit ball
    // about its centre; count those meeting B(0, 2).
    const double side = 2.0 / std::sqrt(static_cast<double>(n));
    const auto reach = static_cast<std::int64_t>(std::ceil(2.0 / side)) + 1;
    std::size_t count = 0;
    for_each_offset(n, reach, [&](const Point& z) {
        double d2 = 0.0;
        for (auto c : z) {
            const double gap = side * static_cast<double>(std::max<std::int64_t>({c, -(c + 1), 0}));
            d2 += gap * gap;
        }
        if (d2 <= 4.0) ++count;
    });
    return count;
}

void write_discretized_set(std::ostream& out, const DiscretizedSet& a) {
    out << a.dim() << ' ' << a.k() << '\n';
    for (const auto& p : a.cells()) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
        out << '\n';
    }
}

DiscretizedSet read_discretized_set(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw Error(ErrorCode::Format, "missing header line");
    std::istringstream h(header);
    int n = -1;
    int k = -1;
    std::string extra;
    if (!(h >> n >> k) || n < 1 || k < 0 || k > kMaxScale || (h >> extra)) {
        throw Error(ErrorCode::Format, "header must be \"n k\"");
    }
    return DiscretizedSet(k, LatticeSet(n, detail::read_points(in, n)));
}

double box_dimension_proxy(const DiscretizedSet& a) {
    if (a.empty() || a.k() == 0) return 0.0;
    return std::log2(static_cast<double>(a.size())) / a.k();
}

}  // namespace grassproj
