#include "grassproj/lab.hpp"

#include "grassproj/error.hpp"
#include "grassproj/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace grassproj {

namespace {

constexpr double kMaxGeneratedCells = 5e7;

int log2_exact(int b) {
    if (b < 2 || (b & (b - 1)) != 0) throw Error(ErrorCode::BadBase, "base must be a power of two >= 2");
    int e = 0;
    while ((1 << e) < b) ++e;
    return e;
}

// Cartesian power of a coordinate list.
std::vector<Point> product_points(const std::vector<std::int64_t>& coords, int n) {
    std::vector<Point> out;
    Point cur(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int d) -> void {
        if (d == n) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t c : coords) {
            cur[static_cast<std::size_t>(d)] = c;
            self(self, d + 1);
        }
    };
    rec(rec, 0);
    return out;
}

struct FiberSelection {
    std::size_t fibers_total = 0;
    std::size_t fibers_taken = 0;
    std::size_t cells_taken = 0;
    std::vector<std::size_t> cells;  // indices into A, only when requested
};

FiberSelection select_heavy_fibers(const DiscretizedSet& a, const std::vector<Point>& proj, double eps,
                                   bool keep_cells) {
    std::unordered_map<Point, std::vector<std::size_t>, PointHash> fibers;
    for (std::size_t i = 0; i < proj.size(); ++i) fibers[proj[i]].push_back(i);

    std::vector<const std::pair<const Point, std::vector<std::size_t>>*> order;
    order.reserve(fibers.size());
    for (const auto& entry : fibers) order.push_back(&entry);
    std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
        if (x->second.size() != y->second.size()) return x->second.size() > y->second.size();
        return x->first < y->first;
    });

    FiberSelection sel;
    sel.fibers_total = order.size();
    const double need = std::pow(a.delta(), eps) * static_cast<double>(a.size());
    for (const auto* f : order) {
        if (static_cast<double>(sel.cells_taken) >= need) break;
        ++sel.fibers_taken;
        sel.cells_taken += f->second.size();
        if (keep_cells) sel.cells.insert(sel.cells.end(), f->second.begin(), f->second.end());
    }
    return sel;
}

void check_sweep_args(int n, double eps, double alpha) {
    if (!(alpha > 0.0 && alpha < n)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, n)");
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be >= 0");
}

double min_dang_to_coordinate_planes(const Subspace& v) {
    const int n = v.ambient_dim();
    const int r = n - v.dim();
    std::vector<int> axes(static_cast<std::size_t>(r));
    std::iota(axes.begin(), axes.end(), 0);
    double best = 1.0;
    while (true) {
        best = std::min(best, dang(v, Subspace::coordinate(n, axes)));
        int i = r - 1;
        while (i >= 0 && axes[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) break;
        ++axes[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) axes[static_cast<std::size_t>(j)] = axes[static_cast<std::size_t>(j - 1)] + 1;
    }
    return best;
}

std::string json_real(double x) { return std::isfinite(x) ? format_real(x) : "null"; }

}  // namespace

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

DiscretizedSet gen_cantor_product(int base, std::vector<int> digits, int n, int levels) {
    const int e = log2_exact(base);
    if (digits.empty()) throw Error(ErrorCode::InvalidArgument, "digit set is empty");
    std::sort(digits.begin(), digits.end());
    digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
    if (digits.front() < 0 || digits.back() >= base)
        throw Error(ErrorCode::InvalidArgument, "digits must lie in {0..base-1}");
    if (n < 1 || levels < 0) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and levels >= 0");
    const int k = e * levels;
    if (k > 50) throw Error(ErrorCode::InvalidArgument, "scale exponent above 50");
    if (std::pow(static_cast<double>(digits.size()), static_cast<double>(levels) * n) > kMaxGeneratedCells)
        throw Error(ErrorCode::TooLarge, "Cantor product has too many cells");

    std::vector<std::int64_t> coords{0};
    for (int level = 0; level < levels; ++level) {
        std::vector<std::int64_t> next;
        next.reserve(coords.size() * digits.size());
        for (std::int64_t c : coords)
            for (int d : digits) next.push_back(c * base + d);
        coords = std::move(next);
    }
    return DiscretizedSet(k, LatticeSet(n, product_points(coords, n)));
}

DiscretizedSet gen_ball(int n, int k, double theta) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    if (!(theta >= 0.0 && theta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, 1]");
    if (k < 0 || k > 50) throw Error(ErrorCode::InvalidArgument, "k must lie in 0..50");
    const double radius = std::exp2(k * (1.0 - theta));
    const double r2 = radius * radius;
    const auto reach = static_cast<std::int64_t>(std::ceil(radius));
    if (std::pow(2.0 * static_cast<double>(reach) + 2.0, n) > kMaxGeneratedCells)
        throw Error(ErrorCode::TooLarge, "ball has too many cells");

    // Squared distance from 0 to the half-open cell z + [0,1)^n, and whether
    // the infimum is attained in the cell.
    std::vector<Point> cells;
    Point cur(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int d, double acc, bool attained) -> void {
        if (d == n) {
            if (acc < r2 || (acc == r2 && attained)) cells.push_back(cur);
            return;
        }
        for (std::int64_t z = -reach - 1; z <= reach; ++z) {
            const double dist = z >= 0 ? static_cast<double>(z) : static_cast<double>(-(z + 1));
            const double next = acc + dist * dist;
            if (next > r2) continue;
            cur[static_cast<std::size_t>(d)] = z;
            self(self, d + 1, next, attained && z >= 0);
        }
    };
    rec(rec, 0, 0.0, true);
    return DiscretizedSet(k, LatticeSet(n, std::move(cells)));
}

DiscretizedSet gen_slice_union(int k, int side) {
    if (k < 0 || k > 50) throw Error(ErrorCode::InvalidArgument, "k must lie in 0..50");
    if (side < 1 || static_cast<double>(side) > std::exp2(k))
        throw Error(ErrorCode::InvalidArgument, "side must lie in 1..2^k");
    std::vector<Point> cells;
    for (int x = 0; x < side; ++x)
        for (int y = 0; y < side; ++y) cells.push_back({x, y, 0});
    for (int z = 1; z < side; ++z) cells.push_back({0, 0, z});
    return DiscretizedSet(k, LatticeSet(3, std::move(cells)));
}

LatticeSet slice_union_lattice(int side) {
    if (side < 1) throw Error(ErrorCode::InvalidArgument, "side must be >= 1");
    std::vector<Point> pts;
    for (int x = 0; x < side; ++x)
        for (int y = 0; y < side; ++y) pts.push_back({x, y, 0});
    for (int z = 1; z <= side; ++z) pts.push_back({0, 0, z});
    return LatticeSet(3, std::move(pts));
}

DiscretizedSet generate(const GeneratorSpec& spec) {
    struct Visitor {
        DiscretizedSet operator()(const CantorProductSpec& s) const {
            return gen_cantor_product(s.base, s.digits, s.n, s.levels);
        }
        DiscretizedSet operator()(const BallSpec& s) const { return gen_ball(s.n, s.k, s.theta); }
        DiscretizedSet operator()(const SliceUnionSpec& s) const { return gen_slice_union(s.k, s.side); }
        DiscretizedSet operator()(const SetFileSpec& s) const {
            std::ifstream in(s.path);
            if (!in) throw Error(ErrorCode::Io, "cannot open " + s.path);
            return read_discretized_set(in);
        }
    };
    return std::visit(Visitor{}, spec);
}

double exceptional_threshold(int n, int m, int k, double alpha, double eps) {
    return std::exp2(k * (static_cast<double>(m) * alpha / n + eps));
}

std::optional<DiscretizedSet> heavy_fiber_certificate(const DiscretizedSet& a, const Subspace& v, double eps,
                                                      double alpha) {
    if (a.empty()) throw Error(ErrorCode::EmptySet, "certificate search on an empty set");
    if (v.ambient_dim() != a.dim()) throw Error(ErrorCode::AmbientMismatch, "subspace and set live in different R^n");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be >= 0");
    const auto proj = projected_cells(a, v);
    const auto sel = select_heavy_fibers(a, proj, eps, true);
    const double threshold = exceptional_threshold(a.dim(), v.dim(), a.k(), alpha, eps);
    if (!(static_cast<double>(sel.fibers_taken) < threshold)) return std::nullopt;
    std::vector<Point> cells;
    cells.reserve(sel.cells.size());
    for (std::size_t i : sel.cells) cells.push_back(a.cells().elements()[i]);
    return DiscretizedSet(a.k(), LatticeSet(a.dim(), std::move(cells)));
}

SweepReport projection_sweep(const DiscretizedSet& a, const GrassmannSample& mu, double eps, double alpha,
                             unsigned threads) {
    if (mu.n() != a.dim()) throw Error(ErrorCode::AmbientMismatch, "measure and set live in different R^n");
    if (a.empty()) throw Error(ErrorCode::EmptySet, "sweep over an empty set");
    check_sweep_args(a.dim(), eps, alpha);

    SweepReport report;
    report.n = a.dim();
    report.m = mu.m();
    report.k = a.k();
    report.alpha = alpha;
    report.eps = eps;
    report.threshold = exceptional_threshold(report.n, report.m, report.k, alpha, eps);
    report.cell_count = a.size();
    report.directions.resize(mu.size());

    parallel_for(mu.size(), threads, [&](std::size_t i) {
        const Subspace& v = mu.space(i);
        const auto sel = select_heavy_fibers(a, projected_cells(a, v), eps, false);
        DirectionRecord& rec = report.directions[i];
        rec.index = i;
        rec.weight = mu.weight(i);
        rec.dang_min_to_probes = min_dang_to_coordinate_planes(v);
        rec.proj_cells = sel.fibers_total;
        rec.flagged = static_cast<double>(sel.fibers_taken) < report.threshold;
        rec.cert_cells = rec.flagged ? sel.cells_taken : 0;
    });

    double fraction = 0.0;
    for (const auto& rec : report.directions)
        if (rec.flagged) fraction += rec.weight;
    report.exceptional_fraction = fraction;
    return report;
}

void write_sweep_json(std::ostream& out, const SweepReport& r) {
    out << "{\n";
    out << "  \"n\": " << r.n << ",\n";
    out << "  \"m\": " << r.m << ",\n";
    out << "  \"k\": " << r.k << ",\n";
    out << "  \"alpha\": " << json_real(r.alpha) << ",\n";
    out << "  \"eps\": " << json_real(r.eps) << ",\n";
    out << "  \"threshold\": " << json_real(r.threshold) << ",\n";
    out << "  \"cell_count\": " << r.cell_count << ",\n";
    out << "  \"exceptional_fraction\": " << json_real(r.exceptional_fraction) << ",\n";
    out << "  \"directions\": [";
    for (std::size_t i = 0; i < r.directions.size(); ++i) {
        const auto& d = r.directions[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "    {\"index\": " << d.index << ", \"weight\": " << json_real(d.weight)
            << ", \"dang_min_to_probes\": " << json_real(d.dang_min_to_probes) << ", \"proj_cells\": " << d.proj_cells
            << ", \"flagged\": " << (d.flagged ? "true" : "false") << ", \"certificate\": ";
        if (d.flagged)
            out << "{\"id\": " << d.index << ", \"cells\": " << d.cert_cells << "}";
        else
            out << "null";
        out << "}";
    }
    out << (r.directions.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
}

void write_sweep_csv(std::ostream& out, const SweepReport& r) {
    out << "dir_index,weight,dang_min_to_probes,proj_cells,threshold,flagged,cert_cells\n";
    for (const auto& d : r.directions) {
        out << d.index << ',' << format_real(d.weight) << ',' << format_real(d.dang_min_to_probes) << ','
            << d.proj_cells << ',' << format_real(r.threshold) << ',' << (d.flagged ? 1 : 0) << ',' << d.cert_cells
            << '\n';
    }
}

GlNormalization gl_normalize(const Subspace& v1, const Subspace& v2) {
    const int n = v1.ambient_dim();
    if (v2.ambient_dim() != n) throw Error(ErrorCode::AmbientMismatch, "subspaces live in different R^n");
    if (n % 2 != 0 || v1.dim() != n / 2 || v2.dim() != n / 2)
        throw Error(ErrorCode::DimMismatch, "both subspaces must have dimension n/2");
    if (dang(v1, v2) < 1e-8) throw Error(ErrorCode::Degenerate, "dang(V1, V2) below 1e-8");

    const int h = n / 2;
    const Mat& b1 = v1.basis();
    const Mat& b2 = v2.basis();
    const Mat projected = b2 - b1 * (b1.transpose() * b2);
    if (numerical_rank(projected) < h) throw Error(ErrorCode::Degenerate, "V2 meets V1");
    const Mat c = orthonormalize(projected).basis();

    Mat source(n, n), target(n, n);
    source << b1, b2;
    target << b1, c;
    const Mat g = target * source.inverse();
    LinearMap f(g.inverse().transpose());
    const double cond = f.condition();
    return GlNormalization{std::move(f), cond};
}

}  // namespace grassproj
