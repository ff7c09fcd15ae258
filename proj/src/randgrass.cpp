#include "grassproj/randgrass.hpp"

#include "grassproj/error.hpp"
#include "grassproj/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace grassproj {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Mat stack_bases(std::span<const Subspace> spaces, int n) {
    int cols = 0;
    for (const auto& s : spaces) cols += s.dim();
    Mat g(n, cols);
    int c = 0;
    for (const auto& s : spaces) {
        g.middleCols(c, s.dim()) = s.basis();
        c += s.dim();
    }
    return g;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

}  // namespace

Rng::result_type Rng::operator()() noexcept {
    ++counter_;
    return mix(seed_ + counter_ * kGolden);
}

Rng Rng::derive(std::uint64_t index) const noexcept { return Rng(mix(seed_ ^ mix(index + kGolden))); }

double Rng::normal() {
    std::normal_distribution<double> dist;
    return dist(*this);
}

Subspace haar_sample(int n, int m, Rng& rng) {
    if (!(0 < m && m < n)) throw Error(ErrorCode::InvalidArgument, "haar_sample needs 0 < m < n");
    while (true) {
        Mat g(n, m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
        if (numerical_rank(g) == m) return orthonormalize(g);
    }
}

GrassmannSample::GrassmannSample(int n, int m, std::vector<Subspace> spaces, std::vector<double> weights)
    : n_(n), m_(m), spaces_(std::move(spaces)), weights_(std::move(weights)) {
    if (spaces_.empty()) throw Error(ErrorCode::EmptySupport, "measure with empty support");
    if (weights_.size() != spaces_.size()) throw Error(ErrorCode::WeightsInvalid, "one weight per subspace required");
    for (const auto& s : spaces_) {
        if (s.ambient_dim() != n_ || s.dim() != m_) throw Error(ErrorCode::DimMismatch, "subspace outside Gr(n, m)");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::WeightsInvalid, "weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw Error(ErrorCode::WeightsInvalid, "weights sum to zero");
    if (std::abs(total - 1.0) > 1e-15) {
        for (double& w : weights_) w /= total;
    }
    cumulative_.resize(weights_.size());
    std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
}

GrassmannSample::GrassmannSample(int n, int m, std::vector<Subspace> spaces)
    : GrassmannSample(n, m, spaces, std::vector<double>(spaces.size(), 1.0)) {}

GrassmannSample GrassmannSample::haar(int n, int m, std::size_t count, const Rng& rng) {
    std::vector<Subspace> spaces;
    spaces.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng r = rng.derive(i);
        spaces.push_back(haar_sample(n, m, r));
    }
    return GrassmannSample(n, m, std::move(spaces));
}

std::size_t GrassmannSample::draw(Rng& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, cumulative_.back())(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

SubspaceSource SubspaceSource::haar(int n, int m) {
    if (!(0 < m && m < n)) throw Error(ErrorCode::InvalidArgument, "Haar measure needs 0 < m < n");
    return {n, m, [n, m](Rng& r) { return haar_sample(n, m, r); }};
}

SubspaceSource SubspaceSource::empirical(const GrassmannSample& mu) {
    return {mu.n(), mu.m(), [&mu](Rng& r) { return mu.space(mu.draw(r)); }};
}

double schubert_mass(const GrassmannSample& mu, const Subspace& w, double rho) {
    double mass = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (schubert_member(mu.space(i), w, rho)) mass += mu.weight(i);
    }
    return mass;
}

std::vector<Subspace> noncon_probes(const GrassmannSample& mu, std::size_t probes, const Rng& rng) {
    const int n = mu.n();
    const int m = mu.m();
    std::vector<Subspace> out;
    out.reserve(mu.size() + probes);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const auto& v = mu.space(i);
        if (m == 0 || m == n) {
            out.push_back(perp(v));
            continue;
        }
        Mat b(n, n - m);
        b.col(0) = v.basis().col(0);
        const Subspace vp = perp(v);
        for (int j = 0; j < n - m - 1; ++j) b.col(j + 1) = vp.basis().col(j);
        out.push_back(Subspace::from_orthonormal(std::move(b)));
    }
    if (0 < n - m && n - m < n) {
        for (std::size_t j = 0; j < probes; ++j) {
            Rng r = rng.derive(j);
            out.push_back(haar_sample(n, n - m, r));
        }
    }
    return out;
}

double noncon_stat(const GrassmannSample& mu, double kappa, int k, std::size_t probes, const Rng& rng,
                   unsigned threads) {
    if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
    if (k < 0 || k > 60) throw Error(ErrorCode::InvalidArgument, "scale exponent out of range");
    const auto family = noncon_probes(mu, probes, rng);
    std::vector<double> best(family.size(), 0.0);
    parallel_for(family.size(), threads, [&](std::size_t p) {
        // Mass of {dang <= 2^-j} for j = 0..k from one pass over the atoms.
        std::vector<double> mass(static_cast<std::size_t>(k) + 1, 0.0);
        for (std::size_t i = 0; i < mu.size(); ++i) {
            const double d = dang(mu.space(i), family[p]);
            for (int j = 0; j <= k; ++j) {
                if (d <= std::ldexp(1.0, -j)) {
                    mass[static_cast<std::size_t>(j)] += mu.weight(i);
                } else {
                    break;
                }
            }
        }
        double b = 0.0;
        for (int j = 0; j <= k; ++j) b = std::max(b, mass[static_cast<std::size_t>(j)] * std::exp2(kappa * j));
        best[p] = b;
    });
    return *std::max_element(best.begin(), best.end());
}

SumReport random_sum_experiment(const SubspaceSource& mu, int q, std::size_t trials, const Rng& rng,
                                unsigned threads) {
    if (q < 1) throw Error(ErrorCode::InvalidArgument, "q must be positive");
    if (q * mu.m > mu.n) throw Error(ErrorCode::DimOverflow, "qm exceeds n");
    if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
    std::vector<char> full(trials, 0);
    std::vector<double> angle(trials, 1.0);
    parallel_for(trials, threads, [&](std::size_t t) {
        Rng r = rng.derive(t);
        std::vector<Subspace> tuple;
        for (int j = 0; j < q; ++j) tuple.push_back(mu.draw(r));
        full[t] = numerical_rank(stack_bases(tuple, mu.n)) == q * mu.m;
        angle[t] = dang(tuple);
    });
    SumReport rep{};
    rep.full_dim_fraction = static_cast<double>(std::count(full.begin(), full.end(), 1)) / static_cast<double>(trials);
    rep.min_dang = *std::min_element(angle.begin(), angle.end());
    return rep;
}

SumReport random_sum_experiment(const GrassmannSample& mu, int q, std::size_t trials, const Rng& rng,
                                unsigned threads) {
    return random_sum_experiment(SubspaceSource::empirical(mu), q, trials, rng, threads);
}

int intersection_dim_nullspace(std::span<const Subspace> spaces) {
    if (spaces.empty()) throw Error(ErrorCode::InvalidArgument, "intersection of an empty list");
    const int n = spaces.front().ambient_dim();
    Mat x = spaces.front().basis();
    for (std::size_t i = 1; i < spaces.size() && x.cols() > 0; ++i) {
        const Mat& b = spaces[i].basis();
        Mat pair(n, x.cols() + b.cols());
        pair << x, -b;
        Eigen::JacobiSVD<Mat> svd(pair, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        const double smax = s.size() ? s(0) : 0.0;
        Eigen::Index rank = 0;
        for (Eigen::Index t = 0; t < s.size(); ++t) rank += s(t) > kRankTolerance * std::max(smax, 1.0);
        const Eigen::Index nullity = pair.cols() - rank;
        if (nullity == 0) return 0;
        const Mat coeffs = svd.matrixV().rightCols(nullity).topRows(x.cols());
        x = orthonormal_span(n, x * coeffs).basis();
    }
    return static_cast<int>(x.cols());
}

IntersectionReport random_intersection_experiment(const SubspaceSource& mu, int q, std::size_t trials,
                                                  const Rng& rng, unsigned threads) {
    const int n = mu.n;
    const int m = mu.m;
    if (q < 1) throw Error(ErrorCode::InvalidArgument, "q must be positive");
    if (q * (n - m) > n) throw Error(ErrorCode::DimOverflow, "q(n-m) exceeds n");
    if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
    const int expected = n - q * (n - m);
    std::vector<int> dims(trials, 0);
    std::vector<char> mismatch(trials, 0);
    parallel_for(trials, threads, [&](std::size_t t) {
        Rng r = rng.derive(t);
        std::vector<Subspace> tuple;
        std::vector<Subspace> perps;
        for (int j = 0; j < q; ++j) {
            tuple.push_back(mu.draw(r));
            perps.push_back(perp(tuple.back()));
        }
        const int dual = n - numerical_rank(stack_bases(perps, n));
        dims[t] = dual;
        mismatch[t] = dual != intersection_dim_nullspace(tuple);
    });
    IntersectionReport rep{};
    rep.expected_dim_fraction =
        static_cast<double>(std::count(dims.begin(), dims.end(), expected)) / static_cast<double>(trials);
    rep.min_dim = *std::min_element(dims.begin(), dims.end());
    rep.max_dim = *std::max_element(dims.begin(), dims.end());
    rep.duality_mismatches = static_cast<std::size_t>(std::count(mismatch.begin(), mismatch.end(), 1));
    return rep;
}

IntersectionReport random_intersection_experiment(const GrassmannSample& mu, int q, std::size_t trials,
                                                  const Rng& rng, unsigned threads) {
    return random_intersection_experiment(SubspaceSource::empirical(mu), q, trials, rng, threads);
}

void write_grassmann_sample(std::ostream& out, const GrassmannSample& mu) {
    out << mu.n() << ' ' << mu.m() << ' ' << mu.size() << '\n';
    for (std::size_t i = 0; i < mu.size(); ++i) {
        out << format_double(mu.weight(i)) << '\n';
        const Mat& b = mu.space(i).basis();
        for (int j = 0; j < mu.m(); ++j) {
            for (int t = 0; t < mu.n(); ++t) out << (t ? " " : "") << format_double(b(t, j));
            out << '\n';
        }
    }
}

GrassmannSample read_grassmann_sample(std::istream& in) {
    std::string line;
    if (!next_data_line(in, line)) throw Error(ErrorCode::Format, "missing header line");
    std::istringstream h(line);
    int n = 0;
    int m = 0;
    long long count = 0;
    std::string extra;
    if (!(h >> n >> m >> count) || (h >> extra) || n < 1 || m < 0 || m > n || count < 1) {
        throw Error(ErrorCode::Format, "header must be \"n m count\"");
    }
    std::vector<Subspace> spaces;
    std::vector<double> weights;
    for (long long i = 0; i < count; ++i) {
        if (!next_data_line(in, line)) throw Error(ErrorCode::Format, "missing weight line");
        std::istringstream wl(line);
        double w = 0.0;
        if (!(wl >> w) || (wl >> extra)) throw Error(ErrorCode::Format, "bad weight line: " + line);
        Mat b(n, m);
        for (int j = 0; j < m; ++j) {
            if (!next_data_line(in, line)) throw Error(ErrorCode::Format, "missing basis row");
            std::istringstream row(line);
            for (int t = 0; t < n; ++t) {
                if (!(row >> b(t, j))) throw Error(ErrorCode::Format, "bad basis row: " + line);
            }
            if (row >> extra) throw Error(ErrorCode::Format, "bad basis row: " + line);
        }
        try {
            const Mat defect = b.transpose() * b - Mat::Identity(m, m);
            if (m == 0 || defect.cwiseAbs().maxCoeff() <= kOrthoTolerance) {
                spaces.push_back(Subspace::from_orthonormal(b));
            } else {
                spaces.push_back(orthonormalize(b));
            }
        } catch (const Error& e) {
            throw Error(ErrorCode::Format, std::string("degenerate basis: ") + e.what());
        }
        weights.push_back(w);
    }
    if (next_data_line(in, line)) throw Error(ErrorCode::Format, "trailing data after the last subspace");
    try {
        return GrassmannSample(n, m, std::move(spaces), std::move(weights));
    } catch (const Error& e) {
        throw Error(ErrorCode::Format, e.what());
    }
}

}  // namespace grassproj
