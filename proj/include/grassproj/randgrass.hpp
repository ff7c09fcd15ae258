#pragma once

// Seeded random subspaces and finitely supported measures on Gr(n, m).

#include "grassproj/grassmann.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

namespace grassproj {

/// Counter-based 64-bit generator (splitmix64 output function over a
/// seeded counter). Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) noexcept : seed_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Independent stream for sub-task `index`; depends only on this
    /// generator's seed, not on how much of it has been consumed.
    [[nodiscard]] Rng derive(std::uint64_t index) const noexcept;

    /// Standard normal deviate.
    double normal();

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Orthonormalised span of m independent standard Gaussian vectors in R^n.
/// Requires 0 < m < n.
Subspace haar_sample(int n, int m, Rng& rng);

/// Finitely supported probability measure on Gr(n, m).
class GrassmannSample {
public:
    /// Weights are normalised to sum 1. Throws EmptySupport for no entries,
    /// DimMismatch for a subspace of another (n, m) and WeightsInvalid for
    /// negative or all-zero weights.
    GrassmannSample(int n, int m, std::vector<Subspace> spaces, std::vector<double> weights);

    /// Uniform weights.
    GrassmannSample(int n, int m, std::vector<Subspace> spaces);

    /// `count` independent Haar draws, each from rng.derive(i).
    static GrassmannSample haar(int n, int m, std::size_t count, const Rng& rng);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] std::size_t size() const noexcept { return spaces_.size(); }
    [[nodiscard]] const Subspace& space(std::size_t i) const { return spaces_[i]; }
    [[nodiscard]] double weight(std::size_t i) const { return weights_[i]; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

    /// Index drawn according to the weights.
    std::size_t draw(Rng& rng) const;

private:
    int n_;
    int m_;
    std::vector<Subspace> spaces_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
};

/// A probability measure on Gr(n, m) given by a sampling procedure.
struct SubspaceSource {
    int n;
    int m;
    std::function<Subspace(Rng&)> draw;

    /// Haar measure; requires 0 < m < n.
    static SubspaceSource haar(int n, int m);
    /// Draws atoms of the sample by weight; mu must outlive the source.
    static SubspaceSource empirical(const GrassmannSample& mu);
};

/// mu({V : dang(V, W) <= rho}); W must have dimension n - m.
double schubert_mass(const GrassmannSample& mu, const Subspace& w, double rho);

/// Probe family for noncon_stat: for each atom V the (n-m)-plane spanned by
/// V's first basis vector and n-m-1 basis vectors of V-perp (so dang = 0
/// against V), followed by `probes` Haar draws from rng.derive(i).
std::vector<Subspace> noncon_probes(const GrassmannSample& mu, std::size_t probes, const Rng& rng);

/// Max over rho in {2^-k, ..., 1/2, 1} and the probe family of
/// mu(V(W, rho)) / rho^kappa. Throws InvalidArgument for kappa <= 0.
double noncon_stat(const GrassmannSample& mu, double kappa, int k, std::size_t probes, const Rng& rng,
                   unsigned threads = 0);

struct SumReport {
    double full_dim_fraction;  ///< fraction of q-tuples whose sum has rank qm
    double min_dang;           ///< smallest dang(V_1, ..., V_q) observed
};

/// i.i.d. q-tuples from mu, trial t drawn from rng.derive(t). Throws
/// DimOverflow if qm > n.
SumReport random_sum_experiment(const SubspaceSource& mu, int q, std::size_t trials, const Rng& rng,
                                unsigned threads = 0);
SumReport random_sum_experiment(const GrassmannSample& mu, int q, std::size_t trials, const Rng& rng,
                                unsigned threads = 0);

struct IntersectionReport {
    double expected_dim_fraction;  ///< fraction with dim = n - q(n-m)
    int min_dim;
    int max_dim;
    std::size_t duality_mismatches;  ///< trials where the two routes disagree
};

/// Intersection dimension n - rank(stacked perps), cross-checked against an
/// iterated null-space computation. Throws DimOverflow if q(n-m) > n.
IntersectionReport random_intersection_experiment(const SubspaceSource& mu, int q, std::size_t trials,
                                                  const Rng& rng, unsigned threads = 0);
IntersectionReport random_intersection_experiment(const GrassmannSample& mu, int q, std::size_t trials,
                                                  const Rng& rng, unsigned threads = 0);

/// Dimension of V_1 ∩ ... ∩ V_q from successive null spaces of
/// [B_X, -B_Vi] (independent of perp).
int intersection_dim_nullspace(std::span<const Subspace> spaces);

/// Text format: "n m count", then per subspace a weight line and m lines of
/// n numbers (orthonormal basis rows), written with 17 significant digits.
void write_grassmann_sample(std::ostream& out, const GrassmannSample& mu);

/// Rows that are not orthonormal to 1e-10 are re-orthonormalised. Throws
/// Error(Format) on malformed input.
GrassmannSample read_grassmann_sample(std::istream& in);

}  // namespace grassproj
