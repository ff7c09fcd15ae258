#pragma once

// Subsets of R^n seen at a dyadic scale delta = 2^-k. A set is a finite
// collection of half-open cells delta * (z + [0,1)^n), z in Z^n, and its size
// at scale delta is its cell count.

#include "grassproj/grassmann.hpp"
#include "grassproj/lattice_set.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace grassproj {

class DiscretizedSet {
public:
    /// Empty set in R^n at scale 2^-k.
    DiscretizedSet(int n, int k);
    DiscretizedSet(int k, LatticeSet cells);

    [[nodiscard]] int dim() const noexcept { return cells_.dim(); }
    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] double delta() const noexcept;
    [[nodiscard]] const LatticeSet& cells() const noexcept { return cells_; }
    [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
    [[nodiscard]] bool empty() const noexcept { return cells_.empty(); }

    /// Centre of the i-th cell, in absolute coordinates.
    [[nodiscard]] Vec center(std::size_t i) const;

    friend bool operator==(const DiscretizedSet&, const DiscretizedSet&) = default;

private:
    int k_;
    LatticeSet cells_;
};

/// Nonnegative weights on the cells of a set, summing to 1 (a discretised
/// probability measure). Weights are aligned with set.cells().elements().
class WeightedCellSet {
public:
    /// Throws WeightsInvalid unless weights are >= 0 and sum to 1 within 1e-12.
    WeightedCellSet(DiscretizedSet set, std::vector<double> weights);

    static WeightedCellSet uniform(DiscretizedSet set);

    [[nodiscard]] const DiscretizedSet& set() const noexcept { return set_; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

private:
    DiscretizedSet set_;
    std::vector<double> weights_;
};

/// Cells { floor(p / delta) }. Requires k >= 1.
DiscretizedSet from_points(int n, int k, std::span<const Vec> points);

inline std::size_t cell_count(const DiscretizedSet& a) { return a.size(); }

/// Size of a maximal 2*delta_prime-separated subset of cell centres built by
/// a greedy lexicographic scan (pairwise distances strictly above
/// 2*delta_prime). Throws ScaleTooFine if delta_prime < delta.
std::size_t covering_number_balls(const DiscretizedSet& a, double delta_prime);

/// Cells within L-infinity cell distance ceil(rho / delta) of a cell of A.
DiscretizedSet neighborhood(const DiscretizedSet& a, double rho);

/// Cells of A whose centre lies in the closed ball B(x, rho + delta*sqrt(n)/2).
/// Requires rho >= delta.
DiscretizedSet restrict_ball(const DiscretizedSet& a, const Vec& x, double rho);

/// For each cell of A (in order), the cell at the same scale containing the
/// projection of its centre, in V's orthonormal coordinates.
std::vector<Point> projected_cells(const DiscretizedSet& a, const Subspace& v);

/// Rediscretisation at the same k of the projected cell centres, as a set in
/// R^{dim V}. Throws AmbientMismatch.
DiscretizedSet project_set(const DiscretizedSet& a, const Subspace& v);

/// Cells whose projected centre lies within L-infinity distance < delta of
/// y (given in V's coordinates).
DiscretizedSet slice(const DiscretizedSet& a, const Subspace& v, const Vec& y);

/// Rediscretisation of f(centre) over the cells of A.
DiscretizedSet linear_image(const DiscretizedSet& a, const LinearMap& f);

/// Same set seen at the coarser scale 2^-k_coarse (k_coarse <= k).
DiscretizedSet coarsen(const DiscretizedSet& a, int k_coarse);

DiscretizedSet set_union(const DiscretizedSet& a, const DiscretizedSet& b);
DiscretizedSet set_intersection(const DiscretizedSet& a, const DiscretizedSet& b);
bool is_subset(const DiscretizedSet& a, const DiscretizedSet& b);

/// Maximum over dyadic radii rho = delta*2^j (0 <= j <= k) and over cell
/// centres x of A of |A ∩ B(x, rho)| / (rho^kappa |A|), with the ball taken
/// as in restrict_ball. Throws EmptySet for an empty set.
double frostman_stat(const DiscretizedSet& a, double kappa, unsigned threads = 0);

struct MassLevels {
    /// levels[l] holds the cells with delta^((l+1)eps) < w <= delta^(l eps).
    std::vector<DiscretizedSet> levels;
    /// Total weight of the cells below the last level.
    double dropped_weight = 0.0;
};

/// Dyadic mass-level partition with L = ceil(n/eps) + 1, giving L + 1 levels.
/// Requires 0 < eps < 1 and k >= 1.
MassLevels mass_levels(const WeightedCellSet& w, double eps);

/// Upper bound for the number of unit balls needed to cover B(0, 2) in R^n,
/// counted by enumerating cubes of diameter 2 that meet the ball.
std::size_t ball_cover_constant(int n);

/// Text format: first line "n k", then one cell per line as n integers.
void write_discretized_set(std::ostream& out, const DiscretizedSet& a);

/// Throws Error(Format) on malformed input or duplicate cells.
DiscretizedSet read_discretized_set(std::istream& in);

/// log2(cell count) / k; a box-dimension proxy for display.
double box_dimension_proxy(const DiscretizedSet& a);

}  // namespace grassproj
