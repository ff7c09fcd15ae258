#pragma once

// Coordinate projections of finite subsets of Z^n, uniform covers and the
// projection/slice trichotomy with exactly checked witnesses.

#include "grassproj/lattice_set.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

namespace grassproj {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

/// Parses "p/q", an integer, or a finite decimal such as "1.25" exactly.
/// Throws InvalidArgument.
Rational parse_rational(std::string_view text);

/// Sorted, distinct, 1-based coordinate indices.
using IndexSet = std::vector<int>;

/// Image of Z under (z_i)_{i in I}. Throws BadIndex unless I is a nonempty
/// subset of {1..dim Z} (duplicates are rejected too).
LatticeSet project_coords(const LatticeSet& z, const IndexSet& idx);

struct IndexFamily {
    IndexSet i0;                  ///< {n-r+1, ..., n}
    std::vector<IndexSet> parts;  ///< I_j = {1..n} minus {(j-1)(n-m)+1, ..., j(n-m)}
};

/// Throws ArithmeticMismatch unless n = q(n-m) + r with 0 < r <= n-m and
/// 0 < m < n.
IndexFamily index_family(int n, int m, int q, int r);

/// Multiset of subsets of a ground index set in which every ground index
/// lies in the same number k of members.
class UniformCover {
public:
    /// Throws InvalidCover if a member leaves the ground set or coverage is
    /// not uniform.
    UniformCover(std::vector<IndexSet> members, IndexSet ground);

    /// Cover of {1..n}.
    static UniformCover of_range(std::vector<IndexSet> members, int n);

    [[nodiscard]] const std::vector<IndexSet>& members() const noexcept { return members_; }
    [[nodiscard]] const IndexSet& ground() const noexcept { return ground_; }
    [[nodiscard]] int k() const noexcept { return k_; }

private:
    std::vector<IndexSet> members_;
    IndexSet ground_;
    int k_ = 0;
};

struct BigComparison {
    BigInt lhs;
    BigInt rhs;
    [[nodiscard]] bool holds() const { return lhs <= rhs; }
};

/// |Z|^k against the product of |proj_I(Z)| over the cover (a projection to
/// an empty index set has one point). The cover must be over {1..dim Z}.
BigComparison uct_check(const LatticeSet& z, const UniformCover& cover);

/// Fiber energy sum_y |Z ∩ proj_{I0}^-1(y)|^2 (|Z|^2 when I0 is empty).
BigInt projection_energy(const LatticeSet& z, const IndexSet& i0);

/// |Z|^(2q-k) against En(proj_I0, Z)^(q-k) * prod_I |proj_{I0 ∪ I}(Z)|, for a
/// k-uniform cover with q members of {1..n} minus I0.
BigComparison energy_proj_check(const LatticeSet& z, const IndexSet& i0, const UniformCover& cover);

struct BigProjection {
    int j;             ///< 1-based
    std::size_t size;  ///< |proj_{I_j}(Z)|
};

struct HeavyFiber {
    Point y;
    std::size_t size;
};

struct TrimmedSubset {
    LatticeSet subset;
    std::size_t projection_size;  ///< |proj_{I0}(Z')|
};

struct TrichotomyParams {
    int n;
    int m;
    int q;
    int r;
    Rational k;
};

struct TrichotomyOutcome {
    TrichotomyParams params;
    std::variant<BigProjection, HeavyFiber, TrimmedSubset> witness;
};

/// Finds a true statement among: some |proj_{I_j}(Z)| >= K|Z|^(m/n);
/// some fiber |Z ∩ proj_{I0}^-1(y)| >= K|Z|^((n-r)/n); or Z' ⊂ Z with
/// |Z'| >= |Z|/(2K^(q+1)) and |proj_{I0}(Z')| <= 2K^q |Z|^(r/n). The first
/// two are tried in order (smallest j, lexicographically smallest y); the
/// third keeps the fibers of size >= |Z|^((n-r)/n) / (2K^q). The witness is
/// re-verified exactly before returning.
TrichotomyOutcome trichotomy(const LatticeSet& z, int n, int m, int q, int r, const Rational& k);

/// Exact re-check of the witness against Z.
bool verify_outcome(const LatticeSet& z, const TrichotomyOutcome& outcome);

}  // namespace grassproj
