#pragma once

// Example sets, projection sweeps with heavy-fiber certificates, and report
// output.

#include "grassproj/dset.hpp"
#include "grassproj/grassmann.hpp"
#include "grassproj/randgrass.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace grassproj {

/// n-fold product of the j-level Cantor set in base b with digit set D:
/// cells whose base-b expansion uses only digits of D, at k = j log2(b).
/// Throws BadBase unless b is a power of two >= 2; InvalidArgument for an
/// empty digit set or digits outside {0..b-1}.
DiscretizedSet gen_cantor_product(int base, std::vector<int> digits, int n, int levels);

/// All cells meeting the closed ball B(0, delta^theta), 0 <= theta <= 1.
DiscretizedSet gen_ball(int n, int k, double theta);

/// {0..s-1}^2 x {0} ∪ {(0,0,z) : 0 <= z < s} in R^3 at scale 2^-k;
/// s^2 + s - 1 cells. Requires 1 <= s <= 2^k.
DiscretizedSet gen_slice_union(int k, int side);

/// {0..s-1}^2 x {0} ∪ {(0,0,z) : 1 <= z <= s}; s^2 + s points.
LatticeSet slice_union_lattice(int side);

struct CantorProductSpec {
    int base;
    std::vector<int> digits;
    int n;
    int levels;
};
struct BallSpec {
    int n;
    int k;
    double theta;
};
struct SliceUnionSpec {
    int k;
    int side;
};
struct SetFileSpec {
    std::string path;
};
using GeneratorSpec = std::variant<CantorProductSpec, BallSpec, SliceUnionSpec, SetFileSpec>;

/// SetFileSpec reads a set file: Error(Io) if it cannot be opened,
/// Error(Format) if it cannot be parsed.
DiscretizedSet generate(const GeneratorSpec& spec);

/// delta^(-m alpha / n - eps) for a set at scale 2^-k in R^n.
double exceptional_threshold(int n, int m, int k, double alpha, double eps);

/// Heavy-fiber witness that V lies in the exceptional set: the fibers of
/// A over the cells of pi_V(A), heaviest first (ties by projected cell),
/// are taken until they hold at least delta^eps |A| cells. The union is
/// returned when it projects to fewer than delta^(-m alpha/n - eps) cells,
/// otherwise nothing. Fewest fibers is optimal, so no A' ⊂ A with
/// |A'| >= delta^eps |A| has a smaller projection. Requires alpha > 0 and
/// eps >= 0.
std::optional<DiscretizedSet> heavy_fiber_certificate(const DiscretizedSet& a, const Subspace& v, double eps,
                                                      double alpha);

struct DirectionRecord {
    std::size_t index;
    double weight;
    double dang_min_to_probes;  ///< min dang to the coordinate (n-m)-planes
    std::size_t proj_cells;
    bool flagged;
    std::size_t cert_cells;  ///< 0 when not flagged
};

struct SweepReport {
    int n;
    int m;
    int k;
    double alpha;
    double eps;
    double threshold;
    std::size_t cell_count;
    double exceptional_fraction;  ///< total weight of flagged directions
    std::vector<DirectionRecord> directions;
};

/// Certificate search for every atom of mu. Throws AmbientMismatch and
/// InvalidArgument unless 0 < alpha < n and eps >= 0.
SweepReport projection_sweep(const DiscretizedSet& a, const GrassmannSample& mu, double eps, double alpha,
                             unsigned threads = 0);

/// Stable key order, floats with 17 significant digits. A flagged record's
/// certificate id is its direction index.
void write_sweep_json(std::ostream& out, const SweepReport& report);

/// Columns: dir_index, weight, dang_min_to_probes, proj_cells, threshold,
/// flagged, cert_cells.
void write_sweep_csv(std::ostream& out, const SweepReport& report);

struct GlNormalization {
    LinearMap f;
    double condition;  ///< |f| |f^-1|
};

/// A map f with f-perp V1 = V1 and f-perp V2 = V1-perp (action of gl_act):
/// the inverse transpose of g = [B1 C][B1 B2]^-1, C an orthonormal basis of
/// the projection of V2 to V1-perp. Requires dim V1 = dim V2 = n/2; throws
/// Degenerate if dang(V1, V2) < 1e-8.
GlNormalization gl_normalize(const Subspace& v1, const Subspace& v2);

/// Shortest round-trip decimal form ("%.17g").
std::string format_real(double x);

}  // namespace grassproj
