#pragma once

// Exact additive combinatorics on lattice sets: sumsets, fiber energies,
// small-fiber trimming, Ruzsa/Pluennecke checks and two probability lemmas
// over finite spaces.

#include "grassproj/dset.hpp"
#include "grassproj/lattice_set.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace grassproj {

/// A map from lattice points to integer keys.
class FiberMap {
public:
    using Fn = std::function<Point(const Point&)>;

    explicit FiberMap(Fn fn) : fn_(std::move(fn)) {}

    /// Projection onto the listed coordinates (0-based).
    static FiberMap coordinates(std::vector<int> axes);

    /// Map given by an explicit table; evaluating outside the table throws
    /// InvalidArgument.
    static FiberMap table(std::map<Point, Point> entries);

    [[nodiscard]] Point operator()(const Point& p) const { return fn_(p); }

private:
    Fn fn_;
};

/// Map on cell centres used by energy_delta; distances are Euclidean.
using MetricMap = std::function<Vec(const Vec&)>;

/// Probability weights on {0, ..., size-1}.
class FiniteProbSpace {
public:
    /// Throws WeightsInvalid unless weights are >= 0 and sum to 1 within 1e-12.
    explicit FiniteProbSpace(std::vector<double> weights);
    static FiniteProbSpace uniform(std::size_t size);

    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] double weight(std::size_t i) const { return weights_[i]; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

private:
    std::vector<double> weights_;
};

/// A + B and A - B. Throw DimMismatch.
LatticeSet sumset(const LatticeSet& a, const LatticeSet& b);
LatticeSet difference(const LatticeSet& a, const LatticeSet& b);

/// kA - lA with 0A = {0}. Requires k, l >= 0 and k + l >= 1.
LatticeSet iterated_sumset(const LatticeSet& a, int k, int l);

/// Fiber sizes |A ∩ phi^-1(y)| keyed by y.
std::map<Point, std::size_t> fiber_sizes(const FiberMap& phi, const LatticeSet& a);

/// Number of pairs (a, a') in A x A with phi(a) = phi(a').
std::uint64_t energy_discrete(const FiberMap& phi, const LatticeSet& a);

/// Number of ordered cell pairs (a, a') with |phi(a) - phi(a')| <= delta,
/// evaluated at cell centres. Throws TooLarge above 1e5 cells.
std::uint64_t energy_delta(const MetricMap& phi, const DiscretizedSet& a, double delta, unsigned threads = 0);

/// |{(a, a', b, b') : a + b = a' + b'}|. Throws DimMismatch.
std::uint64_t additive_energy(const LatticeSet& a, const LatticeSet& b);

/// Keeps the fibers of size >= M / (2K). Preconditions: K >= 1, M > 0,
/// every fiber has size <= M and En(phi, A) >= (M/K)|A|; a violation throws
/// PreconditionViolated naming the inequality. The guarantees
/// |A'| >= |A|/(2K) and |phi(A')| <= (2K/M)|A| are checked on return.
LatticeSet trim_small_fibers(const LatticeSet& a, const FiberMap& phi, double m, double k);

/// |B||A - C| / (|A - B||B - C|). Throws EmptyInput.
double ruzsa_triangle_defect(const LatticeSet& a, const LatticeSet& b, const LatticeSet& c);

struct PluenneckeWitness {
    double doubling;  ///< K = |A + B| / |B|
    double ratio;     ///< |kA - lA| / (K^(k+l) |B|)
    std::size_t size; ///< |kA - lA|
};

/// Throws EmptyInput for empty A or B.
PluenneckeWitness pluennecke_witness(const LatticeSet& a, const LatticeSet& b, int k, int l);

struct IntersectionLemmaResult {
    double mass;      ///< mu^q-mass of q-tuples whose intersection is large
    double bound;     ///< 1 / (2K^q)
    double sigma;     ///< standard error (0 when exhaustive)
    bool exhaustive;
    bool holds;       ///< mass >= bound - 3 sigma
};

/// Ground set A with subsets family[theta] indexed by the probability space.
/// A q-tuple is large when |A_theta1 ∩ ... ∩ A_thetaq| >= |A| / (2K^q).
/// Enumerates all tuples when |Theta|^q <= 1e6 and samples `trials` tuples
/// otherwise. Throws PreconditionViolated listing each theta with
/// |A_theta| < |A|/K.
IntersectionLemmaResult check_intersection_lemma(const FiniteProbSpace& space, const LatticeSet& ground,
                                                 const std::vector<LatticeSet>& family, int q, double k,
                                                 std::size_t trials, std::uint64_t seed);

struct UnionCapResult {
    double lhs;
    double rhs;
    bool holds;
};

/// lhs = mu(points whose accumulated weight sum_{i : x in E_i} a_i >= a),
/// rhs = max_i mu(E_i) / a. Events list point indices of the space. Throws
/// WeightsInvalid unless the a_i are >= 0 and sum to 1, or a <= 0.
UnionCapResult check_union_cap_lemma(const FiniteProbSpace& space, const std::vector<std::vector<std::size_t>>& events,
                                     const std::vector<double>& weights, double a);

}  // namespace grassproj
