#pragma once

// Linear subspaces of R^n stored by orthonormal bases, the wedge-product
// angle functional between them, and the GL(R^n) action on the Grassmannian.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace grassproj {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Relative singular-value threshold used for every numerical rank decision.
inline constexpr double kRankTolerance = 1e-8;

/// Orthonormality tolerance on the Gram matrix of a stored basis.
inline constexpr double kOrthoTolerance = 1e-10;

/// An m-dimensional linear subspace of R^n. The basis is held as the columns
/// of an n x m matrix with orthonormal columns. Immutable.
class Subspace {
public:
    /// The zero subspace of R^n.
    explicit Subspace(int ambient_dim);

    /// Adopts `basis` (n x m) as is. Throws InvalidArgument if its Gram
    /// matrix is not the identity within kOrthoTolerance.
    static Subspace from_orthonormal(Mat basis);

    /// All of R^n with the standard basis.
    static Subspace whole(int ambient_dim);

    /// span of the listed standard basis vectors (0-based indices).
    static Subspace coordinate(int ambient_dim, std::span<const int> axes);

    [[nodiscard]] int ambient_dim() const noexcept { return ambient_; }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(basis_.cols()); }
    [[nodiscard]] const Mat& basis() const noexcept { return basis_; }
    [[nodiscard]] Vec basis_vector(int i) const { return basis_.col(i); }

    /// Orthogonal projector onto the subspace, n x n.
    [[nodiscard]] Mat projector() const { return basis_ * basis_.transpose(); }

private:
    Subspace(int ambient_dim, Mat basis) : ambient_(ambient_dim), basis_(std::move(basis)) {}

    int ambient_;
    Mat basis_;
};

/// An invertible linear map of R^n with cached operator norms.
class LinearMap {
public:
    /// Throws Singular when the smallest singular value is not positive
    /// relative to the largest (threshold 1e-12).
    explicit LinearMap(Mat entries);

    static LinearMap identity(int n) { return LinearMap(Mat::Identity(n, n)); }

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] const Mat& matrix() const noexcept { return entries_; }
    [[nodiscard]] const Mat& inverse_matrix() const noexcept { return inverse_; }
    [[nodiscard]] double norm() const noexcept { return norm_; }
    [[nodiscard]] double inverse_norm() const noexcept { return inverse_norm_; }
    [[nodiscard]] double condition() const noexcept { return norm_ * inverse_norm_; }

    [[nodiscard]] Vec apply(const Vec& x) const { return entries_ * x; }
    [[nodiscard]] LinearMap inverse() const { return LinearMap(inverse_); }

private:
    Mat entries_;
    Mat inverse_;
    double norm_ = 0.0;
    double inverse_norm_ = 0.0;
};

/// Numerical rank of the columns: singular values above kRankTolerance times
/// the largest one.
int numerical_rank(const Mat& columns);

/// Orthonormal basis of the span of independent vectors. Modified
/// Gram-Schmidt with a second re-orthogonalisation pass; the first basis
/// vector is parallel to the first input. Throws RankDeficient if the
/// numerical rank is below the number of vectors.
Subspace orthonormalize(int ambient_dim, std::span<const Vec> vectors);
Subspace orthonormalize(const Mat& columns);

/// Orthonormal basis of the span of arbitrary (possibly dependent) columns;
/// dimension equals the numerical rank. Column-pivoted Gram-Schmidt.
Subspace orthonormal_span(int ambient_dim, const Mat& columns);

/// Norm of the wedge of orthonormal bases of all listed spaces. Zero when the
/// total dimension exceeds n or the spaces are dependent; clamped to [0, 1].
/// Throws AmbientMismatch, InvalidArgument for an empty list.
double dang(std::span<const Subspace> spaces);
double dang(const Subspace& v, const Subspace& w);
double dang(const Subspace& u, const Subspace& v, const Subspace& w);

/// |det| of the orthogonal projection of V onto W-perp, restricted to V.
/// Requires dim V + dim W = n (DimMismatch otherwise). Independent route to
/// dang(V, W) for complementary dimensions.
double dang_proj(const Subspace& v, const Subspace& w);

/// Coordinates of the orthogonal projection of x in V's basis.
Vec project(const Subspace& v, const Vec& x);

/// Orthogonal projection of x as a vector of R^n.
Vec project_ambient(const Subspace& v, const Vec& x);

Subspace sum(std::span<const Subspace> spaces);
Subspace sum(const Subspace& v, const Subspace& w);
Subspace perp(const Subspace& v);

/// Computed as perp(sum of perps).
Subspace intersect(std::span<const Subspace> spaces);
Subspace intersect(const Subspace& v, const Subspace& w);

/// Image pi_W(V): span of the projected basis vectors of V.
Subspace project_subspace(const Subspace& w, const Subspace& v);

/// True iff dang(V, W) <= rho. Requires dim V + dim W = n.
bool schubert_member(const Subspace& v, const Subspace& w, double rho);

/// Principal angles in increasing order; requires equal ambient dimension.
std::vector<double> principal_angles(const Subspace& v, const Subspace& w);

/// Largest principal angle between spaces of equal dimension, computed from
/// the residual norm so it stays accurate near zero.
double max_principal_angle(const Subspace& v, const Subspace& w);

/// Equal dimension and largest principal angle below `tol`.
bool same_subspace(const Subspace& v, const Subspace& w, double tol = 1e-8);

/// f-perp V = (f^{-1})^T V.
Subspace gl_act(const LinearMap& f, const Subspace& v);

/// The same action through the dual route (f V-perp)-perp.
Subspace gl_act_dual(const LinearMap& f, const Subspace& v);

}  // namespace grassproj
