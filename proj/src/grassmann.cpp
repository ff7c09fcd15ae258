#include "grassproj/grassmann.hpp"

#include "grassproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grassproj {
namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw Error(ErrorCode::AmbientMismatch, "ambient dimensions " + std::to_string(a.ambient_dim()) +
                                                    " and " + std::to_string(b.ambient_dim()));
    }
}

// Column-pivoted Gram-Schmidt: repeatedly takes the residual column of
// largest norm, normalises it (with one re-orthogonalisation pass against the
// vectors already chosen) and removes its direction from every residual.
Mat pivoted_gram_schmidt(Mat residuals, int count) {
    const auto n = residuals.rows();
    Mat q(n, count);
    for (int t = 0; t < count; ++t) {
        Eigen::Index best = 0;
        double best_norm = -1.0;
        for (Eigen::Index j = 0; j < residuals.cols(); ++j) {
            const double nj = residuals.col(j).norm();
            if (nj > best_norm) {
                best_norm = nj;
                best = j;
            }
        }
        Vec v = residuals.col(best);
        for (int i = 0; i < t; ++i) v -= q.col(i).dot(v) * q.col(i);
        v.normalize();
        q.col(t) = v;
        for (Eigen::Index j = 0; j < residuals.cols(); ++j) {
            residuals.col(j) -= v.dot(residuals.col(j)) * v;
        }
    }
    return q;
}

Mat hcat(std::span<const Subspace> spaces) {
    const int n = spaces.front().ambient_dim();
    int total = 0;
    for (const auto& s : spaces) {
        if (s.ambient_dim() != n) require_same_ambient(spaces.front(), s);
        total += s.dim();
    }
    Mat g(n, total);
    int col = 0;
    for (const auto& s : spaces) {
        if (s.dim() > 0) g.middleCols(col, s.dim()) = s.basis();
        col += s.dim();
    }
    return g;
}

}  // namespace

Subspace::Subspace(int ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {
    if (ambient_dim < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
}

Subspace Subspace::from_orthonormal(Mat basis) {
    const auto n = static_cast<int>(basis.rows());
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
    if (basis.cols() > n) throw Error(ErrorCode::InvalidArgument, "more basis vectors than the ambient dimension");
    const Mat gram = basis.transpose() * basis;
    const Mat defect = gram - Mat::Identity(basis.cols(), basis.cols());
    if (basis.cols() > 0 && defect.cwiseAbs().maxCoeff() > kOrthoTolerance) {
        throw Error(ErrorCode::InvalidArgument, "basis is not orthonormal");
    }
    return Subspace(n, std::move(basis));
}

Subspace Subspace::whole(int ambient_dim) {
    if (ambient_dim < 1) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be positive");
    return Subspace(ambient_dim, Mat::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::coordinate(int ambient_dim, std::span<const int> axes) {
    Mat basis = Mat::Zero(ambient_dim, static_cast<Eigen::Index>(axes.size()));
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] < 0 || axes[i] >= ambient_dim) throw Error(ErrorCode::BadIndex, "axis out of range");
        basis(axes[i], static_cast<Eigen::Index>(i)) = 1.0;
    }
    return from_orthonormal(std::move(basis));
}

LinearMap::LinearMap(Mat entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw Error(ErrorCode::InvalidArgument, "linear map must be a nonempty square matrix");
    }
    Eigen::JacobiSVD<Mat> svd(entries_);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!std::isfinite(smax) || smax == 0.0 || smin <= 1e-12 * smax) {
        throw Error(ErrorCode::Singular, "matrix is not invertible");
    }
    norm_ = smax;
    inverse_norm_ = 1.0 / smin;
    inverse_ = entries_.fullPivLu().inverse();
}

int numerical_rank(const Mat& columns) {
    if (columns.cols() == 0 || columns.rows() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(columns);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > kRankTolerance * sv(0)) ++rank;
    }
    return rank;
}

Subspace orthonormalize(const Mat& columns) {
    const auto n = static_cast<int>(columns.rows());
    const auto count = static_cast<int>(columns.cols());
    if (count > n || numerical_rank(columns) < count) {
        throw Error(ErrorCode::RankDeficient, "vectors are linearly dependent");
    }
    Mat q(n, count);
    for (int j = 0; j < count; ++j) {
        Vec v = columns.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) v -= q.col(i).dot(v) * q.col(i);
        }
        q.col(j) = v.normalized();
    }
    return Subspace::from_orthonormal(std::move(q));
}

Subspace orthonormalize(int ambient_dim, std::span<const Vec> vectors) {
    Mat columns(ambient_dim, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != ambient_dim) throw Error(ErrorCode::DimMismatch, "vector length differs from n");
        columns.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return orthonormalize(columns);
}

Subspace orthonormal_span(int ambient_dim, const Mat& columns) {
    if (columns.cols() > 0 && columns.rows() != ambient_dim) {
        throw Error(ErrorCode::DimMismatch, "vector length differs from n");
    }
    const int rank = numerical_rank(columns);
    if (rank == 0) return Subspace(ambient_dim);
    return Subspace::from_orthonormal(pivoted_gram_schmidt(columns, rank));
}

double dang(std::span<const Subspace> spaces) {
    if (spaces.empty()) throw Error(ErrorCode::InvalidArgument, "dang of an empty list");
    const Mat g = hcat(spaces);
    const int n = spaces.front().ambient_dim();
    if (g.cols() > n) return 0.0;
    if (g.cols() == 0) return 1.0;
    // |R_ii| products give sqrt(det(G^T G)) without squaring the conditioning.
    Eigen::HouseholderQR<Mat> qr(g);
    const Mat& r = qr.matrixQR();
    double prod = 1.0;
    for (Eigen::Index i = 0; i < g.cols(); ++i) prod *= std::abs(r(i, i));
    return std::clamp(prod, 0.0, 1.0);
}

double dang(const Subspace& v, const Subspace& w) {
    const Subspace list[] = {v, w};
    return dang(list);
}

double dang(const Subspace& u, const Subspace& v, const Subspace& w) {
    const Subspace list[] = {u, v, w};
    return dang(list);
}

double dang_proj(const Subspace& v, const Subspace& w) {
    require_same_ambient(v, w);
    if (v.dim() + w.dim() != v.ambient_dim()) {
        throw Error(ErrorCode::DimMismatch, "dang_proj needs dim V + dim W = n");
    }
    if (v.dim() == 0) return 1.0;
    const Mat m = perp(w).basis().transpose() * v.basis();
    return std::clamp(std::abs(m.partialPivLu().determinant()), 0.0, 1.0);
}

Vec project(const Subspace& v, const Vec& x) {
    if (x.size() != v.ambient_dim()) throw Error(ErrorCode::DimMismatch, "vector length differs from n");
    return v.basis().transpose() * x;
}

Vec project_ambient(const Subspace& v, const Vec& x) { return v.basis() * project(v, x); }

Subspace sum(std::span<const Subspace> spaces) {
    if (spaces.empty()) throw Error(ErrorCode::InvalidArgument, "sum of an empty list");
    return orthonormal_span(spaces.front().ambient_dim(), hcat(spaces));
}

Subspace sum(const Subspace& v, const Subspace& w) {
    const Subspace list[] = {v, w};
    return sum(list);
}

Subspace perp(const Subspace& v) {
    const int n = v.ambient_dim();
    const int count = n - v.dim();
    if (count == 0) return Subspace(n);
    Mat residuals = Mat::Identity(n, n) - v.projector();
    // Two passes keep the complement orthogonal to V to working precision.
    residuals -= v.projector() * residuals;
    return Subspace::from_orthonormal(pivoted_gram_schmidt(std::move(residuals), count));
}

Subspace intersect(std::span<const Subspace> spaces) {
    if (spaces.empty()) throw Error(ErrorCode::InvalidArgument, "intersection of an empty list");
    std::vector<Subspace> perps;
    perps.reserve(spaces.size());
    for (const auto& s : spaces) {
        require_same_ambient(spaces.front(), s);
        perps.push_back(perp(s));
    }
    return perp(sum(perps));
}

Subspace intersect(const Subspace& v, const Subspace& w) {
    const Subspace list[] = {v, w};
    return intersect(list);
}

Subspace project_subspace(const Subspace& w, const Subspace& v) {
    require_same_ambient(v, w);
    return orthonormal_span(v.ambient_dim(), w.projector() * v.basis());
}

bool schubert_member(const Subspace& v, const Subspace& w, double rho) {
    require_same_ambient(v, w);
    if (v.dim() + w.dim() != v.ambient_dim()) {
        throw Error(ErrorCode::DimMismatch, "Schubert neighbourhood needs dim V + dim W = n");
    }
    if (!(rho >= 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be nonnegative");
    return dang(v, w) <= rho;
}

std::vector<double> principal_angles(const Subspace& v, const Subspace& w) {
    require_same_ambient(v, w);
    const auto count = std::min(v.dim(), w.dim());
    std::vector<double> angles;
    if (count == 0) return angles;
    const Mat c = v.basis().transpose() * w.basis();
    Eigen::JacobiSVD<Mat> svd(c);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < count; ++i) angles.push_back(std::acos(std::clamp(sv(i), -1.0, 1.0)));
    std::sort(angles.begin(), angles.end());
    return angles;
}

double max_principal_angle(const Subspace& v, const Subspace& w) {
    require_same_ambient(v, w);
    if (v.dim() != w.dim()) throw Error(ErrorCode::DimMismatch, "principal angle between different dimensions");
    if (v.dim() == 0) return 0.0;
    const Mat residual = v.basis() - w.basis() * (w.basis().transpose() * v.basis());
    Eigen::JacobiSVD<Mat> svd(residual);
    return std::asin(std::clamp(svd.singularValues()(0), 0.0, 1.0));
}

bool same_subspace(const Subspace& v, const Subspace& w, double tol) {
    return v.ambient_dim() == w.ambient_dim() && v.dim() == w.dim() && max_principal_angle(v, w) < tol;
}

Subspace gl_act(const LinearMap& f, const Subspace& v) {
    if (f.dim() != v.ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "map and subspace dimensions differ");
    if (v.dim() == 0) return v;
    return orthonormalize(Mat(f.inverse_matrix().transpose() * v.basis()));
}

Subspace gl_act_dual(const LinearMap& f, const Subspace& v) {
    if (f.dim() != v.ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "map and subspace dimensions differ");
    const Subspace vp = perp(v);
    return perp(orthonormal_span(v.ambient_dim(), f.matrix() * vp.basis()));
}

}  // namespace grassproj
