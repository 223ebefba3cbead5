#pragma once
// Dense complex helpers on top of Eigen: rank-revealing column spaces,
// nullspaces, principal angles.  Subspaces are always carried as matrices with
// orthonormal COLUMNS; callers stack spanning vectors as columns before
// factorizing (row-space detours invite conjugation bugs).

#include <Eigen/Dense>

#include "elliptica/curve.hpp"

namespace ell {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct RankedBasis {
    Mat basis;         // orthonormal columns spanning the input column space
    int rank = 0;
    double gap = 0.0;  // smallest kept / largest dropped singular value
};

// Orthonormal basis of span of the columns of B.  rel_tol is relative to the
// largest singular value.
inline RankedBasis colspace(const Mat& B, double rel_tol = 1e-8) {
    Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    RankedBasis out;
    if (s.size() == 0 || s(0) == 0.0) return out;
    int r = 0;
    while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
    out.rank = r;
    out.basis = svd.matrixU().leftCols(r);
    out.gap = (r < s.size() && s(r) > 0.0) ? s(r - 1) / s(r)
                                           : std::numeric_limits<double>::infinity();
    return out;
}

// Orthonormal basis of the (right) nullspace of A.
inline RankedBasis nullspace(const Mat& A, double rel_tol = 1e-8) {
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
    RankedBasis out;
    out.rank = int(A.cols()) - r;  // nullity
    out.basis = svd.matrixV().rightCols(A.cols() - r);
    out.gap = (r > 0 && r < s.size() && s(r) > 0.0)
                  ? s(r - 1) / s(r)
                  : std::numeric_limits<double>::infinity();
    return out;
}

// Largest principal angle between two column spaces with orthonormal bases.
// Sine formulation: accurate for small angles, unlike acos of a singular value.
inline double max_principal_angle(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows()) throw std::invalid_argument("ambient dimension mismatch");
    Mat R = B - A * (A.adjoint() * B);
    Eigen::JacobiSVD<Mat> svd(R);
    double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    Mat R2 = A - B * (B.adjoint() * A);  // symmetrize: catch dim mismatch both ways
    Eigen::JacobiSVD<Mat> svd2(R2);
    double s2 = svd2.singularValues().size() ? svd2.singularValues()(0) : 0.0;
    double m = std::min(1.0, std::max(s, s2));
    return std::asin(m);
}

// Distance from v to the column space of A (orthonormal), normalized by |v|.
inline double membership_distance(const Vec& v, const Mat& A) {
    double nv = v.norm();
    if (nv == 0.0) return 0.0;
    return (v - A * (A.adjoint() * v)).norm() / nv;
}

inline Vec lstsq(const Mat& A, const Vec& b) {
    return A.completeOrthogonalDecomposition().solve(b);
}

}  // namespace ell
