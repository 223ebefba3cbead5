#pragma once
// The elliptic n,k R-matrix: evaluator, Yang-Baxter residual, unitarity,
// determinant identity, and the kernel at -eta (which equals the quadratic
// relation span).

#include <unsupported/Eigen/KroneckerProduct>

#include "elliptica/algebras.hpp"

namespace ell {

struct PoleAtArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unnormalized numerator matrix: entry on x_{j-r}(v) (x) x_{i+r}(u) from
// input x_i(u) (x) x_j(v), with w = u - v (so v - u = -w inside).
inline Mat rmatrix_numerator(int n, int k, cx eta, cx w, const CurveParams& c) {
    auto th = [&](long long a, cx x) { return theta_alpha(imod(a, n), x, n, c); };
    Mat M = Mat::Zero((long long)n * n, (long long)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r) {
                cx den = th((long long)k * r, eta) * th(j - i - r, -w);
                if (std::abs(den) < 1e-13) throw PoleAtArgument("R-matrix denominator vanishes");
                M(imod(j - r, n) * n + imod(i + r, n), i * n + j) +=
                    th(j - i + (long long)r * (k - 1), -w + eta) / den;
            }
    return M;
}

// Scalar normalization p(w) making R unitary.
inline cx rmatrix_norm(int n, cx eta, cx w, const CurveParams& c) {
    auto th = [&](long long a, cx x) { return theta_alpha(imod(a, n), x, n, c); };
    cx num = 1.0, den = 1.0;
    for (int s = 1; s < n; ++s) num *= th(s, 0.0);
    for (int s = 0; s < n; ++s) num *= th(s, -w + eta);
    for (int s = 0; s < n; ++s) den *= th(s, eta) * th(s, -w);
    if (std::abs(den) < 1e-300) throw PoleAtArgument("normalization denominator vanishes");
    return num / den;
}

inline Mat belavin_r(int n, int k, cx eta, cx w, const CurveParams& c) {
    return rmatrix_numerator(n, k, eta, w, c) / rmatrix_norm(n, eta, w, c);
}

inline double ybe_residual(int n, int k, cx eta, cx u, cx v, cx w, const CurveParams& c) {
    Mat I = Mat::Identity(n, n);
    auto R12 = [&](cx x) {
        Mat R = belavin_r(n, k, eta, x, c);
        return Mat(Eigen::kroneckerProduct(R, I));
    };
    auto R23 = [&](cx x) {
        Mat R = belavin_r(n, k, eta, x, c);
        return Mat(Eigen::kroneckerProduct(I, R));
    };
    Mat lhs = R12(v - w) * R23(u - w) * R12(u - v);
    Mat rhs = R23(u - v) * R12(u - w) * R23(v - w);
    return (lhs - rhs).norm() / lhs.norm();
}

inline double unitarity_residual(int n, int k, cx eta, cx w, const CurveParams& c) {
    Mat P = belavin_r(n, k, eta, w, c) * belavin_r(n, k, eta, -w, c);
    return (P - Mat::Identity(n * n, n * n)).norm() / std::sqrt(double(n * n));
}

// det R(w) = ((-1) e^{2 pi i n^2 eta})^{n(n-1)/2}
//            * (prod_s theta_s(-w-eta) / theta_s(-w+eta))^{n(n-1)/2}.
// The constant prefactor is forced by unitarity (det R(w) det R(-w) = 1 with
// the ratio part alone already multiplying to the inverse constant squared).
inline double det_formula_residual(int n, int k, cx eta, cx w, const CurveParams& c) {
    auto th = [&](long long a, cx x) { return theta_alpha(imod(a, n), x, n, c); };
    cx det = belavin_r(n, k, eta, w, c).determinant();
    cx ratio = 1.0;
    for (int s = 0; s < n; ++s) ratio *= th(s, -w - eta) / th(s, -w + eta);
    long long N2 = (long long)n * (n - 1) / 2;
    cx pred = std::pow(-e2pi(double(n) * double(n) * eta), double(N2)) * std::pow(ratio, double(N2));
    return std::abs(det - pred) / std::abs(pred);
}

struct KernelReport {
    Mat basis;  // orthonormal kernel of the numerator matrix at w = -eta
    int dim = 0;
    double gap = 0.0;
    double angle_to_relations = 0.0;
};

inline KernelReport kernel_at_minus_eta(int n, int k, cx eta, const CurveParams& c) {
    Mat N = rmatrix_numerator(n, k, eta, -eta, c);
    RankedBasis ker = nullspace(N);
    KernelReport rep;
    rep.basis = ker.basis;
    rep.dim = ker.rank;
    rep.gap = ker.gap;
    rep.angle_to_relations = max_principal_angle(ker.basis, qnk_relation_span(n, k, eta, c));
    return rep;
}

}  // namespace ell
