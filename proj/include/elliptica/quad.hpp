#pragma once
// Generic engine for quadratic graded algebras given by a numeric relation
// space L in V tensor V: graded spans, Hilbert dimensions, PBW flags, and
// central-element search.  Tensors are flattened row-major, (i,j) -> i*n+j.

#include <vector>

#include "elliptica/linalg.hpp"

namespace ell {

struct WorkspaceExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RelationSpace {
    int n = 0;       // generator count
    Mat rows;        // r x n^2, each row a flattened tensor in V (x) V

    int rank(double rel_tol = 1e-8) const {
        return colspace(rows.transpose(), rel_tol).rank;
    }
};

inline long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Orthonormal columns spanning W_d = sum_{i+j=d-2} V^i (x) L (x) V^j.
inline RankedBasis graded_span(const RelationSpace& L, int degree, double rel_tol = 1e-8,
                               long long cap = 20000) {
    if (degree < 2) throw std::invalid_argument("graded_span needs degree >= 2");
    const int n = L.n;
    const long long N = ipow(n, degree);
    if (N > cap) throw WorkspaceExceeded("n^degree exceeds the workspace cap");
    const int r = int(L.rows.rows());
    long long ncols = 0;
    for (int i = 0; i + 2 <= degree; ++i) ncols += ipow(n, degree - 2) * r;
    Mat B = Mat::Zero(N, ncols);
    long long col = 0;
    for (int i = 0; i + 2 <= degree; ++i) {
        const long long left = ipow(n, i), right = ipow(n, degree - 2 - i);
        for (long long a = 0; a < left; ++a)
            for (int rr = 0; rr < r; ++rr)
                for (long long b = 0; b < right; ++b) {
                    for (int c = 0; c < n * n; ++c)
                        B((a * n * n + c) * right + b, col) = L.rows(rr, c);
                    ++col;
                }
    }
    return colspace(B, rel_tol);
}

struct GradedDimensionReport {
    std::vector<long long> dims;      // dims[d-1] = dim A_d, d = 1..maxdeg
    std::vector<long long> expected;  // binomial(n+d-1, d)
    std::vector<bool> pbw;
    std::vector<double> sigma_gap;
    bool all_pbw = true;
    double min_gap = std::numeric_limits<double>::infinity();
};

inline long long binom(long long n, long long k) {
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline GradedDimensionReport hilbert_dims(const RelationSpace& L, int maxdeg,
                                          double rel_tol = 1e-8, long long cap = 20000) {
    GradedDimensionReport rep;
    const int n = L.n;
    for (int d = 1; d <= maxdeg; ++d) {
        long long dim;
        double gap = std::numeric_limits<double>::infinity();
        if (d == 1) {
            dim = n;
        } else {
            RankedBasis W = graded_span(L, d, rel_tol, cap);
            dim = ipow(n, d) - W.rank;
            gap = W.gap;
        }
        rep.dims.push_back(dim);
        rep.expected.push_back(binom(n + d - 1, d));
        rep.pbw.push_back(dim == rep.expected.back());
        rep.sigma_gap.push_back(gap);
        rep.all_pbw = rep.all_pbw && rep.pbw.back();
        rep.min_gap = std::min(rep.min_gap, gap);
    }
    return rep;
}

struct CentralElementReport {
    int degree = 0;
    int nullspace_dim = 0;
    Mat basis;  // columns: coefficient vectors in V^degree, unit norm
    double gap = 0.0;
    std::vector<double> residuals;  // per basis vector: worst commutator membership
};

// Central degree-d elements: candidates c live in the orthogonal complement of
// W_d; the condition is x_i (x) c - c (x) x_i in W_{d+1} for every generator.
inline CentralElementReport central_elements(const RelationSpace& L, int degree,
                                             double rel_tol = 1e-8, long long cap = 20000) {
    const int n = L.n;
    const long long Nd = ipow(n, degree), Nd1 = ipow(n, degree + 1);
    if (Nd1 > cap) throw WorkspaceExceeded("n^(degree+1) exceeds the workspace cap");
    RankedBasis Wd = degree >= 2 ? graded_span(L, degree, rel_tol, cap) : RankedBasis{};
    // orthonormal complement of W_d: nullspace of W_d^H
    Mat C;
    if (Wd.rank > 0) {
        C = nullspace(Mat(Wd.basis.adjoint()), rel_tol).basis;
    } else {
        C = Mat::Identity(Nd, Nd);
    }
    const int m = int(C.cols());
    RankedBasis Wd1 = graded_span(L, degree + 1, rel_tol, cap);

    // Stack, over generators i, the projections of x_i(x)c - c(x)x_i onto the
    // complement of W_{d+1}; central elements are the nullspace.
    Mat A = Mat::Zero((long long)n * Nd1, m);
    for (int col = 0; col < m; ++col) {
        for (int i = 0; i < n; ++i) {
            Vec v = Vec::Zero(Nd1);
            for (long long t = 0; t < Nd; ++t) {
                v(i * Nd + t) += C(t, col);   // x_i (x) c
                v(t * n + i) -= C(t, col);    // - c (x) x_i
            }
            Vec pv = v - Wd1.basis * (Wd1.basis.adjoint() * v);
            A.block((long long)i * Nd1, col, Nd1, 1) = pv;
        }
    }
    RankedBasis ns = nullspace(A, 1e-7);
    CentralElementReport rep;
    rep.degree = degree;
    rep.nullspace_dim = ns.rank;
    rep.gap = ns.gap;
    if (rep.gap < 1e2) throw IllConditioned("central-element nullspace gap below 1e2");
    rep.basis = Mat(Nd, ns.rank);
    for (int j = 0; j < ns.rank; ++j) {
        Vec c = C * ns.basis.col(j);
        c /= c.norm();
        rep.basis.col(j) = c;
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            Vec v = Vec::Zero(Nd1);
            for (long long t = 0; t < Nd; ++t) {
                v(i * Nd + t) += c(t);
                v(t * n + i) -= c(t);
            }
            worst = std::max(worst, membership_distance(v, Wd1.basis));
        }
        rep.residuals.push_back(worst);
    }
    return rep;
}

// Fully antisymmetric subspace of V (x) V: relations of the commutative
// polynomial ring, used as the eta -> 0 comparison target.
inline RelationSpace antisymmetric_relations(int n) {
    RelationSpace L;
    L.n = n;
    L.rows = Mat::Zero((long long)n * (n - 1) / 2, (long long)n * n);
    int r = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++r) {
            L.rows(r, i * n + j) = 1.0;
            L.rows(r, j * n + i) = -1.0;
        }
    return L;
}

}  // namespace ell
