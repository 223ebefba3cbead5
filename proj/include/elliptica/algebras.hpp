#pragma once
// Builders for every concrete quadratic algebra family: the elliptic n,k
// relation rows, the degree-3 curve presentation, Sklyanin, skew polynomials,
// Lie projectivizations, the order-9 root-of-unity example, plus the
// functional (shuffle) products realizing the algebras on symmetric functions.

#include <array>
#include <functional>

#include "elliptica/quad.hpp"
#include "elliptica/theta.hpp"

namespace ell {

struct DegenerateEta : DegenerateParameters {
    using DegenerateParameters::DegenerateParameters;
};
struct ConstraintViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One relation row as explicit (position, coefficient) pairs on x_a x_b.
struct RelationTerms {
    int i = 0, j = 0;  // the generating index pair
    std::vector<std::pair<std::pair<int, int>, cx>> terms;
};

// Coefficient rows sum_r theta_{j-i+r(k-1)}(0) / (theta_{kr}(s eta) *
// theta_{j-i-r}(-s eta)) on x_{j-r} x_{i+r}.  sign=+1 is the defining
// relation set; sign=-1 is the companion set that annihilates the functional
// realizations (the eta-reflection convention, asserted by tests).
inline std::vector<RelationTerms> qnk_relation_terms(int n, int k, cx eta,
                                                     const CurveParams& c, int sign = 1,
                                                     bool unordered_only = false) {
    cx e = double(sign) * eta;
    auto th = [&](long long a, cx w) { return theta_alpha(imod(a, n), w, n, c); };
    for (int r = 1; r < n; ++r)
        if (std::abs(th(imod((long long)k * r, n), e)) < 1e-10)
            throw DegenerateEta("theta_{kr}(eta) denominator vanishes");
    std::vector<RelationTerms> rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (unordered_only ? (i >= j) : (i == j)) continue;
            RelationTerms row;
            row.i = i;
            row.j = j;
            double mx = 0.0;
            for (int r = 0; r < n; ++r) {
                cx den = th((long long)k * r, e) * th(j - i - r, -e);
                if (std::abs(den) < 1e-12) throw DegenerateEta("relation denominator vanishes");
                cx co = th(j - i + (long long)r * (k - 1), 0.0) / den;
                row.terms.push_back({{imod(j - r, n), imod(i + r, n)}, co});
                mx = std::max(mx, std::abs(co));
            }
            if (mx > 1e-12) rows.push_back(std::move(row));
        }
    return rows;
}

inline RelationSpace qnk_relations(int n, int k, cx eta, const CurveParams& c, int sign = 1) {
    auto rows = qnk_relation_terms(n, k, eta, c, sign, /*unordered_only=*/true);
    RelationSpace L;
    L.n = n;
    L.rows = Mat::Zero((long long)rows.size(), (long long)n * n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (auto& [pos, co] : rows[r].terms) L.rows(r, pos.first * n + pos.second) += co;
        L.rows.row(r) /= L.rows.row(r).norm();
    }
    return L;
}

// Orthonormal column basis of the relation span over ALL i != j pairs; the
// ordered and unordered enumerations span the same space (tested).
inline Mat qnk_relation_span(int n, int k, cx eta, const CurveParams& c, int sign = 1) {
    auto rows = qnk_relation_terms(n, k, eta, c, sign, false);
    Mat B = Mat::Zero((long long)n * n, (long long)rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (auto& [pos, co] : rows[r].terms) B(pos.first * n + pos.second, r) += co;
        B.col(r) /= B.col(r).norm();
    }
    return colspace(B).basis;
}

// ---- degree-3 curve presentation -------------------------------------------

struct Q3Data {
    cx p, q;     // relation constants from the curve point at eta
    cx kpq;      // cubic invariant (p^3 + q^3 - 1)/(p q)
    RelationSpace rel;  // x_a x_b - q x_b x_a - p x_c^2, cyclic
};

inline Q3Data q3_from_curve(const CurveParams& c, cx eta) {
    cx t2 = theta3_curve(2, eta, c);
    if (std::abs(t2) < 1e-10) throw DegenerateEta("t_2(eta) vanishes");
    Q3Data d;
    d.p = -theta3_curve(0, eta, c) / t2;
    d.q = -theta3_curve(1, eta, c) / t2;
    if (std::abs(d.p * d.q) < 1e-12) throw DegenerateEta("p q vanishes");
    d.kpq = (d.p * d.p * d.p + d.q * d.q * d.q - 1.0) / (d.p * d.q);
    d.rel.n = 3;
    d.rel.rows = Mat::Zero(3, 9);
    for (int i = 0; i < 3; ++i) {
        int a = i, b = (i + 1) % 3, cc = (i + 2) % 3;
        d.rel.rows(i, a * 3 + b) = 1.0;
        d.rel.rows(i, b * 3 + a) = -d.q;
        d.rel.rows(i, cc * 3 + cc) = -d.p;
    }
    return d;
}

// Angle between the curve presentation span and the n=3, k=1 elliptic rows at
// the same eta.  The generator bases differ by the diagonal map x_a -> eps^a
// with eps = e^{2 pi i/3}; the relation positions pick up eps^{a+b}.
inline double q3_match_angle(const CurveParams& c, cx eta) {
    Q3Data d = q3_from_curve(c, eta);
    cx eps = e2pi(cx(1.0 / 3.0));
    Mat B(9, 3);
    for (int r = 0; r < 3; ++r)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                B(a * 3 + b, r) = d.rel.rows(r, a * 3 + b) * std::pow(eps, a + b);
    return max_principal_angle(colspace(B).basis, qnk_relation_span(3, 1, eta, c));
}

// ---- Sklyanin --------------------------------------------------------------

inline RelationSpace sklyanin_relations(cx J12, cx J23, cx J31) {
    cx con = J12 + J23 + J31 + J12 * J23 * J31;
    if (std::abs(con) > 1e-10) throw ConstraintViolated("J constraint violated");
    RelationSpace L;
    L.n = 4;
    L.rows = Mat::Zero(6, 16);
    std::array<std::array<int, 3>, 3> cyc{{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};
    std::array<cx, 4> J{};  // J[gamma-index pair]: J_{23}, J_{31}, J_{12} by missing index
    // J_{beta gamma} for the cyclic triple (alpha, beta, gamma)
    auto Jof = [&](int b, int g) {
        if ((b == 1 && g == 2) || (b == 2 && g == 1)) return J12;
        if ((b == 2 && g == 3) || (b == 3 && g == 2)) return J23;
        return J31;
    };
    (void)J;
    int r = 0;
    for (auto [a, b, g] : cyc) {
        // S_a S_0 - S_0 S_a + i J_{bg} (S_b S_g + S_g S_b) = 0
        L.rows(r, a * 4 + 0) = 1.0;
        L.rows(r, 0 * 4 + a) = -1.0;
        L.rows(r, b * 4 + g) += kI * Jof(b, g);
        L.rows(r, g * 4 + b) += kI * Jof(b, g);
        ++r;
        // S_a S_b - S_b S_a - i (S_0 S_g + S_g S_0) = 0
        L.rows(r, a * 4 + b) = 1.0;
        L.rows(r, b * 4 + a) = -1.0;
        L.rows(r, 0 * 4 + g) -= kI;
        L.rows(r, g * 4 + 0) -= kI;
        ++r;
    }
    return L;
}

inline std::array<cx, 3> random_sklyanin_J(Rng& rng) {
    for (int it = 0; it < 64; ++it) {
        cx J12 = rng.box(0.5), J23 = rng.box(0.5);
        cx den = 1.0 + J12 * J23;
        if (std::abs(den) < 1e-3) continue;
        cx J31 = -(J12 + J23) / den;
        return {J12, J23, J31};
    }
    throw SampleDegenerate("could not draw constrained J");
}

// ---- skew polynomials and Lie projectivizations ----------------------------

inline RelationSpace skew_polynomial_relations(const Mat& q) {
    const int n = int(q.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && std::abs(q(i, j)) < 1e-12)
                throw std::invalid_argument("skew coefficients must be nonzero");
    RelationSpace L;
    L.n = n;
    L.rows = Mat::Zero((long long)n * (n - 1) / 2, (long long)n * n);
    int r = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++r) {
            L.rows(r, i * n + j) = 1.0;
            L.rows(r, j * n + i) = -q(i, j);
        }
    return L;
}

struct InvalidStructureConstants : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Generators (c, x_1..x_m): relations c x_i = x_i c and
// x_i x_j - x_j x_i = sum_k f[i][j][k] c x_k.  f must be an antisymmetric
// Jacobi-satisfying bracket on the m-dimensional Lie algebra.
inline RelationSpace lie_projectivization_relations(
    const std::vector<std::vector<std::vector<cx>>>& f) {
    const int m = int(f.size());
    const int n = m + 1;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                if (std::abs(f[i][j][k] + f[j][i][k]) > 1e-12)
                    throw InvalidStructureConstants("structure constants not antisymmetric");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    cx jac = 0.0;
                    for (int s = 0; s < m; ++s)
                        jac += f[i][j][s] * f[s][k][l] + f[j][k][s] * f[s][i][l] +
                               f[k][i][s] * f[s][j][l];
                    if (std::abs(jac) > 1e-10)
                        throw InvalidStructureConstants("Jacobi identity fails");
                }
    RelationSpace L;
    L.n = n;
    L.rows = Mat::Zero((long long)n * (n - 1) / 2, (long long)n * n);
    int r = 0;
    // generator 0 is c; generators 1.. are x_i
    for (int i = 1; i < n; ++i, ++r) {
        L.rows(r, 0 * n + i) = 1.0;
        L.rows(r, i * n + 0) = -1.0;
    }
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++r) {
            L.rows(r, i * n + j) = 1.0;
            L.rows(r, j * n + i) = -1.0;
            for (int k = 1; k < n; ++k) L.rows(r, 0 * n + k) -= f[i - 1][j - 1][k - 1];
        }
    return L;
}

inline RelationSpace heisenberg_relations() {
    // [x, y] = z on generators (x, y, z)
    std::vector f(3, std::vector(3, std::vector<cx>(3, 0.0)));
    f[0][1][2] = 1.0;
    f[1][0][2] = -1.0;
    return lie_projectivization_relations(f);
}

inline RelationSpace sl2_relations() {
    // (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h
    std::vector f(3, std::vector(3, std::vector<cx>(3, 0.0)));
    f[0][1][1] = 2.0;
    f[1][0][1] = -2.0;
    f[0][2][2] = -2.0;
    f[2][0][2] = 2.0;
    f[1][2][0] = 1.0;
    f[2][1][0] = -1.0;
    return lie_projectivization_relations(f);
}

// Three-generator algebra at the primitive ninth root of unity.
inline RelationSpace ogievetsky_relations() {
    cx e = e2pi(cx(1.0 / 9.0));
    auto ep = [&](int a) { return std::pow(e, a); };
    RelationSpace L;
    L.n = 3;
    L.rows = Mat::Zero(3, 9);
    const int x = 0, y = 1, z = 2;
    L.rows(0, z * 3 + x) = ep(1);
    L.rows(0, y * 3 + y) = ep(5);
    L.rows(0, x * 3 + z) = 1.0;
    L.rows(1, z * 3 + z) = ep(2);
    L.rows(1, y * 3 + x) = 1.0;
    L.rows(1, x * 3 + y) = ep(4);
    L.rows(2, z * 3 + y) = 1.0;
    L.rows(2, y * 3 + z) = ep(7);
    L.rows(2, x * 3 + x) = ep(8);
    return L;
}

// ---- functional realization -------------------------------------------------

struct SymFun {
    int arity = 0;
    std::function<cx(const std::vector<cx>&)> eval;

    cx operator()(const std::vector<cx>& u) const { return eval(u); }
};

inline SymFun sym_from_theta(int alpha, int n, const CurveParams& c) {
    SymFun s;
    s.arity = 1;
    s.eval = [alpha, n, c](const std::vector<cx>& u) { return theta_alpha(alpha, u[0], n, c); };
    return s;
}

namespace detail {
// All size-a subsets of {0..total-1}, each paired with its complement.
inline void shuffles(int total, int a,
                     const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
    std::vector<int> pick(a);
    for (int i = 0; i < a; ++i) pick[i] = i;
    for (;;) {
        std::vector<int> comp;
        int t = 0;
        for (int i = 0; i < total; ++i) {
            if (t < a && pick[t] == i)
                ++t;
            else
                comp.push_back(i);
        }
        fn(pick, comp);
        int j = a - 1;
        while (j >= 0 && pick[j] == total - a + j) --j;
        if (j < 0) break;
        ++pick[j];
        for (int i = j + 1; i < a; ++i) pick[i] = pick[i - 1] + 1;
    }
}
}  // namespace detail

// Shuffle product with kernel lambda(x, y) over split pairs; the 1/(a! b!)
// normalization is absorbed by summing over shuffles only (summands are
// block-symmetric).  gshift is subtracted from every argument of g; the
// elliptic product uses gshift = 2 a eta.
inline SymFun functional_product(const std::function<cx(cx, cx)>& lambda, const SymFun& f,
                                 const SymFun& g, cx gshift = 0.0) {
    SymFun out;
    const int a = f.arity, b = g.arity;
    out.arity = a + b;
    out.eval = [lambda, f, g, a, b, gshift](const std::vector<cx>& u) {
        cx acc = 0.0;
        detail::shuffles(a + b, a, [&](const std::vector<int>& fi, const std::vector<int>& gi) {
            std::vector<cx> uf(a), ug(b);
            for (int t = 0; t < a; ++t) uf[t] = u[fi[t]];
            for (int t = 0; t < b; ++t) ug[t] = u[gi[t]] - gshift;
            cx w = f(uf) * g(ug);
            for (int i : fi)
                for (int j : gi) w *= lambda(u[i], u[j]);
            acc += w;
        });
        return acc;
    };
    return out;
}

// The elliptic functional product on symmetric theta functions.
inline SymFun qn_product(const SymFun& f, const SymFun& g, int n, const CurveParams& c, cx eta) {
    auto lambda = [n, c, eta](cx x, cx y) {
        return theta1(x - y - double(n) * eta, c) / theta1(x - y, c);
    };
    return functional_product(lambda, f, g, 2.0 * double(f.arity) * eta);
}

// Degree-1 x degree-1 elliptic star product, written out (used in hot loops).
inline cx qn_star_deg1(const std::function<cx(cx)>& f, const std::function<cx(cx)>& g, int n,
                       const CurveParams& c, cx eta, cx z1, cx z2) {
    return f(z1) * g(z2 - 2.0 * eta) * theta1(z1 - z2 - double(n) * eta, c) /
               theta1(z1 - z2, c) +
           f(z2) * g(z1 - 2.0 * eta) * theta1(z2 - z1 - double(n) * eta, c) /
               theta1(z2 - z1, c);
}

// Relation rows (eta-reflected coefficients) annihilate the star products of
// the theta generators; residual normalized by the largest term.
inline double qn_star_annihilation_residual(int n, cx eta, const CurveParams& c, cx z1, cx z2) {
    auto rows = qnk_relation_terms(n, 1, eta, c, /*sign=*/-1);
    double worst = 0.0;
    for (const auto& row : rows) {
        cx acc = 0.0;
        double mx = 0.0;
        for (auto& [pos, co] : row.terms) {
            auto f = [&, a = pos.first](cx w) { return theta_alpha(a, w, n, c); };
            auto g = [&, b = pos.second](cx w) { return theta_alpha(b, w, n, c); };
            cx t = co * qn_star_deg1(f, g, n, c, eta, z1, z2);
            acc += t;
            mx = std::max(mx, std::abs(t));
        }
        worst = std::max(worst, std::abs(acc) / std::max(1e-300, mx));
    }
    return worst;
}

}  // namespace ell
