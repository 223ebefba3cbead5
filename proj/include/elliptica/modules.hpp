#pragma once
// Representations and homomorphism checks: the degree-3 curve linear module,
// the functional modules on shifted-index states, degree-2 bosonization, the
// multivariate linear modules, and the exchange-algebra identities.

#include <map>

#include "elliptica/algebras.hpp"
#include "elliptica/wbasis.hpp"

namespace ell {

struct OffCurve : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Projective (Fubini-Study) distance between nonzero vectors.
inline double fs_distance(const Vec& a, const Vec& b) {
    double ip = std::abs((cx)(a.adjoint() * b));
    double t = 1.0 - ip * ip / (a.squaredNorm() * b.squaredNorm());
    return std::sqrt(std::max(0.0, t));
}

inline double q3_cubic_residual(cx kpq, const Vec& x) {
    cx val = x(0) * x(0) * x(0) + x(1) * x(1) * x(1) + x(2) * x(2) * x(2) +
             kpq * x(0) * x(1) * x(2);
    double sc = std::max({std::abs(x(0)), std::abs(x(1)), std::abs(x(2))});
    return std::abs(val) / (sc * sc * sc);
}

// One step of the degree-3 curve linear module: the next projective point is
// the nullvector of the 3x3 system attached to the current point.  On the
// theta parametrization this moves u to u + eta.
inline Vec q3_linear_module_step(cx p, cx q, const Vec& x, double* sys_gap = nullptr) {
    Mat A(3, 3);
    A << x(1), -q * x(0), -p * x(2),
        -p * x(0), x(2), -q * x(1),
        -q * x(2), -p * x(1), x(0);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(2) > 1e-6 * s(0)) throw SingularSystem("linear system has no nullvector");
    if (s(1) < 1e-6 * s(0)) throw SingularSystem("nullvector not unique");
    if (sys_gap) *sys_gap = s(1) / s(2);
    return svd.matrixV().col(2);
}

// ---- functional modules ----------------------------------------------------

struct FunctionalModuleState {
    std::vector<cx> v;       // module parameters v_1..v_p
    std::vector<int> alpha;  // state index
};

// Action of a theta generator on a state: p successor coefficients, one per
// incremented index slot.
inline std::vector<cx> functional_module_apply(int n, const CurveParams& c, cx eta,
                                               const FunctionalModuleState& st,
                                               const std::function<cx(cx)>& f) {
    const int p = int(st.v.size());
    long long s2 = 0;
    for (int a : st.alpha) s2 += 2 * a;
    std::vector<cx> out(p);
    for (int t = 0; t < p; ++t) {
        cx den = 1.0;
        for (int j = 0; j < p; ++j) {
            if (j == t) continue;
            cx d = st.v[t] - st.v[j] - double(n) * double(st.alpha[t] - st.alpha[j]) * eta;
            den *= theta1(d, c);
        }
        if (std::abs(den) < 1e-12) throw DegenerateParameters("module denominator vanishes");
        out[t] = f(st.v[t] + (double(s2) - double(n) * st.alpha[t]) * eta) / den;
    }
    return out;
}

// Relation annihilation on the truncated functional module: apply every
// eta-reflected relation row through two generator applications and read the
// matrix on states of degree <= D; columns of degree <= D-2 must vanish.
inline double functional_module_annihilation(int n, int p, cx eta, const CurveParams& c,
                                             Rng& rng, int D = 3) {
    std::vector<cx> v(p);
    for (auto& x : v) x = rng.box(0.3);
    // enumerate states of total degree <= D
    std::vector<std::vector<int>> basis;
    std::vector<int> a(p, 0);
    std::function<void(int, int)> enumerate = [&](int pos, int left) {
        if (pos == p) {
            basis.push_back(a);
            return;
        }
        for (int t = 0; t <= left; ++t) {
            a[pos] = t;
            enumerate(pos + 1, left - t);
        }
        a[pos] = 0;
    };
    enumerate(0, D);
    std::map<std::vector<int>, int> idx;
    for (std::size_t t = 0; t < basis.size(); ++t) idx[basis[t]] = int(t);

    auto gen = [&](int i) {
        Mat M = Mat::Zero((long long)basis.size(), (long long)basis.size());
        auto f = [&](cx z) { return theta_alpha(i, z, n, c); };
        for (const auto& st : basis) {
            int deg = 0;
            for (int t : st) deg += t;
            if (deg >= D) continue;
            FunctionalModuleState state{v, st};
            std::vector<cx> co = functional_module_apply(n, c, eta, state, f);
            for (int t = 0; t < p; ++t) {
                std::vector<int> nxt = st;
                ++nxt[t];
                M(idx[nxt], idx[st]) += co[t];
            }
        }
        return M;
    };
    std::vector<Mat> G;
    for (int i = 0; i < n; ++i) G.push_back(gen(i));

    auto rows = qnk_relation_terms(n, 1, eta, c, /*sign=*/-1);
    double worst = 0.0;
    std::vector<int> lowcols;
    for (std::size_t t = 0; t < basis.size(); ++t) {
        int deg = 0;
        for (int x : basis[t]) deg += x;
        if (deg <= D - 2) lowcols.push_back(int(t));
    }
    for (const auto& row : rows) {
        Mat acc = Mat::Zero(G[0].rows(), G[0].cols());
        double mx = 0.0;
        for (auto& [pos, co] : row.terms) {
            Mat term = co * (G[pos.first] * G[pos.second]);
            acc += term;
            mx = std::max(mx, term.cwiseAbs().maxCoeff());
        }
        double res = 0.0;
        for (int col : lowcols) res = std::max(res, acc.col(col).cwiseAbs().maxCoeff());
        worst = std::max(worst, res / mx);
    }
    return worst;
}

// ---- bosonization, degree 2 ------------------------------------------------

// The degree-2 homomorphism identity: the composed images of two theta
// generators match the image of their elliptic star product, coefficient by
// coefficient on the quadratic difference-operator monomials.
inline double bosonization_deg2_residual(int n, int p, cx eta, const CurveParams& c, Rng& rng) {
    std::vector<cx> u(p);
    for (auto& x : u) x = rng.box(0.3);
    const int gi = 0, gj = 1 % n;
    auto f = [&](cx z) { return theta_alpha(gi, z, n, c); };
    auto g = [&](cx z) { return theta_alpha(gj, z, n, c); };
    auto D = [&](int al, const std::vector<cx>& uu) {
        cx d = 1.0;
        for (int t = 0; t < p; ++t)
            if (t != al) d *= theta1(uu[al] - uu[t], c);
        return d;
    };
    auto sigma = [&](int al, std::vector<cx> uu) {
        for (auto& x : uu) x -= 2.0 * eta;
        uu[al] = u[al] + double(n - 2) * eta;
        return uu;
    };
    double worst = 0.0;
    for (int al = 0; al < p; ++al) {
        for (int be = al + 1; be < p; ++be) {
            auto sa = sigma(al, u), sb = sigma(be, u);
            cx lhs = f(u[al]) / D(al, u) * g(sa[be]) / D(be, sa) +
                     f(u[be]) / D(be, u) * g(sb[al]) / D(al, sb);
            cx rhs = theta1(u[al] - u[be], c) / theta1(u[al] - u[be] - double(n) * eta, c) *
                     qn_star_deg1(f, g, n, c, eta, u[al], u[be]) / (D(al, u) * D(be, sa));
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
        }
        auto sa = sigma(al, u);
        cx lhs = f(u[al]) / D(al, u) * g(sa[al]) / D(al, sa);
        cx rhs = theta1(-double(n) * eta, c) / theta1(-2.0 * double(n) * eta, c) *
                 qn_star_deg1(f, g, n, c, eta, u[al], u[al] + double(n) * eta) /
                 (D(al, u) * D(al, sa));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
    }
    return worst;
}

// ---- multivariate linear modules -------------------------------------------

// Scalar relation check for the one-dimensional modules over the n,k algebra:
// x_a x_b acts as w_a(u + step) w_b(u) with the stated per-variable steps.
inline double qnk_linear_module_residual(const WBasis& wb, cx eta, Rng& rng) {
    const int n = int(wb.n), k = int(wb.k), q = wb.p;
    const CurveParams& c = wb.curve;
    cvec u(q), step(q);
    for (auto& x : u) x = rng.box(0.3);
    for (int j = 0; j < q; ++j) {
        long long dpre = j == 0 ? 1 : wb.lpre[j - 1];
        long long dsuf = wb.m[j];  // d of the suffix after position j
        step[j] = (double(n) - double(dpre) - double(dsuf)) * eta;
    }
    auto rows = qnk_relation_terms(n, k, eta, c, /*sign=*/1);
    double worst = 0.0;
    for (const auto& row : rows) {
        cx acc = 0.0;
        double mx = 0.0;
        cvec us(q);
        for (int j = 0; j < q; ++j) us[j] = u[j] + step[j];
        for (auto& [pos, co] : row.terms) {
            cx t = co * wb.w(pos.first, us) * wb.w(pos.second, u);
            acc += t;
            mx = std::max(mx, std::abs(t));
        }
        worst = std::max(worst, std::abs(acc) / mx);
    }
    return worst;
}

// ---- exchange algebra ------------------------------------------------------

// The dynamical-coefficient scalar identity behind the exchange relations:
// for every relation row, the three-block sum with the Lambda weights
// vanishes.
inline double exchange_coeff_identity_residual(const WBasis& wb, cx eta, Rng& rng) {
    const int n = int(wb.n), k = int(wb.k), q = wb.p;
    const CurveParams& c = wb.curve;
    auto th1 = [&](cx x) { return theta1(x, c); };
    cvec ya(q), yb(q), t(q);
    for (auto& x : ya) x = rng.box(0.3);
    for (auto& x : yb) x = rng.box(0.3);
    for (int al = 0; al < q; ++al) {
        long long dpre = al == 0 ? 1 : wb.lpre[al - 1];
        long long dsuf = wb.m[al];
        t[al] = double(dpre + dsuf) * eta;
    }
    cvec d(q);
    for (int j = 0; j < q; ++j) d[j] = yb[j] - ya[j];
    cx L = std::exp(cx(0.0, -2.0 * kPi) * double(n) * eta) * th1(d[0]) *
           th1(d[q - 1] + double(n) * eta) / (th1(d[0] - double(n) * eta) * th1(d[q - 1]));
    std::vector<cx> Ls(q - 1);
    for (int s = 0; s + 1 < q; ++s)
        Ls[s] = std::exp(cx(0.0, -2.0 * kPi) * double(n) * eta) * th1(double(n) * eta) *
                th1(d[0]) / th1(d[0] - double(n) * eta) * th1(d[s] - d[s + 1]) /
                (th1(d[s]) * th1(-d[s + 1]));
    auto splice = [&](const cvec& head, const cvec& tail, int s) {
        cvec out(q);
        for (int j = 0; j <= s; ++j) out[j] = head[j];
        for (int j = s + 1; j < q; ++j) out[j] = tail[j];
        return out;
    };
    auto plus_t = [&](cvec v) {
        for (int j = 0; j < q; ++j) v[j] += t[j];
        return v;
    };
    auto rows = qnk_relation_terms(n, k, eta, c, /*sign=*/1);
    double worst = 0.0;
    for (const auto& row : rows) {
        cx acc = 0.0;
        double mx = 0.0;
        for (auto& [pos, co] : row.terms) {
            int a = pos.first, b = pos.second;
            cx t1 = co * wb.w(a, ya) * wb.w(b, plus_t(yb));
            cx t2 = co * L * wb.w(a, yb) * wb.w(b, plus_t(ya));
            acc += t1 + t2;
            mx = std::max({mx, std::abs(t1), std::abs(t2)});
            for (int s = 0; s + 1 < q; ++s) {
                cx t3 = co * Ls[s] * wb.w(a, splice(yb, ya, s)) * wb.w(b, plus_t(splice(ya, yb, s)));
                acc += t3;
                mx = std::max(mx, std::abs(t3));
            }
        }
        worst = std::max(worst, std::abs(acc) / mx);
    }
    return worst;
}

// The homomorphism from the q'-point exchange algebra at mu = n eta into the
// n,k algebra: substituting the image generators into the exchange relation
// yields a tensor that must lie in the quadratic relation span.
inline double exchange_homomorphism_distance(int n, int k, cx eta, const CurveParams& c,
                                             Rng& rng, int box = 12) {
    const int kp = n - k;
    WBasis wbd = build_w_basis(continued_fraction(n, kp), c, box);
    const int qp = wbd.p;
    auto th1 = [&](cx x) { return theta1(x, c); };
    cx mu = double(n) * eta;
    cvec muv(qp);
    for (int al = 0; al < qp; ++al) {
        long long dpre = al == 0 ? 1 : wbd.lpre[al - 1];
        long long dsuf = wbd.m[al];
        muv[al] = double(dpre - dsuf) * eta;
    }
    cvec u(qp), v(qp);
    for (auto& x : u) x = rng.box(0.3);
    for (auto& x : v) x = rng.box(0.3);
    auto splice = [&](const cvec& head, const cvec& tail, int s) {
        cvec out(qp);
        for (int j = 0; j <= s; ++j) out[j] = head[j];
        for (int j = s + 1; j < qp; ++j) out[j] = tail[j];
        return out;
    };
    auto plus_mu = [&](cvec z) {
        for (int j = 0; j < qp; ++j) z[j] += muv[j];
        return z;
    };
    Mat T = Mat::Zero(n, n);
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be) {
            cx t1 = th1(v[0] - u[0] + mu) / th1(v[0] - u[0]) * wbd.w(al, u) *
                    wbd.w(be, plus_mu(v));
            cx tt = 0.0;
            for (int s = 0; s + 1 < qp; ++s)
                tt += th1(mu) * th1(v[s] - u[s] + u[s + 1] - v[s + 1]) /
                      (th1(v[s] - u[s]) * th1(u[s + 1] - v[s + 1])) *
                      wbd.w(al, splice(v, u, s)) * wbd.w(be, plus_mu(splice(u, v, s)));
            cx t3 = th1(v[qp - 1] - u[qp - 1] + mu) / th1(v[qp - 1] - u[qp - 1]) * wbd.w(al, v) *
                    wbd.w(be, plus_mu(u));
            T(imod(1 - al, n), imod(1 - be, n)) += t1 - tt - t3;
        }
    Vec vec(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) vec(a * n + b) = T(a, b);
    return membership_distance(vec, qnk_relation_span(n, k, eta, c));
}

}  // namespace ell
