#pragma once
// Quadratic Poisson structures: the exact cubic-surface bracket on C^3, the
// eta-derivative bracket of the elliptic functional product, and the
// compatibility of the coefficient-function homomorphism.

#include <map>

#include "elliptica/algebras.hpp"

namespace ell {

struct DegreeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact polynomial in (x_0, x_1, x_2) with complex coefficients.
struct PolynomialC3 {
    std::map<std::array<int, 3>, cx> coeff;
    int degree_cap = 24;

    static PolynomialC3 monomial(int a, int b, int c, cx v = 1.0) {
        PolynomialC3 p;
        p.coeff[{a, b, c}] = v;
        return p;
    }
    static PolynomialC3 variable(int i) {
        std::array<int, 3> e{0, 0, 0};
        e[i] = 1;
        PolynomialC3 p;
        p.coeff[e] = 1.0;
        return p;
    }

    void add_term(const std::array<int, 3>& e, cx v) {
        auto it = coeff.find(e);
        cx nv = (it == coeff.end() ? cx(0.0) : it->second) + v;
        if (std::abs(nv) == 0.0)
            coeff.erase(e);
        else
            coeff[e] = nv;
    }

    PolynomialC3 operator+(const PolynomialC3& o) const {
        PolynomialC3 r = *this;
        for (auto& [e, v] : o.coeff) r.add_term(e, v);
        return r;
    }
    PolynomialC3 operator-(const PolynomialC3& o) const {
        PolynomialC3 r = *this;
        for (auto& [e, v] : o.coeff) r.add_term(e, -v);
        return r;
    }
    PolynomialC3 operator*(const PolynomialC3& o) const {
        PolynomialC3 r;
        r.degree_cap = degree_cap;
        for (auto& [e1, v1] : coeff)
            for (auto& [e2, v2] : o.coeff) {
                std::array<int, 3> e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
                if (e[0] + e[1] + e[2] > degree_cap)
                    throw DegreeCapExceeded("polynomial degree cap exceeded");
                r.add_term(e, v1 * v2);
            }
        return r;
    }
    PolynomialC3 operator*(cx s) const {
        PolynomialC3 r;
        r.degree_cap = degree_cap;
        for (auto& [e, v] : coeff) r.add_term(e, v * s);
        return r;
    }

    PolynomialC3 d(int i) const {
        PolynomialC3 r;
        r.degree_cap = degree_cap;
        for (auto& [e, v] : coeff) {
            if (e[i] == 0) continue;
            std::array<int, 3> e2 = e;
            --e2[i];
            r.add_term(e2, v * double(e[i]));
        }
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (auto& [e, v] : coeff) m = std::max(m, std::abs(v));
        return m;
    }
};

// {x_0,x_1} = x_2^2 + k x_0 x_1 and cyclic; extended to polynomials via the
// Leibniz rule, exactly on coefficients.
inline PolynomialC3 bracket_c3(cx k, const PolynomialC3& f, const PolynomialC3& g) {
    // pairwise brackets of the coordinates
    auto base = [&](int i, int j) -> PolynomialC3 {
        if (i == j) return PolynomialC3{};
        int l = 3 - i - j;  // the remaining index
        PolynomialC3 b = PolynomialC3::monomial(0, 0, 0, 0.0);
        std::array<int, 3> sq{0, 0, 0};
        sq[l] = 2;
        b.add_term(sq, 1.0);
        std::array<int, 3> mix{0, 0, 0};
        ++mix[i];
        ++mix[j];
        b.add_term(mix, k);
        // {x_i, x_j} for cyclic (i,j) = (0,1),(1,2),(2,0); the reverse order flips sign
        bool cyclic = (j == (i + 1) % 3);
        return cyclic ? b : b * cx(-1.0);
    };
    PolynomialC3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            out = out + f.d(i) * g.d(j) * base(i, j);
        }
    return out;
}

inline PolynomialC3 c3_casimir(cx k) {
    PolynomialC3 C = PolynomialC3::monomial(3, 0, 0) + PolynomialC3::monomial(0, 3, 0) +
                     PolynomialC3::monomial(0, 0, 3) + PolynomialC3::monomial(1, 1, 1, 3.0 * k);
    return C;
}

// ---- the eta-derivative bracket --------------------------------------------

// (d/d eta)(f*g - g*f)|_{eta=0} at (z1, z2), 4th-order central difference.
inline cx qn_bracket(const std::function<cx(cx)>& f, const std::function<cx(cx)>& g, int n,
                     const CurveParams& c, cx z1, cx z2, double h = 1e-3) {
    auto diff = [&](double e) {
        cx eta(e, 0.0);
        return qn_star_deg1(f, g, n, c, eta, z1, z2) - qn_star_deg1(g, f, n, c, eta, z1, z2);
    };
    return (-diff(2.0 * h) + 8.0 * diff(h) - 8.0 * diff(-h) + diff(-2.0 * h)) / (12.0 * h);
}

// Compatibility of the coefficient-function homomorphism: pushing the bracket
// of two degree-1 elements through the p-point coefficient expansion matches
// the derivation bracket {e_al, u_be} = -2 e_al (al != be),
// {e_al, u_al} = (n-2) e_al acting on the coefficient functions.
inline double psi_p_residual(int n, int p, const CurveParams& c, Rng& rng,
                             double delta = 1e-5) {
    std::vector<cx> u(p);
    for (auto& x : u) x = rng.box(0.3);
    const int gi = 0, gj = 1 % n;
    auto f = [&](cx z) { return theta_alpha(gi, z, n, c); };
    auto g = [&](cx z) { return theta_alpha(gj, z, n, c); };
    auto co = [&](const std::function<cx(cx)>& fn, int al, const std::vector<cx>& uu) {
        cx den = 1.0;
        for (int t = 0; t < p; ++t)
            if (t != al) den *= theta1(uu[al] - uu[t], c);
        return fn(uu[al]) / den;
    };
    auto D = [&](const std::function<cx(cx)>& fn, int bet, int ga, std::vector<cx> uu,
                 double h = 1e-6) {
        uu[ga] += h;
        cx up = co(fn, bet, uu);
        uu[ga] -= 2.0 * h;
        cx um = co(fn, bet, uu);
        return (up - um) / (2.0 * h);
    };
    // {e_eal, .} acting on the bet-coefficient of fn
    auto act = [&](const std::function<cx(cx)>& fn, int eal, int bet, const std::vector<cx>& uu) {
        cx s = double(n - 2) * D(fn, bet, eal, uu);
        for (int gg = 0; gg < p; ++gg)
            if (gg != eal) s += -2.0 * D(fn, bet, gg, uu);
        return s;
    };
    double worst = 0.0;
    for (int al = 0; al < p; ++al) {
        for (int be = al; be < p; ++be) {
            cx lhs = co(f, al, u) * act(g, al, be, u) - co(g, be, u) * act(f, be, al, u);
            cx rhs;
            if (al != be) {
                lhs += co(f, be, u) * act(g, be, al, u) - co(g, al, u) * act(f, al, be, u);
                cx den1 = 1.0, den2 = 1.0;
                for (int t = 0; t < p; ++t) {
                    if (t != al) den1 *= theta1(u[al] - u[t], c);
                    if (t != be) den2 *= theta1(u[be] - u[t], c);
                }
                rhs = qn_bracket(f, g, n, c, u[al], u[be]) / (den1 * den2);
            } else {
                cx den = 1.0;
                for (int t = 0; t < p; ++t)
                    if (t != al) den *= theta1(u[al] - u[t], c);
                rhs = 0.5 * qn_bracket(f, g, n, c, u[al], u[al] + delta) / (den * den);
            }
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));
        }
    }
    return worst;
}

}  // namespace ell
