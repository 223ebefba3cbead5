#pragma once
// One-variable theta function, the order-n basis theta_alpha, translation
// operators and the classical three/four-term identities between them.

#include <cmath>
#include <functional>

#include "elliptica/curve.hpp"

namespace ell {

// theta(z) = sum_a (-1)^a e^{2 pi i (a z + a(a-1)/2 tau)}, evaluated after
// reducing z into |Re z| <= 1/2, 0 <= Im z < Im tau.  The reduction factor is
// exact quasi-periodicity, so the function is usable for any z.
inline cx theta1_raw(cx z, const CurveParams& c) {
    cx acc = 0.0;
    for (int a = -c.truncation; a <= c.truncation; ++a) {
        double sgn = (a & 1) ? -1.0 : 1.0;
        acc += sgn * e2pi(double(a) * z + (double(a) * (a - 1) / 2.0) * c.tau);
    }
    return acc;
}

inline cx theta1(cx z, const CurveParams& c) {
    double m = std::floor(z.imag() / c.tau.imag());
    cx z0 = z - m * c.tau;
    z0 -= std::round(z0.real());
    double sgn = (std::llround(m) & 1) ? -1.0 : 1.0;
    cx fac = sgn * std::exp(cx(0.0, -2.0 * kPi) * (m * z0 + m * (m - 1.0) / 2.0 * c.tau));
    return fac * theta1_raw(z0, c);
}

// Independent oracle: the infinite product, truncated at the same order.
inline cx theta1_product(cx z, const CurveParams& c) {
    double m = std::floor(z.imag() / c.tau.imag());
    cx z0 = z - m * c.tau;
    z0 -= std::round(z0.real());
    double sgn = (std::llround(m) & 1) ? -1.0 : 1.0;
    cx fac = sgn * std::exp(cx(0.0, -2.0 * kPi) * (m * z0 + m * (m - 1.0) / 2.0 * c.tau));
    cx out = 1.0 - e2pi(z0);
    for (int a = 1; a <= c.truncation; ++a) {
        out *= 1.0 - e2pi(double(a) * c.tau);
        out *= (1.0 - e2pi(z0 + double(a) * c.tau)) * (1.0 - e2pi(double(a) * c.tau - z0));
    }
    return fac * out;
}

// theta_alpha(z) = prod_{s<n} theta(z + s/n + alpha tau/n)
//                  * e^{2 pi i (alpha z + alpha(alpha-n) tau/(2n) + alpha/(2n))}
// The prefactor is kept exactly as defined; the identities below are sensitive
// to it.
inline cx theta_alpha(int alpha, cx z, int n, const CurveParams& c) {
    alpha = imod(alpha, n);
    cx out = e2pi(double(alpha) * z + double(alpha) * (alpha - n) / (2.0 * n) * c.tau +
                  double(alpha) / (2.0 * n));
    for (int s = 0; s < n; ++s) out *= theta1(z + double(s) / n + double(alpha) / n * c.tau, c);
    return out;
}

struct ThetaBasis {
    CurveParams curve;
    int n = 1;
    cx shift = 0.0;  // basis of the multiplier-(n, c) space is theta_alpha(z + shift)

    cx operator()(int alpha, cx z) const { return theta_alpha(alpha, z + shift, n, curve); }
};

// Basis of the space of entire f with f(z+1)=f(z),
// f(z+tau) = (-1)^n e^{-2 pi i (n z - c)} f(z).
inline ThetaBasis theta_nc_basis(int n, cx c, const CurveParams& curve) {
    ThetaBasis b;
    b.curve = curve;
    b.n = n;
    b.shift = -c / double(n) - double(n - 1) / (2.0 * n);
    return b;
}

// Degree-3 curve embedding basis: same multiplier space as theta_nc_basis(3, 0)
// but shifted so the three-term quadratic identity below holds verbatim.
inline cx theta3_curve(int a, cx z, const CurveParams& c) {
    return theta_alpha(imod(a, 3), z + 1.0 / 3.0, 3, c);
}

// T_{1/n} f(z) = f(z + 1/n)
// T_{tau/n} f(z) = e^{2 pi i (z + 1/(2n) - (n-1) tau/(2n))} f(z + tau/n)
inline cx op_T1n(const std::function<cx(cx)>& f, int n, cx z) { return f(z + 1.0 / n); }
inline cx op_Ttau(const std::function<cx(cx)>& f, int n, const CurveParams& c, cx z) {
    return e2pi(z + 1.0 / (2.0 * n) - double(n - 1) / (2.0 * n) * c.tau) * f(z + c.tau / double(n));
}

// ---- identity residuals ----------------------------------------------------
// All residuals are |LHS - RHS| / max(1, largest term magnitude).

// theta(nz) expressed through the theta_alpha(z) and theta-constants.
inline double identity_nz_residual(int n, cx z, const CurveParams& c) {
    cx num = double(n) * e2pi(-double(n) * (n - 1) / 2.0 * z);
    for (int a = 0; a < n; ++a) num *= theta_alpha(a, z, n, c);
    cx den = 1.0;
    for (int a = 1; a < n; ++a) den *= theta_alpha(a, 0.0, n, c) * theta1(cx(double(a) / n), c);
    cx lhs = theta1(double(n) * z, c);
    cx rhs = num / den;
    double sc = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) / sc;
}

// Three-term quadratic identity for the n=3 curve basis.
inline double identity_threeterm_residual(int alpha, cx z, cx eta, const CurveParams& c) {
    auto t = [&](int a, cx w) { return theta3_curve(a, w, c); };
    cx t0 = t(0, eta) * t(alpha, z + eta) * t(alpha, z);
    cx t1 = t(1, eta) * t(alpha + 2, z + eta) * t(alpha + 1, z);
    cx t2 = t(2, eta) * t(alpha + 1, z + eta) * t(alpha + 2, z);
    double sc = std::max({1.0, std::abs(t0), std::abs(t1), std::abs(t2)});
    return std::abs(t0 + t1 + t2) / sc;
}

inline cx theta_const_prefactor(int n, const CurveParams& c) {
    cx pref = 1.0 / double(n);
    for (int s = 1; s < n; ++s) pref *= theta1(cx(double(s) / n), c);
    return pref;
}

// Two-point addition identity (arbitrary order n, generic parameters).
inline double identity_addition_residual(int n, int alpha, int beta, cx y, cx z, cx u, cx v,
                                         cx eta, const CurveParams& c) {
    auto th = [&](int a, cx w) { return theta_alpha(a, w, n, c); };
    cx lhs = theta1(y - z + double(n) * (v - u), c) /
                 (theta1(y - z, c) * theta1(double(n) * (v - u), c)) * th(alpha, y + u) *
                 th(beta, z + v + eta) +
             theta1(z - y + double(n) * eta, c) /
                 (theta1(z - y, c) * theta1(double(n) * eta, c)) * th(alpha, z + u) *
                 th(beta, y + v + eta);
    cx rhs = 0.0;
    for (int r = 0; r < n; ++r)
        rhs += th(beta - alpha, v - u + eta) / (th(r, eta) * th(beta - alpha - r, v - u)) *
               th(beta - r, y + v) * th(alpha + r, z + u + eta);
    rhs *= theta_const_prefactor(n, c);
    double sc = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) / sc;
}

// Specialization of the addition identity (u = v + eta after recentering);
// this is the scalar engine behind the quadratic relation rows.
inline double identity_exchange_residual(int n, int alpha, int beta, cx y, cx z, cx eta,
                                         const CurveParams& c) {
    auto th = [&](int a, cx w) { return theta_alpha(a, w, n, c); };
    cx lhs = theta1(z - y + double(n) * eta, c) /
             (theta1(z - y, c) * theta1(double(n) * eta, c)) *
             (th(alpha, z + eta) * th(beta, y + eta) - th(alpha, y + eta) * th(beta, z + eta));
    cx rhs = 0.0;
    for (int r = 0; r < n; ++r)
        rhs += th(beta - r, y) * th(alpha + r, z + 2.0 * eta) /
               (th(r, eta) * th(beta - alpha - r, -eta));
    rhs *= theta_const_prefactor(n, c) * th(beta - alpha, 0.0);
    double sc = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) / sc;
}

// Sample a complex point while avoiding the zero set of the one-variable theta
// at the listed probe arguments (pole avoidance for identity denominators).
template <class F>
cx sample_away_from_zeros(Rng& rng, const CurveParams& c, const F& denominators, double s = 0.35,
                          int budget = 64) {
    for (int it = 0; it < budget; ++it) {
        cx z = rng.box(s);
        bool ok = true;
        for (cx d : denominators(z))
            if (std::abs(theta1(d, c)) < 1e-3) ok = false;
        if (ok) return z;
    }
    throw SampleDegenerate("could not sample away from denominator zeros");
}

}  // namespace ell
