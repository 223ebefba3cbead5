#pragma once
// Multivariate theta spaces attached to a continued fraction n/k: the n
// basis functions w_alpha(z_1..z_p), their translation operators, the two
// multivariate exchange identities, and the duality pairing against the
// n/(n-k) space.

#include <algorithm>
#include <map>
#include <vector>

#include "elliptica/cf.hpp"
#include "elliptica/linalg.hpp"
#include "elliptica/theta.hpp"

namespace ell {

using cvec = std::vector<cx>;

struct BoxTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class WBasis {
public:
    ContinuedFraction cf;
    CurveParams curve;
    int box = 12;
    int p = 0;
    long long n = 0, k = 0;
    ivec m;       // m_j = d(n_{j+2}..n_p) suffix determinants, m_{p-1} = 1
    ivec lpre;    // lpre_j = d(n_1..n_j) prefix determinants, lpre_0 = 1
    cx phi = 0.0; // phase making the tau-translation cycle close

    WBasis() = default;

    // One Fourier mode: exponent vector and coefficient relative to the class
    // representative (which is normalized to coefficient 1).
    struct Mode {
        std::vector<int> a;
        cx coeff;
    };

    cx eval_class(int c, const cvec& z) const {
        cx acc = 0.0;
        for (const Mode& md : modes_[c]) {
            cx dot = 0.0;
            for (int j = 0; j < p; ++j) dot += double(md.a[j]) * z[j];
            acc += md.coeff * e2pi(dot);
        }
        return acc;
    }

    // w_alpha; diagonalizes the 1/n-translation with eigenvalue e^{2 pi i k alpha / n}
    cx w(long long alpha, const cvec& z) const {
        int a = imod(alpha, int(n));
        return cal_[a] * eval_class(imod(k * a, int(n)), z);
    }

    cvec suffix_shift(double scale) const {  // (m_j / n) * scale per variable
        cvec r(p);
        for (int j = 0; j < p; ++j) r[j] = double(m[j]) / double(n) * scale;
        return r;
    }
    cvec prefix_shift(double scale) const {  // (d(n_1..n_{j-1}) / n) * scale
        cvec r(p);
        for (int j = 0; j < p; ++j) r[j] = double(j == 0 ? 1 : lpre[j - 1]) / double(n) * scale;
        return r;
    }

    friend WBasis build_w_basis(const ContinuedFraction&, const CurveParams&, int);

private:
    std::vector<std::vector<Mode>> modes_;  // per class mod n
    std::vector<cx> cal_;                   // per-alpha constants closing the tau cycle

    int cls(const std::vector<int>& a) const {
        long long s = 0;
        for (int j = 0; j < p; ++j) s += (long long)a[j] * m[j];
        return imod(s, int(n));
    }
};

inline WBasis build_w_basis(const ContinuedFraction& cf, const CurveParams& curve, int box = 12) {
    WBasis wb;
    wb.cf = cf;
    wb.curve = curve;
    wb.box = box;
    wb.n = cf.n;
    wb.k = cf.k;
    wb.p = int(cf.length());
    const int p = wb.p, n = int(cf.n);
    for (int j = 0; j < p; ++j) wb.m.push_back(cf.d(j + 1, p));
    for (int j = 0; j < p; ++j) wb.lpre.push_back(cf.d(0, j + 1));

    // Lattice of exponent moves: column nu is n_nu e_nu - e_{nu-1} - e_{nu+1}.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(p, p);
    for (int nu = 0; nu < p; ++nu) {
        M(nu, nu) = double(cf.terms[nu]);
        if (nu > 0) M(nu - 1, nu) = -1.0;
        if (nu + 1 < p) M(nu + 1, nu) = -1.0;
    }
    Eigen::MatrixXd Minv = M.inverse();

    // Coefficient step along lattice column nu, in log form:
    // multiplying factor (-1)^{n_nu} e^{2 pi i (beta_nu + 1 - delta_{nu,0}) tau}.
    auto step_logfac = [&](const std::vector<int>& beta, int nu) -> cx {
        int delta = (nu == 0) ? 1 : 0;
        return cx(0.0, kPi) * double(cf.terms[nu]) +
               cx(0.0, 2.0 * kPi) * (double(beta[nu] + 1 - delta)) * curve.tau;
    };

    auto logcoeff = [&](const std::vector<int>& alpha, const std::vector<int>& rep) -> cx {
        Eigen::VectorXd diff(p);
        for (int j = 0; j < p; ++j) diff(j) = double(alpha[j] - rep[j]);
        Eigen::VectorXd t = Minv * diff;
        std::vector<long long> ti(p);
        for (int j = 0; j < p; ++j) {
            ti[j] = std::llround(t(j));
            if (std::abs(t(j) - double(ti[j])) > 1e-6)
                throw BoxTooSmall("exponent not in the lattice class");
        }
        std::vector<int> cur = rep;
        cx logf = 0.0;
        for (int nu = 0; nu < p; ++nu) {
            while (ti[nu] > 0) {
                logf += step_logfac(cur, nu);
                for (int j = 0; j < p; ++j) cur[j] += int(M(j, nu));
                --ti[nu];
            }
            while (ti[nu] < 0) {
                for (int j = 0; j < p; ++j) cur[j] -= int(M(j, nu));
                logf -= step_logfac(cur, nu);
                ++ti[nu];
            }
        }
        return logf;
    };

    // Enumerate the exponent box, split by class, pick the minimal-norm
    // (then lexicographically smallest) representative per class and expand
    // every other coefficient from it.
    std::vector<std::vector<std::vector<int>>> classes(n);
    std::vector<int> pt(p, -box);
    for (;;) {
        long long s = 0;
        for (int j = 0; j < p; ++j) s += (long long)pt[j] * wb.m[j];
        classes[imod(s, n)].push_back(pt);
        int j = p - 1;
        while (j >= 0 && pt[j] == box) pt[j--] = -box;
        if (j < 0) break;
        ++pt[j];
    }
    wb.modes_.resize(n);
    for (int c = 0; c < n; ++c) {
        if (classes[c].empty()) throw BoxTooSmall("empty exponent class");
        auto key = [](const std::vector<int>& a) {
            long long nrm = 0;
            for (int x : a) nrm += (long long)x * x;
            return nrm;
        };
        std::vector<int> rep = *std::min_element(
            classes[c].begin(), classes[c].end(), [&](const auto& a, const auto& b) {
                long long ka = key(a), kb = key(b);
                return ka != kb ? ka < kb : a < b;
            });
        std::vector<std::pair<std::vector<int>, cx>> logs;
        double mx = -1e300;
        for (const auto& a : classes[c]) {
            cx lg = logcoeff(a, rep);
            mx = std::max(mx, lg.real());
            logs.emplace_back(a, lg);
        }
        for (auto& [a, lg] : logs) {
            if (lg.real() - mx < -700.0) continue;
            WBasis::Mode md;
            md.a = a;
            md.coeff = std::exp(lg - mx);
            wb.modes_[c].push_back(std::move(md));
        }
    }

    // Close the tau-translation cycle: applying it n times to class 0 must
    // come back with multiplier 1; the phase phi absorbs the discrepancy.
    cvec zstar(p);
    for (int j = 0; j < p; ++j) zstar[j] = cx(0.111, 0.071 * (j + 1));
    cvec rtau = wb.suffix_shift(1.0);
    auto chain = [&](cx phi) {
        std::vector<cx> cal{1.0};
        for (int a = 0; a < n; ++a) {
            cvec zs(p);
            for (int j = 0; j < p; ++j) zs[j] = zstar[j] + rtau[j] * curve.tau;
            cx tf = e2pi(zstar[0] + phi) * wb.eval_class(imod(wb.k * a, n), zs);
            cal.push_back(cal.back() * tf / wb.eval_class(imod(wb.k * (a + 1), n), zstar));
        }
        return cal;
    };
    wb.cal_.assign(n, 1.0);
    auto cal0 = chain(0.0);
    cx mu = cal0[n] / cal0[0];
    wb.phi = -std::log(mu) / (cx(0.0, 2.0 * kPi) * double(n));
    auto cal = chain(wb.phi);
    cal.pop_back();
    wb.cal_ = cal;
    return wb;
}

// Per-variable defining quasi-periodicity: with M_nu the lattice move
// n_nu e_nu - e_{nu-1} - e_{nu+1},
//   f(z + tau e_nu) = (-1)^{n_nu} e^{-2 pi i (1 - delta_{nu,0}) tau}
//                     e^{-2 pi i (M_nu . z)} f(z)
// holds for every class function.  This is the independent oracle for the
// Fourier build (it fails when the box truncation is too small).
inline double w_quasiperiodicity_residual(const WBasis& wb, int alpha, int nu, const cvec& z) {
    const int p = wb.p;
    cvec zs(z);
    zs[nu] += wb.curve.tau;
    cx mdotz = double(wb.cf.terms[nu]) * z[nu];
    if (nu > 0) mdotz -= z[nu - 1];
    if (nu + 1 < p) mdotz -= z[nu + 1];
    double sgn = (wb.cf.terms[nu] & 1) ? -1.0 : 1.0;
    cx pred = sgn * e2pi(-double(nu == 0 ? 0 : 1) * wb.curve.tau) * e2pi(-mdotz) * wb.w(alpha, z);
    cx got = wb.w(alpha, zs);
    return std::abs(got - pred) / std::max(std::abs(got), std::abs(pred));
}

// Builder with a truncation-adequacy gate: grows the box until the defining
// quasi-periodicity holds at a probe point.
inline WBasis build_w_basis_checked(const ContinuedFraction& cf, const CurveParams& curve,
                                    int box = 12, double tol = 1e-9) {
    for (int b = box; b <= box + 12; b += 4) {
        WBasis wb = build_w_basis(cf, curve, b);
        cvec z(wb.p);
        for (int j = 0; j < wb.p; ++j) z[j] = cx(0.137 + 0.05 * j, -0.061 + 0.04 * j);
        double worst = 0.0;
        for (int nu = 0; nu < wb.p; ++nu)
            worst = std::max(worst, w_quasiperiodicity_residual(wb, 1 % int(wb.n), nu, z));
        if (worst < tol) return wb;
    }
    throw BoxTooSmall("quasi-periodicity residual does not converge with box growth");
}

// tau/n translation on a w-type function: multiplies by the exponential weight
// and shifts every variable by (m_j/n) tau.  Sends w_alpha to w_{alpha+1}.
inline cx op_w_Ttau(const WBasis& wb, long long alpha, const cvec& z) {
    cvec zs(z);
    cvec r = wb.suffix_shift(1.0);
    for (int j = 0; j < wb.p; ++j) zs[j] += r[j] * wb.curve.tau;
    return e2pi(z[0] + wb.phi) * wb.w(alpha, zs);
}

// ---- exchange identities ---------------------------------------------------

// Residual of the 2(p+1)-point exchange identity between two w functions with
// spectral parameters u, v; the engine behind the quadratic algebra relations.
inline double w_identity_general_residual(const WBasis& wb, cx eta, long long alpha,
                                          long long beta, cx u, cx v, const cvec& y,
                                          const cvec& z) {
    const int p = wb.p, n = int(wb.n);
    const CurveParams& c = wb.curve;
    auto th1 = [&](cx x) { return theta1(x, c); };
    auto thn = [&](long long a, cx x) { return theta_alpha(imod(a, n), x, n, c); };
    cvec mu(p), mv(p), l(p);
    for (int j = 0; j < p; ++j) {
        mu[j] = double(wb.m[j]) * u;
        mv[j] = double(wb.m[j]) * v;
        l[j] = double(j == 0 ? 1 : wb.lpre[j - 1]) * eta;
    }
    auto add = [&](const cvec& a, const cvec& b) {
        cvec out(p);
        for (int j = 0; j < p; ++j) out[j] = a[j] + b[j];
        return out;
    };
    auto splice = [&](const cvec& head, const cvec& tail, int t) {
        cvec out(p);
        for (int j = 0; j < t; ++j) out[j] = head[j];
        for (int j = t; j < p; ++j) out[j] = tail[j];
        return out;
    };
    double mx = 0.0;
    cx lhs = 0.0;
    {
        cx t0 = th1(y[0] - z[0] + double(n) * (v - u)) /
                (th1(double(n) * (v - u)) * th1(y[0] - z[0])) * wb.w(alpha, add(y, mu)) *
                wb.w(beta, add(add(z, mv), l));
        lhs += t0;
        mx = std::max(mx, std::abs(t0));
    }
    for (int t = 1; t < p; ++t) {
        cx tt = th1(z[t - 1] - y[t - 1] + y[t] - z[t]) /
                (th1(z[t - 1] - y[t - 1]) * th1(y[t] - z[t])) *
                wb.w(alpha, add(splice(z, y, t), mu)) *
                wb.w(beta, add(add(splice(y, z, t), mv), l));
        lhs += tt;
        mx = std::max(mx, std::abs(tt));
    }
    {
        cx tp = th1(z[p - 1] - y[p - 1] + double(n) * eta) /
                (th1(z[p - 1] - y[p - 1]) * th1(double(n) * eta)) * wb.w(alpha, add(z, mu)) *
                wb.w(beta, add(add(y, mv), l));
        lhs += tp;
        mx = std::max(mx, std::abs(tp));
    }
    cx rhs = 0.0;
    for (int r = 0; r < n; ++r)
        rhs += thn(beta - alpha + r * (wb.k - 1), v - u + eta) /
               (thn(r * wb.k, eta) * thn(beta - alpha - r, v - u)) *
               wb.w(beta - r, add(y, mv)) * wb.w(alpha + r, add(add(z, mu), l));
    rhs *= theta_const_prefactor(n, c);
    mx = std::max(mx, std::abs(rhs));
    return std::abs(lhs - rhs) / std::max(1.0, mx);
}

// Specialized form (spectral parameters collapsed to eta); this is the scalar
// identity certifying the dynamical-coefficient exchange relations.
inline double w_identity_special_residual(const WBasis& wb, cx eta, long long alpha,
                                          long long beta, const cvec& y, const cvec& z) {
    const int p = wb.p, n = int(wb.n);
    const CurveParams& c = wb.curve;
    auto th1 = [&](cx x) { return theta1(x, c); };
    auto thn = [&](long long a, cx x) { return theta_alpha(imod(a, n), x, n, c); };
    cvec me(p), l(p);
    for (int j = 0; j < p; ++j) {
        me[j] = double(wb.m[j]) * eta;
        l[j] = double(j == 0 ? 1 : wb.lpre[j - 1]) * eta;
    }
    auto add = [&](const cvec& a, const cvec& b) {
        cvec out(p);
        for (int j = 0; j < p; ++j) out[j] = a[j] + b[j];
        return out;
    };
    auto splice = [&](const cvec& head, const cvec& tail, int t) {
        cvec out(p);
        for (int j = 0; j < t; ++j) out[j] = head[j];
        for (int j = t; j < p; ++j) out[j] = tail[j];
        return out;
    };
    double mx = 0.0;
    cx lhs = 0.0;
    {
        cx t0 = th1(y[0] - z[0] - double(n) * eta) / (th1(-double(n) * eta) * th1(y[0] - z[0])) *
                wb.w(alpha, add(y, me)) * wb.w(beta, add(z, l));
        lhs += t0;
        mx = std::max(mx, std::abs(t0));
    }
    for (int t = 1; t < p; ++t) {
        cx tt = th1(z[t - 1] - y[t - 1] + y[t] - z[t]) /
                (th1(z[t - 1] - y[t - 1]) * th1(y[t] - z[t])) *
                wb.w(alpha, add(splice(z, y, t), me)) * wb.w(beta, add(splice(y, z, t), l));
        lhs += tt;
        mx = std::max(mx, std::abs(tt));
    }
    {
        cx tp = th1(z[p - 1] - y[p - 1] + double(n) * eta) /
                (th1(z[p - 1] - y[p - 1]) * th1(double(n) * eta)) * wb.w(alpha, add(z, me)) *
                wb.w(beta, add(y, l));
        lhs += tp;
        mx = std::max(mx, std::abs(tp));
    }
    cx rhs = 0.0;
    for (int r = 0; r < n; ++r)
        rhs += thn(beta - alpha + r * (wb.k - 1), 0.0) /
               (thn(r * wb.k, eta) * thn(beta - alpha - r, -eta)) * wb.w(beta - r, y) *
               wb.w(alpha + r, add(add(z, me), l));
    rhs *= theta_const_prefactor(n, c);
    mx = std::max(mx, std::abs(rhs));
    return std::abs(lhs - rhs) / std::max(1.0, mx);
}

// ---- duality pairing -------------------------------------------------------

struct DeltaReport {
    DualityData duality;
    cx root_gauge = 1.0;          // exact n-th root of unity between the two bases
    double fit_residual = 0.0;    // least-squares defect of the rank-one expansion
    double ratio_spread = 0.0;    // relative std of the pairing constant
    double translation_residual = 0.0;
    double off_pairing = 0.0;     // largest spectral bin outside the allowed diagonal
};

// Product-form canonical pairing of the n/k and n/(n-k) spaces.
inline cx delta_product(const ContinuedFraction& f, const ContinuedFraction& fd,
                        const CurveParams& c, const cvec& z, const cvec& zp) {
    const int p = int(f.length()), pp = int(fd.length());
    cx D = e2pi(zp[0]) * theta1(z[0] - zp[0], c) * theta1(z[p - 1] + zp[pp - 1], c);
    long long acc = 0;
    for (int a = 1; a < pp; ++a) {
        acc = 0;
        for (int j = 0; j < a; ++j) acc += fd.terms[j];
        long long idx = acc - 2 * a + 1;  // 1-based into z
        D *= theta1(zp[a - 1] - zp[a] + z[idx - 1], c);
    }
    for (int b = 1; b < p; ++b) {
        acc = 0;
        for (int j = 0; j < b; ++j) acc += f.terms[j];
        long long idx = acc - 2 * b + 1;  // 1-based into zp
        D *= theta1(z[b - 1] - z[b] + zp[idx - 1], c);
    }
    return D;
}

inline DeltaReport delta_pairing(const WBasis& wb, const WBasis& wbd, int samples, Rng& rng) {
    const int n = int(wb.n), p = wb.p, pp = wbd.p;
    const CurveParams& c = wb.curve;
    DeltaReport rep;
    rep.duality = dual_fraction(wb.cf);

    auto draw = [&](int cnt) {
        cvec z(cnt);
        for (auto& x : z) x = rng.box(0.25);
        return z;
    };

    // Stage 1: identify the per-index gauge between the two independently
    // normalized bases by a least-squares fit of the product form against the
    // n candidate diagonal products.
    int S = 4 * n;
    Mat A(S, n);
    Vec b(S);
    for (int s = 0; s < S; ++s) {
        cvec z = draw(p), zp = draw(pp);
        for (int a = 0; a < n; ++a) A(s, a) = wb.w(a, z) * wbd.w(imod(1 - a, n), zp);
        b(s) = delta_product(wb.cf, wbd.cf, c, z, zp);
    }
    Vec sol = lstsq(A, b);
    rep.fit_residual = (A * sol - b).norm() / b.norm();
    // consecutive coefficient ratios must be one common n-th root of unity
    cx zeta_raw = 0.0;
    for (int a = 0; a < n; ++a) zeta_raw += sol(imod(a + 1, n)) / sol(a);
    zeta_raw /= double(n);
    double ang = std::arg(zeta_raw) / (2.0 * kPi);
    int root = imod(std::llround(ang * n), n);
    rep.root_gauge = e2pi(cx(double(root) / n));

    auto pairing = [&](const cvec& z, const cvec& zp) {
        cx acc = 0.0;
        cx zp_pow = 1.0;
        for (int a = 0; a < n; ++a) {
            acc += zp_pow * wb.w(a, z) * wbd.w(imod(1 - a, n), zp);
            zp_pow *= rep.root_gauge;
        }
        return acc;
    };

    // Stage 2: the pairing constant as a pointwise ratio; constancy is the check.
    std::vector<cx> ratios;
    for (int s = 0; s < samples; ++s) {
        cvec z = draw(p), zp = draw(pp);
        cx P = pairing(z, zp);
        if (std::abs(P) < 1e-12) continue;
        ratios.push_back(delta_product(wb.cf, wbd.cf, c, z, zp) / P);
    }
    cx mean = 0.0;
    for (cx r : ratios) mean += r;
    mean /= double(ratios.size());
    double var = 0.0;
    for (cx r : ratios) var += std::norm(r - mean);
    rep.duality.pairing_constant = mean;
    rep.ratio_spread = std::sqrt(var / double(ratios.size())) / std::abs(mean);
    rep.duality.pairing_spread = rep.ratio_spread;

    // Stage 3: translation eigenrelation along the tau directions.
    {
        cvec z = draw(p), zp = draw(pp);
        cvec r1 = wb.prefix_shift(1.0), r2 = wbd.prefix_shift(1.0);
        cvec zt(p), zpt(pp);
        for (int j = 0; j < p; ++j) zt[j] = z[j] + r1[j] * c.tau;
        for (int j = 0; j < pp; ++j) zpt[j] = zp[j] + r2[j] * c.tau;
        cx lhs = delta_product(wb.cf, wbd.cf, c, zt, zpt);
        cx rhs = e2pi(c.tau / double(n) - z[p - 1] - zp[pp - 1]) *
                 delta_product(wb.cf, wbd.cf, c, z, zp);
        rep.translation_residual = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
    }

    // Stage 4: spectral bins of the pairing under the two 1/n-translations;
    // everything off the allowed diagonal must vanish.
    {
        cvec z = draw(p), zp = draw(pp);
        cvec r1 = wb.prefix_shift(1.0), r2 = wbd.prefix_shift(1.0);
        std::vector<std::vector<cx>> g(n, std::vector<cx>(n));
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) {
                cvec zs(p), zps(pp);
                for (int j = 0; j < p; ++j) zs[j] = z[j] + double(s) * r1[j];
                for (int j = 0; j < pp; ++j) zps[j] = zp[j] + double(t) * r2[j];
                g[s][t] = delta_product(wb.cf, wbd.cf, c, zs, zps);
            }
        double mxbin = 0.0, off = 0.0;
        std::vector<std::vector<double>> bins(n, std::vector<double>(n));
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb) {
                cx acc = 0.0;
                for (int s = 0; s < n; ++s)
                    for (int t = 0; t < n; ++t)
                        acc += g[s][t] * e2pi(-cx(double(a * s + bb * t) / n));
                bins[a][bb] = std::abs(acc) / double(n * n);
                mxbin = std::max(mxbin, bins[a][bb]);
            }
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
                if (imod(a + bb, n) != 1) off = std::max(off, bins[a][bb]);
        rep.off_pairing = off / mxbin;
    }
    return rep;
}

}  // namespace ell
