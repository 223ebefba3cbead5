#pragma once
// The full verification suite, shared by the CLI driver and the acceptance
// binary.  Every check appends one CheckRecord; checks draw their randomness
// from per-check derived streams so ordering and parallelism never matter.

#include <numeric>
#include <set>

#include "elliptica/modules.hpp"
#include "elliptica/poisson.hpp"
#include "elliptica/report.hpp"
#include "elliptica/rmatrix.hpp"

namespace ell {

struct RunConfig {
    CurveParams curve;
    cx eta{0.13, 0.07};
    int n = 3, k = 1;
    int box = 12;
    int alphamax = 4;
    double tol_override = 0.0;  // > 0 replaces every default tolerance
    int samples_override = 0;   // > 0 replaces every default sample count
    std::uint64_t seed = 1;
};

inline double ctol(const RunConfig& c, double def) {
    return c.tol_override > 0.0 ? c.tol_override : def;
}
inline int csamples(const RunConfig& c, int def) {
    return c.samples_override > 0 ? c.samples_override : def;
}

// Cache of multivariate bases: these are the expensive objects.
struct WCache {
    std::map<std::pair<int, int>, WBasis> store;

    const WBasis& get(int n, int k, const RunConfig& cfg) {
        auto key = std::make_pair(n, k);
        auto it = store.find(key);
        if (it == store.end())
            it = store.emplace(key, build_w_basis_checked(continued_fraction(n, k), cfg.curve,
                                                          cfg.box))
                     .first;
        return it->second;
    }
};

inline ojson params_nk(int n, int k, const RunConfig& cfg) {
    ojson p;
    p["n"] = n;
    p["k"] = k;
    p["tau"] = json_complex(cfg.curve.tau);
    p["eta"] = json_complex(cfg.eta);
    return p;
}

// ---- elliptic-core ---------------------------------------------------------

inline void suite_theta(VerificationReport& rep, const RunConfig& cfg) {
    const CurveParams& c = cfg.curve;
    ojson base;
    base["tau"] = json_complex(c.tau);

    run_check(rep, "series vs product evaluation of theta", "theta.series-product", base,
              ctol(cfg, 1e-10), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 100); ++s) {
                      cx z(rng.uniform(-1.0, 1.0), rng.uniform(-c.tau.imag(), c.tau.imag()));
                      cx a = theta1(z, c), b = theta1_product(z, c);
                      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
                  }
                  return worst;
              });

    run_check(rep, "theta antisymmetry and zero at the origin", "theta.antisymmetry", base,
              ctol(cfg, 1e-10), cfg.seed, [&](Rng& rng) {
                  double worst = std::abs(theta1(0.0, c));
                  for (int s = 0; s < csamples(cfg, 50); ++s) {
                      cx z = rng.box(0.45);
                      cx r = theta1(-z, c) + e2pi(-z) * theta1(z, c);
                      worst = std::max(worst, std::abs(r) / std::max(1.0, std::abs(theta1(z, c))));
                  }
                  return worst;
              });

    run_check(rep, "quasi-periodicity of the order-n theta basis", "theta.quasi-periodicity",
              base, ctol(cfg, 1e-9), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n = 1; n <= 8; ++n) {
                      cx cc = double(n - 1) / 2.0;
                      for (int s = 0; s < csamples(cfg, 100); ++s) {
                          cx z = rng.box(0.45);
                          for (int a = 0; a < n; ++a) {
                              cx f = theta_alpha(a, z, n, c);
                              cx f1 = theta_alpha(a, z + 1.0, n, c);
                              double sgn = (n & 1) ? -1.0 : 1.0;
                              cx ft = theta_alpha(a, z + c.tau, n, c);
                              cx pr = sgn * e2pi(-(double(n) * z - cc)) * f;
                              double sc = std::max(1.0, std::abs(f));
                              worst = std::max(worst, std::abs(f1 - f) / sc);
                              worst = std::max(worst,
                                               std::abs(ft - pr) / std::max(sc, std::abs(pr)));
                          }
                      }
                  }
                  return worst;
              });

    run_check(rep, "defining multipliers of the shifted basis", "theta.nc-basis", base,
              ctol(cfg, 1e-9), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n = 1; n <= 8; ++n) {
                      cx cc = rng.box(0.5);
                      ThetaBasis b = theta_nc_basis(n, cc, c);
                      for (int s = 0; s < csamples(cfg, 20); ++s) {
                          cx z = rng.box(0.45);
                          for (int a = 0; a < n; ++a) {
                              cx f = b(a, z);
                              double sgn = (n & 1) ? -1.0 : 1.0;
                              cx pr = sgn * e2pi(-(double(n) * z - cc)) * f;
                              double sc = std::max(1.0, std::abs(f));
                              worst = std::max(worst, std::abs(b(a, z + 1.0) - f) / sc);
                              worst = std::max(worst, std::abs(b(a, z + c.tau) - pr) /
                                                          std::max(sc, std::abs(pr)));
                          }
                      }
                  }
                  return worst;
              });

    run_check(rep, "numerical dimension of the theta space", "theta.rank", base, 0.5, cfg.seed,
              [&](Rng& rng) {
                  for (int n = 2; n <= 8; ++n) {
                      Mat M(n, n);
                      for (int j = 0; j < n; ++j) {
                          cx z = rng.box(0.45);
                          for (int a = 0; a < n; ++a) M(a, j) = theta_alpha(a, z, n, c);
                      }
                      if (colspace(M).rank != n) return 1.0;
                  }
                  return 0.0;
              });

    run_check(rep, "translation operator commutation", "theta.translation-commutation", base,
              ctol(cfg, 1e-9), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n : {1, 2, 5, 8}) {
                      for (int s = 0; s < csamples(cfg, 50); ++s) {
                          cx z = rng.box(0.4);
                          for (int a = 0; a < n; ++a) {
                              auto f = [&](cx w) { return theta_alpha(a, w, n, c); };
                              auto tf = [&](cx w) { return op_Ttau(f, n, c, w); };
                              auto t1f = [&](cx w) { return op_T1n(f, n, w); };
                              cx lhs = op_T1n(tf, n, z);
                              cx rhs = e2pi(cx(1.0 / n)) * op_Ttau(t1f, n, c, z);
                              worst = std::max(worst, std::abs(lhs - rhs) /
                                                          std::max(1.0, std::abs(rhs)));
                          }
                      }
                  }
                  return worst;
              });

    run_check(rep, "theta(nz) factorization identity", "theta.identity-nz", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n = 2; n <= 5; ++n)
                      for (int s = 0; s < csamples(cfg, 100); ++s)
                          worst = std::max(worst, identity_nz_residual(n, rng.box(0.4), c));
                  return worst;
              });

    run_check(rep, "three-term quadratic identity on the cubic basis",
              "theta.identity-threeterm", base, ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 100); ++s)
                      worst = std::max(worst, identity_threeterm_residual(rng.integer(0, 2),
                                                                          rng.box(0.35),
                                                                          rng.box(0.35), c));
                  return worst;
              });

    run_check(rep, "two-point addition identity", "theta.identity-addition", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n = 2; n <= 5; ++n)
                      for (int s = 0; s < csamples(cfg, 100); ++s) {
                          auto dens = [&](cx, cx y, cx z, cx u, cx v, cx eta) {
                              return std::min({std::abs(theta1(y - z, c)),
                                               std::abs(theta1(double(n) * (v - u), c)),
                                               std::abs(theta1(double(n) * eta, c))});
                          };
                          cx y, z, u, v, eta;
                          int tries = 0;
                          do {
                              y = rng.box(0.35);
                              z = rng.box(0.35);
                              u = rng.box(0.35);
                              v = rng.box(0.35);
                              eta = rng.box(0.35);
                          } while (dens(0, y, z, u, v, eta) < 1e-3 && ++tries < 64);
                          worst = std::max(worst,
                                           identity_addition_residual(n, rng.integer(0, n - 1),
                                                                      rng.integer(0, n - 1), y,
                                                                      z, u, v, eta, c));
                      }
                  return worst;
              });

    run_check(rep, "exchange specialization identity", "theta.identity-exchange", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n = 2; n <= 5; ++n)
                      for (int s = 0; s < csamples(cfg, 100); ++s) {
                          cx y, z, eta;
                          int tries = 0;
                          do {
                              y = rng.box(0.35);
                              z = rng.box(0.35);
                              eta = rng.box(0.35);
                          } while ((std::abs(theta1(z - y, c)) < 1e-3 ||
                                    std::abs(theta1(double(n) * eta, c)) < 1e-3) &&
                                   ++tries < 64);
                          worst = std::max(worst, identity_exchange_residual(
                                                      n, rng.integer(0, n - 1),
                                                      rng.integer(0, n - 1), y, z, eta, c));
                      }
                  return worst;
              });
}

// ---- multitheta ------------------------------------------------------------

inline std::vector<std::pair<int, int>> coprime_pairs(int nmax) {
    std::vector<std::pair<int, int>> out;
    for (int n = 2; n <= nmax; ++n)
        for (int k = 1; k < n; ++k)
            if (std::gcd(n, k) == 1) out.emplace_back(n, k);
    return out;
}

inline const std::vector<std::pair<int, int>> kWPairs{{3, 1}, {4, 1}, {5, 2}, {5, 3}, {7, 3}};

inline void suite_multitheta(VerificationReport& rep, const RunConfig& cfg, WCache& cache) {
    ojson base;
    base["tau"] = json_complex(cfg.curve.tau);

    run_check(rep, "continued fraction exact reconstruction", "cf.exact", base, 0.5, cfg.seed,
              [&](Rng&) {
                  for (auto [n, k] : coprime_pairs(30)) {
                      ContinuedFraction f = continued_fraction(n, k);
                      for (long long t : f.terms)
                          if (t < 2) return 1.0;
                      auto [num, den] = cf_reconstruct(f.terms);
                      if (num != n || den != k) return 1.0;
                      if (f.d(0, f.length()) != n) return 1.0;
                      if (f.d(1, f.length()) != k) return 1.0;
                  }
                  return 0.0;
              });

    run_check(rep, "dual expansion combinatorics and involution", "cf.duality", base, 0.5,
              cfg.seed, [&](Rng&) {
                  for (auto [n, k] : coprime_pairs(30)) {
                      ContinuedFraction f = continued_fraction(n, k);
                      DualityData d = dual_fraction(f);  // throws on any rule violation
                      DualityData dd = dual_fraction(d.dual);
                      if (dd.dual.terms != f.terms) return 1.0;
                  }
                  return 0.0;
              });

    run_check(rep, "multivariate basis translation relations", "wbasis.translation", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : kWPairs) {
                      const WBasis& wb = cache.get(n, k, cfg);
                      cvec r1 = wb.suffix_shift(1.0 / double(n));
                      for (int s = 0; s < csamples(cfg, 10); ++s) {
                          cvec z(wb.p);
                          for (auto& x : z) x = rng.box(0.3);
                          for (int a = 0; a < n; ++a) {
                              cvec zs(z);
                              for (int j = 0; j < wb.p; ++j) zs[j] += r1[j];
                              cx lhs = wb.w(a, zs);
                              cx rhs = e2pi(cx(double(k) * a / n)) * wb.w(a, z);
                              worst = std::max(worst, std::abs(lhs - rhs) /
                                                          std::max(std::abs(lhs), std::abs(rhs)));
                              cx sh = op_w_Ttau(wb, a, z);
                              cx nx = wb.w(a + 1, z);
                              worst = std::max(worst, std::abs(sh - nx) /
                                                          std::max(std::abs(sh), std::abs(nx)));
                              for (int nu = 0; nu < wb.p; ++nu)
                                  worst = std::max(worst,
                                                   w_quasiperiodicity_residual(wb, a, nu, z));
                          }
                      }
                  }
                  return worst;
              });

    run_check(rep, "single-fraction basis matches the shifted theta basis", "wbasis.k1-match",
              base, ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n : {3, 4}) {
                      const WBasis& wb = cache.get(n, 1, cfg);
                      std::vector<cx> ratios;
                      for (int s = 0; s < csamples(cfg, 8); ++s) {
                          cvec z{rng.box(0.3)};
                          for (int a = 0; a < n; ++a) {
                              cx t = theta_alpha(a, z[0] + double(n - 1) / 2.0, n, cfg.curve);
                              ratios.push_back(wb.w(a, z) / t);
                          }
                      }
                      cx mean = 0.0;
                      for (cx r : ratios) mean += r;
                      mean /= double(ratios.size());
                      for (cx r : ratios)
                          worst = std::max(worst, std::abs(r - mean) / std::abs(mean));
                  }
                  return worst;
              });

    run_check(rep, "general multivariate exchange identity", "wbasis.identity-general", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : kWPairs) {
                      const WBasis& wb = cache.get(n, k, cfg);
                      for (int s = 0; s < csamples(cfg, 20); ++s) {
                          cvec y(wb.p), z(wb.p);
                          for (auto& x : y) x = rng.box(0.3);
                          for (auto& x : z) x = rng.box(0.3);
                          cx u = rng.box(0.2), v = rng.box(0.2);
                          worst = std::max(
                              worst, w_identity_general_residual(wb, cfg.eta,
                                                                 rng.integer(0, n - 1),
                                                                 rng.integer(0, n - 1), u, v, y,
                                                                 z));
                      }
                  }
                  return worst;
              });

    run_check(rep, "specialized multivariate exchange identity", "wbasis.identity-special",
              base, ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : kWPairs) {
                      const WBasis& wb = cache.get(n, k, cfg);
                      for (int s = 0; s < csamples(cfg, 20); ++s) {
                          cvec y(wb.p), z(wb.p);
                          for (auto& x : y) x = rng.box(0.3);
                          for (auto& x : z) x = rng.box(0.3);
                          worst = std::max(
                              worst, w_identity_special_residual(wb, cfg.eta,
                                                                 rng.integer(0, n - 1),
                                                                 rng.integer(0, n - 1), y, z));
                      }
                  }
                  return worst;
              });

    for (auto [n, k] : {std::pair{3, 1}, std::pair{5, 2}}) {
        ojson p = params_nk(n, k, cfg);
        const WBasis& wb = cache.get(n, k, cfg);
        const WBasis& wbd = cache.get(n, n - k, cfg);
        // Run the pairing once per pair, reuse for the three records.
        Rng rng(derive_seed(cfg.seed, "duality.pairing." + std::to_string(n) + "." +
                                          std::to_string(k)));
        DeltaReport dr = delta_pairing(wb, wbd, csamples(cfg, 50), rng);
        auto tag = [&](const std::string& a) {
            return a + "." + std::to_string(n) + "-" + std::to_string(k);
        };
        run_check(rep, "pairing constant ratio spread", tag("duality.pairing-constant"), p,
                  ctol(cfg, 1e-8), cfg.seed, [&](Rng&) { return dr.ratio_spread; });
        run_check(rep, "pairing translation eigenrelation", tag("duality.translation"), p,
                  ctol(cfg, 1e-8), cfg.seed, [&](Rng&) { return dr.translation_residual; });
        run_check(rep, "off-diagonal pairing coefficients vanish", tag("duality.off-pairing"),
                  p, ctol(cfg, 1e-8), cfg.seed, [&](Rng&) { return dr.off_pairing; });
    }
}

// ---- quad-algebra / elliptic-algebras --------------------------------------

inline void suite_algebra(VerificationReport& rep, const RunConfig& cfg) {
    const CurveParams& c = cfg.curve;
    ojson base;
    base["tau"] = json_complex(c.tau);

    run_check(rep, "elliptic algebras have polynomial graded dimensions", "algebra.pbw-elliptic",
              base, 0.5, cfg.seed, [&](Rng& rng) {
                  for (auto [n, k] : coprime_pairs(5)) {
                      for (int t = 0; t < 3; ++t) {
                          cx eta = rng.box(0.2);
                          if (std::abs(eta) < 2e-2) eta += cx(0.1, 0.05);
                          RelationSpace L = qnk_relations(n, k, eta, c);
                          GradedDimensionReport g = hilbert_dims(L, cfg.alphamax);
                          if (!g.all_pbw || g.min_gap < 1e3) return 1.0;
                      }
                  }
                  return 0.0;
              });

    run_check(rep, "relation count, rank, and pair-enumeration dedup", "algebra.relation-rank",
              base, ctol(cfg, 1e-8), cfg.seed, [&](Rng&) {
                  double worst = 0.0;
                  for (auto [n, k] : coprime_pairs(5)) {
                      RelationSpace L = qnk_relations(n, k, cfg.eta, c);
                      if (L.rows.rows() != n * (n - 1) / 2 || L.rank() != n * (n - 1) / 2)
                          return 1.0;
                      Mat unord = qnk_relation_span(n, k, cfg.eta, c);
                      Mat half = colspace(Mat(L.rows.transpose())).basis;
                      worst = std::max(worst, max_principal_angle(unord, half));
                  }
                  return worst;
              });

    run_check(rep, "commutative-limit relation span", "algebra.eta-limit", base, 1e-3, cfg.seed,
              [&](Rng&) {
                  double worst = 0.0;
                  for (auto [n, k] : coprime_pairs(4)) {
                      Mat span = qnk_relation_span(n, k, cx(1e-4, 0.0), c);
                      Mat anti =
                          colspace(Mat(antisymmetric_relations(n).rows.transpose())).basis;
                      worst = std::max(worst, max_principal_angle(span, anti));
                  }
                  return worst;
              });

    run_check(rep, "skew polynomial graded dimensions", "algebra.pbw-skew", base, 0.5, cfg.seed,
              [&](Rng& rng) {
                  int n = 3;
                  Mat q = Mat::Ones(n, n);
                  for (int i = 0; i < n; ++i)
                      for (int j = i + 1; j < n; ++j) {
                          q(i, j) = rng.box(0.8) + cx(1.2, 0.0);
                          q(j, i) = 1.0 / q(i, j);
                      }
                  GradedDimensionReport g = hilbert_dims(skew_polynomial_relations(q), 4);
                  return g.all_pbw ? 0.0 : 1.0;
              });

    run_check(rep, "Heisenberg projectivization graded dimensions", "algebra.pbw-heisenberg",
              base, 0.5, cfg.seed, [&](Rng&) {
                  GradedDimensionReport g = hilbert_dims(heisenberg_relations(), 4);
                  return g.all_pbw ? 0.0 : 1.0;
              });

    run_check(rep, "sl2 projectivization graded dimensions", "algebra.pbw-sl2", base, 0.5,
              cfg.seed, [&](Rng&) {
                  GradedDimensionReport g = hilbert_dims(sl2_relations(), 4);
                  return g.all_pbw ? 0.0 : 1.0;
              });

    run_check(rep, "four-generator quadratic family graded dimensions", "algebra.pbw-sklyanin",
              base, 0.5, cfg.seed, [&](Rng& rng) {
                  auto [J12, J23, J31] = random_sklyanin_J(rng);
                  GradedDimensionReport g = hilbert_dims(sklyanin_relations(J12, J23, J31), 4);
                  if (!g.all_pbw) return 1.0;
                  CentralElementReport ce =
                      central_elements(sklyanin_relations(J12, J23, J31), 2);
                  return ce.nullspace_dim == 2 ? 0.0 : 1.0;
              });

    run_check(rep, "ninth-root-of-unity algebra graded dimensions", "algebra.pbw-ogievetsky",
              base, 0.5, cfg.seed, [&](Rng&) {
                  GradedDimensionReport g = hilbert_dims(ogievetsky_relations(), 4);
                  return g.all_pbw ? 0.0 : 1.0;
              });

    run_check(rep, "cubic curve presentation invariants", "algebra.q3-cubic", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  Q3Data d = q3_from_curve(c, cfg.eta);
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 20); ++s) {
                      cx z = rng.box(0.35);
                      Vec x(3);
                      for (int a = 0; a < 3; ++a) x(a) = theta3_curve(a, z, c);
                      worst = std::max(worst, q3_cubic_residual(d.kpq, x));
                      for (int a = 0; a < 3; ++a) x(a) = theta_alpha(a, z, 3, c);
                      worst = std::max(worst, q3_cubic_residual(d.kpq, x));
                  }
                  return worst;
              });

    run_check(rep, "curve presentation matches elliptic rows", "algebra.q3-match", base,
              ctol(cfg, 1e-6), cfg.seed, [&](Rng&) { return q3_match_angle(c, cfg.eta); });

    run_check(rep, "cubic central element of the curve algebra", "algebra.center-q3", base,
              ctol(cfg, 1e-7), cfg.seed, [&](Rng&) {
                  Q3Data d = q3_from_curve(c, cfg.eta);
                  CentralElementReport ce = central_elements(d.rel, 3);
                  if (ce.nullspace_dim != 1) return 1.0;
                  double worst = 0.0;
                  for (double r : ce.residuals) worst = std::max(worst, r);
                  return worst;
              });

    run_check(rep, "small-parameter limit of the cubic central element",
              "algebra.center-q3-limit", base, ctol(cfg, 1e-2), cfg.seed, [&](Rng&) {
                  cx eta(1e-3, 0.0);
                  Q3Data d = q3_from_curve(c, eta);
                  CentralElementReport ce = central_elements(d.rel, 3);
                  if (ce.nullspace_dim != 1) return 1.0;
                  // canonical representative of x^3 + y^3 + z^3 + k xyz: the
                  // symmetrized coefficient tensor projected like the search space
                  Vec target = Vec::Zero(27);
                  for (int i = 0; i < 3; ++i) target(i * 9 + i * 3 + i) = 1.0;
                  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                  for (auto& pm : perms) target(pm[0] * 9 + pm[1] * 3 + pm[2]) = d.kpq / 6.0;
                  RankedBasis W3 = graded_span(d.rel, 3);
                  Vec tp = target - W3.basis * (W3.basis.adjoint() * target);
                  return fs_distance(tp, ce.basis.col(0));
              });

    run_check(rep, "quadratic central elements of the four-generator elliptic algebra",
              "algebra.center-q4", base, 0.5, cfg.seed, [&](Rng&) {
                  RelationSpace L = qnk_relations(4, 1, cfg.eta, c);
                  CentralElementReport ce = central_elements(L, 2);
                  if (ce.nullspace_dim != 2) return 1.0;
                  for (double r : ce.residuals)
                      if (r > 1e-7) return 1.0;
                  return 0.0;
              });

    run_check(rep, "shuffle product associativity", "algebra.functional-associativity", base,
              ctol(cfg, 1e-9), cfg.seed, [&](Rng& rng) {
                  cx q = rng.box(0.4) + cx(1.5, 0.0);
                  auto lam1 = [](cx, cx) { return cx(1.0); };
                  auto lamq = [q](cx x, cx y) { return (x - q * y) / (x - y); };
                  double worst = 0.0;
                  for (auto lam : {std::function<cx(cx, cx)>(lam1), std::function<cx(cx, cx)>(lamq)}) {
                      SymFun f, g, h;
                      f.arity = g.arity = h.arity = 1;
                      cx a = rng.box(0.5), b = rng.box(0.5), d = rng.box(0.5);
                      f.eval = [a](const std::vector<cx>& u) { return std::exp(a * u[0]); };
                      g.eval = [b](const std::vector<cx>& u) { return u[0] * u[0] + b; };
                      h.eval = [d](const std::vector<cx>& u) { return std::sin(u[0] + d); };
                      SymFun fg_h = functional_product(lam, functional_product(lam, f, g), h);
                      SymFun f_gh = functional_product(lam, f, functional_product(lam, g, h));
                      for (int s = 0; s < csamples(cfg, 10); ++s) {
                          std::vector<cx> u{rng.box(0.5), rng.box(0.5), rng.box(0.5)};
                          cx l = fg_h(u), r = f_gh(u);
                          worst = std::max(worst,
                                           std::abs(l - r) / std::max(std::abs(l), std::abs(r)));
                      }
                  }
                  return worst;
              });

    run_check(rep, "elliptic product at zero deformation is the plain product",
              "algebra.qn-product-limit", base, ctol(cfg, 1e-10), cfg.seed, [&](Rng& rng) {
                  int n = 3;
                  SymFun f = sym_from_theta(0, n, c), g = sym_from_theta(1, n, c);
                  SymFun pe = qn_product(f, g, n, c, 0.0);
                  auto lam1 = [](cx, cx) { return cx(1.0); };
                  SymFun pp = functional_product(lam1, f, g);
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 20); ++s) {
                      std::vector<cx> u{rng.box(0.4), rng.box(0.4)};
                      cx a = pe(u), b = pp(u);
                      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
                  }
                  return worst;
              });

    run_check(rep, "relation combinations annihilate the functional product",
              "algebra.qn-annihilation", base, ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n = 3; n <= 5; ++n)
                      for (int s = 0; s < csamples(cfg, 5); ++s)
                          worst = std::max(worst, qn_star_annihilation_residual(
                                                      n, cfg.eta, c, rng.box(0.3), rng.box(0.3)));
                  return worst;
              });

    run_check(rep, "elliptic product is regular on the diagonal", "algebra.qn-pole", base,
              ctol(cfg, 1e-2), cfg.seed, [&](Rng& rng) {
                  int n = 4;
                  SymFun f = sym_from_theta(1, n, c), g = sym_from_theta(2, n, c);
                  SymFun pr = qn_product(f, g, n, c, cfg.eta);
                  double worst = 0.0;
                  for (int dir = 0; dir < 10; ++dir) {
                      cx z = rng.box(0.3);
                      cx step = e2pi(cx(double(dir) / 10.0));
                      cx v1 = pr({z, z + 1e-3 * step});
                      cx v2 = pr({z, z + 1e-4 * step});
                      worst = std::max(worst,
                                       std::abs(v1 - v2) / std::max(1.0, std::abs(v1)));
                  }
                  return worst;
              });
}

// ---- rmatrix ---------------------------------------------------------------

inline void suite_rmatrix(VerificationReport& rep, const RunConfig& cfg) {
    const CurveParams& c = cfg.curve;
    ojson base;
    base["tau"] = json_complex(c.tau);
    base["eta"] = json_complex(cfg.eta);

    run_check(rep, "Yang-Baxter equation", "rmatrix.ybe", base, ctol(cfg, 1e-8), cfg.seed,
              [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : coprime_pairs(4))
                      for (int s = 0; s < csamples(cfg, 20); ++s) {
                          cx u = rng.box(0.3), v = rng.box(0.3), w = rng.box(0.3);
                          worst = std::max(worst, ybe_residual(n, k, cfg.eta, u, v, w, c));
                      }
                  return worst;
              });

    run_check(rep, "R-matrix unitarity", "rmatrix.unitarity", base, ctol(cfg, 1e-8), cfg.seed,
              [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : coprime_pairs(4))
                      for (int s = 0; s < csamples(cfg, 20); ++s)
                          worst = std::max(worst,
                                           unitarity_residual(n, k, cfg.eta, rng.box(0.3), c));
                  return worst;
              });

    run_check(rep, "R-matrix determinant identity", "rmatrix.determinant", base,
              ctol(cfg, 1e-7), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : coprime_pairs(4))
                      for (int s = 0; s < csamples(cfg, 10); ++s)
                          worst = std::max(worst,
                                           det_formula_residual(n, k, cfg.eta, rng.box(0.3), c));
                  return worst;
              });

    run_check(rep, "kernel dimension at the shift point", "rmatrix.kernel-dim", base, 0.5,
              cfg.seed, [&](Rng&) {
                  for (auto [n, k] : coprime_pairs(5)) {
                      KernelReport kr = kernel_at_minus_eta(n, k, cfg.eta, c);
                      if (kr.dim != n * (n - 1) / 2 || kr.gap < 1e3) return 1.0;
                  }
                  return 0.0;
              });

    run_check(rep, "kernel coincides with the quadratic relation span", "rmatrix.kernel-angle",
              base, ctol(cfg, 1e-7), cfg.seed, [&](Rng&) {
                  double worst = 0.0;
                  for (auto [n, k] : coprime_pairs(5))
                      worst = std::max(worst,
                                       kernel_at_minus_eta(n, k, cfg.eta, c).angle_to_relations);
                  return worst;
              });

    run_check(rep, "commutative-limit kernel", "rmatrix.kernel-limit", base, 1e-3, cfg.seed,
              [&](Rng&) {
                  KernelReport kr = kernel_at_minus_eta(3, 1, cx(1e-4, 0.0), c);
                  Mat anti = colspace(Mat(antisymmetric_relations(3).rows.transpose())).basis;
                  return max_principal_angle(kr.basis, anti);
              });
}

// ---- modules-reps ----------------------------------------------------------

inline void suite_modules(VerificationReport& rep, const RunConfig& cfg, WCache& cache) {
    const CurveParams& c = cfg.curve;
    ojson base;
    base["tau"] = json_complex(c.tau);
    base["eta"] = json_complex(cfg.eta);

    run_check(rep, "cubic curve module step is the shift automorphism", "modules.q3-step", base,
              ctol(cfg, 1e-6), cfg.seed, [&](Rng& rng) {
                  Q3Data d = q3_from_curve(c, cfg.eta);
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 5); ++s) {
                      cx u = rng.box(0.3);
                      Vec x(3), y(3);
                      for (int a = 0; a < 3; ++a) x(a) = theta3_curve(a, u, c);
                      Vec cur = x;
                      for (int st = 1; st <= 10; ++st) {
                          cur = q3_linear_module_step(d.p, d.q, cur);
                          worst = std::max(worst, q3_cubic_residual(d.kpq, cur));
                          for (int a = 0; a < 3; ++a)
                              y(a) = theta3_curve(a, u + double(st) * cfg.eta, c);
                          worst = std::max(worst, fs_distance(cur, y));
                      }
                  }
                  return worst;
              });

    run_check(rep, "near-zero shift makes the module step the identity",
              "modules.q3-step-limit", base, 1e-3, cfg.seed, [&](Rng& rng) {
                  cx eta(1e-4, 0.0);
                  Q3Data d = q3_from_curve(c, eta);
                  cx u = rng.box(0.3);
                  Vec x(3);
                  for (int a = 0; a < 3; ++a) x(a) = theta3_curve(a, u, c);
                  return fs_distance(x, q3_linear_module_step(d.p, d.q, x));
              });

    run_check(rep, "functional modules annihilate the relations",
              "modules.functional-annihilation", base, ctol(cfg, 1e-8), cfg.seed,
              [&](Rng& rng) {
                  double worst = 0.0;
                  for (int n : {3, 4, 5})
                      for (int p : {1, 2, 3})
                          worst = std::max(worst,
                                           functional_module_annihilation(n, p, cfg.eta, c, rng));
                  return worst;
              });

    run_check(rep, "one-point module coefficient specialization", "modules.functional-p1", base,
              ctol(cfg, 1e-12), cfg.seed, [&](Rng& rng) {
                  int n = 4;
                  auto f = [&](cx z) { return theta_alpha(2, z, n, c); };
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 10); ++s) {
                      FunctionalModuleState st{{rng.box(0.3)}, {rng.integer(0, 4)}};
                      cx got = functional_module_apply(n, c, cfg.eta, st, f)[0];
                      cx want = f(st.v[0] - double(n - 2) * double(st.alpha[0]) * cfg.eta);
                      worst = std::max(worst,
                                       std::abs(got - want) / std::max(1.0, std::abs(want)));
                  }
                  return worst;
              });

    run_check(rep, "degree-2 bosonization identity", "modules.bosonization", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, p] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 3}})
                      for (int s = 0; s < csamples(cfg, 5); ++s)
                          worst = std::max(worst, bosonization_deg2_residual(n, p, cfg.eta, c, rng));
                  return worst;
              });

    run_check(rep, "multivariate linear modules satisfy the relations", "modules.linear", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : {std::pair{3, 1}, std::pair{5, 2}, std::pair{5, 3},
                                      std::pair{7, 3}}) {
                      const WBasis& wb = cache.get(n, k, cfg);
                      for (int s = 0; s < csamples(cfg, 10); ++s)
                          worst = std::max(worst, qnk_linear_module_residual(wb, cfg.eta, rng));
                  }
                  return worst;
              });

    run_check(rep, "exchange coefficient identity", "modules.exchange-psi", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{5, 3}}) {
                      const WBasis& wb = cache.get(n, k, cfg);
                      for (int s = 0; s < csamples(cfg, 4); ++s)
                          worst = std::max(worst,
                                           exchange_coeff_identity_residual(wb, cfg.eta, rng));
                  }
                  return worst;
              });

    run_check(rep, "exchange algebra maps into the elliptic algebra",
              "modules.exchange-homomorphism", base, ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, k] : {std::pair{3, 2}, std::pair{5, 2}})
                      for (int s = 0; s < csamples(cfg, 10); ++s)
                          worst = std::max(worst, exchange_homomorphism_distance(n, k, cfg.eta,
                                                                                 c, rng, cfg.box));
                  return worst;
              });
}

// ---- poisson ---------------------------------------------------------------

inline void suite_poisson(VerificationReport& rep, const RunConfig& cfg) {
    const CurveParams& c = cfg.curve;
    ojson base;
    base["tau"] = json_complex(c.tau);

    run_check(rep, "cubic-surface bracket Jacobi identity", "poisson.jacobi", base,
              ctol(cfg, 1e-13), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 20); ++s) {
                      cx k = rng.box(1.0);
                      auto x = [](int i) { return PolynomialC3::variable(i); };
                      for (int i = 0; i < 3; ++i) {
                          int j = (i + 1) % 3, l = (i + 2) % 3;
                          PolynomialC3 jac =
                              bracket_c3(k, x(i), bracket_c3(k, x(j), x(l))) +
                              bracket_c3(k, x(j), bracket_c3(k, x(l), x(i))) +
                              bracket_c3(k, x(l), bracket_c3(k, x(i), x(j)));
                          worst = std::max(worst, jac.max_abs() / std::max(1.0, std::abs(k)));
                      }
                  }
                  return worst;
              });

    run_check(rep, "cubic-surface bracket Casimir", "poisson.casimir", base, ctol(cfg, 1e-13),
              cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 20); ++s) {
                      cx k = rng.box(1.0);
                      PolynomialC3 C = c3_casimir(k);
                      for (int i = 0; i < 3; ++i) {
                          PolynomialC3 b = bracket_c3(k, PolynomialC3::variable(i), C);
                          double sc = std::max(1.0, std::abs(k) * std::abs(k));
                          worst = std::max(worst, b.max_abs() / sc);
                      }
                  }
                  return worst;
              });

    run_check(rep, "derivative bracket antisymmetry", "poisson.antisymmetry", base,
              ctol(cfg, 1e-8), cfg.seed, [&](Rng& rng) {
                  int n = 4;
                  auto f = [&](cx z) { return theta_alpha(1, z, n, c); };
                  auto g = [&](cx z) { return theta_alpha(3, z, n, c); };
                  double worst = 0.0;
                  for (int s = 0; s < csamples(cfg, 10); ++s) {
                      cx z1 = rng.box(0.3), z2 = rng.box(0.3);
                      cx a = qn_bracket(f, g, n, c, z1, z2);
                      cx b = qn_bracket(g, f, n, c, z1, z2);
                      double sc = std::max(1.0, std::abs(a));
                      worst = std::max(worst, std::abs(a + b) / sc);
                      worst = std::max(worst, std::abs(qn_bracket(f, f, n, c, z1, z2)) / sc);
                  }
                  return worst;
              });

    run_check(rep, "coefficient homomorphism compatibility", "poisson.psi-p", base,
              ctol(cfg, 1e-4), cfg.seed, [&](Rng& rng) {
                  double worst = 0.0;
                  for (auto [n, p] : {std::pair{3, 1}, std::pair{5, 2}, std::pair{4, 2}})
                      for (int s = 0; s < csamples(cfg, 3); ++s)
                          worst = std::max(worst, psi_p_residual(n, p, c, rng));
                  return worst;
              });
}

inline void run_suites(VerificationReport& rep, const RunConfig& cfg,
                       const std::set<std::string>& only = {}) {
    WCache cache;
    auto want = [&](const std::string& s) { return only.empty() || only.count(s); };
    if (want("theta")) suite_theta(rep, cfg);
    if (want("multitheta") || want("cf")) suite_multitheta(rep, cfg, cache);
    if (want("algebra")) suite_algebra(rep, cfg);
    if (want("rmatrix")) suite_rmatrix(rep, cfg);
    if (want("modules")) suite_modules(rep, cfg, cache);
    if (want("poisson")) suite_poisson(rep, cfg);
}

}  // namespace ell
