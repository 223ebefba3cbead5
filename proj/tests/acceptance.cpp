// Acceptance driver: runs the full verification suite once and reports one
// pass/fail line per acceptance criterion.  Exits nonzero if any criterion
// fails or if a check cannot be classified.

#include <cstdio>
#include <string>
#include <vector>

#include "elliptica/suite.hpp"

namespace {

struct Criterion {
    int id;
    const char* title;
    std::vector<std::string> prefixes;
    bool seen = false;
    bool pass = true;
};

bool has_prefix(const std::string& s, const std::string& p) {
    return s.compare(0, p.size(), p) == 0;
}

}  // namespace

int main() {
    using namespace ell;

    RunConfig cfg;
    cfg.seed = 20260823ULL;

    VerificationReport rep;
    rep.seed = cfg.seed;
    run_suites(rep, cfg);

    std::vector<Criterion> crit = {
        {1,
         "theta evaluation, quasi-periodicity and translation structure",
         {"theta.series-product", "theta.antisymmetry", "theta.quasi-periodicity",
          "theta.nc-basis", "theta.rank", "theta.translation-commutation"}},
        {2,
         "theta identities in one and several variables",
         {"theta.identity-", "wbasis.identity-"}},
        {3,
         "flat graded dimensions for the algebra presentations",
         {"algebra.pbw-", "algebra.relation-rank", "algebra.eta-limit", "algebra.q3-"}},
        {4, "central elements and their degenerations", {"algebra.center-"}},
        {5, "R-matrix identities, determinant and kernel", {"rmatrix."}},
        {6,
         "functional realizations, products and module actions",
         {"modules.functional-", "modules.linear", "modules.bosonization", "modules.q3-",
          "algebra.functional-", "algebra.qn-"}},
        {7, "exchange relations and algebra homomorphisms", {"modules.exchange-"}},
        {8,
         "continued fractions, dual bases and the bilinear pairing",
         {"cf.", "duality.", "wbasis.translation", "wbasis.k1-match"}},
        {9, "Poisson brackets, Casimirs and semiclassical limits", {"poisson."}},
    };

    int unclassified = 0;
    for (const auto& c : rep.checks) {
        bool hit = false;
        for (auto& cr : crit) {
            for (const auto& p : cr.prefixes) {
                if (has_prefix(c.anchor, p)) {
                    cr.seen = true;
                    cr.pass = cr.pass && c.pass;
                    hit = true;
                    break;
                }
            }
            if (hit) break;
        }
        if (!hit) {
            std::fprintf(stderr, "unclassified check: %s\n", c.anchor.c_str());
            ++unclassified;
        }
    }

    int failures = unclassified;
    for (auto& cr : crit) {
        bool ok = cr.seen && cr.pass;
        std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", cr.id, cr.title);
        if (!ok) ++failures;
    }
    for (const auto& c : rep.checks)
        if (!c.pass)
            std::fprintf(stderr, "failed check: %s residual=%.3e tol=%.3e\n", c.anchor.c_str(),
                         c.residual, c.tolerance);

    // Criterion 10: the report must be a pure function of (config, seed).
    {
        VerificationReport a, b;
        a.seed = b.seed = cfg.seed;
        suite_theta(a, cfg);
        suite_poisson(a, cfg);
        suite_theta(b, cfg);
        suite_poisson(b, cfg);
        bool ok = a.to_json().dump(2) == b.to_json().dump(2);
        std::printf("%s criterion 10: byte-identical reports for identical config and seed\n",
                    ok ? "PASS" : "FAIL");
        if (!ok) ++failures;
    }

    return failures == 0 ? 0 : 1;
}
