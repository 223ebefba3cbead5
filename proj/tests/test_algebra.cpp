#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suite_helpers.hpp"

using namespace ell;

TEST_CASE("algebra suite passes") {
    VerificationReport rep;
    RunConfig cfg = test_config();
    rep.seed = cfg.seed;
    suite_algebra(rep, cfg);
    CHECK(report_ok(rep));
}

TEST_CASE("curve presentation constants match frozen values") {
    CurveParams c;
    // frozen from an independent 40-digit evaluation at eta = 0.17 + 0.08i
    Q3Data d = q3_from_curve(c, cx(0.17, 0.08));
    CHECK(std::abs(d.p - cx(-0.023285213314841337, 0.332809884555866562)) < 1e-12);
    CHECK(std::abs(d.q - cx(0.791164962255340555, -1.453417495268593643)) < 1e-12);
    CHECK(std::abs(d.kpq - cx(-8.115766947167244293, 5.837767495900539983)) < 1e-10);
}

TEST_CASE("degenerate parameters are rejected, not patched") {
    CurveParams c;
    CHECK_THROWS_AS(sklyanin_relations(cx(0.5, 0.0), cx(0.5, 0.0), cx(0.5, 0.0)),
                    ConstraintViolated);
    std::vector f(2, std::vector(2, std::vector<cx>(2, 0.0)));
    f[0][1][0] = 1.0;  // not antisymmetric against f[1][0][0] = 0
    CHECK_THROWS_AS(lie_projectivization_relations(f), InvalidStructureConstants);
}
