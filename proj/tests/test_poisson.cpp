#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suite_helpers.hpp"

TEST_CASE("Poisson suite passes") {
    ell::VerificationReport rep;
    ell::RunConfig cfg = test_config();
    rep.seed = cfg.seed;
    ell::suite_poisson(rep, cfg);
    CHECK(report_ok(rep));
}
