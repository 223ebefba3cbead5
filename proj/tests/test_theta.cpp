#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suite_helpers.hpp"

TEST_CASE("one-variable theta suite passes") {
    ell::VerificationReport rep;
    ell::RunConfig cfg = test_config();
    rep.seed = cfg.seed;
    ell::suite_theta(rep, cfg);
    CHECK(report_ok(rep));
}
