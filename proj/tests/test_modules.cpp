#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suite_helpers.hpp"

TEST_CASE("module and homomorphism suite passes") {
    ell::VerificationReport rep;
    ell::RunConfig cfg = test_config();
    rep.seed = cfg.seed;
    ell::WCache cache;
    ell::suite_modules(rep, cfg, cache);
    CHECK(report_ok(rep));
}
