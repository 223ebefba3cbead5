#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "suite_helpers.hpp"

using namespace ell;

TEST_CASE("R-matrix suite passes") {
    VerificationReport rep;
    RunConfig cfg = test_config();
    rep.seed = cfg.seed;
    suite_rmatrix(rep, cfg);
    CHECK(report_ok(rep));
}

TEST_CASE("n=1 R-matrix is the scalar identity after normalization") {
    CurveParams c;
    Mat R = belavin_r(1, 1, cx(0.13, 0.07), cx(0.21, -0.05), c);
    CHECK(R.rows() == 1);
    CHECK(std::abs(R(0, 0) - cx(1.0)) < 1e-12);
}
