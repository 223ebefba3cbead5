#pragma once
// Shared helpers for the per-module test binaries.

#include <iostream>

#include "elliptica/suite.hpp"

inline ell::RunConfig test_config() {
    ell::RunConfig cfg;
    cfg.seed = 20260823ULL;
    return cfg;
}

inline bool report_ok(const ell::VerificationReport& rep) {
    for (const auto& c : rep.checks)
        if (!c.pass)
            std::cerr << "check failed: " << c.anchor << " residual=" << c.residual
                      << " tol=" << c.tolerance << "\n";
    return rep.all_pass();
}
