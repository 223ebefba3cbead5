#pragma once
// The universal check record and report aggregation, serialized to a stable
// JSON layout (schema 1, complex numbers as [re, im] pairs).  Wall-clock
// timings go to a separate sidecar so the main report is byte-reproducible.

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "elliptica/curve.hpp"

namespace ell {

using ojson = nlohmann::ordered_json;

inline ojson json_complex(cx z) { return ojson::array({z.real(), z.imag()}); }

struct CheckRecord {
    std::string name;       // human-readable check description
    std::string anchor;     // stable machine identifier, e.g. "rmatrix.ybe"
    ojson params;           // the parameters the check ran with
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double wall_ms = 0.0;   // reported only in the timings sidecar

    ojson to_json() const {
        ojson j;
        j["check"] = name;
        j["anchor"] = anchor;
        j["parameters"] = params.is_null() ? ojson::object() : params;
        j["residual"] = residual;
        j["tolerance"] = tolerance;
        j["pass"] = pass;
        return j;
    }
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    std::uint64_t seed = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    ojson to_json() const {
        ojson j;
        j["schema"] = 1;
        j["seed"] = seed;
        j["pass"] = all_pass();
        j["checks"] = ojson::array();
        for (const auto& c : checks) j["checks"].push_back(c.to_json());
        return j;
    }
    ojson timings_json() const {
        ojson j;
        j["schema"] = 1;
        j["timings_ms"] = ojson::object();
        for (const auto& c : checks) j["timings_ms"][c.anchor] = c.wall_ms;
        return j;
    }
};

// Run one named check with its own derived RNG stream and wall timing.
template <class F>
CheckRecord run_check(VerificationReport& rep, const std::string& name,
                      const std::string& anchor, const ojson& params, double tol,
                      std::uint64_t seed, const F& fn) {
    CheckRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    rec.params = params;
    rec.tolerance = tol;
    Rng rng(derive_seed(seed, anchor));
    auto t0 = std::chrono::steady_clock::now();
    rec.residual = fn(rng);
    auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.pass = rec.residual < tol;
    rep.checks.push_back(rec);
    return rec;
}

inline void write_json(const ojson& j, const std::string& path) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

}  // namespace ell
