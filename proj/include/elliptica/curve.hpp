#pragma once
// Basic numeric plumbing shared by every module: the lattice parameters, a
// deterministic splittable RNG, and a few tiny helpers.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ell {

using cx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
inline const cx kI{0.0, 1.0};

// e^{2*pi*i*z}
inline cx e2pi(cx z) { return std::exp(cx(0.0, 2.0 * kPi) * z); }

struct CurveParams {
    cx tau{0.3, 1.1};
    int truncation = 30;  // series/product cutoff N

    void validate() const {
        if (tau.imag() <= 0.0) throw std::invalid_argument("Im tau must be positive");
        if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
    }
};

// splitmix64: stable across platforms, unlike std distributions.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    // random complex in a centered box; evaluation order pinned explicitly
    cx box(double s = 0.3) {
        double re = uniform(-s, s);
        double im = uniform(-s, s);
        return {re, im};
    }
    int integer(int lo, int hi) {  // inclusive range
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }
};

// Per-check RNG stream: FNV-1a over the check name folded into the run seed,
// so parallel scheduling never changes the draws a check sees.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view check_name) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : std::string(check_name)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    // final mix against the run seed
    std::uint64_t z = h ^ (seed + 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct DegenerateParameters : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SampleDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int imod(long long a, int n) {
    long long r = a % n;
    return int(r < 0 ? r + n : r);
}

}  // namespace ell
