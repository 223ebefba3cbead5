#pragma once
// Continued fractions with all terms >= 2, the tridiagonal determinant d(...),
// and the dual expansion with its transpose-diagram combinatorics.  Everything
// here is exact integer arithmetic.

#include <numeric>
#include <vector>

#include "elliptica/curve.hpp"

namespace ell {

using ivec = std::vector<long long>;

// d(m_1,...,m_q): determinant of the tridiagonal matrix with diagonal m_i and
// off-diagonals -1.  d() = 1 by convention; backward recurrence.
inline long long d_det(const ivec& terms, std::size_t from, std::size_t to) {
    long long prev2 = 0, prev1 = 1;  // d beyond the end, d(empty)
    for (std::size_t idx = to; idx > from; --idx) {
        long long cur = terms[idx - 1] * prev1 - prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}
inline long long d_det(const ivec& terms) { return d_det(terms, 0, terms.size()); }

struct ContinuedFraction {
    long long n = 0, k = 0;
    ivec terms;  // n/k = n_1 - 1/(n_2 - 1/(... - 1/n_p)), all n_i >= 2

    std::size_t length() const { return terms.size(); }
    // d(n_{i+1},...,n_j) for 0-based half-open slice [i, j)
    long long d(std::size_t i, std::size_t j) const { return d_det(terms, i, j); }
};

inline ContinuedFraction continued_fraction(long long n, long long k) {
    if (k < 1 || k >= n || std::gcd(n, k) != 1)
        throw std::invalid_argument("need gcd(n,k)=1 and 1 <= k < n");
    ContinuedFraction cf;
    cf.n = n;
    cf.k = k;
    long long a = n, b = k;
    while (b > 0) {
        long long q = (a + b - 1) / b;  // ceil(a/b)
        cf.terms.push_back(q);
        long long nb = q * b - a;
        a = b;
        b = nb;
    }
    return cf;
}

// Exact rational reconstruction n/k = n_1 - 1/(n_2 - ...), as a num/den pair.
inline std::pair<long long, long long> cf_reconstruct(const ivec& terms) {
    long long num = 1, den = 0;  // empty tail
    for (std::size_t idx = terms.size(); idx > 0; --idx) {
        long long nnum = terms[idx - 1] * num - den;
        den = num;
        num = nnum;
    }
    return {num, den};
}

// Partition lambda_a = n_1 + ... + n_a - 2a + 1 attached to an expansion.
inline ivec cf_partition(const ivec& terms) {
    ivec part;
    long long acc = 0;
    for (std::size_t a = 0; a < terms.size(); ++a) {
        acc += terms[a];
        part.push_back(acc - 2 * (long long)(a + 1) + 1);
    }
    return part;
}

inline bool partitions_transpose(const ivec& a, const ivec& b) {
    // b must be the conjugate diagram of a
    for (std::size_t j = 0; j < b.size(); ++j) {
        long long cnt = 0;
        for (long long x : a)
            if (x >= (long long)(j + 1)) ++cnt;
        if (cnt != b[j]) return false;
    }
    long long ta = 0, tb = 0;
    for (long long x : a) ta += x;
    for (long long x : b) tb += x;
    return ta == tb;
}

struct DualityData {
    ContinuedFraction primal;  // n/k
    ContinuedFraction dual;    // n/(n-k)
    cx pairing_constant = 0.0;
    double pairing_spread = 0.0;
};

inline DualityData dual_fraction(const ContinuedFraction& f) {
    DualityData d;
    d.primal = f;
    d.dual = continued_fraction(f.n, f.n - f.k);
    // combinatorial consistency, all exact
    long long sum_p = 0;
    for (long long x : f.terms) sum_p += x;
    long long sum_pp = 0;
    for (long long x : d.dual.terms) sum_pp += x;
    long long p = (long long)f.length(), pp = (long long)d.dual.length();
    if (pp != sum_p - 2 * p + 1) throw std::logic_error("dual length rule failed");
    if (sum_pp != 2 * sum_p - 3 * p + 1) throw std::logic_error("dual sum rule failed");
    if (!partitions_transpose(cf_partition(f.terms), cf_partition(d.dual.terms)))
        throw std::logic_error("dual diagrams are not transpose");
    return d;
}

}  // namespace ell
