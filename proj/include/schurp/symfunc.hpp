#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "schurp/alphabet.hpp"
#include "schurp/partition.hpp"
#include "schurp/rational.hpp"
#include "schurp/series.hpp"

namespace schurp {

/// h_0..h_maxdeg of the alphabet, by iterated geometric-series convolution.
inline std::vector<Rat> complete_homogeneous_table(long maxdeg, const Alphabet& a) {
    if (maxdeg < 0) return {};
    std::vector<Rat> h(static_cast<std::size_t>(maxdeg) + 1, Rat(0));
    h[0] = 1;
    for (const Rat& v : a.vars())
        for (long k = 1; k <= maxdeg; ++k) h[k] += v * h[k - 1];
    return h;
}

/// k-th complete homogeneous symmetric polynomial; zero for k < 0.
inline Rat complete_homogeneous(long k, const Alphabet& a) {
    if (k < 0) return 0;
    if (k == 0) return 1;
    return complete_homogeneous_table(k, a)[static_cast<std::size_t>(k)];
}

inline std::vector<Rat> elementary_symmetric_table(long maxdeg, const Alphabet& a) {
    if (maxdeg < 0) return {};
    std::vector<Rat> e(static_cast<std::size_t>(maxdeg) + 1, Rat(0));
    e[0] = 1;
    for (const Rat& v : a.vars())
        for (long k = std::min<long>(maxdeg, static_cast<long>(a.size())); k >= 1; --k)
            e[k] += v * e[k - 1];
    return e;
}

/// k-th elementary symmetric polynomial; zero for k < 0 or k > #vars.
inline Rat elementary_symmetric(long k, const Alphabet& a) {
    if (k < 0 || k > static_cast<long>(a.size())) return 0;
    if (k == 0) return 1;
    return elementary_symmetric_table(k, a)[static_cast<std::size_t>(k)];
}

/// Determinant by fraction-free elimination: rows are scaled to integers,
/// Bareiss runs on the integer matrix, the scale is divided back out.
inline Rat det_rational(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    Rat scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int lcm = 1;
        for (std::size_t j = 0; j < n; ++j)
            lcm = boost::multiprecision::lcm(lcm, denominator(m[i][j]));
        scale /= lcm;
        for (std::size_t j = 0; j < n; ++j) {
            const Rat v = m[i][j] * lcm;
            a[i][j] = numerator(v);
        }
    }
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return scale * Rat(sign * a[n - 1][n - 1]);
}

/// Skew Schur function via the Jacobi-Trudi determinant
/// det(h_{lam_i - mu_j + j - i}); zero whenever mu is not contained in lam.
inline Rat skew_schur(const Partition& lam, const Partition& mu, const Alphabet& a) {
    if (!lam.contains(mu)) return 0;
    const long n = static_cast<long>(lam.length());
    if (n == 0) return 1;
    long maxIdx = 0;
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= n; ++j)
            maxIdx = std::max(maxIdx, lam.part(i) - mu.part(j) + j - i);
    const std::vector<Rat> h = complete_homogeneous_table(maxIdx, a);
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (long i = 1; i <= n; ++i) {
        for (long j = 1; j <= n; ++j) {
            long idx = lam.part(i) - mu.part(j) + j - i;
            m[i - 1][j - 1] = (idx < 0) ? Rat(0) : h[static_cast<std::size_t>(idx)];
        }
    }
    return det_rational(std::move(m));
}

inline Rat schur(const Partition& lam, const Alphabet& a) { return skew_schur(lam, {}, a); }

/// Generating series of the h's of the concatenated alphabets:
/// coefficient k is h_k of the union.
inline RationalSeries c_series(long maxdeg, std::span<const Alphabet> alphabets) {
    if (maxdeg < 0) throw std::invalid_argument("c_series: negative maxdeg");
    Alphabet all = Alphabet::concat_all(alphabets);
    return RationalSeries(complete_homogeneous_table(maxdeg, all));
}

/// Reciprocal series: coefficient k is (-1)^k e_k of the union.
/// Convolution with c_series of the same alphabets is exactly delta_{k,0}.
inline RationalSeries d_series(long maxdeg, std::span<const Alphabet> alphabets) {
    if (maxdeg < 0) throw std::invalid_argument("d_series: negative maxdeg");
    Alphabet all = Alphabet::concat_all(alphabets);
    std::vector<Rat> e = elementary_symmetric_table(maxdeg, all);
    for (std::size_t k = 1; k < e.size(); k += 2) e[k] = -e[k];
    return RationalSeries(std::move(e));
}

}  // namespace schurp
