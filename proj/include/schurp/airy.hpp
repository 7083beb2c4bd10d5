#pragma once

#include <cmath>
#include <numbers>

namespace schurp {

namespace detail {

// Ai(0) = 3^{-2/3}/Gamma(2/3), -Ai'(0) = 3^{-1/3}/Gamma(1/3)
inline constexpr long double kAi0 = 0.35502805388781723926L;
inline constexpr long double kAip0 = -0.25881940379280679841L;

struct AiryPair {
    long double ai;
    long double aip;
};

/// Maclaurin evaluation; the two auxiliary series and their derivatives are
/// accumulated together. Loss of significance stays below the long double
/// guard digits for |x| <= 8.
inline AiryPair airy_maclaurin(long double x) {
    const long double x3 = x * x * x;
    long double f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
    long double tf = 1.0L, tg = x;
    for (int k = 1; k <= 60; ++k) {
        tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
        tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
        f += tf;
        g += tg;
        if (x != 0.0L) {
            fp += tf * (3.0L * k) / x;
            gp += tg * (3.0L * k + 1.0L) / x;
        }
        if (std::fabs(tf) < 1e-25L && std::fabs(tg) < 1e-25L) break;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

/// Asymptotic series truncated at its smallest term.
inline AiryPair airy_asymptotic_pos(long double x) {
    const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
    long double u = 1.0L, v = 1.0L;
    long double su = 1.0L, sv = 1.0L;
    long double prev = 1.0L;
    for (int k = 1; k <= 40; ++k) {
        u *= (6.0L * k - 5.0L) * (6.0L * k - 3.0L) * (6.0L * k - 1.0L) /
             ((2.0L * k - 1.0L) * 216.0L * k);
        v = u * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
        const long double tu = u / std::pow(zeta, static_cast<long double>(k));
        if (std::fabs(tu) > prev) break;  // divergent tail reached
        prev = std::fabs(tu);
        const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
        su += sgn * tu;
        sv += sgn * v / std::pow(zeta, static_cast<long double>(k));
        if (std::fabs(tu) < 1e-24L) break;
    }
    const long double sqpi = std::sqrt(std::numbers::pi_v<long double>);
    const long double x14 = std::pow(x, 0.25L);
    const long double e = std::exp(-zeta);
    return {e * su / (2.0L * sqpi * x14), -e * sv * x14 / (2.0L * sqpi)};
}

inline AiryPair airy_asymptotic_neg(long double xpos) {
    const long double zeta = 2.0L / 3.0L * xpos * std::sqrt(xpos);
    long double u = 1.0L, v = 1.0L;
    long double c_even = 1.0L, c_odd = 0.0L;   // sums of (-1)^k u_{2k}, u_{2k+1}
    long double d_even = 1.0L, d_odd = 0.0L;   // same with v
    long double zp = 1.0L;
    int parity = 0;
    long double prev = 1.0L;
    for (int k = 1; k <= 40; ++k) {
        u *= (6.0L * k - 5.0L) * (6.0L * k - 3.0L) * (6.0L * k - 1.0L) /
             ((2.0L * k - 1.0L) * 216.0L * k);
        v = u * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
        zp /= zeta;
        const long double tu = u * zp;
        if (std::fabs(tu) > prev) break;
        prev = std::fabs(tu);
        const long double sgn = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
        if (parity == 0) {  // k odd: contributes to the odd sums
            c_odd += sgn * tu;
            d_odd += sgn * v * zp;
            parity = 1;
        } else {
            c_even += sgn * tu;
            d_even += sgn * v * zp;
            parity = 0;
        }
        if (std::fabs(tu) < 1e-24L) break;
    }
    const long double sqpi = std::sqrt(std::numbers::pi_v<long double>);
    const long double x14 = std::pow(xpos, 0.25L);
    const long double ph = zeta - std::numbers::pi_v<long double> / 4.0L;
    const long double c = std::cos(ph), s = std::sin(ph);
    long double ai = (c * c_even + s * c_odd) / (sqpi * x14);
    long double aip = (s * d_even - c * d_odd) * x14 / sqpi;
    return {ai, aip};
}

inline AiryPair airy_pair(double x) {
    const long double xl = static_cast<long double>(x);
    if (std::fabs(xl) <= 7.5L) return airy_maclaurin(xl);
    return xl > 0 ? airy_asymptotic_pos(xl) : airy_asymptotic_neg(-xl);
}

}  // namespace detail

/// Airy function of the first kind. Absolute accuracy about 1e-12 on
/// [-10, 10], degrading gracefully in the far oscillatory tail.
inline double airy(double x) { return static_cast<double>(detail::airy_pair(x).ai); }

inline double airy_prime(double x) { return static_cast<double>(detail::airy_pair(x).aip); }

}  // namespace schurp
