#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurp/kernel_linalg.hpp"
#include "schurp/process.hpp"

namespace schurp {

/// Circle pair for the double-contour kernel. The outer radius carries z1,
/// the inner z2; both must avoid the pole families at the alphabet entries
/// and their reciprocals.
struct ContourSpec {
    double r1;
    double r2;
    long nodes;
};

inline void validate_contour(const ProcessSpec& spec, const ContourSpec& c) {
    if (!(c.r2 < c.r1)) throw std::invalid_argument("ContourSpec: need r2 < r1");
    if (c.nodes < 64 || (c.nodes & (c.nodes - 1)) != 0)
        throw std::invalid_argument("ContourSpec: nodes must be a power of two, at least 64");
    const double amax = to_double(spec.max_entry());
    if (!(amax < c.r2) || !(c.r1 < 1.0 / amax))
        throw std::invalid_argument("ContourSpec: radii must separate the pole families");
}

/// Radii centered between the pole families, pulled toward 1 on the log
/// scale by a 0.9 safety factor.
inline ContourSpec default_contour(const ProcessSpec& spec, long nodes = 512) {
    const double amax = to_double(spec.max_entry());
    ContourSpec c;
    c.r2 = std::exp(0.9 * 0.5 * std::log(amax));
    c.r1 = std::exp(-0.9 * 0.5 * std::log(amax));
    c.nodes = nodes;
    return c;
}

/// Odd-alphabet data entering the mu-dependent term: the concatenated
/// ascending alphabet, its h values, and the normalizer det C with its
/// cofactors (the signed skew Schur values in disguise).
struct Theorem1Data {
    Alphabet a;
    StructuredInverse si;

    explicit Theorem1Data(const ProcessSpec& spec) : a(spec.odd_union()), si(spec) {
        // the final partition restates the endpoints: mu_i = m_i + i - 1
        for (long i = 1; i <= spec.n(); ++i)
            if (spec.mu().part(i) != spec.x_final(i) + i - 1)
                throw std::logic_error("Theorem1Data: endpoint restatement failed");
        if (si.n() > 0 && schur(spec.mu(), a) != si.b0())
            throw std::logic_error("Theorem1Data: normalizer mismatch");
    }
};

namespace detail {

/// Coefficients of the z1 factor of the integrand: a Laurent polynomial in
/// 1/z1 from the early ascending steps times the geometric series of the
/// late descending steps.
struct ContourFactor {
    std::vector<Rat> epoly;  // (-1)^t e_t of the polynomial side, t = 0..size
    Alphabet series;         // geometric side
    bool lower;              // true: poly in 1/z, series in z (the z1 factor)

    Rat coeff(long m) const {
        Rat v = 0;
        for (long t = 0; t < static_cast<long>(epoly.size()); ++t) {
            if (epoly[static_cast<std::size_t>(t)] == 0) continue;
            const long idx = lower ? m + t : t - m;
            v += epoly[static_cast<std::size_t>(t)] *
                 (idx < 0 ? Rat(0) : complete_homogeneous(idx, series));
        }
        return v;
    }
};

inline std::vector<Rat> signed_e_table(const Alphabet& a) {
    std::vector<Rat> e = elementary_symmetric_table(static_cast<long>(a.size()), a);
    for (std::size_t t = 1; t < e.size(); t += 2) e[t] = -e[t];
    return e;
}

inline ContourFactor z1_factor(const ProcessSpec& spec, long u1) {
    ContourFactor f;
    f.lower = true;
    std::vector<Rat> num;
    for (long i = 1; i <= u1; ++i) {
        const auto& v = spec.alphabet(2 * i - 1).vars();
        num.insert(num.end(), v.begin(), v.end());
    }
    f.epoly = signed_e_table(Alphabet(std::move(num)));
    std::vector<Rat> den;
    for (long k = u1 + 1; k <= 2 * spec.N(); ++k) {
        const auto& v = spec.alphabet(2 * k).vars();
        den.insert(den.end(), v.begin(), v.end());
    }
    f.series = Alphabet(std::move(den));
    return f;
}

inline ContourFactor z2_factor(const ProcessSpec& spec, long u2) {
    ContourFactor f;
    f.lower = false;
    std::vector<Rat> num;
    for (long j = u2 + 1; j <= 2 * spec.N(); ++j) {
        const auto& v = spec.alphabet(2 * j).vars();
        num.insert(num.end(), v.begin(), v.end());
    }
    f.epoly = signed_e_table(Alphabet(std::move(num)));
    std::vector<Rat> den;
    for (long l = 1; l <= u2; ++l) {
        const auto& v = spec.alphabet(2 * l - 1).vars();
        den.insert(den.end(), v.begin(), v.end());
    }
    f.series = Alphabet(std::move(den));
    return f;
}

/// sum_{k >= 0} G1[x1 + k] G2[-x2 - k], closed with a geometric tail.
inline Rat cross_sum(const ContourFactor& g1, const ContourFactor& g2, long x1, long x2) {
    const long t1 = static_cast<long>(g1.epoly.size()) - 1;
    const long t2 = static_cast<long>(g2.epoly.size()) - 1;
    if (g1.series.empty() || g2.series.empty()) {
        // one factor has finite support in the summed direction
        long kmax = g1.series.empty() ? std::max<long>(-x1 + t1, -1) : std::max<long>(-x2 + t2, -1);
        Rat v = 0;
        for (long k = 0; k <= kmax; ++k) v += g1.coeff(x1 + k) * g2.coeff(-x2 - k);
        return v;
    }
    const long start = std::max<long>({0, -x1, -x2}) + 2;
    Rat head = 0;
    for (long k = 0; k < start; ++k) head += g1.coeff(x1 + k) * g2.coeff(-x2 - k);
    ExpPoly h1 = h_exppoly(g1.series);
    ExpPoly h2 = h_exppoly(g2.series);
    ExpPoly s1, s2;
    for (long t = 0; t <= t1; ++t)
        if (g1.epoly[static_cast<std::size_t>(t)] != 0)
            s1 = s1 + h1.shift(x1 + t).scaled(g1.epoly[static_cast<std::size_t>(t)]);
    for (long t = 0; t <= t2; ++t)
        if (g2.epoly[static_cast<std::size_t>(t)] != 0)
            s2 = s2 + h2.shift(x2 + t).scaled(g2.epoly[static_cast<std::size_t>(t)]);
    return head + (s1 * s2).tail_sum(start);
}

}  // namespace detail

/// The double-contour kernel evaluated exactly: the two contour integrals are
/// iterated Laurent coefficient extractions in the region r2 < r1, where
/// z1/(z1-z2) expands as the geometric series in z2/z1. Returns the full
/// kernel, the mu-dependent term assembled from the cofactors of C.
inline Rat kernel_exact_extract(const ProcessSpec& spec, long u1, long x1, long u2, long x2,
                                long maxdeg) {
    if (u1 < 1 || u1 > 2 * spec.N() - 1 || u2 < 1 || u2 > 2 * spec.N() - 1)
        throw std::invalid_argument("kernel_exact_extract: u indices must lie in 1..2N-1");
    const long need = std::abs(x1) + std::abs(x2) + spec.mu().part(1) + spec.n();
    if (maxdeg < need)
        throw std::invalid_argument("kernel_exact_extract: maxdeg below required degree " +
                                    std::to_string(need));
    Theorem1Data data(spec);
    const auto g1 = detail::z1_factor(spec, u1);
    const auto g2 = detail::z2_factor(spec, u2);

    Rat ktilde = detail::cross_sum(g1, g2, x1, x2);

    const long n = spec.n();
    for (long j = 1; j <= n; ++j) {
        const long mj = spec.x_final(j);
        for (long lp = 0; lp <= mj - 1; ++lp) {
            const Rat h = complete_homogeneous(lp, data.a);
            for (long b = 1; b <= n; ++b) {
                Rat cof = data.si.cofC(b, j);
                if (cof == 0) continue;
                ktilde += h * cof * g1.coeff(x1 - mj + lp) * g2.coeff(1 - x2 - b) / data.si.b0();
            }
        }
    }

    Rat k = ktilde;
    if (2 * u1 < 2 * u2) k -= phi_rs(spec, 2 * u1, 2 * u2, x1, x2, maxdeg);
    return k;
}

struct QuadratureResult {
    double value;     // real part
    double imag_abs;  // residual imaginary part, a convergence diagnostic
};

namespace detail {

inline std::complex<double> z1_integrand(const ProcessSpec& spec, long u1,
                                         std::complex<double> z) {
    std::complex<double> v = 1.0;
    for (long i = 1; i <= u1; ++i)
        for (const Rat& a : spec.alphabet(2 * i - 1).vars()) v *= (1.0 - to_double(a) / z);
    for (long k = u1 + 1; k <= 2 * spec.N(); ++k)
        for (const Rat& a : spec.alphabet(2 * k).vars()) v /= (1.0 - to_double(a) * z);
    return v;
}

inline std::complex<double> z2_integrand(const ProcessSpec& spec, long u2,
                                         std::complex<double> z) {
    std::complex<double> v = 1.0;
    for (long j = u2 + 1; j <= 2 * spec.N(); ++j)
        for (const Rat& a : spec.alphabet(2 * j).vars()) v *= (1.0 - to_double(a) * z);
    for (long l = 1; l <= u2; ++l)
        for (const Rat& a : spec.alphabet(2 * l - 1).vars()) v /= (1.0 - to_double(a) / z);
    return v;
}

inline std::complex<double> ipow(std::complex<double> z, long e) {
    if (e < 0) return 1.0 / ipow(z, -e);
    std::complex<double> r = 1.0, b = z;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Trapezoid rule on the two circles; spectrally accurate since the integrand
/// is analytic on the annulus between the pole families.
inline QuadratureResult kernel_quadrature(const ProcessSpec& spec, long u1, long x1, long u2,
                                          long x2, const ContourSpec& contour) {
    if (u1 < 1 || u1 > 2 * spec.N() - 1 || u2 < 1 || u2 > 2 * spec.N() - 1)
        throw std::invalid_argument("kernel_quadrature: u indices must lie in 1..2N-1");
    validate_contour(spec, contour);
    Theorem1Data data(spec);
    const long n = spec.n();
    const double b0 = to_double(data.si.b0());

    // precompute the small mu-dependent tableau
    struct MuTerm {
        long p1;  // z1 power m_j - l'
        long p2;  // z2 power b - 1
        double c;
    };
    std::vector<MuTerm> mu_terms;
    for (long j = 1; j <= n; ++j) {
        const long mj = spec.x_final(j);
        for (long lp = 0; lp <= mj - 1; ++lp) {
            const double h = to_double(complete_homogeneous(lp, data.a));
            for (long b = 1; b <= n; ++b) {
                double cof = to_double(data.si.cofC(b, j));
                if (cof == 0.0) continue;
                mu_terms.push_back({mj - lp, b - 1, h * cof / b0});
            }
        }
    }

    const long m1 = contour.nodes, m2 = contour.nodes;
    const double twopi = 2.0 * std::numbers::pi;
    std::complex<double> acc = 0.0;
    std::vector<std::complex<double>> z2s(m2), f2s(m2);
    for (long b = 0; b < m2; ++b) {
        const double th = twopi * static_cast<double>(b) / static_cast<double>(m2);
        z2s[b] = std::polar(contour.r2, th);
        f2s[b] = detail::ipow(z2s[b], x2) * detail::z2_integrand(spec, u2, z2s[b]);
    }
    for (long a = 0; a < m1; ++a) {
        const double th = twopi * static_cast<double>(a) / static_cast<double>(m1);
        const std::complex<double> z1 = std::polar(contour.r1, th);
        const std::complex<double> f1 = detail::ipow(z1, -x1) * detail::z1_integrand(spec, u1, z1);
        for (long b = 0; b < m2; ++b) {
            const std::complex<double> z2 = z2s[b];
            std::complex<double> core = z1 / (z1 - z2);
            for (const MuTerm& t : mu_terms) core += t.c * detail::ipow(z1, t.p1) * detail::ipow(z2, t.p2);
            acc += f1 * f2s[b] * core;
        }
    }
    acc /= static_cast<double>(m1) * static_cast<double>(m2);

    // subtract the single-contour transition part on the unit circle
    if (u1 < u2) {
        std::complex<double> phi = 0.0;
        for (long a = 0; a < m1; ++a) {
            const double th = twopi * static_cast<double>(a) / static_cast<double>(m1);
            const std::complex<double> z = std::polar(1.0, th);
            std::complex<double> v = detail::ipow(z, x1 - x2);
            for (long i = u1; i <= u2 - 1; ++i)
                for (const Rat& ak : spec.alphabet(2 * i + 1).vars()) v /= (1.0 - to_double(ak) * z);
            for (long i = u1 + 1; i <= u2; ++i)
                for (const Rat& ak : spec.alphabet(2 * i).vars()) v /= (1.0 - to_double(ak) / z);
            phi += v;
        }
        acc -= phi / static_cast<double>(m1);
    }
    return {acc.real(), std::abs(acc.imag())};
}

/// Single-contour transition weight on the unit circle.
inline double phi_contour(const ProcessSpec& spec, long u1, long u2, long x1, long x2,
                          const ContourSpec& contour) {
    if (u1 >= u2) return 0.0;
    validate_contour(spec, contour);
    const double twopi = 2.0 * std::numbers::pi;
    std::complex<double> acc = 0.0;
    for (long a = 0; a < contour.nodes; ++a) {
        const double th = twopi * static_cast<double>(a) / static_cast<double>(contour.nodes);
        const std::complex<double> z = std::polar(1.0, th);
        std::complex<double> v = detail::ipow(z, x1 - x2);
        for (long i = u1; i <= u2 - 1; ++i)
            for (const Rat& ak : spec.alphabet(2 * i + 1).vars()) v /= (1.0 - to_double(ak) * z);
        for (long i = u1 + 1; i <= u2; ++i)
            for (const Rat& ak : spec.alphabet(2 * i).vars()) v /= (1.0 - to_double(ak) / z);
        acc += v;
    }
    return (acc / static_cast<double>(contour.nodes)).real();
}

}  // namespace schurp
